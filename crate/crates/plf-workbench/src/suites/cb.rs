//! Cross-validation of the completely-below relation and the completely
//! regular coreflection.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::em::cr_coreflection;
use plf_core::order::{
    completely_below, completely_below_oracle, enumerate_subframes, is_completely_regular,
    rather_below,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn cb_crossval(input: &mut SuiteInput) {
    let corrupt = input
        .mutation
        .map(|s| StdRng::seed_from_u64(s).gen_range(0..input.frames.len().max(1)));
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let gfp = completely_below(f);
        let oracle = completely_below_oracle(f);
        let mut tables_equal = gfp == oracle;
        if corrupt == Some(fi) {
            tables_equal = !tables_equal;
        }
        input.rec.check("gfp-equals-interposer-oracle", &ctx.name, Gate::Naked, ctx.is_cr, tables_equal, || {
            "pruned table differs from the complemented-interposer scan".into()
        });

        // Table containments: ≪ ⊆ ≺ ⊆ ≤.
        let rb = rather_below(f);
        let mut chain = true;
        for a in f.elements() {
            for b in f.elements() {
                if gfp.holds(a, b) && !rb.holds(a, b) {
                    chain = false;
                }
                if rb.holds(a, b) && !f.le(a, b) {
                    chain = false;
                }
            }
        }
        input.rec.check("relation-chain", &ctx.name, Gate::Naked, ctx.is_cr, chain, || {
            "≪ ⊆ ≺ ⊆ ≤ broken".into()
        });

        // Interpolation and monotone closure.
        let mut interp = true;
        let mut closure = true;
        for (a, b) in gfp.pairs() {
            if !f.elements().any(|c| gfp.holds(a, c) && gfp.holds(c, b)) {
                interp = false;
            }
            for a2 in f.elements() {
                for b2 in f.elements() {
                    if f.le(a2, a) && f.le(b, b2) && !gfp.holds(a2, b2) {
                        closure = false;
                    }
                }
            }
        }
        input.rec.check("cb-interpolative", &ctx.name, Gate::Naked, ctx.is_cr, interp, || {
            "≪ does not interpolate".into()
        });
        input.rec.check("cb-monotone-closure", &ctx.name, Gate::Naked, ctx.is_cr, closure, || {
            "≪ not closed under shrinking/growing".into()
        });

        // The coreflection is completely regular and maximal among the
        // completely regular subframes (subframe enumeration on ≤ 8).
        let (members, sub) = cr_coreflection(f);
        input.rec.check(
            "coreflection-completely-regular",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            is_completely_regular(&sub),
            || "center subframe fails complete regularity".into(),
        );
        if f.size() <= 8 {
            let mut maximal = true;
            for sf in enumerate_subframes(f, 8).expect("gated") {
                let (frame, back) = f.subframe(&sf).expect("closed subset");
                if is_completely_regular(&frame) && !back.iter().all(|x| members.contains(x)) {
                    maximal = false;
                }
            }
            input.rec.check(
                "coreflection-maximal-by-enumeration",
                &ctx.name,
                Gate::Naked,
                ctx.is_cr,
                maximal,
                || "a completely regular subframe escapes the center".into(),
            );
        }
    }
}
