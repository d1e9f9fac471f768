//! Congruence-lattice structure suites: enumeration-backed checks of the
//! maximal and atomic layers and the principal-pair criterion.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::congruence::{
    atom_congruences, closed_cong, enumerate_congruences, max_congruences, open_cong,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// max(Con L) and atoms(Con L) against the closed/open congruences at the
/// maximal elements. Inclusions hold nakedly; the equalities are the
/// regularity-gated statement.
pub fn lemma10(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| {
            let c = &input.frames[i];
            c.is_cr && c.frame.size() >= 2 && c.frame.size() <= 12
        })
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        if f.size() > 12 {
            continue;
        }
        let all = enumerate_congruences(f, 12).expect("gated by size");
        let mut maxes = max_congruences(f, 12).expect("gated by size");
        let atoms = atom_congruences(f, 12).expect("gated by size");
        if corrupt == Some(fi) && !maxes.is_empty() {
            // Seeded mutation: forget one maximal congruence.
            maxes.pop();
        }

        let closed_family: Vec<_> = ctx.cov.maxima.iter().map(|&b| closed_cong(f, b)).collect();
        let open_family: Vec<_> = ctx.cov.maxima.iter().map(|&b| open_cong(f, b)).collect();

        input.rec.check(
            "closed-at-maxima-are-maximal",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            closed_family.iter().all(|c| maxes.contains(c)),
            || "some Ψ_b at a maximal b is not maximal in Con L".into(),
        );
        input.rec.check(
            "open-at-maxima-are-atoms",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            open_family.iter().all(|c| atoms.contains(c)),
            || "some Φ_b at a maximal b is not an atom of Con L".into(),
        );
        input.rec.check(
            "max-con-exactly-closed-family",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            maxes.len() == closed_family.len() && maxes.iter().all(|c| closed_family.contains(c)),
            || format!("{} maximal congruences vs {} closed ones", maxes.len(), closed_family.len()),
        );
        input.rec.check(
            "atoms-con-exactly-open-family",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            atoms.len() == open_family.len() && atoms.iter().all(|c| open_family.contains(c)),
            || format!("{} atoms vs {} open ones", atoms.len(), open_family.len()),
        );

        // The congruence lattice of a finite distributive lattice is a
        // powerset; its size is 2^(number of join-irreducibles).
        let ji = f.join_irreducibles().len();
        input.rec.check(
            "con-size-powerset-of-irreducibles",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            all.len() == 1usize << ji,
            || format!("|Con| = {}, 2^|J| = {}", all.len(), 1usize << ji),
        );
    }
}

/// The principal-pair criterion: for a ≤ b, (a, b) ∈ Ξ iff Φ_a ∧ Ψ_b ≤ Ξ.
pub fn lemma11(input: &mut SuiteInput) {
    let corrupt = input
        .mutation
        .map(|s| StdRng::seed_from_u64(s).gen_range(0..input.frames.len().max(1)));
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        if f.size() > 10 {
            continue;
        }
        let all = enumerate_congruences(f, 10).expect("gated by size");
        let mut holds = true;
        let mut witness = String::new();
        'outer: for a in f.elements() {
            for b in f.elements() {
                if !f.le(a, b) {
                    continue;
                }
                let lhs = open_cong(f, a).meet(&closed_cong(f, b)).expect("same frame");
                for xi in &all {
                    let mut related = xi.related(a, b);
                    if corrupt == Some(fi) && a == f.bottom() && b == f.top() && xi.is_all() {
                        related = !related;
                    }
                    if related != lhs.le(xi) {
                        holds = false;
                        witness = format!("pair ({a},{b})");
                        break 'outer;
                    }
                }
            }
        }
        input.rec.check("principal-pair-criterion", &ctx.name, Gate::Naked, ctx.is_cr, holds, || {
            witness.clone()
        });
    }
}
