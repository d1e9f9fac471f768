//! Nucleus-engine suites: prenucleus iteration, law validation, fix-set
//! preservation, and the kernel/normal-filter correspondence.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::filter::{enumerate_filters, ExtFilter};
use plf_core::nucleus::{
    is_normal_filter, iterate_prenucleus, nucleus_from_filter, pi_nucleus, pi_prime,
    prenucleus_from_filter, sigma_nucleus, Nucleus,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Kernels of nuclei are normal filters; normal filters are exactly the
/// kernels of their own induced nuclei.
pub fn lemma17(input: &mut SuiteInput) {
    let corrupt = input
        .mutation
        .map(|s| StdRng::seed_from_u64(s).gen_range(0..input.frames.len().max(1)));
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let sigma = sigma_nucleus(f, &ctx.cov);
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        for (kind, nu) in [("sigma", &sigma), ("pi", &pi), ("identity", &Nucleus::identity(f.clone()))] {
            let mut kernel = nu.kernel();
            if corrupt == Some(fi) && kind == "sigma" && f.size() > 1 {
                // Seeded mutation: adjoin ⊥ to the kernel.
                kernel.insert(f.bottom());
            }
            let filt = match ExtFilter::new(f.clone(), kernel) {
                Ok(x) => x,
                Err(_) => {
                    input.rec.check(
                        &format!("kernel-is-filter#{kind}"),
                        &ctx.name,
                        Gate::Naked,
                        ctx.is_cr,
                        false,
                        || "kernel fails filter validation".into(),
                    );
                    continue;
                }
            };
            input.rec.check(
                &format!("kernel-normal#{kind}"),
                &ctx.name,
                Gate::Naked,
                ctx.is_cr,
                is_normal_filter(f, &filt),
                || "kernel of a nucleus is not normal".into(),
            );
        }

        // Small frames: normality is equivalent to being a kernel.
        if f.size() <= 8 {
            let mut ok = true;
            for x in enumerate_filters(f, 8).expect("gated") {
                if is_normal_filter(f, &x) {
                    let nu = nucleus_from_filter(f, &x);
                    if nu.kernel() != *x.members() {
                        ok = false;
                    }
                }
            }
            input.rec.check("normal-iff-kernel", &ctx.name, Gate::Naked, ctx.is_cr, ok, || {
                "a normal filter is not its own nucleus kernel".into()
            });
        }
    }
}

/// Iteration of every filter-induced and successor-induced prenucleus:
/// bounded convergence, lawful output, and exact fix-set preservation.
pub fn nucleus_engine(input: &mut SuiteInput) {
    let corrupt = input
        .mutation
        .map(|s| StdRng::seed_from_u64(s).gen_range(0..input.frames.len().max(1)));
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let mut prenuclei: Vec<(String, plf_core::nucleus::Prenucleus)> =
            vec![("successor-join".into(), pi_prime(f, &ctx.cov))];
        if f.size() <= 8 {
            for (k, x) in enumerate_filters(f, 8).expect("gated").into_iter().enumerate() {
                prenuclei.push((format!("filter{k}"), prenucleus_from_filter(f, &x)));
            }
        } else {
            // Larger carriers: the principal filters suffice as a spread.
            for a in f.elements() {
                let x = ExtFilter::principal(f.clone(), a);
                prenuclei.push((format!("principal{}", a.0), prenucleus_from_filter(f, &x)));
            }
        }
        for (name, p) in &prenuclei {
            let sub = format!("{}#{}", ctx.name, name);
            match iterate_prenucleus(p) {
                Ok((nu, steps)) => {
                    input.rec.check("iteration-bounded", &sub, Gate::Naked, ctx.is_cr, steps <= f.size(), || {
                        format!("{steps} steps on {} elements", f.size())
                    });
                    let mut fix = nu.fix_set();
                    if corrupt == Some(fi) && name == "successor-join" {
                        fix.insert(f.bottom());
                    }
                    input.rec.check(
                        "fix-set-preserved",
                        &sub,
                        Gate::Naked,
                        ctx.is_cr,
                        fix == p.fix_set(),
                        || "fix(iterate(p)) differs from fix(p)".into(),
                    );
                    // Laws re-validated through the public constructor.
                    let lawful = Nucleus::new(f.clone(), nu.op().to_vec()).is_ok();
                    input.rec.check("nucleus-laws", &sub, Gate::Naked, ctx.is_cr, lawful, || {
                        "iterated output fails a nucleus law".into()
                    });
                }
                Err(e) => {
                    input.rec.check("iteration-succeeds", &sub, Gate::Naked, ctx.is_cr, false, || {
                        format!("{e}")
                    });
                }
            }
        }
    }
}
