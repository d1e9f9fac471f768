//! Filter-engine suites: exhaustive round/ultrafilter structure on small
//! frames, image filters under surjections, and the oracular point-filter
//! challenges on the interval carrier.

use super::{hom_pool, SuiteInput};
use crate::report::Gate;
use plf_core::filter::{
    enumerate_filters, enumerate_round_filters, enumerate_ultrafilters, filter_of_max,
    filter_to_ideal, ideal_to_filter, image_filter, is_maximal_round, is_regular, is_round,
    round_core, spatial_support, ExtFilter,
};
use plf_core::order::{completely_below, is_prime};
use plf_core::rline::{
    io_fill, io_le, io_pseudocomplement, IntervalOpen, PointFilter, Q, QBound,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Lemma-22 structure on frames of at most 8 elements, by exhaustive
/// enumeration.
pub fn lemma22(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| {
            let c = &input.frames[i];
            // Boolean frames with several atoms have pairwise distinct
            // ultrafilter cores, so forgetting one is always visible.
            c.is_cr && c.cov.atoms.len() >= 2 && c.frame.size() <= 8
        })
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        if f.size() > 8 {
            continue;
        }
        let cb = completely_below(f);
        let all = enumerate_filters(f, 8).expect("gated");
        let rounds: Vec<ExtFilter> = enumerate_round_filters(f, 8).expect("gated");
        let proper_rounds: Vec<&ExtFilter> = rounds.iter().filter(|x| x.is_proper()).collect();

        // (2) the round core is the largest round subfilter.
        let mut core_ok = true;
        for x in all.iter().filter(|x| x.is_proper()) {
            let core = round_core(x, &cb);
            if !is_round(&core, &cb) {
                core_ok = false;
            }
            for y in &rounds {
                if y.members().is_subset(x.members()) && !y.members().is_subset(core.members()) {
                    core_ok = false;
                }
            }
        }
        input.rec.check("round-core-largest", &ctx.name, Gate::Naked, ctx.is_cr, core_ok, || {
            "round core is not the largest round subfilter".into()
        });

        // (3) the disjointness criterion characterizes maximality among
        // proper round filters — cross-checked against containment.
        let mut crit_ok = true;
        for x in &proper_rounds {
            let by_criterion = is_maximal_round(x, &cb);
            let by_containment = proper_rounds
                .iter()
                .all(|y| !x.members().is_subset(y.members()) || x.members() == y.members());
            if by_criterion != by_containment {
                crit_ok = false;
            }
        }
        input.rec.check("maximal-round-criterion", &ctx.name, Gate::Naked, ctx.is_cr, crit_ok, || {
            "the disjointness criterion diverges from containment maximality".into()
        });

        // (4) distinct maximal proper round filters contain disjoint
        // elements.
        let maximal_rounds: Vec<&&ExtFilter> =
            proper_rounds.iter().filter(|x| is_maximal_round(x, &cb)).collect();
        let mut disjoint_ok = true;
        for x in &maximal_rounds {
            for y in &maximal_rounds {
                if x.members() != y.members() {
                    let found = x.members().iter().any(|&a| {
                        y.members().iter().any(|&b| f.meet(a, b) == f.bottom())
                    });
                    if !found {
                        disjoint_ok = false;
                    }
                }
            }
        }
        input.rec.check("maximal-rounds-independent", &ctx.name, Gate::Naked, ctx.is_cr, disjoint_ok, || {
            "two distinct maximal round filters share all meets".into()
        });

        // (5) the pseudocomplement join of a maximal proper round filter is
        // prime (maximal or ⊤) — the regularity-gated part.
        let mut prime_ok = true;
        for x in &maximal_rounds {
            let join = f.join_set(x.members().iter().map(|&b| f.pseudocomplement(b)));
            if !(is_prime(f, join) && (join == f.top() || ctx.cov.maxima.contains(&join))) {
                prime_ok = false;
            }
        }
        input.rec.check(
            "maximal-round-star-join-prime",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            prime_ok,
            || "⋁b* of a maximal round filter is neither ⊤ nor maximal".into(),
        );

        // (6)-shape: x_a for maximal a is a proper round filter that is
        // maximal, with ⋁b* = a (the regularity-gated statement).
        let mut xa_ok = true;
        for &a in &ctx.cov.maxima {
            let xa = filter_of_max(f, &ctx.cov, a).expect("maximal");
            let round = is_round(&xa, &cb);
            let maximal = round && is_maximal_round(&xa, &cb);
            let star_join = f.join_set(xa.members().iter().map(|&b| f.pseudocomplement(b)));
            if !(xa.is_proper() && round && maximal && star_join == a) {
                xa_ok = false;
            }
        }
        input.rec.check(
            "max-element-filter-structure",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            xa_ok,
            || "x_a is not a maximal round filter with ⋁b* = a".into(),
        );

        // (7)-shape: x_a is completely prime — a join lands in it only
        // when some joinand does. Pure lattice fact, by full subset scan.
        let mut cp_ok = true;
        for &a in &ctx.cov.maxima {
            let xa = filter_of_max(f, &ctx.cov, a).expect("maximal");
            for mask in 0u32..(1 << f.size()) {
                let subset: Vec<plf_core::frame::Elem> =
                    (0..f.size()).filter(|i| mask & (1 << i) != 0).map(plf_core::frame::Elem).collect();
                let join = f.join_set(subset.iter().copied());
                if xa.contains(join) && !subset.iter().any(|&x| xa.contains(x)) {
                    cp_ok = false;
                }
            }
        }
        input.rec.check("max-filter-completely-prime", &ctx.name, Gate::Naked, ctx.is_cr, cp_ok, || {
            "a join lies in x_a with no joinand in it".into()
        });

        // (8) maximal proper round filters are exactly the round cores of
        // ultrafilters.
        let mut ultras = enumerate_ultrafilters(f, 8).expect("gated");
        if corrupt == Some(fi) {
            // Seeded mutation: forget one ultrafilter.
            ultras.pop();
        }
        let cores: Vec<ExtFilter> = ultras.iter().map(|u| round_core(u, &cb)).collect();
        let mut u_ok = true;
        for x in &maximal_rounds {
            if !cores.iter().any(|c| c.members() == x.members()) {
                u_ok = false;
            }
        }
        for c in &cores {
            if c.is_proper() && !is_maximal_round(c, &cb) {
                u_ok = false;
            }
        }
        input.rec.check("maximal-rounds-from-ultrafilters", &ctx.name, Gate::Naked, ctx.is_cr, u_ok, || {
            "round cores of ultrafilters diverge from maximal rounds".into()
        });

        // (9) primeness characterizes maximality among proper rounds.
        let mut prime_char_ok = true;
        for x in &proper_rounds {
            let prime = {
                let mut holds = true;
                for a1 in f.elements() {
                    for b1 in f.elements() {
                        if !cb.holds(a1, b1) {
                            continue;
                        }
                        for a2 in f.elements() {
                            for b2 in f.elements() {
                                if !cb.holds(a2, b2) {
                                    continue;
                                }
                                if x.contains(f.join(a1, a2))
                                    && !x.contains(b1)
                                    && !x.contains(b2)
                                {
                                    holds = false;
                                }
                            }
                        }
                    }
                }
                holds
            };
            if prime != is_maximal_round(x, &cb) {
                prime_char_ok = false;
            }
        }
        input.rec.check("round-primeness-maximality", &ctx.name, Gate::Naked, ctx.is_cr, prime_char_ok, || {
            "the join-splitting primeness diverges from maximality".into()
        });

        // (10) the round-filter/round-ideal maps are inverse order
        // preserving bijections.
        let mut dual_ok = true;
        for x in &rounds {
            let i = filter_to_ideal(x);
            if !i.is_round(&cb) || ideal_to_filter(&i).members() != x.members() {
                dual_ok = false;
            }
        }
        for x in &rounds {
            for y in &rounds {
                if x.members().is_subset(y.members()) {
                    let (ix, iy) = (filter_to_ideal(x), filter_to_ideal(y));
                    if !ix.members().is_subset(iy.members()) {
                        dual_ok = false;
                    }
                }
            }
        }
        input.rec.check("round-ideal-duality", &ctx.name, Gate::Naked, ctx.is_cr, dual_ok, || {
            "duality round trip or order reversal failed".into()
        });

        // Lemma-24 shape: proper filters on these carriers are principal,
        // hence never regular.
        let regular_free =
            all.iter().filter(|x| x.is_proper()).all(|x| !is_regular(x, &cb));
        input.rec.check("no-proper-regular-filters", &ctx.name, Gate::Naked, ctx.is_cr, regular_free, || {
            "a principal proper filter claims regularity".into()
        });

        // Support family: pairwise independence witnesses exist exactly
        // when the filters are maximal rounds (regularity gate), and the
        // family is indexed by the maxima.
        let fam = spatial_support(f, &ctx.cov);
        input.rec.check(
            "support-indexed-by-maxima",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            fam.filters.len() == ctx.cov.maxima.len(),
            || "support family size differs from the maxima".into(),
        );
        let indep_ok = fam.independence.iter().all(|(_, w)| w.is_some());
        input.rec.check(
            "support-independent",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            indep_ok,
            || "two support filters lack disjoint members".into(),
        );
    }
}

/// Image filters along surjections.
pub fn lemma23(input: &mut SuiteInput) {
    let homs = hom_pool(&input.frames, 6, 3, 150);
    let eligible: Vec<usize> = (0..homs.len())
        .filter(|&i| {
            homs[i].is_surjective() && homs[i].source().size() <= 8 && homs[i].target().size() >= 2
        })
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (hi, m) in homs.iter().enumerate() {
        if !m.is_surjective() || m.source().size() > 8 {
            continue;
        }
        let label = format!("img:{:?}", m.map().iter().map(|e| e.0).collect::<Vec<_>>());
        let cb_src = completely_below(m.source());
        let cb_dst = completely_below(m.target());
        let adj_bot = m.right_adjoint()[m.target().bottom().0];
        let mut ok = true;
        for x in enumerate_round_filters(m.source(), 8).expect("gated") {
            let mut img = image_filter(m, &x);
            if corrupt == Some(hi) && x.members().len() == 1 {
                // Seeded mutation: swell the image filter to everything.
                img = ExtFilter::principal(m.target().clone(), m.target().bottom());
            }
            if !is_round(&img, &cb_dst) {
                ok = false;
            }
            if img.is_proper() != !x.contains(adj_bot) {
                ok = false;
            }
            let _ = &cb_src;
        }
        input.rec.check("image-filters-round-proper", &label, Gate::Naked, true, ok, || {
            "image filter fails roundness or the properness criterion".into()
        });
    }

    // Oracular side: point-filter members always have strictly smaller
    // members (no least element at witness level).
    let y0 = PointFilter::new(Q::from_integer(0));
    let mut shrink_ok = true;
    for k in 1..40 {
        let u = IntervalOpen::span(
            QBound::Fin(Q::new(-1, k)),
            QBound::Fin(Q::new(1, k)),
        );
        match y0.round_witness(&u) {
            Some(w) => {
                if !(y0.contains(&w) && io_le(&w, &u) && w != u) {
                    shrink_ok = false;
                }
            }
            None => shrink_ok = false,
        }
    }
    input.rec.check("point-filter-no-least", "y0:40-members", Gate::Naked, true, shrink_ok, || {
        "a member admits no strictly smaller member".into()
    });
}

/// Criterion-level filter suite: the small-frame structure plus ≥ 200
/// distinct regularity challenges answered by the point filters.
pub fn filters(input: &mut SuiteInput) {
    lemma22(input);
    lemma23(input);

    let mutate = input.mutation.is_some();
    let mut rng = StdRng::seed_from_u64(input.rng.gen());
    let bases = [Q::from_integer(0), Q::new(7, 3), Q::from_integer(-4)];
    let mut answered = 0usize;
    let mut challenge_ok = true;
    let mut witness = String::new();
    let mut seen = std::collections::BTreeSet::new();
    while answered < 210 {
        // Random unpunctured V < ⊤.
        let k = rng.gen_range(0..3);
        let mut raw = Vec::new();
        for _ in 0..k {
            let base = Q::new(rng.gen_range(-40..40), rng.gen_range(1..5));
            let width = Q::new(rng.gen_range(1..30), rng.gen_range(1..3));
            raw.push((QBound::Fin(base), QBound::Fin(base + width)));
        }
        if rng.gen_bool(0.5) {
            raw.push((QBound::NegInf, QBound::Fin(Q::from_integer(rng.gen_range(-60..-40)))));
        }
        if rng.gen_bool(0.5) {
            raw.push((QBound::Fin(Q::from_integer(rng.gen_range(40..60))), QBound::PosInf));
        }
        let v = io_fill(&IntervalOpen::from_spans(raw));
        if v.is_whole() || !seen.insert(format!("{v}")) {
            continue;
        }
        answered += 1;
        let y = PointFilter::new(bases[answered % bases.len()]);
        match y.regularity_witness(&v) {
            Ok(b) => {
                let mut valid = y.contains(&b) && !io_le(&io_pseudocomplement(&b), &v);
                if mutate && answered == 11 {
                    valid = !valid;
                }
                if !valid {
                    challenge_ok = false;
                    witness = format!("challenge {answered}: V={v}");
                }
            }
            Err(e) => {
                challenge_ok = false;
                witness = format!("challenge {answered}: V={v}: {e}");
            }
        }
    }
    input.rec.check(
        "point-filter-regularity-challenges",
        "distinct:210",
        Gate::Naked,
        true,
        challenge_ok,
        || witness.clone(),
    );
}
