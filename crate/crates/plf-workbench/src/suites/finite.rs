//! Per-frame lemma suites over the downset corpus: cover structure, the σ/π
//! interaction, decompositions, and the first-order membership tests.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::congruence::{closed_cong, cong_join, hom_cong, open_cong, quotient, Congruence};
use plf_core::frame::{Elem, FiniteFrame};
use plf_core::nucleus::{decompose_by_maxima, pi_nucleus, sigma_nucleus};
use plf_core::order::{is_interpolative, is_pointless, is_prime, plus_set, prop13_test, prop23_test};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn mutation_pick(input: &SuiteInput, modulus: usize) -> Option<usize> {
    input.mutation.map(|seed| {
        let mut rng = StdRng::seed_from_u64(seed);
        rng.gen_range(0..modulus.max(1))
    })
}

/// Frame-core invariants: Heyting adjunction, Galois law of right adjoints
/// on the identity, and downset validation.
pub fn frame_laws(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let mut ok = true;
        let mut witness = String::new();
        'scan: for a in f.elements() {
            for b in f.elements() {
                let mut imp = f.heyting(a, b);
                if corrupt == Some(fi) && a == f.top() && b == f.bottom() {
                    // Seeded mutation: corrupt one implication value.
                    imp = f.top();
                }
                for c in f.elements() {
                    if f.le(c, imp) != f.le(f.meet(a, c), b) {
                        ok = false;
                        witness = format!("adjunction at ({a},{b},{c})");
                        break 'scan;
                    }
                }
            }
        }
        input.rec.check("heyting-adjunction", &ctx.name, Gate::Naked, ctx.is_cr, ok, || witness.clone());

        // Downset frames revalidate from their own order table.
        let order: Vec<bool> = (0..f.size())
            .flat_map(|a| (0..f.size()).map(move |b| f.le(Elem(a), Elem(b))))
            .collect();
        let revalidated = FiniteFrame::from_order(f.size(), order).is_ok();
        input.rec.check("downset-validates", &ctx.name, Gate::Naked, ctx.is_cr, revalidated, || {
            "corpus frame failed revalidation".into()
        });

        // The standard congruence outputs all pass compatibility validation.
        let mut congs_ok = true;
        for a in f.elements() {
            congs_ok &= open_cong(f, a).validate().is_ok();
            congs_ok &= closed_cong(f, a).validate().is_ok();
        }
        congs_ok &= plf_core::congruence::dense_cong(f).validate().is_ok();
        input.rec.check("congruence-outputs-validate", &ctx.name, Gate::Naked, ctx.is_cr, congs_ok, || {
            "a standard congruence failed compatibility validation".into()
        });
    }

    // Non-lattice / non-distributive cover specs are rejected, and reported
    // distributivity witnesses actually break the law in the raw order.
    for (name, spec) in &input.rejects {
        let verdict = match FiniteFrame::build(spec) {
            Err(plf_core::frame::FrameError::NotDistributive { witness }) => {
                let order = spec.order_table().expect("reject fixtures are posets");
                let n = spec.size;
                let le = |x: Elem, y: Elem| order[x.0 * n + y.0];
                let glb = |x: Elem, y: Elem| {
                    (0..n).map(Elem).find(|&z| {
                        le(z, x)
                            && le(z, y)
                            && (0..n).map(Elem).all(|w| !(le(w, x) && le(w, y)) || le(w, z))
                    })
                };
                let lub = |x: Elem, y: Elem| {
                    (0..n).map(Elem).find(|&z| {
                        le(x, z)
                            && le(y, z)
                            && (0..n).map(Elem).all(|w| !(le(x, w) && le(y, w)) || le(z, w))
                    })
                };
                let (a, b, c) = witness;
                let lhs = lub(b, c).and_then(|j| glb(a, j));
                let rhs = match (glb(a, b), glb(a, c)) {
                    (Some(x), Some(y)) => lub(x, y),
                    _ => None,
                };
                lhs != rhs || lhs.is_none()
            }
            Err(_) => true,
            Ok(_) => false,
        };
        input.rec.check("reject-nondistributive", name, Gate::Naked, true, verdict, || {
            "fixture validated or carried a bogus witness".into()
        });
    }
}

/// Interval translation maps and the successor-meet inclusion.
pub fn lemma1(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        // (1) c ↦ c∨b and c ↦ c∧a are inverse between [a∧b, a] and [b, a∨b].
        let mut iso_ok = true;
        let mut iso_witness = String::new();
        'outer: for a in f.elements() {
            for b in f.elements() {
                for c in f.interval(f.meet(a, b), a) {
                    let fwd = f.join(c, b);
                    if !(f.le(b, fwd) && f.le(fwd, f.join(a, b))) || f.meet(fwd, a) != c {
                        iso_ok = false;
                        iso_witness = format!("at ({a},{b},{c})");
                        break 'outer;
                    }
                }
                for c in f.interval(b, f.join(a, b)) {
                    let bwd = f.meet(c, a);
                    if f.join(bwd, b) != c {
                        iso_ok = false;
                        iso_witness = format!("inverse at ({a},{b},{c})");
                        break 'outer;
                    }
                }
            }
        }
        input.rec.check("interval-isos", &ctx.name, Gate::Naked, ctx.is_cr, iso_ok, || iso_witness.clone());

        // (2) a ∧ b⁺ ⊆ (a ∧ b)⁺.
        let mut incl_ok = true;
        let mut incl_witness = String::new();
        'outer2: for a in f.elements() {
            for b in f.elements() {
                let mut plus_b = plus_set(f, &ctx.cov, b);
                if corrupt == Some(fi) && b == f.bottom() && f.size() > 1 {
                    // Seeded mutation: inject ⊤ as a bogus successor of ⊥.
                    if !plus_b.contains(&f.top()) {
                        plus_b.push(f.top());
                    }
                }
                let target = plus_set(f, &ctx.cov, f.meet(a, b));
                for &c in &plus_b {
                    if !target.contains(&f.meet(a, c)) {
                        incl_ok = false;
                        incl_witness = format!("a={a}, b={b}, c={c}");
                        break 'outer2;
                    }
                }
            }
        }
        input.rec.check("successor-meet", &ctx.name, Gate::Naked, ctx.is_cr, incl_ok, || incl_witness.clone());
    }
}

/// Maximal elements, atoms, and successors vs. primes and complements.
pub fn lemma2(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let mut maxima = ctx.cov.maxima.clone();
        if corrupt == Some(fi) && f.size() >= 3 {
            // Seeded mutation: declare ⊥ maximal.
            maxima.push(f.bottom());
        }

        // (1) predecessors of ⊤ are exactly the maxima, and every maximal
        // element is prime.
        let pred_top: Vec<Elem> = ctx.cov.predecessors_of(f.top()).to_vec();
        input.rec.check(
            "max-eq-pred-top",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            maxima == pred_top,
            || format!("maxima {maxima:?} vs predecessors {pred_top:?}"),
        );
        input.rec.check(
            "maxima-prime",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            maxima.iter().all(|&m| is_prime(f, m)),
            || "a maximal element fails primeness".into(),
        );
        // Primes below ⊤ are maximal only under the regularity hypothesis.
        let primes_max = f
            .elements()
            .filter(|&p| p != f.top() && is_prime(f, p))
            .all(|p| maxima.contains(&p));
        input.rec.check(
            "primes-are-maxima",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            primes_max,
            || "a prime below top is not maximal".into(),
        );

        // (2) complements of maximal elements are atoms (naked direction);
        // every atom arises this way only under regularity.
        let compl_atoms = maxima.iter().all(|&m| match f.complement(m) {
            Some(c) => ctx.cov.atoms.contains(&c),
            None => true,
        });
        input.rec.check("max-complement-atom", &ctx.name, Gate::Naked, ctx.is_cr, compl_atoms, || {
            "complement of a maximal element is not an atom".into()
        });
        let atoms_from_max = ctx.cov.atoms.iter().all(|&a| {
            maxima.iter().any(|&m| f.complement(m) == Some(a))
        });
        input.rec.check(
            "atoms-from-maxima",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            atoms_from_max,
            || "an atom is not the complement of a maximal element".into(),
        );

        // (3) successors vs. the Heyting residue being maximal.
        let mut back_ok = true;
        let mut fwd_ok = true;
        for b in f.elements() {
            for a in f.elements() {
                if f.lt(b, a) {
                    let residue_max = maxima.contains(&f.heyting(a, b));
                    let succ = ctx.cov.successors_of(b).contains(&a);
                    if residue_max && !succ {
                        back_ok = false;
                    }
                    if succ && !residue_max {
                        fwd_ok = false;
                    }
                }
            }
        }
        input.rec.check("residue-max-gives-successor", &ctx.name, Gate::Naked, ctx.is_cr, back_ok, || {
            "a > b with a→b maximal but a not a successor".into()
        });
        input.rec.check(
            "successor-gives-residue-max",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            fwd_ok,
            || "successor with non-maximal residue".into(),
        );

        // (4) meets with non-dominating maxima are predecessors (naked);
        // every predecessor has that form under regularity.
        let mut meet_pred_ok = true;
        for a in f.elements() {
            for &c in &ctx.cov.maxima {
                if !f.le(a, c) {
                    let b = f.meet(a, c);
                    if !ctx.cov.predecessors_of(a).contains(&b) {
                        meet_pred_ok = false;
                    }
                }
            }
        }
        input.rec.check("max-meet-predecessor", &ctx.name, Gate::Naked, ctx.is_cr, meet_pred_ok, || {
            "a ∧ c is not a predecessor of a".into()
        });
        let mut pred_form_ok = true;
        for a in f.elements() {
            for &b in ctx.cov.predecessors_of(a) {
                let has_form = maxima.iter().any(|&c| !f.le(a, c) && f.meet(a, c) == b);
                if !has_form {
                    pred_form_ok = false;
                }
            }
        }
        input.rec.check(
            "predecessor-has-max-form",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            pred_form_ok,
            || "a predecessor is not a maximal-meet".into(),
        );

        // (6) complemented successors decompose the frame.
        let mut decomp_ok = true;
        let mut decomp_witness = String::new();
        for a in f.elements() {
            for &c in ctx.cov.successors_of(a) {
                let Some(cstar) = f.complement(c) else { continue };
                // b ↦ (b∧c, b∧c*) must be a bijection onto ↓c × ↓c*.
                let mut seen = std::collections::BTreeSet::new();
                for b in f.elements() {
                    seen.insert((f.meet(b, c), f.meet(b, cstar)));
                }
                let down_c = f.interval(f.bottom(), c).len();
                let down_cstar = f.interval(f.bottom(), cstar).len();
                if seen.len() != f.size() || f.size() != down_c * down_cstar {
                    decomp_ok = false;
                    decomp_witness = format!("at successor {c} of {a}");
                }
                if f.meet(a, cstar) != f.bottom() {
                    decomp_ok = false;
                    decomp_witness = format!("a ∧ c* ≠ ⊥ at {a}");
                }
            }
        }
        input.rec.check("complemented-successor-splits", &ctx.name, Gate::Naked, ctx.is_cr, decomp_ok, || {
            decomp_witness.clone()
        });
    }

    // (5) products: maximal elements of one factor give complemented
    // successors in the product. Sampled over small frame pairs.
    let small: Vec<usize> = (0..input.frames.len())
        .filter(|&i| input.frames[i].frame.size() <= 6)
        .collect();
    for &i in &small {
        for &j in &small {
            let (m, n) = (&input.frames[i], &input.frames[j]);
            let (prod, _, _) = FiniteFrame::product(&m.frame, &n.frame);
            let cov_p = plf_core::order::CoverStructure::of(&prod);
            let g = n.frame.size();
            let mut ok = true;
            for &a in &m.cov.maxima {
                let ta = FiniteFrame::product_pair(g, a, n.frame.bottom());
                let tb = FiniteFrame::product_pair(g, m.frame.top(), n.frame.bottom());
                if !cov_p.successors_of(ta).contains(&tb) {
                    ok = false;
                }
                if prod.complement(tb) != Some(FiniteFrame::product_pair(g, m.frame.bottom(), n.frame.top())) {
                    ok = false;
                }
                for b in n.frame.elements() {
                    let lo = FiniteFrame::product_pair(g, a, b);
                    let hi = FiniteFrame::product_pair(g, m.frame.top(), b);
                    if !cov_p.successors_of(lo).contains(&hi) {
                        ok = false;
                    }
                }
            }
            input.rec.check(
                "product-successors",
                &format!("{}x{}", m.name, n.name),
                Gate::Naked,
                m.is_cr && n.is_cr,
                ok,
                || "product successor structure broken".into(),
            );
        }
    }
}

/// Pointless iff interpolative; on explicit finite carriers both reduce to
/// the one-element frame.
pub fn lemma4(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let mut pointless = is_pointless(&ctx.cov);
        if corrupt == Some(fi) {
            pointless = !pointless;
        }
        let interpolative = is_interpolative(&ctx.frame);
        input.rec.check(
            "pointless-iff-interpolative",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            pointless == interpolative,
            || format!("pointless={pointless}, interpolative={interpolative}"),
        );
        input.rec.check(
            "finite-nontrivial-has-points",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            pointless == (ctx.frame.size() == 1),
            || "pointlessness must coincide with triviality here".into(),
        );
    }
}

/// σ(a) ∧ π(a) = a, the disjointness of the two reflections.
pub fn lemma13(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| input.frames[i].is_cr && input.frames[i].frame.size() >= 2)
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let sigma = sigma_nucleus(f, &ctx.cov);
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        let mut holds = true;
        let mut witness = String::new();
        for a in f.elements() {
            let mut s = sigma.at(a);
            if corrupt == Some(fi) && a == f.bottom() {
                s = f.top();
            }
            if f.meet(s, pi.at(a)) != a {
                holds = false;
                witness = format!("σ({a})∧π({a}) = {} ≠ {a}", f.meet(s, pi.at(a)));
                break;
            }
        }
        input.rec.check("sigma-pi-meet-identity", &ctx.name, Gate::CompletelyRegular, ctx.is_cr, holds, || {
            witness.clone()
        });
    }
}

/// The interval isomorphisms around the σ/π diamond.
pub fn lemma20(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| input.frames[i].is_cr && input.frames[i].frame.size() >= 2)
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let sigma = sigma_nucleus(f, &ctx.cov);
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        let mut holds = true;
        let mut witness = String::new();
        for a in f.elements() {
            let pa = pi.at(a);
            let mut sa = sigma.at(a);
            if corrupt == Some(fi) && a == f.bottom() {
                sa = f.top();
            }
            let b = f.join(pa, sa);
            // [a, π(a)] ≅ [σ(a), b] by c ↦ c∨σ(a) with inverse c ↦ c∧π(a).
            for c in f.interval(a, pa) {
                let img = f.join(c, sa);
                if !(f.le(sa, img) && f.le(img, b)) || f.meet(img, pa) != c {
                    holds = false;
                    witness = format!("first iso at a={a}, c={c}");
                }
            }
            // [a, σ(a)] ≅ [π(a), b] by c ↦ c∨π(a) with inverse c ↦ c∧σ(a).
            for c in f.interval(a, sa) {
                let img = f.join(c, pa);
                if !(f.le(pa, img) && f.le(img, b)) || f.meet(img, sa) != c {
                    holds = false;
                    witness = format!("second iso at a={a}, c={c}");
                }
            }
        }
        input.rec.check("interval-diamond-isos", &ctx.name, Gate::CompletelyRegular, ctx.is_cr, holds, || {
            witness.clone()
        });
    }
}

/// b = π(b) ∧ ⋀A(b) along the π-iteration, at every stage.
pub fn lemma33(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| input.frames[i].frame.size() >= 2)
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let mut holds = true;
        let mut witness = String::new();
        for b in f.elements() {
            let d = decompose_by_maxima(f, &ctx.cov, b);
            let mut a_set = d.a_set.clone();
            if corrupt == Some(fi) && b == f.bottom() && f.size() >= 2 {
                // Seeded mutation: forget the collected set entirely.
                a_set = [f.top()].into();
            }
            if f.meet(d.pi_of_b, f.meet_set(a_set.iter().copied())) != b {
                holds = false;
                witness = format!("final stage at b={b}");
            }
            for (pk, ak) in &d.stages {
                if f.meet(*pk, f.meet_set(ak.iter().copied())) != b {
                    holds = false;
                    witness = format!("stage identity at b={b}");
                }
            }
        }
        input.rec.check("pi-meet-decomposition", &ctx.name, Gate::Naked, ctx.is_cr, holds, || witness.clone());
    }
}

/// σ∘π = ⊤ pointwise: the pointless part of a scattered carrier has empty
/// spatial part.
pub fn lemma35(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        if f.size() == 1 {
            input.rec.check("sigma-after-pi-top", &ctx.name, Gate::Naked, ctx.is_cr, true, String::new);
            continue;
        }
        let sigma = sigma_nucleus(f, &ctx.cov);
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        let mut holds = true;
        let mut witness = String::new();
        for a in f.elements() {
            let mut pa = pi.at(a);
            if corrupt == Some(fi) && a == f.bottom() {
                pa = a;
            }
            if sigma.at(pa) != f.top() {
                holds = false;
                witness = format!("σ(π({a})) = {} ≠ ⊤", sigma.at(pa));
            }
        }
        input.rec.check("sigma-after-pi-top", &ctx.name, Gate::Naked, ctx.is_cr, holds, || witness.clone());
    }
}

/// The π kernel: first-order description naked; normal-filter generation by
/// the maxima under the regularity gate.
pub fn prop3(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let (pi, steps) = pi_nucleus(f, &ctx.cov);
        input.rec.check(
            "pi-iteration-bounded",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            steps <= f.size(),
            || format!("{steps} steps"),
        );
        let mut described = plf_core::nucleus::pi_kernel_described(f, &ctx.cov);
        if corrupt == Some(fi) && f.size() > 1 {
            described.remove(&f.top());
        }
        input.rec.check(
            "pi-kernel-description",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            pi.kernel() == described,
            || "kernel differs from its first-order description".into(),
        );
        // Fixed points are the unpunctured elements.
        let fix_ok = f
            .elements()
            .all(|a| (pi.at(a) == a) == ctx.cov.successors_of(a).is_empty());
        input.rec.check("pi-fix-unpunctured", &ctx.name, Gate::Naked, ctx.is_cr, fix_ok, || {
            "fix(π) differs from the unpunctured set".into()
        });

        // σ kernel description: σ(a) = ⊤ exactly when no maximal element
        // sits above a.
        let sigma = sigma_nucleus(f, &ctx.cov);
        let sigma_kernel_ok = f.elements().all(|a| {
            (sigma.at(a) == f.top()) == ctx.cov.maxima.iter().all(|&m| !f.le(a, m))
        });
        input.rec.check("sigma-kernel-description", &ctx.name, Gate::Naked, ctx.is_cr, sigma_kernel_ok, || {
            "ker σ differs from the no-maximal-above description".into()
        });

        // Kernel = normal filter generated by the maxima (regularity-gated).
        let generated = normal_filter_generated_by(f, &ctx.cov.maxima);
        input.rec.check(
            "pi-kernel-generated-by-maxima",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            pi.kernel() == generated,
            || "kernel differs from the generated normal filter".into(),
        );
    }
}

/// Smallest normal filter containing the given elements: close the upset
/// under the induced-nucleus kernel test.
fn normal_filter_generated_by(
    f: &std::sync::Arc<FiniteFrame>,
    gens: &[Elem],
) -> std::collections::BTreeSet<Elem> {
    use plf_core::filter::ExtFilter;
    use plf_core::nucleus::nucleus_from_filter;
    let mut members: std::collections::BTreeSet<Elem> = [f.top()].into();
    for &g in gens {
        for x in f.elements() {
            if f.le(g, x) {
                members.insert(x);
            }
        }
    }
    // Meet/upset closure to a fixpoint, then normal closure by iterating
    // the kernel operator.
    loop {
        loop {
            let before = members.len();
            let snapshot: Vec<Elem> = members.iter().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    members.insert(f.meet(a, b));
                }
            }
            let snapshot: Vec<Elem> = members.iter().copied().collect();
            for &a in &snapshot {
                for x in f.elements() {
                    if f.le(a, x) {
                        members.insert(x);
                    }
                }
            }
            if members.len() == before {
                break;
            }
        }
        let filt = ExtFilter::new(f.clone(), members.clone()).expect("upset meet-closed");
        let kernel = nucleus_from_filter(f, &filt).kernel();
        if kernel == members {
            return members;
        }
        members = kernel;
    }
}

/// The two first-order characterizations of the unpunctured part.
pub fn prop13_23(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let mut holds23 = true;
        let mut agree = true;
        let mut witness = String::new();
        for a in f.elements() {
            let mut p23 = prop23_test(f, a);
            if corrupt == Some(fi) && a == f.top() {
                p23 = !p23;
            }
            let unpunctured = ctx.cov.successors_of(a).is_empty();
            if p23 != unpunctured {
                holds23 = false;
                witness = format!("prime-failure test at {a}");
            }
            if p23 != prop13_test(f, &ctx.cov, a) {
                agree = false;
            }
        }
        input.rec.check("prop23-eq-unpunctured", &ctx.name, Gate::Naked, ctx.is_cr, holds23, || {
            witness.clone()
        });
        input.rec.check(
            "prop13-eq-prop23",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            agree,
            || "the maximal-residue characterization diverges".into(),
        );
    }
}

/// Subdirect decompositions: scattered × atomless pairing is injective on
/// every carrier, pointless × spatial under the regularity gate.
pub fn prop11_14(input: &mut SuiteInput) {
    let corrupt = mutation_pick(input, input.frames.len());
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let sa = plf_core::em::scattered_atomless_parts(f, &ctx.cov);
        let mut pairing = sa.pairing_injective;
        if corrupt == Some(fi) {
            pairing = false;
        }
        input.rec.check("scattered-atomless-injective", &ctx.name, Gate::Naked, ctx.is_cr, pairing, || {
            "open/closed pairing at π(⊥) collapses two elements".into()
        });
        input.rec.check(
            "scattered-part-is-whole",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            sa.e == f.top() && sa.closed_part.quotient.size() == 1,
            || "finite carrier must be scattered".into(),
        );

        let sigma = sigma_nucleus(f, &ctx.cov);
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        let mut seen = std::collections::BTreeSet::new();
        let mut injective = true;
        for a in f.elements() {
            if !seen.insert((sigma.at(a), pi.at(a))) {
                injective = false;
            }
        }
        input.rec.check(
            "pointless-spatial-injective",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            injective,
            || "σ×π pairing collapses two elements".into(),
        );
    }
}

/// Θ_π as the join of the open congruences at the maxima.
pub fn cor2(input: &mut SuiteInput) {
    let eligible: Vec<usize> = (0..input.frames.len())
        .filter(|&i| input.frames[i].is_cr && input.frames[i].cov.maxima.len() >= 2)
        .collect();
    let corrupt = super::pick_among(input.mutation, &eligible);
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let (pi, _) = pi_nucleus(f, &ctx.cov);
        let theta = pi.congruence();
        let mut maxima = ctx.cov.maxima.clone();
        if corrupt == Some(fi) && !maxima.is_empty() {
            maxima.pop();
        }
        let parts: Vec<Congruence> = maxima.iter().map(|&a| open_cong(f, a)).collect();
        let joined = if parts.is_empty() {
            Congruence::identity(f.clone())
        } else {
            cong_join(&parts).expect("same frame")
        };
        input.rec.check(
            "pi-congruence-join-of-opens",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            joined == theta,
            || "Θ_π differs from ⋁Φ over the maxima".into(),
        );
        // The inclusion ⋁Φ ≤ Θ_π needs no gate.
        input.rec.check(
            "opens-below-pi-congruence",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            joined.le(&theta),
            || "some open congruence escapes Θ_π".into(),
        );
        // Quotient sanity: the π quotient map realizes Θ_π.
        let q = quotient(&theta);
        input.rec.check(
            "pi-quotient-kernel",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            hom_cong(&q.map).expect("surjective") == theta,
            || "quotient map kernel differs".into(),
        );
        let _ = closed_cong(f, f.bottom());
    }
}
