//! Point attachment: maximal-element shapes, closure under the frame
//! operations, the rather-below witness recipes, quotient coherence, and
//! the self-reproduction of the pairing map.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::attach::{
    lemma32_partial_check, lw_cr_stages, lw_join, lw_max, lw_meet, lw_pi_project,
    lw_projection_meet_identity, lw_shrink_witness, lw_sigma_project, lw_validate_maximal,
    lw_witness_combel, AttachmentSpec, KxQuotient, LwElement,
};
use plf_core::rline::{io_completely_below, io_fill, io_pseudocomplement, IntervalOpen, Q, QBound};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

fn sample_specs() -> Vec<AttachmentSpec> {
    // W of sizes 1–4 at distinct rationals, mixed denominators.
    vec![
        AttachmentSpec::new(vec![Q::from_integer(0)]).unwrap(),
        AttachmentSpec::new(vec![Q::from_integer(0), Q::from_integer(1)]).unwrap(),
        AttachmentSpec::new(vec![Q::from_integer(0), Q::new(5, 2), Q::from_integer(5)]).unwrap(),
        AttachmentSpec::new(vec![
            Q::new(-3, 2),
            Q::from_integer(0),
            Q::new(7, 3),
            Q::from_integer(4),
        ])
        .unwrap(),
    ]
}

/// A random element of the attachment frame: a filled random body with a
/// random admissible flag subset.
fn random_element(spec: &AttachmentSpec, rng: &mut StdRng) -> LwElement {
    let k = rng.gen_range(0..4);
    let mut raw = Vec::new();
    for _ in 0..k {
        let base = Q::new(rng.gen_range(-40..60), rng.gen_range(1..6));
        let width = Q::new(rng.gen_range(1..40), rng.gen_range(1..4));
        raw.push((QBound::Fin(base), QBound::Fin(base + width)));
    }
    if rng.gen_bool(0.2) {
        raw.push((QBound::NegInf, QBound::Fin(Q::new(rng.gen_range(-60..-40), 1))));
    }
    if rng.gen_bool(0.2) {
        raw.push((QBound::Fin(Q::new(rng.gen_range(60..80), 1)), QBound::PosInf));
    }
    let body = io_fill(&IntervalOpen::from_spans(raw));
    let admissible = spec.flags_of(&body);
    let flags: BTreeSet<usize> =
        admissible.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
    LwElement::new(spec, flags, body).expect("admissible flags by construction")
}

pub fn attach(input: &mut SuiteInput) {
    let mutate = input.mutation.is_some();
    let specs = sample_specs();
    let mut rng = StdRng::seed_from_u64(input.rng.gen());

    // Maximal elements: count, shape, and the maximality probe.
    for (si, spec) in specs.iter().enumerate() {
        let maxima = lw_max(spec);
        let mut shape_ok = maxima.len() == spec.len();
        for (w, m) in maxima.iter().enumerate() {
            let expect: BTreeSet<usize> = (0..spec.len()).filter(|&i| i != w).collect();
            if m.flags != expect || !m.body.is_whole() || !lw_validate_maximal(spec, m) {
                shape_ok = false;
            }
        }
        if mutate && si == 0 {
            shape_ok = !shape_ok;
        }
        input.rec.check(
            "maxima-shape",
            &format!("W{}", spec.len()),
            Gate::Naked,
            true,
            shape_ok,
            || "maximal elements differ from the drop-one-flag form".into(),
        );
    }

    // Closure of meets and joins plus the projection identity and the
    // atomlessness witness, randomized: ≥ 1000 cases.
    let mut closure_ok = true;
    let mut closure_witness = String::new();
    for i in 0..1100 {
        let spec = &specs[i % specs.len()];
        let e1 = random_element(spec, &mut rng);
        let e2 = random_element(spec, &mut rng);
        let meet = lw_meet(spec, &e1, &e2);
        let join = lw_join(spec, &[e1.clone(), e2.clone()]);
        let mut ok = match (&meet, &join) {
            (Ok(m), Ok(j)) => {
                let mut flags_ok = true;
                for e in [m, j] {
                    for &fl in &e.flags {
                        if !spec.filter(fl).contains(&e.body) {
                            flags_ok = false;
                        }
                    }
                }
                let expected_meet_flags: BTreeSet<usize> =
                    e1.flags.intersection(&e2.flags).copied().collect();
                flags_ok
                    && m.flags == expected_meet_flags
                    && m.le(&e1)
                    && m.le(&e2)
                    && e1.le(j)
                    && e2.le(j)
                    && lw_projection_meet_identity(spec, m)
                    && lw_projection_meet_identity(spec, j)
            }
            _ => false,
        };
        if mutate && i == 33 {
            ok = !ok;
        }
        if !ok && closure_ok {
            closure_ok = false;
            closure_witness = format!("case {i}: {e1} vs {e2}");
        }
        // Atomlessness witness below any nonbottom element.
        if let Ok(j) = &join {
            if !j.is_bottom() {
                match lw_shrink_witness(j) {
                    Some(w) => {
                        if !(w.le(j) && w != *j && !w.is_bottom()) {
                            closure_ok = false;
                        }
                    }
                    None => closure_ok = false,
                }
            }
        }
    }
    input.rec.check("closure-and-projections", "randomized:1100", Gate::Naked, true, closure_ok, || {
        closure_witness.clone()
    });

    // σ/π projections land where they should.
    for spec in &specs {
        let e = random_element(spec, &mut rng);
        let pi = lw_pi_project(spec, &e);
        let sg = lw_sigma_project(&e);
        let ok = pi.flags == spec.flags_of(&e.body) && pi.body == e.body && sg.body.is_whole();
        input.rec.check(
            "projection-shapes",
            &format!("W{}", spec.len()),
            Gate::Naked,
            true,
            ok,
            || "a projection has the wrong shape".into(),
        );
    }

    // Rather-below witness recipe, randomized over partitions: ≥ 1000
    // validated constructions (skipped draws do not count).
    let mut witness_ok = true;
    let mut witness_witness = String::new();
    let mut validated = 0usize;
    let mut i = 0usize;
    while validated < 1020 && i < 20_000 {
        i += 1;
        let spec = &specs[1 + (i % (specs.len() - 1))];
        // Random nonempty Y.
        let y: BTreeSet<usize> =
            (0..spec.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let z: Vec<usize> = (0..spec.len()).filter(|i| !y.contains(i)).collect();
        // t(z): a small ball strictly avoiding the flagged points.
        let t: Vec<(usize, IntervalOpen)> = z
            .iter()
            .map(|&zi| {
                let denom = Q::from_integer(rng.gen_range(2..6));
                (zi, spec.ball(zi, spec.safe_radius(zi) / denom))
            })
            .collect();
        // a: a union of balls around the flagged points trimmed below every
        // t(z)*; c: its shrink.
        let mut a = IntervalOpen::empty();
        for &yi in &y {
            let r = spec.safe_radius(yi) / Q::from_integer(rng.gen_range(2..5));
            a = plf_core::rline::io_join(&a, &spec.ball(yi, r));
        }
        if y.is_empty() {
            a = spec.ball(0, spec.safe_radius(0));
        }
        for (_, tz) in &t {
            a = plf_core::rline::io_meet(&a, &io_pseudocomplement(tz));
        }
        let c = {
            let mut raw = Vec::new();
            for s in a.spans() {
                if let (QBound::Fin(lo), QBound::Fin(hi)) = (s.lo, s.hi) {
                    let margin = (hi - lo) / 8;
                    raw.push((QBound::Fin(lo + margin), QBound::Fin(hi - margin)));
                }
            }
            IntervalOpen::from_spans(raw)
        };
        if c.is_empty() || !io_completely_below(&c, &a) {
            continue;
        }
        // c must still contain the flagged points; the margin construction
        // keeps the centers.
        if y.iter().any(|&yi| !spec.filter(yi).contains(&c)) {
            continue;
        }
        match lw_witness_combel(spec, &y, &t, &c, &a) {
            Ok(w) => {
                validated += 1;
                let mut ok = w.meets_to_bottom && w.joins_to_top;
                if mutate && validated == 13 {
                    ok = !ok;
                }
                if !ok && witness_ok {
                    witness_ok = false;
                    witness_witness = format!("case {i}");
                }
            }
            Err(e) => {
                validated += 1;
                witness_ok = false;
                witness_witness = format!("case {i}: {e}");
            }
        }
    }
    witness_ok &= validated >= 1000;
    input.rec.check(
        "rather-below-witnesses",
        &format!("validated:{validated}"),
        Gate::Naked,
        true,
        witness_ok,
        || witness_witness.clone(),
    );

    // Complete-regularity stages on random elements: each stage validates
    // and the partial joins grow below the element.
    let mut cr_ok = true;
    for i in 0..120 {
        let spec = &specs[i % specs.len()];
        let e = random_element(spec, &mut rng);
        if e.body.is_empty() {
            continue;
        }
        match lw_cr_stages(spec, &e, 3) {
            Ok((stages, partials)) => {
                if !stages.iter().all(|s| s.witness_ok && s.minor.le(&e)) {
                    cr_ok = false;
                }
                if !partials.windows(2).all(|w| w[0].le(&w[1])) {
                    cr_ok = false;
                }
                if let Some(last) = partials.last() {
                    if !last.le(&e) {
                        cr_ok = false;
                    }
                }
            }
            Err(_) => cr_ok = false,
        }
    }
    input.rec.check("cr-stage-witnesses", "randomized:120", Gate::Naked, true, cr_ok, || {
        "a regularity stage failed its witness checks".into()
    });

    // Quotient coherence over every X′ ⊆ X ⊆ W on the 3-point spec.
    let spec3 = &specs[2];
    let mut coher_ok = true;
    for xmask in 1u32..8 {
        let x: BTreeSet<usize> = (0..3).filter(|i| xmask & (1 << i) != 0).collect();
        let kx = KxQuotient::new(spec3, &x).unwrap();
        for pmask in 1u32..8 {
            let xp: BTreeSet<usize> = (0..3).filter(|i| pmask & (1 << i) != 0).collect();
            if !xp.is_subset(&x) {
                continue;
            }
            let direct = KxQuotient::new(spec3, &xp).unwrap();
            // Re-index X′ inside X.
            let inner: BTreeSet<usize> = kx
                .kept
                .iter()
                .enumerate()
                .filter(|(_, orig)| xp.contains(orig))
                .map(|(new, _)| new)
                .collect();
            let second = KxQuotient::new(&kx.sub_spec, &inner).unwrap();
            for _ in 0..25 {
                let e = random_element(spec3, &mut rng);
                let mut lhs = direct.apply(&e);
                if mutate && e.flags.len() == 2 {
                    lhs = LwElement::top(&direct.sub_spec);
                }
                if lhs != second.apply(&kx.apply(&e)) {
                    coher_ok = false;
                }
            }
        }
    }
    input.rec.check("quotient-coherence", "W3-all-subsets", Gate::Naked, true, coher_ok, || {
        "restriction along nested subsets disagrees".into()
    });

    // Quotients are 𝔈-like at witness level: maxima outside X collapse.
    for spec in specs.iter().filter(|s| s.len() >= 2) {
        let x: BTreeSet<usize> = [0].into();
        let kx = KxQuotient::new(spec, &x).unwrap();
        let maxima = lw_max(spec);
        let ok = (1..spec.len()).all(|w| kx.apply(&maxima[w]) == LwElement::top(&kx.sub_spec))
            && kx.apply(&maxima[0]) != LwElement::top(&kx.sub_spec);
        input.rec.check(
            "quotient-collapses-dropped-maxima",
            &format!("W{}", spec.len()),
            Gate::Naked,
            true,
            ok,
            || "a dropped maximal element did not collapse".into(),
        );
    }

    // Self-reproduction of the pairing map on random samples, with the
    // preimage recipe hitting random targets exactly.
    let mut prop19_ok = true;
    let mut prop19_witness = String::new();
    for i in 0..400 {
        let spec = &specs[i % specs.len()];
        let e = random_element(spec, &mut rng);
        let mut k = plf_core::attach::prop19_map(spec, &e);
        if mutate && i == 5 {
            k = LwElement::top(spec);
        }
        if k != e {
            prop19_ok = false;
            prop19_witness = format!("k({e}) = {k}");
        }
        // Preimage recipe on the π-image with a random flag subset.
        let w_b = spec.flags_of(&e.body);
        let z: BTreeSet<usize> = w_b.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let target = LwElement::new(spec, z, e.body.clone()).expect("subset of admissible flags");
        match plf_core::attach::prop19_preimage(spec, &target) {
            Ok(pre) => {
                if plf_core::attach::prop19_map(spec, &pre) != target {
                    prop19_ok = false;
                    prop19_witness = format!("preimage misses {target}");
                }
            }
            Err(_) => {
                prop19_ok = false;
            }
        }
    }
    input.rec.check("pairing-self-reproduction", "randomized:400", Gate::Naked, true, prop19_ok, || {
        prop19_witness.clone()
    });
    input.rec.check(
        "pairing-top",
        "all-specs",
        Gate::Naked,
        true,
        specs.iter().all(|s| plf_core::attach::prop19_map(s, &LwElement::top(s)) == LwElement::top(s)),
        || "k(⊤) ≠ ⊤".into(),
    );

    // Spatial support of the attachment frame is the attachment family:
    // membership in the filter of each maximal element agrees with the
    // point filter, on samples.
    let mut support_ok = true;
    for spec in &specs {
        let maxima = lw_max(spec);
        for _ in 0..60 {
            let e = random_element(spec, &mut rng);
            let pi = lw_pi_project(spec, &e);
            for (w, m) in maxima.iter().enumerate() {
                let in_y_max = !pi.le(m);
                let in_point_filter = spec.filter(w).contains(&pi.body);
                if in_y_max != in_point_filter {
                    support_ok = false;
                }
            }
        }
    }
    input.rec.check("spatial-support-is-w", "randomized:60/spec", Gate::Naked, true, support_ok, || {
        "y_max membership disagrees with the point filter".into()
    });

    // The attachment frame as the subdirect normal form over the powerset
    // factor: maximal elements correspond to (whole-body, drop-one-flag)
    // pairs, the flag projection is onto the full powerset, and the body
    // projection hits sampled fragment elements.
    for spec in &specs {
        let maxima = lw_max(spec);
        let maxima_match = maxima.iter().enumerate().all(|(w, m)| {
            m.body.is_whole() && m.flags.len() == spec.len() - 1 && !m.flags.contains(&w)
        });
        let powerset_onto = (0u32..(1 << spec.len())).all(|mask| {
            let flags: BTreeSet<usize> =
                (0..spec.len()).filter(|i| mask & (1 << i) != 0).collect();
            LwElement::new(spec, flags, IntervalOpen::whole()).is_ok()
        });
        let mut body_onto = true;
        for _ in 0..40 {
            let body = io_fill(&random_element(spec, &mut rng).body);
            let flags = spec.flags_of(&body);
            if LwElement::new(spec, flags, body).is_err() {
                body_onto = false;
            }
        }
        input.rec.check(
            "normal-form-correspondence",
            &format!("W{}", spec.len()),
            Gate::Naked,
            true,
            maxima_match && powerset_onto && body_onto,
            || "the product-side correspondence failed".into(),
        );
    }

    // Witness transfer from the fragment into the attachment frame: c ≪ a
    // between unpunctured bodies transfers to the embedded pairs, with the
    // embedded pseudocomplement as the separating witness.
    let mut transfer_ok = true;
    let mut transfer_witness = String::new();
    for i in 0..300 {
        let spec = &specs[i % specs.len()];
        let a = io_fill(&random_element(spec, &mut rng).body);
        if a.is_empty() {
            continue;
        }
        // Shrink a into c ≪ a.
        let mut raw = Vec::new();
        for s in a.spans() {
            if let (QBound::Fin(lo), QBound::Fin(hi)) = (s.lo, s.hi) {
                let t = (hi - lo) / 8;
                raw.push((QBound::Fin(lo + t), QBound::Fin(hi - t)));
            }
        }
        let c = IntervalOpen::from_spans(raw);
        if c.is_empty() || !io_completely_below(&c, &a) {
            continue;
        }
        let cstar = io_pseudocomplement(&c);
        let e_c = LwElement { flags: spec.flags_of(&c), body: c.clone() };
        let e_a = LwElement { flags: spec.flags_of(&a), body: a.clone() };
        let e_w = LwElement { flags: spec.flags_of(&cstar), body: cstar.clone() };
        // Flags of c and c* split W: every point filter contains c* ∨ a
        // (the union is the whole line), so the witness flags complete the
        // a-flags.
        let meet_bottom = match lw_meet(spec, &e_c, &e_w) {
            Ok(m) => m.is_bottom(),
            Err(_) => false,
        };
        let join_top = match lw_join(spec, &[e_a.clone(), e_w.clone()]) {
            Ok(j) => j == LwElement::top(spec),
            Err(_) => false,
        };
        if !(meet_bottom && join_top) {
            transfer_ok = false;
            transfer_witness = format!("case {i}: c={c}, a={a}");
        }
    }
    input.rec.check("embedded-witness-transfer", "randomized:300", Gate::Naked, true, transfer_ok, || {
        transfer_witness.clone()
    });

    // Non-compactness witness: a point filter at a fresh rational is
    // independent of the attachment family, and the cover formed by the
    // pseudocomplements of its members admits no finite subcover — the
    // partial joins stay strictly below ⊤ while their flags sweep all of W.
    for spec in &specs {
        let fresh = plf_core::rline::PointFilter::new(Q::new(1_000_003, 7));
        let mut acc_flags: BTreeSet<usize> = BTreeSet::new();
        let mut acc_body = IntervalOpen::empty();
        let mut ok = true;
        for k in 1..=5i64 {
            let member = IntervalOpen::span(
                QBound::Fin(fresh.base - Q::new(1, k)),
                QBound::Fin(fresh.base + Q::new(1, k)),
            );
            if !fresh.contains(&member) {
                ok = false;
            }
            let bstar = io_pseudocomplement(&member);
            acc_flags.extend(spec.flags_of(&bstar));
            acc_body = match plf_core::rline::pl_join(&[acc_body.clone(), bstar]) {
                Ok(b) => b,
                Err(_) => {
                    ok = false;
                    break;
                }
            };
            if acc_body.is_whole() {
                ok = false;
            }
        }
        ok &= acc_flags.len() == spec.len();
        input.rec.check(
            "fresh-filter-cover-no-finite-subcover",
            &format!("W{}", spec.len()),
            Gate::Naked,
            true,
            ok,
            || "a finite subjoin reached ⊤ or missed the family".into(),
        );
    }

    // Partial-join evidence toward the maximal elements.
    for spec in &specs {
        let members: Vec<IntervalOpen> =
            (1..=5).map(|k| spec.ball(0, spec.safe_radius(0) / Q::from_integer(1 << k))).collect();
        match lemma32_partial_check(spec, 0, &members) {
            Ok(rep) => {
                let ok = rep.monotone
                    && rep.body_strictly_below_top
                    && (spec.len() == 1 || rep.flags_reach_complement);
                input.rec.check(
                    "max-element-partial-joins",
                    &format!("W{}", spec.len()),
                    Gate::Naked,
                    true,
                    ok,
                    || "partial joins misbehave".into(),
                );
            }
            Err(e) => {
                input.rec.check(
                    "max-element-partial-joins",
                    &format!("W{}", spec.len()),
                    Gate::Naked,
                    true,
                    false,
                    || format!("{e}"),
                );
            }
        }
    }
}
