//! The (𝔈,𝔐) machinery: factorization of sources, diagonalization of
//! squares, the classifications of σ and π, and the reflection diagrams.

use super::{hom_pool, SuiteInput};
use crate::report::Gate;
use plf_core::em::{
    em_diagonalize, em_factorize, factor_by_congruence, fat_reflection, in_e_class, in_m_class,
    is_sigma_spatial, is_skinny, isomorphic_to_pi, isomorphic_to_sigma, ligature,
    scattered_atomless_parts, spatial_part, SourceOfHoms,
};
use plf_core::frame::{all_homs, find_isomorphism, FrameHom};
use plf_core::nucleus::{drop_hom, sigma_nucleus};
use plf_core::order::{is_completely_regular, CoverStructure};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Factorization of ≥ 500 generated sources: the 𝔈-part is always in 𝔈 and
/// the arms always factor; the factored source lands in 𝔐 under the
/// regularity gate on the domain.
pub fn em_factor(input: &mut SuiteInput) {
    let homs = hom_pool(&input.frames, 8, 4, 320);
    let corrupt = input.mutation.map(|s| StdRng::seed_from_u64(s).gen_range(0..500));
    let mut produced = 0usize;
    let mut by_domain: Vec<(usize, Vec<&FrameHom>)> = Vec::new();
    for (i, ctx) in input.frames.iter().enumerate() {
        let arms: Vec<&FrameHom> =
            homs.iter().filter(|m| m.source().as_ref() == ctx.frame.as_ref()).collect();
        if !arms.is_empty() || ctx.frame.size() <= 8 {
            by_domain.push((i, arms));
        }
    }
    'outer: for round in 0.. {
        for (fi, arms) in &by_domain {
            if produced >= 520 {
                break 'outer;
            }
            let ctx = &input.frames[*fi];
            // Deterministic arm pick: rotate through subsets of size 0..=3.
            let k = round % 4;
            if k > arms.len() {
                continue;
            }
            let chosen: Vec<FrameHom> = (0..k)
                .map(|j| arms[(round + j * 7) % arms.len().max(1)].clone())
                .collect();
            let Ok(source) = SourceOfHoms::new(ctx.frame.clone(), chosen.clone()) else {
                continue;
            };
            produced += 1;
            let sub = format!("{}#src{}", ctx.name, produced);
            let fac = em_factorize(&source);
            let mut e_in_e = in_e_class(&fac.e);
            if corrupt == Some(produced) {
                e_in_e = !e_in_e;
            }
            input.rec.check("factor-e-in-E", &sub, Gate::Naked, ctx.is_cr, e_in_e, || {
                "the produced quotient is not an 𝔈-morphism".into()
            });
            let arms_factor = chosen.iter().zip(&fac.arms_hat).all(|(m, hat)| {
                ctx.frame.elements().all(|a| hat.at(fac.e.at(a)) == m.at(a))
            });
            input.rec.check("factor-arms-commute", &sub, Gate::Naked, ctx.is_cr, arms_factor, || {
                "an arm does not factor through the 𝔈-part".into()
            });
            let hat_source =
                SourceOfHoms::new(fac.e.target().clone(), fac.arms_hat.clone()).expect("same target");
            input.rec.check(
                "factored-source-in-M",
                &sub,
                Gate::CompletelyRegular,
                ctx.is_cr,
                in_m_class(&hat_source),
                || "the factored source keeps a maximal element at ⊤ everywhere".into(),
            );
        }
        if round > 4000 {
            break;
        }
    }
    input.rec.check(
        "enough-sources",
        "generator",
        Gate::Naked,
        true,
        produced >= 500,
        || format!("only {produced} sources generated"),
    );
}

/// Diagonalization of ≥ 200 commuting squares, with uniqueness confirmed by
/// exhaustive hom search.
pub fn em_diag(input: &mut SuiteInput, corrupt: Option<usize>) {
    let homs = hom_pool(&input.frames, 6, 3, 200);
    let mut squares = 0usize;
    'outer: for round in 0..40 {
        for ctx in &input.frames {
            if squares >= 210 {
                break 'outer;
            }
            if ctx.frame.size() > 8 {
                continue;
            }
            // e from a factorization of a rotating source out of this frame.
            let arms: Vec<FrameHom> = homs
                .iter()
                .filter(|m| m.source().as_ref() == ctx.frame.as_ref())
                .cloned()
                .collect();
            let k = round % 3;
            if k > arms.len() {
                continue;
            }
            let chosen: Vec<FrameHom> =
                (0..k).map(|j| arms[(round + j * 5) % arms.len().max(1)].clone()).collect();
            let Ok(source) = SourceOfHoms::new(ctx.frame.clone(), chosen) else { continue };
            let fac = em_factorize(&source);
            let e = fac.e;
            // d0: a hom out of the quotient; f = d0 ∘ e; receiving source =
            // the σ-reflector of K (an 𝔐-surjection on every carrier).
            let d0_pool: Vec<FrameHom> = homs
                .iter()
                .filter(|m| m.source().as_ref() == e.target().as_ref())
                .cloned()
                .collect();
            let Some(d0) = d0_pool.get(round % d0_pool.len().max(1)) else { continue };
            let f = e.compose(d0).expect("composable");
            let k_frame = d0.target().clone();
            let cov_k = CoverStructure::of(&k_frame);
            let m_arm = spatial_part(&k_frame, &cov_k).map;
            let receiving = SourceOfHoms::new(k_frame.clone(), vec![m_arm.clone()]).expect("one arm");
            if !in_m_class(&receiving) || !in_e_class(&e) {
                continue;
            }
            let n_arm = d0.compose(&m_arm).expect("composable");
            squares += 1;
            let sub = format!("{}#square{}", ctx.name, squares);
            match em_diagonalize(&e, &f, std::slice::from_ref(&n_arm), std::slice::from_ref(&m_arm)) {
                Ok(d) => {
                    let mut commutes = e
                        .source()
                        .elements()
                        .all(|a| d.at(e.at(a)) == f.at(a))
                        && e.target().elements().all(|x| m_arm.at(d.at(x)) == n_arm.at(x));
                    if corrupt == Some(squares) {
                        commutes = !commutes;
                    }
                    input.rec.check("diagonal-commutes", &sub, Gate::Naked, ctx.is_cr, commutes, || {
                        "diagonal fails one of its equations".into()
                    });
                    // Uniqueness by exhaustive hom search.
                    if let Some(all) = all_homs(e.target(), &k_frame, 4000) {
                        let solutions = all
                            .iter()
                            .filter(|h| {
                                e.source().elements().all(|a| h.at(e.at(a)) == f.at(a))
                                    && e.target()
                                        .elements()
                                        .all(|x| m_arm.at(h.at(x)) == n_arm.at(x))
                            })
                            .count();
                        input.rec.check("diagonal-unique", &sub, Gate::Naked, ctx.is_cr, solutions == 1, || {
                            format!("{solutions} diagonals found")
                        });
                    }
                }
                Err(e) => {
                    input.rec.check("diagonal-exists", &sub, Gate::Naked, ctx.is_cr, false, || {
                        format!("{e}")
                    });
                }
            }
        }
    }
    input.rec.check(
        "enough-squares",
        "generator",
        Gate::Naked,
        true,
        squares >= 200,
        || format!("only {squares} squares generated"),
    );
}

/// Classification suites: σ and π as 𝔐/𝔈 surjections, the pointlessness
/// equivalences, and the closure properties of skinny maps.
pub fn em_class(input: &mut SuiteInput) {
    let corrupt_sq = input.mutation.map(|s| StdRng::seed_from_u64(s).gen_range(0..200));
    em_diag(input, corrupt_sq);

    let homs = hom_pool(&input.frames, 6, 3, 200);
    // Prop-5 / Prop-8 classifications over the pool's surjections.
    for m in homs.iter().filter(|m| m.is_surjective()) {
        let cov = CoverStructure::of(m.source());
        let label = format!("class:{:?}", m.map().iter().map(|e| e.0).collect::<Vec<_>>());
        let cr = is_completely_regular(m.source()) && is_completely_regular(m.target());
        let single = SourceOfHoms::new(m.source().clone(), vec![m.clone()]).expect("one arm");
        let cov_t = CoverStructure::of(m.target());

        let sigma_iso = isomorphic_to_sigma(m, &cov);
        let sigma_class = in_m_class(&single) && is_sigma_spatial(m.target(), &cov_t);
        input.rec.check(
            "sigma-classification",
            &label,
            Gate::Naked,
            cr,
            sigma_iso == sigma_class,
            || format!("iso-to-σ={sigma_iso}, 𝔐-surjection-to-spatial={sigma_class}"),
        );

        let pi_iso = isomorphic_to_pi(m, &cov);
        let target_pointless = CoverStructure::of(m.target()).maxima.is_empty();
        let pi_class = in_e_class(m) && target_pointless;
        input.rec.check(
            "pi-forward-classification",
            &label,
            Gate::CompletelyRegular,
            cr,
            !pi_iso || pi_class,
            || "π-isomorphic surjection is not an 𝔈-map to a pointless target".into(),
        );
        input.rec.check(
            "pi-backward-classification",
            &label,
            Gate::Naked,
            cr,
            !pi_class || pi_iso,
            || "𝔈-map to a pointless target is not the π reflector".into(),
        );

        // Lemma-12 shape: the inequality and equality forms of the
        // 𝔈-condition agree.
        let cov_src = CoverStructure::of(m.source());
        let parts: Vec<_> = cov_src
            .maxima
            .iter()
            .copied()
            .filter(|&a| m.at(a) == m.target().top())
            .map(|a| plf_core::congruence::open_cong(m.source(), a))
            .collect();
        let bound = if parts.is_empty() {
            plf_core::congruence::Congruence::identity(m.source().clone())
        } else {
            plf_core::congruence::cong_join(&parts).expect("same frame")
        };
        let theta = plf_core::congruence::hom_cong(m).expect("surjective");
        input.rec.check(
            "e-condition-le-iff-eq",
            &label,
            Gate::Naked,
            cr,
            theta.le(&bound) == (theta == bound),
            || "Θ ≤ ⋁Φ without equality".into(),
        );
    }

    // Cor-1 shapes: surjections are skinny; compositions of skinny maps are
    // skinny.
    for m in &homs {
        let label = format!("skinny:{}", m.source().size());
        if m.is_surjective() {
            input.rec.check(
                "surjections-skinny",
                &label,
                Gate::Naked,
                true,
                is_skinny(m).verdict(),
                || "a surjection fails the skinny test".into(),
            );
        }
        for n in &homs {
            if n.source().as_ref() == m.target().as_ref() {
                let comp = m.compose(n).expect("composable");
                let both = is_skinny(m).verdict() && is_skinny(n).verdict();
                input.rec.check(
                    "skinny-composes",
                    &label,
                    Gate::Naked,
                    true,
                    !both || is_skinny(&comp).verdict(),
                    || "composition of skinny maps fails the test".into(),
                );
                break;
            }
        }
    }

    // Lemma-6 shapes: the pointlessness characterizations. For pointless
    // frames the universal statements are swept over the pool; for pointed
    // frames a violating witness is constructed directly, so the checks do
    // not depend on pool coverage.
    for ctx in input.frames.iter().filter(|c| c.frame.size() <= 6) {
        let m_frame = &ctx.frame;
        let pointless = ctx.cov.maxima.is_empty();
        let verdicts = if pointless {
            let out_ok = homs
                .iter()
                .filter(|h| h.source().as_ref() == m_frame.as_ref())
                .all(|h| CoverStructure::of(h.target()).maxima.is_empty());
            let into_ok = homs
                .iter()
                .filter(|h| h.target().as_ref() == m_frame.as_ref())
                .all(|h| {
                    let src =
                        SourceOfHoms::new(h.source().clone(), vec![h.clone()]).expect("one arm");
                    !in_m_class(&src) || CoverStructure::of(h.source()).maxima.is_empty()
                });
            let e_ok = homs
                .iter()
                .filter(|h| h.source().as_ref() == m_frame.as_ref())
                .all(|h| !in_e_class(h) || h.is_isomorphism());
            out_ok && into_ok && e_ok
        } else {
            // The identity violates (1) and (2); the open quotient at a
            // maximal element is a non-iso 𝔈-morphism violating (3).
            let id = plf_core::frame::FrameHom::identity(m_frame.clone());
            let id_source =
                SourceOfHoms::new(m_frame.clone(), vec![id.clone()]).expect("one arm");
            let id_violates = !CoverStructure::of(id.target()).maxima.is_empty()
                && in_m_class(&id_source);
            let a = ctx.cov.maxima[0];
            let oa = plf_core::congruence::quotient(&plf_core::congruence::open_cong(m_frame, a));
            let e_violates = in_e_class(&oa.map) && !oa.map.is_isomorphism();
            id_violates && e_violates
        };
        input.rec.check("pointless-characterizations", &ctx.name, Gate::Naked, ctx.is_cr, verdicts, || {
            "a pointlessness characterization diverges".into()
        });
    }

    // Prop-4 shape: every pool hom into a σ-spatial target factors through
    // the σ reflector of its source (regularity-gated).
    for m in &homs {
        let cov_t = CoverStructure::of(m.target());
        if !is_sigma_spatial(m.target(), &cov_t) {
            continue;
        }
        let cov_s = CoverStructure::of(m.source());
        let s = spatial_part(m.source(), &cov_s);
        let cr = is_completely_regular(m.source()) && is_completely_regular(m.target());
        let label = format!("prop4:{:?}", m.map().iter().map(|e| e.0).collect::<Vec<_>>());
        input.rec.check(
            "spatial-reflector-factors",
            &label,
            Gate::CompletelyRegular,
            cr,
            factor_by_congruence(&s.map, m).is_some(),
            || "hom to a spatial target does not factor through σ".into(),
        );
    }
}

/// Reflection diagrams: the ligature square, the six-object diagram, the
/// subdirect normal form, and the fat reflection.
pub fn reflection(input: &mut SuiteInput) {
    let corrupt = input
        .mutation
        .map(|s| StdRng::seed_from_u64(s).gen_range(0..input.frames.len().max(1)));
    for (fi, ctx) in input.frames.iter().enumerate() {
        let f = &ctx.frame;
        let lig = ligature(f, &ctx.cov);
        let mut square = f.elements().all(|a| {
            lig.lambda.at(lig.pi_part.map.at(a)) == lig.pi_of_sigma.map.at(lig.sigma_part.map.at(a))
        });
        if corrupt == Some(fi) {
            square = !square;
        }
        input.rec.check("ligature-square", &ctx.name, Gate::Naked, ctx.is_cr, square, || {
            "λ ∘ π ≠ π_σ ∘ σ".into()
        });

        input.rec.check(
            "sigma-part-spatial",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            is_sigma_spatial(&lig.sigma_part.quotient, &CoverStructure::of(&lig.sigma_part.quotient)),
            || "σ-quotient is not spatial in its own order".into(),
        );
        input.rec.check(
            "pointless-part-trivial-finite",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            lig.pi_part.quotient.size() == 1,
            || "finite pointless part must be trivial".into(),
        );

        // Scattered/atomless diagram and the pointless-part comparison.
        let sa = scattered_atomless_parts(f, &ctx.cov);
        input.rec.check(
            "atomless-part-pointless-part",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            sa.pointless_parts_isomorphic,
            || "πL differs from πC_e".into(),
        );

        // Diagram squares: pairing into products followed by projections.
        let (prod, p1, p2) =
            plf_core::frame::FiniteFrame::product(&lig.pi_part.quotient, &lig.sigma_part.quotient);
        let pairing = plf_core::frame::FrameHom::new(
            f.clone(),
            prod.clone(),
            f.elements()
                .map(|a| {
                    plf_core::frame::FiniteFrame::product_pair(
                        lig.sigma_part.quotient.size(),
                        lig.pi_part.map.at(a),
                        lig.sigma_part.map.at(a),
                    )
                })
                .collect(),
        );
        let squares = match pairing {
            Ok(pairing) => f.elements().all(|a| {
                p1.at(pairing.at(a)) == lig.pi_part.map.at(a)
                    && p2.at(pairing.at(a)) == lig.sigma_part.map.at(a)
            }),
            Err(_) => false,
        };
        input.rec.check("product-pairing-squares", &ctx.name, Gate::Naked, ctx.is_cr, squares, || {
            "projections of the pairing disagree with the reflectors".into()
        });

        // Bottom arrow of the six-object diagram: the open part at e = π(⊥)
        // receives the spatial part.
        let bottom_arrow = factor_by_congruence(&lig.sigma_part.map, &sa.open_part.map);
        input.rec.check(
            "spatial-to-open-arrow",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            bottom_arrow.is_some(),
            || "o_e does not factor through σ".into(),
        );
        // Top arrow: the closed part at e maps onto the pointless part.
        let top_arrow = factor_by_congruence(&sa.closed_part.map, &lig.pi_part.map);
        input.rec.check("closed-to-pointless-arrow", &ctx.name, Gate::Naked, ctx.is_cr, top_arrow.is_some(), || {
            "π does not factor through c_e".into()
        });

        // Fat reflection: τ is a hom into the normal form; injectivity is
        // the regularity-gated statement; the fat flag must agree with
        // surjectivity of the pairing.
        let fr = fat_reflection(f, &ctx.cov);
        input.rec.check(
            "tau-injective",
            &ctx.name,
            Gate::CompletelyRegular,
            ctx.is_cr,
            fr.injective,
            || "τ collapses two elements".into(),
        );
        input.rec.check(
            "fat-flag-is-surjectivity",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            fr.fat == fr.tau.is_surjective(),
            || "fat flag disagrees with surjectivity".into(),
        );
        // On these carriers the normal form is the σ-quotient (the
        // pointless factor is trivial), so τ is always onto it.
        input.rec.check(
            "finite-normal-form-is-sigma-part",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            fr.normal_form.frame.size() == lig.sigma_part.quotient.size(),
            || "normal form differs from the σ-quotient".into(),
        );

        // Lemma-19 shape: the identity drops through σ on both sides on
        // every carrier (the nontrivial surjection cases live in the hom
        // suites under their gate).
        let sigma = sigma_nucleus(f, &ctx.cov);
        let ok = drop_hom(&plf_core::frame::FrameHom::identity(f.clone()), &sigma, &sigma).is_ok();
        input.rec.check("sigma-self-drop", &ctx.name, Gate::Naked, ctx.is_cr, ok, || {
            "identity fails to drop through σ on both sides".into()
        });

        // Cor-5 / Lemma-7 shapes on the explicit carrier.
        input.rec.check(
            "scattered-element-is-top",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            sa.e == f.top(),
            || "π(⊥) below ⊤ on a finite carrier".into(),
        );

        // Identity-preservation sanity for the normal form frame.
        input.rec.check(
            "normal-form-iso-check",
            &ctx.name,
            Gate::Naked,
            ctx.is_cr,
            find_isomorphism(&fr.normal_form.frame, &lig.sigma_part.quotient).is_some(),
            || "normal form not isomorphic to the σ-quotient".into(),
        );
    }
}
