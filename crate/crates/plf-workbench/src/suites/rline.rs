//! The interval-carrier suite: generator relations over the full small
//! rational grid, randomized nucleus and adjunction laws, and the
//! exhaustive unpuncturedness scan for the pointless meet.

use super::SuiteInput;
use crate::report::Gate;
use plf_core::rline::{
    io_fill, io_heyting, io_is_punctured, io_le, io_meet, io_pseudocomplement, pl_meet,
    prop16_check, IntervalOpen, Q, QBound,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// All reduced rationals with numerator and denominator bounded by 10 in
/// absolute value.
fn small_rationals(bound: i64) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for n in -bound..=bound {
        for d in 1..=bound {
            let q = Q::new(n, d);
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out.sort();
    out
}

fn random_open(rng: &mut StdRng) -> IntervalOpen {
    let k = rng.gen_range(0..4);
    let mut raw = Vec::new();
    for _ in 0..k {
        let lo = match rng.gen_range(0..10) {
            0 => QBound::NegInf,
            _ => QBound::Fin(Q::new(rng.gen_range(-30..30), rng.gen_range(1..8))),
        };
        let hi = match rng.gen_range(0..10) {
            0 => QBound::PosInf,
            _ => QBound::Fin(Q::new(rng.gen_range(-30..30), rng.gen_range(1..8))),
        };
        raw.push((lo, hi));
    }
    IntervalOpen::from_spans(raw)
}

pub fn rline(input: &mut SuiteInput) {
    let mutate = input.mutation.is_some();
    // Relations (1) and (2), exact over the grid.
    let grid = small_rationals(10);
    let mut rel1_ok = true;
    let mut rel2_ok = true;
    let mut witness = String::new();
    for &p in &grid {
        for &q in &grid {
            let r = prop16_check(p, q, 0);
            let mut join_top = r.rel1_join_is_top;
            if mutate && p == q && p == Q::from_integer(0) {
                join_top = !join_top;
            }
            if join_top != (p <= q) {
                rel1_ok = false;
                witness = format!("rel1 at p={p}, q={q}");
            }
            // The stated relation is the direction p > q ⇒ ⊥; the carrier
            // has the sharper iff with p ≥ q.
            if p > q && !r.rel2_meet_is_bottom {
                rel2_ok = false;
                witness = format!("rel2 at p={p}, q={q}");
            }
            if r.rel2_meet_is_bottom != (p >= q) {
                rel2_ok = false;
                witness = format!("rel2-exact at p={p}, q={q}");
            }
        }
    }
    input.rec.check("generator-join-relation", "grid<=10", Gate::Naked, true, rel1_ok, || witness.clone());
    input.rec.check("generator-meet-relation", "grid<=10", Gate::Naked, true, rel2_ok, || witness.clone());

    // Relations (3), (4) as monotone finite evidence on a sample of pairs.
    let mut rel34_ok = true;
    for &p in grid.iter().step_by(17) {
        for &q in grid.iter().step_by(23) {
            let r = prop16_check(p, q, 8);
            if !(r.rel3_right_monotone
                && r.rel3_right_strictly_below
                && r.rel3_left_monotone
                && r.rel3_left_strictly_below
                && r.rel4_meet_monotone_down
                && r.rel4_meet_never_bottom
                && r.rel4_join_monotone_up
                && r.rel4_join_never_top
                && !r.limit_semantics_asserted)
            {
                rel34_ok = false;
            }
        }
    }
    input.rec.check("generator-sup-evidence", "sampled-grid", Gate::Naked, true, rel34_ok, || {
        "a monotone approximation claim failed".into()
    });

    // Randomized fill-nucleus laws: ≥ 1000 cases.
    let mut rng = StdRng::seed_from_u64(input.rng.gen());
    let mut fill_ok = true;
    let mut fill_witness = String::new();
    for i in 0..1100 {
        let u = random_open(&mut rng);
        let v = random_open(&mut rng);
        let mut fu = io_fill(&u);
        if mutate && i == 77 {
            fu = u.clone();
            if io_is_punctured(&u) {
                // Mutated fill skips the merge; idempotence check below
                // still sees a punctured result.
            } else {
                fu = IntervalOpen::empty();
            }
        }
        let lawful = io_le(&u, &fu)
            && io_fill(&fu) == fu
            && (!io_le(&u, &v) || io_le(&io_fill(&u), &io_fill(&v)))
            && io_fill(&io_meet(&u, &v)) == io_meet(&io_fill(&u), &io_fill(&v))
            && !io_is_punctured(&io_fill(&u));
        if !lawful && fill_ok {
            fill_ok = false;
            fill_witness = format!("case {i}: u={u}, v={v}");
        }
    }
    input.rec.check("fill-nucleus-laws", "randomized:1100", Gate::Naked, true, fill_ok, || {
        fill_witness.clone()
    });

    // Randomized Heyting adjunction: ≥ 1000 cases.
    let mut adj_ok = true;
    let mut adj_witness = String::new();
    for i in 0..1100 {
        let u = random_open(&mut rng);
        let v = random_open(&mut rng);
        let w = random_open(&mut rng);
        if io_le(&w, &io_heyting(&u, &v)) != io_le(&io_meet(&w, &u), &v) {
            adj_ok = false;
            adj_witness = format!("case {i}: u={u}, v={v}, w={w}");
        }
    }
    input.rec.check("heyting-adjunction", "randomized:1100", Gate::Naked, true, adj_ok, || {
        adj_witness.clone()
    });

    // Pseudocomplement closure laws on the same stream.
    let mut star_ok = true;
    for _ in 0..1100 {
        let u = random_open(&mut rng);
        let star = io_pseudocomplement(&u);
        let star2 = io_pseudocomplement(&star);
        if !(io_meet(&u, &star).is_empty()
            && io_le(&u, &star2)
            && io_pseudocomplement(&star2) == star)
        {
            star_ok = false;
        }
    }
    input.rec.check("pseudocomplement-closure", "randomized:1100", Gate::Naked, true, star_ok, || {
        "u ≤ u** or u* = u*** failed".into()
    });

    // Exhaustive unpuncturedness of the pointless meet over grid shapes of
    // up to 4 intervals on 9 grid points: sorted distinct endpoints paired
    // consecutively are exactly the unpunctured shapes.
    let points: Vec<QBound> = (0..9).map(|i| QBound::Fin(Q::from_integer(i))).collect();
    let mut shapes: Vec<IntervalOpen> = Vec::new();
    for mask in 0u32..(1 << 9) {
        if mask.count_ones() % 2 != 0 || mask.count_ones() > 8 {
            continue;
        }
        let chosen: Vec<QBound> =
            (0..9).filter(|i| mask & (1 << i) != 0).map(|i| points[i]).collect();
        let raw: Vec<(QBound, QBound)> =
            chosen.chunks(2).map(|c| (c[0], c[1])).collect();
        shapes.push(IntervalOpen::from_spans(raw));
    }
    let mut meet_ok = true;
    let mut meet_witness = String::new();
    for u in &shapes {
        for v in &shapes {
            match pl_meet(&[u.clone(), v.clone()]) {
                Ok(m) => {
                    if io_is_punctured(&m) {
                        meet_ok = false;
                        meet_witness = format!("{u} ∧ {v} = {m}");
                    }
                }
                Err(_) => {
                    meet_ok = false;
                    meet_witness = format!("inputs rejected: {u}, {v}");
                }
            }
        }
    }
    input.rec.check(
        "pl-meet-unpunctured-exhaustive",
        &format!("grid-shapes:{}", shapes.len()),
        Gate::Naked,
        true,
        meet_ok,
        || meet_witness.clone(),
    );

    // Randomized unpuncturedness on filled pairs.
    let mut rand_meet_ok = true;
    for _ in 0..1000 {
        let u = io_fill(&random_open(&mut rng));
        let v = io_fill(&random_open(&mut rng));
        if let Ok(m) = pl_meet(&[u, v]) {
            if io_is_punctured(&m) {
                rand_meet_ok = false;
            }
        } else {
            rand_meet_ok = false;
        }
    }
    input.rec.check("pl-meet-unpunctured-random", "randomized:1000", Gate::Naked, true, rand_meet_ok, || {
        "a pointless meet came out punctured".into()
    });

    // Puncture points agree with the openness oracle: p is listed as an
    // abutment exactly when p ∉ u but both punctured half-neighborhoods of
    // p sit inside u, for every candidate endpoint p.
    let mut oracle_ok = true;
    let mut oracle_witness = String::new();
    for i in 0..600 {
        let u = random_open(&mut rng);
        let listed = plf_core::rline::abutments(&u);
        let endpoints: Vec<Q> = u
            .spans()
            .iter()
            .flat_map(|s| [s.lo, s.hi])
            .filter_map(|b| b.q())
            .collect();
        // A scale below half of every positive endpoint gap.
        let mut delta = Q::new(1, 2);
        for &p in &endpoints {
            for &r in &endpoints {
                let d = if p > r { p - r } else { r - p };
                if d > Q::from_integer(0) {
                    delta = delta.min(d / 2);
                }
            }
        }
        for &p in &endpoints {
            let open_at_p = !u.contains_point(p)
                && u.contains_point(p - delta)
                && u.contains_point(p + delta);
            if open_at_p != listed.contains(&p) {
                oracle_ok = false;
                oracle_witness = format!("case {i}: u={u}, p={p}");
            }
        }
    }
    input.rec.check("puncture-successor-oracle", "randomized:600", Gate::Naked, true, oracle_ok, || {
        oracle_witness.clone()
    });

    // The interval carrier is atomless and its scattered layer is trivial:
    // the successor-join nucleus fixes ⊥, and every nonempty sample admits
    // a strictly smaller nonempty element with closure containment.
    let mut atomless_ok = io_fill(&IntervalOpen::empty()) == IntervalOpen::empty();
    for _ in 0..300 {
        let u = io_fill(&random_open(&mut rng));
        if u.is_empty() {
            continue;
        }
        match plf_core::rline::io_interpolate(&IntervalOpen::empty(), &u) {
            Some(_) => {}
            None => atomless_ok = false,
        }
        // A concrete shrink witness strictly between ⊥ and u.
        let s = u.spans()[0];
        let small = match (s.lo, s.hi) {
            (QBound::Fin(a), QBound::Fin(b)) => {
                let t = (b - a) / 4;
                IntervalOpen::span(QBound::Fin(a + t), QBound::Fin(b - t))
            }
            (QBound::NegInf, QBound::Fin(b)) => {
                IntervalOpen::span(QBound::Fin(b - Q::from_integer(2)), QBound::Fin(b - Q::from_integer(1)))
            }
            (QBound::Fin(a), QBound::PosInf) => {
                IntervalOpen::span(QBound::Fin(a + Q::from_integer(1)), QBound::Fin(a + Q::from_integer(2)))
            }
            _ => IntervalOpen::span(QBound::Fin(Q::from_integer(0)), QBound::Fin(Q::from_integer(1))),
        };
        if small.is_empty() || !io_le(&small, &u) || small == u {
            atomless_ok = false;
        }
    }
    input.rec.check("carrier-atomless-scattered-trivial", "randomized:300", Gate::Naked, true, atomless_ok, || {
        "⊥ moved under fill or a sample admitted no shrink".into()
    });
}
