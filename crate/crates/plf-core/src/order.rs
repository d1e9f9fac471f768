//! Successor/predecessor structure of a finite frame, the rather-below and
//! completely-below relations, puncturedness, and the Boolean center.
//!
//! Two relations matter here beyond the raw order:
//!
//! * a ≺ b ("rather below"): some c has c∧a = ⊥ and c∨b = ⊤; equivalently
//!   a* ∨ b = ⊤.
//! * a ≪ b ("completely below"): a ≺-chain indexed by the rationals joins a
//!   to b. On a finite carrier a ℚ-indexed witnessing family forces a
//!   repeated element that is rather below itself, i.e. a complemented
//!   interposer a ≤ c ≤ b. We therefore compute ≪ as the greatest fixed
//!   point of interpolation pruning of ≺, and keep the complemented
//!   interposer scan as an independent oracle for cross-checking.

use crate::frame::{Elem, FiniteFrame};
use alloc::vec;
use alloc::vec::Vec;

/// Successors, predecessors, atoms, and maximal elements of a frame.
#[derive(Clone, Debug)]
pub struct CoverStructure {
    pub successors: Vec<Vec<Elem>>,
    pub predecessors: Vec<Vec<Elem>>,
    pub atoms: Vec<Elem>,
    pub maxima: Vec<Elem>,
}

impl CoverStructure {
    pub fn of(f: &FiniteFrame) -> Self {
        let n = f.size();
        let mut successors = vec![Vec::new(); n];
        let mut predecessors = vec![Vec::new(); n];
        for &(lo, hi) in f.covers() {
            successors[lo].push(Elem(hi));
            predecessors[hi].push(Elem(lo));
        }
        let atoms = successors[f.bottom().0].clone();
        let maxima = predecessors[f.top().0].clone();
        CoverStructure { successors, predecessors, atoms, maxima }
    }

    pub fn successors_of(&self, a: Elem) -> &[Elem] {
        &self.successors[a.0]
    }

    pub fn predecessors_of(&self, a: Elem) -> &[Elem] {
        &self.predecessors[a.0]
    }
}

/// a⁺ = {a} ∪ successors(a).
pub fn plus_set(f: &FiniteFrame, cov: &CoverStructure, a: Elem) -> Vec<Elem> {
    let _ = f;
    let mut out = vec![a];
    out.extend_from_slice(cov.successors_of(a));
    out.sort();
    out
}

/// An element is punctured when it has a successor. The witness, when one
/// exists, is a pair (c, b) with c maximal, b > a, and a = c ∧ b; on frames
/// where every element is a join of complemented elements such a witness
/// always exists for punctured a, but a naked carrier may not provide one.
pub fn is_punctured(f: &FiniteFrame, cov: &CoverStructure, a: Elem) -> (bool, Option<(Elem, Elem)>) {
    if cov.successors_of(a).is_empty() {
        return (false, None);
    }
    let witness = cov.maxima.iter().copied().find_map(|c| {
        f.elements().find(|&b| f.lt(a, b) && f.meet(c, b) == a).map(|b| (c, b))
    });
    (true, witness)
}

/// First-order membership test for the unpunctured part: a qualifies iff for
/// every b > a the element b → a fails meet-irreducibility, i.e. there are
/// c₁, c₂ with b∧c₁∧c₂ ≤ a but b∧cᵢ ≰ a.
pub fn prop23_test(f: &FiniteFrame, a: Elem) -> bool {
    f.elements().filter(|&b| f.lt(a, b)).all(|b| {
        f.elements().any(|c1| {
            !f.le(f.meet(b, c1), a)
                && f.elements().any(|c2| {
                    !f.le(f.meet(b, c2), a) && f.le(f.meet(f.meet(b, c1), c2), a)
                })
        })
    })
}

/// The characterization of the unpunctured part by maximal elements:
/// a qualifies iff c → a = a for every maximal c ≥ a. Valid under the
/// complete-regularity hypothesis; on naked carriers it can diverge from
/// [`prop23_test`], which is why both are exposed.
pub fn prop13_test(f: &FiniteFrame, cov: &CoverStructure, a: Elem) -> bool {
    cov.maxima.iter().all(|&c| !f.le(a, c) || f.heyting(c, a) == a)
}

/// Meet-irreducibility in the localic sense: b∧c ≤ a implies b ≤ a or c ≤ a.
pub fn is_prime(f: &FiniteFrame, a: Elem) -> bool {
    f.elements().all(|b| {
        f.elements().all(|c| !f.le(f.meet(b, c), a) || f.le(b, a) || f.le(c, a))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    RatherBelow,
    CompletelyBelow,
}

/// A boolean table over element pairs of one frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationTable {
    pub kind: RelationKind,
    size: usize,
    pairs: Vec<bool>,
}

impl RelationTable {
    pub fn holds(&self, a: Elem, b: Elem) -> bool {
        self.pairs[a.0 * self.size + b.0]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.size;
        (0..n * n).filter(|i| self.pairs[*i]).map(move |i| (Elem(i / n), Elem(i % n)))
    }
}

/// a ≺ b iff a* ∨ b = ⊤ (the pseudocomplement is always the best witness).
pub fn rather_below(f: &FiniteFrame) -> RelationTable {
    let n = f.size();
    let mut pairs = vec![false; n * n];
    for a in f.elements() {
        let star = f.pseudocomplement(a);
        for b in f.elements() {
            pairs[a.0 * n + b.0] = f.join(star, b) == f.top();
        }
    }
    RelationTable { kind: RelationKind::RatherBelow, size: n, pairs }
}

/// ≪ as the greatest fixed point of interpolation pruning: start from ≺ and
/// repeatedly retain (a,b) only when some c has both (a,c) and (c,b)
/// retained.
pub fn completely_below(f: &FiniteFrame) -> RelationTable {
    let n = f.size();
    let mut cur = rather_below(f).pairs;
    loop {
        let mut next = vec![false; n * n];
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if cur[a * n + b] {
                    let keep = (0..n).any(|c| cur[a * n + c] && cur[c * n + b]);
                    next[a * n + b] = keep;
                    changed |= !keep;
                }
            }
        }
        if !changed {
            return RelationTable { kind: RelationKind::CompletelyBelow, size: n, pairs: cur };
        }
        cur = next;
    }
}

/// Independent oracle for ≪ on a finite carrier: a complemented interposer
/// a ≤ c ≤ b exists.
pub fn completely_below_oracle(f: &FiniteFrame) -> RelationTable {
    let n = f.size();
    let complemented: Vec<Elem> = f.elements().filter(|&c| f.is_complemented(c)).collect();
    let mut pairs = vec![false; n * n];
    for a in f.elements() {
        for b in f.elements() {
            pairs[a.0 * n + b.0] =
                complemented.iter().any(|&c| f.le(a, c) && f.le(c, b));
        }
    }
    RelationTable { kind: RelationKind::CompletelyBelow, size: n, pairs }
}

/// No maximal elements.
pub fn is_pointless(cov: &CoverStructure) -> bool {
    cov.maxima.is_empty()
}

/// No covers at all: between any a < c some b lies strictly.
pub fn is_interpolative(f: &FiniteFrame) -> bool {
    f.covers().is_empty()
}

/// The Boolean center {a : a ∨ a* = ⊤}, sorted. Closed under ∧, ∨, ⊥, ⊤.
pub fn center(f: &FiniteFrame) -> Vec<Elem> {
    f.elements().filter(|&a| f.is_complemented(a)).collect()
}

/// Every b is the join of the elements completely below it.
pub fn is_completely_regular(f: &FiniteFrame) -> bool {
    let cb = completely_below(f);
    f.elements().all(|b| {
        f.join_set(f.elements().filter(|&a| cb.holds(a, b))) == b
    })
}

/// All subsets containing ⊥, ⊤ and closed under ∧, ∨, i.e. the subframes,
/// as sorted member lists. Gated by `limit` on the frame size.
pub fn enumerate_subframes(f: &FiniteFrame, limit: usize) -> Option<Vec<Vec<Elem>>> {
    let n = f.size();
    if n > limit || n > 20 {
        return None;
    }
    let required = (1u32 << f.bottom().0) | (1u32 << f.top().0);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask & required != required {
            continue;
        }
        let members: Vec<Elem> = (0..n).filter(|i| mask & (1 << i) != 0).map(Elem).collect();
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| {
                members.contains(&f.meet(a, b)) && members.contains(&f.join(a, b))
            })
        });
        if closed {
            out.push(members);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;
    use crate::frame::{FiniteFrame, PosetSpec};
    use alloc::sync::Arc;

    #[test]
    fn cover_structure_basics() {
        let f = b2();
        let cov = CoverStructure::of(&f);
        assert_eq!(cov.atoms, vec![Elem(1), Elem(2)]);
        assert_eq!(cov.maxima, vec![Elem(1), Elem(2)]);
        assert_eq!(plus_set(&f, &cov, f.bottom()), vec![Elem(0), Elem(1), Elem(2)]);
        assert_eq!(plus_set(&f, &cov, f.top()), vec![Elem(3)]);

        let c = c3();
        let cov = CoverStructure::of(&c);
        assert_eq!(plus_set(&c, &cov, Elem(1)), vec![Elem(1), Elem(2)]);
        assert_eq!(cov.atoms, cov.maxima);
    }

    #[test]
    fn punctured_everywhere_below_top() {
        for f in [c3(), b2()] {
            let cov = CoverStructure::of(&f);
            for a in f.elements() {
                let (p, _) = is_punctured(&f, &cov, a);
                assert_eq!(p, a != f.top(), "finite lattices have covers above every a < ⊤");
            }
        }
        // B2: ⊥ = a ∧ b with a maximal, b > ⊥.
        let b = b2();
        let cov = CoverStructure::of(&b);
        let (p, w) = is_punctured(&b, &cov, b.bottom());
        assert!(p);
        let (c, x) = w.expect("witness exists in the Boolean frame");
        assert!(cov.maxima.contains(&c));
        assert!(b.lt(b.bottom(), x));
        assert_eq!(b.meet(c, x), b.bottom());
    }

    #[test]
    fn prop23_matches_unpuncturedness() {
        for f in [c3(), b2(), one(), two()] {
            let cov = CoverStructure::of(&f);
            for a in f.elements() {
                assert_eq!(
                    prop23_test(&f, a),
                    !is_punctured(&f, &cov, a).0,
                    "first-order test must agree with successor scan"
                );
            }
        }
        assert!(prop23_test(&c3(), Elem(2)), "top is vacuously unpunctured");
        assert!(!prop23_test(&c3(), Elem(0)));
    }

    #[test]
    fn prop13_diverges_from_prop23_off_contract() {
        // On the 3-chain (not completely regular) the maximal-element
        // characterization admits ⊥ even though ⊥ has a successor.
        let c = c3();
        let cov = CoverStructure::of(&c);
        assert!(prop13_test(&c, &cov, Elem(0)));
        assert!(!prop23_test(&c, Elem(0)));
        // On a Boolean frame the two agree everywhere.
        let b = b2();
        let cov = CoverStructure::of(&b);
        for a in b.elements() {
            assert_eq!(prop13_test(&b, &cov, a), prop23_test(&b, a));
        }
    }

    #[test]
    fn rather_below_table() {
        let c = c3();
        let rb = rather_below(&c);
        assert!(!rb.holds(Elem(1), Elem(1)), "m is not complemented");
        for b in c.elements() {
            assert!(rb.holds(c.bottom(), b));
            assert!(rb.holds(b, c.top()));
        }
        let b = b2();
        let rb = rather_below(&b);
        for a in b.elements() {
            assert!(rb.holds(a, a), "every element of a Boolean frame is complemented");
        }
    }

    #[test]
    fn completely_below_matches_interposer_oracle() {
        let v = Arc::new(
            // Downsets of the V poset: 5 elements, not Boolean.
            FiniteFrame::downsets(&PosetSpec::new(3, vec![(0, 2), (1, 2)])).unwrap(),
        );
        for f in [c3(), b2(), one(), two(), v] {
            let gfp = completely_below(&f);
            let oracle = completely_below_oracle(&f);
            assert_eq!(gfp, oracle);
            // ⊥ ≪ b always, and ⊑-containment in ≺ ⊆ ≤.
            let rb = rather_below(&f);
            for a in f.elements() {
                assert!(gfp.holds(f.bottom(), a));
                for b in f.elements() {
                    if gfp.holds(a, b) {
                        assert!(rb.holds(a, b));
                        assert!(f.le(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn completely_below_frozen_c3() {
        let c = c3();
        let cb = completely_below(&c);
        let expected = [
            (Elem(0), Elem(0), true),
            (Elem(0), Elem(1), true),
            (Elem(0), Elem(2), true),
            (Elem(1), Elem(1), false),
            (Elem(1), Elem(2), true),
            (Elem(2), Elem(2), true),
        ];
        for (a, b, want) in expected {
            assert_eq!(cb.holds(a, b), want, "≪ at ({a}, {b})");
        }
    }

    #[test]
    fn completely_below_is_interpolative_and_monotone() {
        for f in [c3(), b2()] {
            let cb = completely_below(&f);
            for (a, b) in cb.pairs() {
                assert!(
                    f.elements().any(|c| cb.holds(a, c) && cb.holds(c, b)),
                    "≪ interpolates"
                );
            }
            for a2 in f.elements() {
                for (a, b) in cb.pairs() {
                    for b2 in f.elements() {
                        if f.le(a2, a) && f.le(b, b2) {
                            assert!(cb.holds(a2, b2), "≪ is closed under shrinking/growing");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boolean_frame_has_cb_equal_leq() {
        let b = b2();
        let cb = completely_below(&b);
        for a in b.elements() {
            for x in b.elements() {
                assert_eq!(cb.holds(a, x), b.le(a, x));
            }
        }
    }

    #[test]
    fn pointless_iff_interpolative_on_finite() {
        for f in [one(), two(), c3(), b2()] {
            let cov = CoverStructure::of(&f);
            assert_eq!(is_pointless(&cov), is_interpolative(&f));
            assert_eq!(is_pointless(&cov), f.size() == 1);
        }
    }

    #[test]
    fn center_and_complete_regularity() {
        assert_eq!(center(&b2()), vec![Elem(0), Elem(1), Elem(2), Elem(3)]);
        assert_eq!(center(&c3()), vec![Elem(0), Elem(2)]);
        // Downsets of the 3-chain: a 4-chain; center is {⊥, ⊤}.
        let c4 = FiniteFrame::downsets(&PosetSpec::new(3, vec![(0, 1), (1, 2)])).unwrap();
        let cen = center(&c4);
        assert_eq!(cen, vec![c4.bottom(), c4.top()]);

        assert!(is_completely_regular(&b2()));
        assert!(!is_completely_regular(&c3()));
        assert!(is_completely_regular(&one()));
        // Center is closed under the frame operations.
        for f in [c3(), b2()] {
            let cen = center(&f);
            for &a in &cen {
                for &b in &cen {
                    assert!(cen.contains(&f.meet(a, b)));
                    assert!(cen.contains(&f.join(a, b)));
                }
            }
            assert!(cen.contains(&f.bottom()) && cen.contains(&f.top()));
        }
    }
}
