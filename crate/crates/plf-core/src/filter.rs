//! Round, regular, and maximal proper round filters on finite frames, the
//! filters x_a attached to maximal elements, images under surjections, and
//! the round-filter/round-ideal duality.
//!
//! Everything here is extensional: a filter is an explicit member set. The
//! interval carrier cannot enumerate its filters, so point filters there are
//! oracular (membership test plus witness functions); see the interval
//! module for that side and the trait below for the contract.

use crate::frame::{Elem, FiniteFrame, FrameHom};
use crate::order::{completely_below, CoverStructure, RelationTable};
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterError {
    /// Not a nonempty upset closed under binary meets.
    NotAFilter { reason: &'static str },
    /// The requested element is not maximal.
    NotMaximal(Elem),
    /// A witness returned by an oracular filter failed validation.
    WitnessInvalid,
}

impl fmt::Display for FilterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterError::NotAFilter { reason } => write!(f, "not a filter: {reason}"),
            FilterError::NotMaximal(e) => write!(f, "{e} is not a maximal element"),
            FilterError::WitnessInvalid => write!(f, "oracular witness failed validation"),
        }
    }
}

/// An extensional filter: a nonempty upset closed under binary meets.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtFilter {
    frame: Arc<FiniteFrame>,
    members: BTreeSet<Elem>,
}

impl fmt::Debug for ExtFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtFilter{:?}", self.members)
    }
}

impl ExtFilter {
    pub fn new(frame: Arc<FiniteFrame>, members: BTreeSet<Elem>) -> Result<Self, FilterError> {
        if members.is_empty() {
            return Err(FilterError::NotAFilter { reason: "empty" });
        }
        for &a in &members {
            for b in frame.elements() {
                if frame.le(a, b) && !members.contains(&b) {
                    return Err(FilterError::NotAFilter { reason: "not an upset" });
                }
            }
            for &b in &members {
                if !members.contains(&frame.meet(a, b)) {
                    return Err(FilterError::NotAFilter { reason: "not meet-closed" });
                }
            }
        }
        Ok(ExtFilter { frame, members })
    }

    /// The principal filter ↑a.
    pub fn principal(frame: Arc<FiniteFrame>, a: Elem) -> Self {
        let members = frame.elements().filter(|&b| frame.le(a, b)).collect();
        ExtFilter { frame, members }
    }

    pub fn frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    pub fn members(&self) -> &BTreeSet<Elem> {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(&a)
    }

    pub fn is_proper(&self) -> bool {
        !self.members.contains(&self.frame.bottom())
    }

    /// Least element; every filter on a finite frame is principal.
    pub fn least(&self) -> Elem {
        self.frame.meet_set(self.members.iter().copied())
    }
}

/// Round: every member has a member completely below it.
pub fn is_round(x: &ExtFilter, cb: &RelationTable) -> bool {
    x.members().iter().all(|&a| x.members().iter().any(|&b| cb.holds(b, a)))
}

/// The round core x̊ = {a ∈ x : ∃b ∈ x, b ≪ a}: the largest round filter
/// contained in x.
pub fn round_core(x: &ExtFilter, cb: &RelationTable) -> ExtFilter {
    let members: BTreeSet<Elem> = x
        .members()
        .iter()
        .copied()
        .filter(|&a| x.members().iter().any(|&b| cb.holds(b, a)))
        .collect();
    ExtFilter::new(x.frame().clone(), members)
        .expect("the round core of a filter is a filter")
}

/// Regular: round and ⋁{b* : b ∈ x} = ⊤.
pub fn is_regular(x: &ExtFilter, cb: &RelationTable) -> bool {
    let f = x.frame();
    is_round(x, cb)
        && f.join_set(x.members().iter().map(|&b| f.pseudocomplement(b))) == f.top()
}

/// Maximality criterion for a proper round filter: for every a ∉ x and every
/// b ≪ a some c ∈ x has b ∧ c = ⊥.
pub fn is_maximal_round(x: &ExtFilter, cb: &RelationTable) -> bool {
    let f = x.frame();
    f.elements().filter(|a| !x.contains(*a)).all(|a| {
        f.elements().filter(|&b| cb.holds(b, a)).all(|b| {
            x.members().iter().any(|&c| f.meet(b, c) == f.bottom())
        })
    })
}

/// The filter x_a = {b : b ≰ a} attached to a maximal element a. Meet
/// closure holds because maximal elements are meet-irreducible in any
/// distributive lattice.
pub fn filter_of_max(
    f: &Arc<FiniteFrame>,
    cov: &CoverStructure,
    a: Elem,
) -> Result<ExtFilter, FilterError> {
    if !cov.maxima.contains(&a) {
        return Err(FilterError::NotMaximal(a));
    }
    let members: BTreeSet<Elem> = f.elements().filter(|&b| !f.le(b, a)).collect();
    ExtFilter::new(f.clone(), members)
}

/// The filter on the target generated by the image of x: the upset of
/// {m(a) : a ∈ x}, which is already meet-closed.
pub fn image_filter(m: &FrameHom, x: &ExtFilter) -> ExtFilter {
    let t = m.target().clone();
    let image: BTreeSet<Elem> = x.members().iter().map(|&a| m.at(a)).collect();
    let members: BTreeSet<Elem> =
        t.elements().filter(|&b| image.iter().any(|&i| t.le(i, b))).collect();
    ExtFilter::new(t, members).expect("the generated upset of a meet-closed set is a filter")
}

/// A disjoint-member witness for a pair of support filters.
pub type IndependenceWitness = ((usize, usize), Option<(Elem, Elem)>);

/// The family {x_a : a maximal}, with pairwise disjoint-member witnesses
/// where they exist.
pub struct SupportFamily {
    pub filters: Vec<(Elem, ExtFilter)>,
    /// witnesses[(i, j)] = (b_i, b_j) with b_i ∧ b_j = ⊥, when found.
    pub independence: Vec<IndependenceWitness>,
}

pub fn spatial_support(f: &Arc<FiniteFrame>, cov: &CoverStructure) -> SupportFamily {
    let filters: Vec<(Elem, ExtFilter)> = cov
        .maxima
        .iter()
        .map(|&a| (a, filter_of_max(f, cov, a).expect("maximal by construction")))
        .collect();
    let mut independence = Vec::new();
    for i in 0..filters.len() {
        for j in (i + 1)..filters.len() {
            let mut witness = None;
            'outer: for &b1 in filters[i].1.members() {
                for &b2 in filters[j].1.members() {
                    if f.meet(b1, b2) == f.bottom() {
                        witness = Some((b1, b2));
                        break 'outer;
                    }
                }
            }
            independence.push(((i, j), witness));
        }
    }
    SupportFamily { filters, independence }
}

/// An extensional ideal: a nonempty downset closed under binary joins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtIdeal {
    frame: Arc<FiniteFrame>,
    members: BTreeSet<Elem>,
}

impl ExtIdeal {
    pub fn new(frame: Arc<FiniteFrame>, members: BTreeSet<Elem>) -> Result<Self, FilterError> {
        if members.is_empty() {
            return Err(FilterError::NotAFilter { reason: "empty ideal" });
        }
        for &a in &members {
            for b in frame.elements() {
                if frame.le(b, a) && !members.contains(&b) {
                    return Err(FilterError::NotAFilter { reason: "not a downset" });
                }
            }
            for &b in &members {
                if !members.contains(&frame.join(a, b)) {
                    return Err(FilterError::NotAFilter { reason: "not join-closed" });
                }
            }
        }
        Ok(ExtIdeal { frame, members })
    }

    pub fn members(&self) -> &BTreeSet<Elem> {
        &self.members
    }

    /// Ideal round: every member has a member completely above it.
    pub fn is_round(&self, cb: &RelationTable) -> bool {
        self.members.iter().all(|&a| self.members.iter().any(|&b| cb.holds(a, b)))
    }
}

/// The round ideal generated by {a* : a ∈ x}.
pub fn filter_to_ideal(x: &ExtFilter) -> ExtIdeal {
    let f = x.frame().clone();
    let gens: BTreeSet<Elem> = x.members().iter().map(|&a| f.pseudocomplement(a)).collect();
    // Downset of the generators, then closure under joins.
    let mut members: BTreeSet<Elem> =
        f.elements().filter(|&b| gens.iter().any(|&g| f.le(b, g))).collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<Elem> = members.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                let j = f.join(a, b);
                if members.insert(j) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    // Downset-close once more after join closure.
    let closed: BTreeSet<Elem> =
        f.elements().filter(|&b| members.iter().any(|&m| f.le(b, m))).collect();
    ExtIdeal::new(f, closed).expect("generated ideal is an ideal")
}

/// The round filter generated by {b* : b ∈ I}.
pub fn ideal_to_filter(i: &ExtIdeal) -> ExtFilter {
    let f = i.frame.clone();
    let gens: BTreeSet<Elem> = i.members.iter().map(|&b| f.pseudocomplement(b)).collect();
    let mut members: BTreeSet<Elem> =
        f.elements().filter(|&b| gens.iter().any(|&g| f.le(g, b))).collect();
    loop {
        let mut grew = false;
        let snapshot: Vec<Elem> = members.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                if members.insert(f.meet(a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let closed: BTreeSet<Elem> =
        f.elements().filter(|&b| members.iter().any(|&m| f.le(m, b))).collect();
    ExtFilter::new(f, closed).expect("generated filter is a filter")
}

/// All filters on a frame, by brute subset scan. Only sensible on small
/// carriers; gated by `limit` on the frame size.
pub fn enumerate_filters(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<ExtFilter>> {
    if f.size() > limit {
        return None;
    }
    let n = f.size();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let members: BTreeSet<Elem> =
            (0..n).filter(|i| mask & (1 << i) != 0).map(Elem).collect();
        if let Ok(x) = ExtFilter::new(f.clone(), members) {
            out.push(x);
        }
    }
    Some(out)
}

/// Ultrafilters: maximal proper filters. On a finite frame these are the
/// principal filters of atoms.
pub fn enumerate_ultrafilters(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<ExtFilter>> {
    let all = enumerate_filters(f, limit)?;
    let proper: Vec<ExtFilter> = all.into_iter().filter(|x| x.is_proper()).collect();
    Some(
        proper
            .iter()
            .filter(|x| {
                proper.iter().all(|y| {
                    !(x.members().is_subset(y.members()) && x.members() != y.members())
                })
            })
            .cloned()
            .collect(),
    )
}

/// All round filters on a small frame.
pub fn enumerate_round_filters(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<ExtFilter>> {
    let cb = completely_below(f);
    Some(enumerate_filters(f, limit)?.into_iter().filter(|x| is_round(x, &cb)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;
    use crate::order::completely_below;

    #[test]
    fn filter_validation() {
        let c = c3();
        assert!(ExtFilter::new(c.clone(), BTreeSet::new()).is_err());
        // {m} is not an upset.
        assert!(ExtFilter::new(c.clone(), [Elem(1)].into_iter().collect()).is_err());
        let up_m = ExtFilter::principal(c.clone(), Elem(1));
        assert_eq!(up_m.members().len(), 2);
        assert!(up_m.is_proper());
        assert_eq!(up_m.least(), Elem(1));
    }

    #[test]
    fn roundness_and_core() {
        let c = c3();
        let cb = completely_below(&c);
        let top_only = ExtFilter::principal(c.clone(), c.top());
        assert!(is_round(&top_only, &cb), "⊤ ≪ ⊤");
        let up_m = ExtFilter::principal(c.clone(), Elem(1));
        assert!(!is_round(&up_m, &cb), "m ≪ m fails on the chain");
        assert_eq!(round_core(&up_m, &cb), top_only);

        let b = b2();
        let cb_b = completely_below(&b);
        let up_a = ExtFilter::principal(b.clone(), Elem(1));
        assert!(is_round(&up_a, &cb_b), "a is complemented");
        assert_eq!(round_core(&up_a, &cb_b), up_a);
    }

    #[test]
    fn round_core_is_largest_round_subfilter() {
        for f in [c3(), b2()] {
            let cb = completely_below(&f);
            for x in enumerate_filters(&f, 8).unwrap() {
                if !x.is_proper() {
                    continue;
                }
                let core = round_core(&x, &cb);
                assert!(is_round(&core, &cb));
                for y in enumerate_round_filters(&f, 8).unwrap() {
                    if y.members().is_subset(x.members()) {
                        assert!(y.members().is_subset(core.members()));
                    }
                }
            }
        }
    }

    #[test]
    fn regular_filters_trivial_on_finite_carriers() {
        // Any proper round filter on a nontrivial finite frame is principal
        // at a complemented element > ⊥, so the pseudocomplement join stays
        // below ⊤.
        for f in [two(), c3(), b2()] {
            let cb = completely_below(&f);
            for x in enumerate_filters(&f, 8).unwrap() {
                if x.is_proper() {
                    assert!(!is_regular(&x, &cb), "no proper regular filters here");
                }
            }
        }
    }

    #[test]
    fn maximal_round_criterion() {
        let b = b2();
        let cb = completely_below(&b);
        let up_a = ExtFilter::principal(b.clone(), Elem(1));
        assert!(is_maximal_round(&up_a, &cb));
        let top_only = ExtFilter::principal(b.clone(), b.top());
        assert!(!is_maximal_round(&top_only, &cb), "contained in ↑a");
    }

    #[test]
    fn distinct_maximal_rounds_contain_disjoint_elements() {
        for f in [c3(), b2()] {
            let cb = completely_below(&f);
            let rounds: Vec<ExtFilter> = enumerate_round_filters(&f, 8)
                .unwrap()
                .into_iter()
                .filter(|x| x.is_proper() && is_maximal_round(x, &cb))
                .collect();
            for x in &rounds {
                for y in &rounds {
                    if x != y {
                        let disjoint = x.members().iter().any(|&a| {
                            y.members().iter().any(|&b| f.meet(a, b) == f.bottom())
                        });
                        assert!(disjoint);
                    }
                }
            }
        }
    }

    #[test]
    fn filters_of_maximal_elements() {
        let b = b2();
        let cov = CoverStructure::of(&b);
        let xa = filter_of_max(&b, &cov, Elem(1)).unwrap();
        // x_a = {b, ⊤} where b is the other atom.
        assert_eq!(xa.members().iter().copied().collect::<Vec<_>>(), vec![Elem(2), Elem(3)]);

        let c = c3();
        let cov_c = CoverStructure::of(&c);
        let xm = filter_of_max(&c, &cov_c, Elem(1)).unwrap();
        assert_eq!(xm.members().iter().copied().collect::<Vec<_>>(), vec![Elem(2)]);
        assert!(filter_of_max(&c, &cov_c, Elem(0)).is_err());
    }

    #[test]
    fn image_filters() {
        let c = c3();
        let idh = FrameHom::identity(c.clone());
        let top_only = ExtFilter::principal(c.clone(), c.top());
        assert_eq!(image_filter(&idh, &top_only), top_only);

        let two = two();
        let m = FrameHom::new(c.clone(), two.clone(), vec![Elem(0), Elem(1), Elem(1)]).unwrap();
        let img = image_filter(&m, &top_only);
        assert_eq!(img, ExtFilter::principal(two.clone(), two.top()));

        // Properness criterion: the image filter is proper iff m⁎(⊥) ∉ x.
        for x in enumerate_filters(&c, 8).unwrap() {
            let adj_bot = m.right_adjoint()[two.bottom().0];
            assert_eq!(image_filter(&m, &x).is_proper(), !x.contains(adj_bot));
        }
    }

    #[test]
    fn support_family_on_b2() {
        let b = b2();
        let cov = CoverStructure::of(&b);
        let fam = spatial_support(&b, &cov);
        assert_eq!(fam.filters.len(), 2);
        let ((_, _), w) = fam.independence[0];
        let (x, y) = w.expect("the two atom filters contain disjoint elements");
        assert_eq!(b.meet(x, y), b.bottom());

        let one = one();
        let cov1 = CoverStructure::of(&one);
        assert!(spatial_support(&one, &cov1).filters.is_empty());
    }

    #[test]
    fn round_ideal_duality_roundtrip() {
        for f in [c3(), b2()] {
            let cb = completely_below(&f);
            // {⊤} ↦ ideal generated by {⊥}.
            let top_only = ExtFilter::principal(f.clone(), f.top());
            let ideal = filter_to_ideal(&top_only);
            assert_eq!(ideal.members().iter().copied().collect::<Vec<_>>(), vec![f.bottom()]);

            for x in enumerate_round_filters(&f, 8).unwrap() {
                let i = filter_to_ideal(&x);
                assert!(i.is_round(&cb));
                assert_eq!(&ideal_to_filter(&i), &x, "round-trip identity on round filters");
            }
        }
        // B2: ↑a ↦ ↓b.
        let b = b2();
        let up_a = ExtFilter::principal(b.clone(), Elem(1));
        let down_b = filter_to_ideal(&up_a);
        assert_eq!(
            down_b.members().iter().copied().collect::<Vec<_>>(),
            vec![Elem(0), Elem(2)]
        );
    }

    #[test]
    fn ultrafilters_are_atom_principals() {
        let b = b2();
        let ultras = enumerate_ultrafilters(&b, 8).unwrap();
        assert_eq!(ultras.len(), 2);
        for u in &ultras {
            let least = u.least();
            assert!(CoverStructure::of(&b).atoms.contains(&least));
        }
    }

    #[test]
    fn maximal_rounds_are_round_cores_of_ultrafilters() {
        for f in [c3(), b2()] {
            let cb = completely_below(&f);
            let mut from_ultras: Vec<ExtFilter> = enumerate_ultrafilters(&f, 8)
                .unwrap()
                .iter()
                .map(|u| round_core(u, &cb))
                .collect();
            from_ultras.dedup_by(|a, b| a == b);
            for x in enumerate_round_filters(&f, 8).unwrap() {
                if x.is_proper() && is_maximal_round(&x, &cb) {
                    assert!(from_ultras.contains(&x));
                }
            }
            for u in &from_ultras {
                assert!(is_maximal_round(u, &cb));
            }
        }
    }
}
