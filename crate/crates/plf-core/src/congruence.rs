//! Frame congruences on finite frames, stored as partitions.
//!
//! A congruence is an equivalence relation compatible with ∧ and ∨ (finite
//! joins suffice on these carriers). Partitions make joins computable by
//! closure, and every class of a frame congruence on a finite frame has a
//! greatest element, which is what quotient construction uses.
//!
//! The standard congruences: Φ_a (open, a∧x₁ = a∧x₂), Ψ_a (closed,
//! a∨x₁ = a∨x₂), Δ (dense, x₁* = x₂*), and Θ_m (kernel pair of a
//! surjection).

use crate::frame::{Elem, FiniteFrame, FrameHom};
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CongError {
    /// Congruence operations invoked across distinct frames.
    MixedFrames,
    /// Kernel-pair congruence of a non-surjective hom requested.
    NotSurjective,
    /// A partition fails ∧/∨ compatibility at the witness.
    NotACongruence { at: (Elem, Elem, Elem) },
}

impl fmt::Display for CongError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CongError::MixedFrames => write!(f, "congruences live on different frames"),
            CongError::NotSurjective => write!(f, "hom congruence requires a surjection"),
            CongError::NotACongruence { at } => {
                write!(f, "not a congruence: compatibility fails at ({}, {}, {})", at.0, at.1, at.2)
            }
        }
    }
}

/// A frame congruence as a canonical partition: `class_of[x]` is the class
/// index, classes numbered by first appearance in element order.
#[derive(Clone, PartialEq, Eq)]
pub struct Congruence {
    frame: Arc<FiniteFrame>,
    class_of: Vec<usize>,
    class_count: usize,
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Congruence{:?}", self.class_of)
    }
}

impl Congruence {
    fn canonicalize(frame: Arc<FiniteFrame>, raw: &[usize]) -> Self {
        let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut class_of = vec![0usize; raw.len()];
        let mut next = 0usize;
        for (x, &r) in raw.iter().enumerate() {
            let id = *remap.entry(r).or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            class_of[x] = id;
        }
        Congruence { frame, class_of, class_count: next }
    }

    /// Builds from an element → class map after validating compatibility.
    pub fn from_classes(frame: Arc<FiniteFrame>, class_of: Vec<usize>) -> Result<Self, CongError> {
        let c = Self::canonicalize(frame, &class_of);
        c.validate()?;
        Ok(c)
    }

    /// Compatibility of the partition with ∧ and ∨.
    pub fn validate(&self) -> Result<(), CongError> {
        let f = &self.frame;
        for a in f.elements() {
            for b in f.elements() {
                if self.related(a, b) {
                    for z in f.elements() {
                        if !self.related(f.meet(a, z), f.meet(b, z))
                            || !self.related(f.join(a, z), f.join(b, z))
                        {
                            return Err(CongError::NotACongruence { at: (a, b, z) });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    #[inline]
    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a.0] == self.class_of[b.0]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn class_index(&self, a: Elem) -> usize {
        self.class_of[a.0]
    }

    /// Members of each class, indexed by class id.
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.class_count];
        for x in self.frame.elements() {
            out[self.class_of[x.0]].push(x);
        }
        out
    }

    /// Greatest element of the class of a; classes of frame congruences are
    /// closed under binary joins, so the fold stays inside the class.
    pub fn class_max(&self, a: Elem) -> Elem {
        let f = &self.frame;
        f.join_set(f.elements().filter(|&x| self.related(x, a)))
    }

    pub fn identity(frame: Arc<FiniteFrame>) -> Self {
        let n = frame.size();
        Congruence { frame, class_of: (0..n).collect(), class_count: n }
    }

    pub fn all(frame: Arc<FiniteFrame>) -> Self {
        let n = frame.size();
        Congruence { frame, class_of: vec![0; n], class_count: 1 }
    }

    pub fn is_identity(&self) -> bool {
        self.class_count == self.frame.size()
    }

    pub fn is_all(&self) -> bool {
        self.class_count == 1
    }

    /// Refinement order: self ≤ other iff every self-pair is an other-pair.
    pub fn le(&self, other: &Congruence) -> bool {
        self.frame.elements().all(|a| {
            self.frame
                .elements()
                .all(|b| !self.related(a, b) || other.related(a, b))
        })
    }

    /// Meet in the congruence lattice: intersection of the relations.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence, CongError> {
        if self.frame.as_ref() != other.frame.as_ref() {
            return Err(CongError::MixedFrames);
        }
        let n = self.frame.size();
        let raw: Vec<usize> =
            (0..n).map(|x| self.class_of[x] * n + other.class_of[x]).collect();
        // Common refinement of two congruences is a congruence.
        Ok(Self::canonicalize(self.frame.clone(), &raw))
    }
}

/// Φ_a: pairs with a∧x₁ = a∧x₂.
pub fn open_cong(f: &Arc<FiniteFrame>, a: Elem) -> Congruence {
    let raw: Vec<usize> = f.elements().map(|x| f.meet(a, x).0).collect();
    Congruence::canonicalize(f.clone(), &raw)
}

/// Ψ_a: pairs with a∨x₁ = a∨x₂.
pub fn closed_cong(f: &Arc<FiniteFrame>, a: Elem) -> Congruence {
    let raw: Vec<usize> = f.elements().map(|x| f.join(a, x).0).collect();
    Congruence::canonicalize(f.clone(), &raw)
}

/// Δ: pairs with x₁* = x₂* (the skeleton congruence).
pub fn dense_cong(f: &Arc<FiniteFrame>) -> Congruence {
    let raw: Vec<usize> = f.elements().map(|x| f.pseudocomplement(x).0).collect();
    Congruence::canonicalize(f.clone(), &raw)
}

/// Θ_m: kernel pair of a surjection.
pub fn hom_cong(m: &FrameHom) -> Result<Congruence, CongError> {
    if !m.is_surjective() {
        return Err(CongError::NotSurjective);
    }
    let raw: Vec<usize> = m.map().iter().map(|e| e.0).collect();
    Ok(Congruence::canonicalize(m.source().clone(), &raw))
}

/// Least congruence containing all the given pairs: closure under
/// transitivity alternated with one-step ∧/∨ saturation until stable.
pub fn cong_from_pairs(f: &Arc<FiniteFrame>, pairs: &[(Elem, Elem)]) -> Congruence {
    let n = f.size();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != c {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    fn union(parent: &mut [usize], a: usize, b: usize) -> bool {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra == rb {
            return false;
        }
        parent[ra.max(rb)] = ra.min(rb);
        true
    }

    for &(a, b) in pairs {
        union(&mut parent, a.0, b.0);
    }
    // Saturate: x ~ y forces x∧z ~ y∧z and x∨z ~ y∨z. Termination is
    // bounded by the height of the partition lattice.
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in (x + 1)..n {
                if find(&mut parent, x) == find(&mut parent, y) {
                    for z in 0..n {
                        let (xe, ye, ze) = (Elem(x), Elem(y), Elem(z));
                        changed |= union(&mut parent, f.meet(xe, ze).0, f.meet(ye, ze).0);
                        changed |= union(&mut parent, f.join(xe, ze).0, f.join(ye, ze).0);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let raw: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Congruence::canonicalize(f.clone(), &raw)
}

/// Join of congruences: least congruence containing the union.
pub fn cong_join(congs: &[Congruence]) -> Result<Congruence, CongError> {
    let Some(first) = congs.first() else {
        return Err(CongError::MixedFrames);
    };
    let f = first.frame().clone();
    if congs.iter().any(|c| c.frame().as_ref() != f.as_ref()) {
        return Err(CongError::MixedFrames);
    }
    let mut pairs = Vec::new();
    for c in congs {
        for class in c.classes() {
            for w in class.windows(2) {
                pairs.push((w[0], w[1]));
            }
        }
    }
    Ok(cong_from_pairs(&f, &pairs))
}

/// Quotient frame of a congruence together with the surjection onto it.
pub struct QuotientResult {
    pub quotient: Arc<FiniteFrame>,
    pub map: FrameHom,
}

/// Builds the quotient frame on the congruence classes. The class order is
/// induced by meets: [x] ≤ [y] iff [x∧y] = [x].
pub fn quotient(c: &Congruence) -> QuotientResult {
    let f = c.frame().clone();
    let k = c.class_count();
    // Representative (greatest element) per class.
    let mut rep = vec![Elem(0); k];
    for x in f.elements() {
        rep[c.class_index(x)] = c.class_max(x);
    }
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = c.class_index(f.meet(rep[i], rep[j])) == i;
        }
    }
    let q = Arc::new(FiniteFrame::from_order(k, leq).expect("quotient of a frame is a frame"));
    let map = FrameHom::new(
        f.clone(),
        q.clone(),
        f.elements().map(|x| Elem(c.class_index(x))).collect(),
    )
    .expect("quotient map is a frame hom");
    QuotientResult { quotient: q, map }
}

/// Preimage congruence along a surjection: pairs whose images are related.
pub fn preimage_cong(m: &FrameHom, d: &Congruence) -> Result<Congruence, CongError> {
    if !m.is_surjective() {
        return Err(CongError::NotSurjective);
    }
    if d.frame().as_ref() != m.target().as_ref() {
        return Err(CongError::MixedFrames);
    }
    let raw: Vec<usize> = m.map().iter().map(|&e| d.class_index(e)).collect();
    Ok(Congruence::canonicalize(m.source().clone(), &raw))
}

/// Every congruence of a finite frame, generated as joins of principal
/// cover-collapses (every congruence is the join of the cover pairs it
/// collapses). Gated by `limit` on the frame size; `None` when over limit.
pub fn enumerate_congruences(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<Congruence>> {
    if f.size() > limit {
        return None;
    }
    let mut principals: Vec<Congruence> = Vec::new();
    for &(lo, hi) in f.covers() {
        let p = cong_from_pairs(f, &[(Elem(lo), Elem(hi))]);
        if !principals.contains(&p) {
            principals.push(p);
        }
    }
    let mut all: Vec<Congruence> = vec![Congruence::identity(f.clone())];
    let mut frontier = all.clone();
    while let Some(cur) = frontier.pop() {
        for p in &principals {
            let joined = cong_join(&[cur.clone(), p.clone()]).expect("same frame");
            if !all.contains(&joined) {
                all.push(joined.clone());
                frontier.push(joined);
            }
        }
    }
    all.sort_by(|a, b| a.class_of.cmp(&b.class_of));
    Some(all)
}

/// Maximal elements of the congruence lattice, by enumeration.
pub fn max_congruences(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<Congruence>> {
    let all = enumerate_congruences(f, limit)?;
    let top = Congruence::all(f.clone());
    Some(
        all.iter()
            .filter(|&c| *c != top && all.iter().all(|d| !(c.le(d) && *c != *d && *d != top)))
            .cloned()
            .collect(),
    )
}

/// Atoms of the congruence lattice, by enumeration.
pub fn atom_congruences(f: &Arc<FiniteFrame>, limit: usize) -> Option<Vec<Congruence>> {
    let all = enumerate_congruences(f, limit)?;
    Some(
        all.iter()
            .filter(|&c| {
                !c.is_identity() && all.iter().all(|d| !(d.le(c) && !d.is_identity() && *d != *c))
            })
            .cloned()
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::fixtures::*;

    #[test]
    fn open_closed_degenerate_cases() {
        for f in [c3(), b2()] {
            assert!(open_cong(&f, f.top()).is_identity());
            assert!(closed_cong(&f, f.bottom()).is_identity());
            assert!(open_cong(&f, f.bottom()).is_all());
            assert!(closed_cong(&f, f.top()).is_all());
        }
    }

    #[test]
    fn open_closed_on_chain() {
        let c = c3();
        let phi = open_cong(&c, Elem(1));
        assert!(!phi.related(Elem(0), Elem(1)));
        assert!(phi.related(Elem(1), Elem(2)));
        let psi = closed_cong(&c, Elem(1));
        assert!(psi.related(Elem(0), Elem(1)));
        assert!(!psi.related(Elem(1), Elem(2)));
        phi.validate().unwrap();
        psi.validate().unwrap();
    }

    #[test]
    fn dense_congruence_and_skeleton() {
        assert!(dense_cong(&b2()).is_identity(), "a** = a on a Boolean frame");
        let c = c3();
        let d = dense_cong(&c);
        assert!(d.related(Elem(1), Elem(2)));
        assert!(!d.related(Elem(0), Elem(1)));
        let q = quotient(&d);
        assert_eq!(q.quotient.size(), 2);
        // The quotient map is dense: only ⊥ maps to ⊥.
        let fibers: Vec<Elem> =
            c.elements().filter(|&x| q.map.at(x) == q.quotient.bottom()).collect();
        assert_eq!(fibers, vec![c.bottom()]);
    }

    #[test]
    fn join_and_lemma11() {
        let c = c3();
        let phi = open_cong(&c, Elem(1));
        let psi = closed_cong(&c, Elem(1));
        assert_eq!(cong_join(&[phi.clone(), Congruence::identity(c.clone())]).unwrap(), phi);
        assert!(cong_join(&[phi.clone(), psi.clone()]).unwrap().is_all());

        // Lemma 11 shape: for a ≤ b, (a,b) ∈ Ξ ⟺ Φ_a ∧ Ψ_b ≤ Ξ, over every
        // congruence of the small corpus frames.
        for f in [c3(), b2()] {
            let congs = enumerate_congruences(&f, 16).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    if !f.le(a, b) {
                        continue;
                    }
                    let lhs = open_cong(&f, a).meet(&closed_cong(&f, b)).unwrap();
                    for xi in &congs {
                        assert_eq!(xi.related(a, b), lhs.le(xi), "Lemma-11 shape at ({a},{b})");
                    }
                }
            }
        }
    }

    #[test]
    fn hom_congruence_and_lemma8_bound() {
        let c = c3();
        let idc = FrameHom::identity(c.clone());
        assert!(hom_cong(&idc).unwrap().is_identity());

        let two = two();
        let m = FrameHom::new(c.clone(), two.clone(), vec![Elem(0), Elem(1), Elem(1)]).unwrap();
        let th = hom_cong(&m).unwrap();
        // Lemma-8 shape: Θ_m ≥ ⋁{Φ_a : m(a)=⊤} ∨ ⋁{Ψ_a : m(a)=⊥}.
        let mut parts = Vec::new();
        for a in c.elements() {
            if m.at(a) == two.top() {
                parts.push(open_cong(&c, a));
            }
            if m.at(a) == two.bottom() {
                parts.push(closed_cong(&c, a));
            }
        }
        let bound = cong_join(&parts).unwrap();
        assert!(bound.le(&th));

        let embed = FrameHom::new(two.clone(), c.clone(), vec![Elem(0), Elem(2)]).unwrap();
        assert_eq!(hom_cong(&embed), Err(CongError::NotSurjective));
    }

    #[test]
    fn quotient_identities() {
        let b = b2();
        let q = quotient(&Congruence::identity(b.clone()));
        assert!(q.map.is_isomorphism());

        // Quotient by Φ_a is isomorphic to the Heyting-image subframe
        // {a → x : x}, and quotient by Ψ_a to the upset ↑a.
        for f in [c3(), b2()] {
            for a in f.elements() {
                let qo = quotient(&open_cong(&f, a));
                let image: Vec<Elem> = {
                    let mut v: Vec<Elem> = f.elements().map(|x| f.heyting(a, x)).collect();
                    v.sort();
                    v.dedup();
                    v
                };
                assert_eq!(qo.quotient.size(), image.len());
                let qc = quotient(&closed_cong(&f, a));
                let upset: Vec<Elem> = f.elements().filter(|&x| f.le(a, x)).collect();
                assert_eq!(qc.quotient.size(), upset.len());
                // Kernel pair of the quotient map is the input congruence.
                assert_eq!(hom_cong(&qo.map).unwrap(), open_cong(&f, a));
                assert_eq!(hom_cong(&qc.map).unwrap(), closed_cong(&f, a));
            }
        }
    }

    #[test]
    fn preimage_congruence_and_lemma9() {
        let c = c3();
        let two = two();
        let m = FrameHom::new(c.clone(), two.clone(), vec![Elem(0), Elem(1), Elem(1)]).unwrap();
        let th = hom_cong(&m).unwrap();
        assert_eq!(preimage_cong(&m, &Congruence::identity(two.clone())).unwrap(), th);
        assert!(preimage_cong(&m, &Congruence::all(two.clone())).unwrap().is_all());

        // Lemma-9(2) shape: m⁻¹(Φ_b) = Θ_m ∨ Φ_{m⁎(b)}.
        let adj = m.right_adjoint();
        for b in two.elements() {
            let lhs = preimage_cong(&m, &open_cong(&two, b)).unwrap();
            let rhs = cong_join(&[th.clone(), open_cong(&c, adj[b.0])]).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn congruence_enumeration_c3_b2() {
        let congs = enumerate_congruences(&c3(), 12).unwrap();
        assert_eq!(congs.len(), 4, "Con C3 has identity, Φ_m, Ψ_m, and all");
        // The maximal congruences of the naked chain are Φ_m and Ψ_m: the
        // paper's standing regularity hypothesis is what rules Φ_m out, and
        // C3 does not satisfy it.
        let maxes = max_congruences(&c3(), 12).unwrap();
        assert_eq!(maxes.len(), 2);
        assert!(maxes.contains(&open_cong(&c3(), Elem(1))));
        assert!(maxes.contains(&closed_cong(&c3(), Elem(1))));

        let maxes_b = max_congruences(&b2(), 12).unwrap();
        assert_eq!(maxes_b.len(), 2);
        assert!(maxes_b.contains(&closed_cong(&b2(), Elem(1))));
        assert!(maxes_b.contains(&closed_cong(&b2(), Elem(2))));

        assert!(max_congruences(&one(), 12).unwrap().is_empty());

        let atoms_b = atom_congruences(&b2(), 12).unwrap();
        assert_eq!(atoms_b.len(), 2);
        assert!(atoms_b.contains(&open_cong(&b2(), Elem(1))));
        assert!(atoms_b.contains(&open_cong(&b2(), Elem(2))));
    }

    #[test]
    fn enumeration_respects_limit() {
        assert!(enumerate_congruences(&b2(), 2).is_none());
    }
}
