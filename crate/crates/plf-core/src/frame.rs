//! Finite bounded distributive lattices ("finite frames") as explicit tables.
//!
//! A frame here is a finite distributive lattice with designated ⊥ and ⊤,
//! stored as a full order table plus meet/join operation tables. On a finite
//! carrier every join is a finite join, so such a lattice carries all the
//! structure of a frame: finite meets distribute over the (finite) joins.
//!
//! Frames are immutable after validation and are shared behind [`Arc`];
//! everything downstream (order analysis, nuclei, congruences) treats them
//! as read-only tables.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of an element within one frame. Identity is frame-local: comparing
/// ids across frames is meaningless.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Elem(pub usize);

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A finite poset given by its size and a list of (lower, upper) cover pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSpec {
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
}

impl PosetSpec {
    pub fn new(size: usize, covers: Vec<(usize, usize)>) -> Self {
        PosetSpec { size, covers }
    }

    /// Reflexive-transitive closure of the cover relation, or `None` if the
    /// covers are cyclic (closure fails antisymmetry).
    pub fn order_table(&self) -> Option<Vec<bool>> {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in &self.covers {
            if a >= n || b >= n || a == b {
                return None;
            }
            leq[a * n + b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return None;
                }
            }
        }
        Some(leq)
    }
}

/// Which binary bound failed during lattice validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrameError {
    /// The cover relation is cyclic or refers to out-of-range elements.
    BadPoset,
    /// Some pair has no greatest lower / least upper bound.
    NotALattice { kind: BoundKind, pair: (Elem, Elem) },
    /// Distributivity a∧(b∨c) = (a∧b)∨(a∧c) fails at the witness triple.
    NotDistributive { witness: (Elem, Elem, Elem) },
    /// A hom fails one of the preservation laws; the payload names the law
    /// and the offending source element(s).
    NotAHomomorphism { law: &'static str, at: (Elem, Elem) },
    /// Operation invoked with ids from the wrong frame / out of range.
    OutOfRange,
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::BadPoset => write!(f, "cover relation is not an acyclic poset spec"),
            FrameError::NotALattice { kind, pair } => write!(
                f,
                "not a lattice: pair ({}, {}) lacks a {}",
                pair.0,
                pair.1,
                match kind {
                    BoundKind::Meet => "meet",
                    BoundKind::Join => "join",
                }
            ),
            FrameError::NotDistributive { witness } => write!(
                f,
                "not distributive at triple ({}, {}, {})",
                witness.0, witness.1, witness.2
            ),
            FrameError::NotAHomomorphism { law, at } => {
                write!(f, "not a frame homomorphism: {} fails at ({}, {})", law, at.0, at.1)
            }
            FrameError::OutOfRange => write!(f, "element id out of range"),
        }
    }
}

/// An explicit finite bounded distributive lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteFrame {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    /// Hasse diagram, (lower, upper) pairs, computed once at validation.
    covers: Vec<(usize, usize)>,
    /// Optional element labels, used only for diagnostics and DOT output.
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFrame(size={}, covers={:?})", self.size, self.covers)
    }
}

impl FiniteFrame {
    /// Builds and validates a frame from lattice covers.
    ///
    /// Fails with a diagnostic if the covers are cyclic, if some pair lacks a
    /// meet or join, or if distributivity fails (witness triple reported).
    pub fn build(spec: &PosetSpec) -> Result<Self, FrameError> {
        let leq = spec.order_table().ok_or(FrameError::BadPoset)?;
        Self::from_order(spec.size, leq)
    }

    /// Builds a frame from a full order table, computing meet/join tables by
    /// exhaustive bound search.
    pub fn from_order(size: usize, leq: Vec<bool>) -> Result<Self, FrameError> {
        if size == 0 || leq.len() != size * size {
            return Err(FrameError::BadPoset);
        }
        let n = size;
        let le = |a: usize, b: usize| leq[a * n + b];

        let mut meet = vec![usize::MAX; n * n];
        let mut join = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut glb = None;
                let mut lub = None;
                for c in 0..n {
                    if le(c, a) && le(c, b) && glb.is_none_or(|g| le(g, c)) {
                        glb = Some(c);
                    }
                    if le(a, c) && le(b, c) && lub.is_none_or(|l| le(c, l)) {
                        lub = Some(c);
                    }
                }
                // The candidate found by the sweep is only a maximal lower
                // bound; confirm it dominates every lower bound.
                match glb {
                    Some(g) if (0..n).all(|c| !(le(c, a) && le(c, b)) || le(c, g)) => {
                        meet[a * n + b] = g
                    }
                    _ => {
                        return Err(FrameError::NotALattice {
                            kind: BoundKind::Meet,
                            pair: (Elem(a), Elem(b)),
                        })
                    }
                }
                match lub {
                    Some(l) if (0..n).all(|c| !(le(a, c) && le(b, c)) || le(l, c)) => {
                        join[a * n + b] = l
                    }
                    _ => {
                        return Err(FrameError::NotALattice {
                            kind: BoundKind::Join,
                            pair: (Elem(a), Elem(b)),
                        })
                    }
                }
            }
        }

        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(FrameError::NotALattice { kind: BoundKind::Meet, pair: (Elem(0), Elem(0)) })?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(FrameError::NotALattice { kind: BoundKind::Join, pair: (Elem(0), Elem(0)) })?;

        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = meet[a * n + join[b * n + c]];
                    let rhs = join[meet[a * n + b] * n + meet[a * n + c]];
                    if lhs != rhs {
                        return Err(FrameError::NotDistributive {
                            witness: (Elem(a), Elem(b), Elem(c)),
                        });
                    }
                }
            }
        }

        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && le(a, b) {
                    let strictly_between =
                        (0..n).any(|c| c != a && c != b && le(a, c) && le(c, b));
                    if !strictly_between {
                        covers.push((a, b));
                    }
                }
            }
        }

        Ok(FiniteFrame { size, leq, meet, join, bottom, top, covers, labels: None })
    }

    /// The frame of downsets of a poset, ordered by inclusion. Distributive
    /// by construction; still routed through full validation.
    pub fn downsets(p: &PosetSpec) -> Result<Self, FrameError> {
        let n = p.size;
        if n > 20 {
            return Err(FrameError::BadPoset);
        }
        let order = p.order_table().ok_or(FrameError::BadPoset)?;
        let le = |a: usize, b: usize| order[a * n + b];
        let mut masks: Vec<u32> = Vec::new();
        for m in 0u32..(1u32 << n) {
            let is_downset = (0..n).all(|i| {
                m & (1 << i) == 0 || (0..n).all(|j| !le(j, i) || m & (1 << j) != 0)
            });
            if is_downset {
                masks.push(m);
            }
        }
        masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
        let k = masks.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in masks.iter().enumerate() {
            for (j, &b) in masks.iter().enumerate() {
                leq[i * k + j] = a & b == a;
            }
        }
        Self::from_order(k, leq)
    }

    /// Product frame with componentwise order. Returns the frame together
    /// with the two projection homs.
    pub fn product(
        f: &Arc<FiniteFrame>,
        g: &Arc<FiniteFrame>,
    ) -> (Arc<FiniteFrame>, FrameHom, FrameHom) {
        let (nf, ng) = (f.size, g.size);
        let n = nf * ng;
        let idx = |a: usize, b: usize| a * ng + b;
        let mut leq = vec![false; n * n];
        for a1 in 0..nf {
            for b1 in 0..ng {
                for a2 in 0..nf {
                    for b2 in 0..ng {
                        leq[idx(a1, b1) * n + idx(a2, b2)] =
                            f.le(Elem(a1), Elem(a2)) && g.le(Elem(b1), Elem(b2));
                    }
                }
            }
        }
        let prod = Arc::new(Self::from_order(n, leq).expect("product of frames is a frame"));
        let p1 = FrameHom::new(prod.clone(), f.clone(), (0..n).map(|x| Elem(x / ng)).collect())
            .expect("first projection is a frame hom");
        let p2 = FrameHom::new(prod.clone(), g.clone(), (0..n).map(|x| Elem(x % ng)).collect())
            .expect("second projection is a frame hom");
        (prod, p1, p2)
    }

    /// Element id of the pair (a, b) inside a product built by [`Self::product`].
    pub fn product_pair(g_size: usize, a: Elem, b: Elem) -> Elem {
        Elem(a.0 * g_size + b.0)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size).map(Elem)
    }

    pub fn bottom(&self) -> Elem {
        Elem(self.bottom)
    }

    pub fn top(&self) -> Elem {
        Elem(self.top)
    }

    #[inline]
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.leq[a.0 * self.size + b.0]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.le(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.0 * self.size + b.0])
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.0 * self.size + b.0])
    }

    /// Join of an arbitrary finite set, as a fold over the join table.
    /// The empty join is ⊥.
    pub fn join_set<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary finite set; the empty meet is ⊤.
    pub fn meet_set<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Heyting implication a → b = ⋁{c : a∧c ≤ b}. Satisfies the adjunction
    /// c ≤ a→b ⟺ a∧c ≤ b on any finite distributive lattice.
    pub fn heyting(&self, a: Elem, b: Elem) -> Elem {
        self.join_set(self.elements().filter(|&c| self.le(self.meet(a, c), b)))
    }

    /// Pseudocomplement a* = a → ⊥.
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.heyting(a, self.bottom())
    }

    /// The complement of a, if a is complemented.
    pub fn complement(&self, a: Elem) -> Option<Elem> {
        let c = self.pseudocomplement(a);
        (self.join(a, c) == self.top()).then_some(c)
    }

    pub fn is_complemented(&self, a: Elem) -> bool {
        self.complement(a).is_some()
    }

    /// Cover pairs (lower, upper) of the Hasse diagram.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements of the order interval [a, b].
    pub fn interval(&self, a: Elem, b: Elem) -> Vec<Elem> {
        self.elements().filter(|&x| self.le(a, x) && self.le(x, b)).collect()
    }

    /// The interval [a, b] as a frame of its own, with a as bottom and b as
    /// top, plus the back-map into ambient ids. Intervals of a distributive
    /// lattice are sublattices, so the induced bounds work out.
    pub fn interval_frame(&self, a: Elem, b: Elem) -> Result<(Self, Vec<Elem>), FrameError> {
        if !self.le(a, b) {
            return Err(FrameError::OutOfRange);
        }
        let members = self.interval(a, b);
        let k = members.len();
        let mut leq = vec![false; k * k];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                leq[i * k + j] = self.le(x, y);
            }
        }
        Ok((Self::from_order(k, leq)?, members))
    }

    /// Join-irreducible elements: x ≠ ⊥ with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&x| {
                x != self.bottom()
                    && self.covers.iter().filter(|&&(_, u)| Elem(u) == x).count() == 1
            })
            .collect()
    }

    /// Builds the frame on a subset closed under ∧, ∨ and containing ⊥, ⊤,
    /// with the induced order. Returns the frame and the back-map from its
    /// ids to ambient ids.
    pub fn subframe(&self, members: &[Elem]) -> Result<(Self, Vec<Elem>), FrameError> {
        let mut ms: Vec<Elem> = members.to_vec();
        ms.sort();
        ms.dedup();
        if !ms.contains(&self.bottom()) || !ms.contains(&self.top()) {
            return Err(FrameError::BadPoset);
        }
        for &a in &ms {
            for &b in &ms {
                if !ms.contains(&self.meet(a, b)) || !ms.contains(&self.join(a, b)) {
                    return Err(FrameError::BadPoset);
                }
            }
        }
        let k = ms.len();
        let mut leq = vec![false; k * k];
        for (i, &a) in ms.iter().enumerate() {
            for (j, &b) in ms.iter().enumerate() {
                leq[i * k + j] = self.le(a, b);
            }
        }
        Ok((Self::from_order(k, leq)?, ms))
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        if labels.len() == self.size {
            self.labels = Some(labels);
        }
    }

    pub fn label(&self, a: Elem) -> Option<&str> {
        self.labels.as_ref().map(|ls| ls[a.0].as_str())
    }
}

/// A frame homomorphism between explicit finite frames: preserves ⊥, ⊤,
/// binary meets, and binary joins. On finite carriers binary joins suffice
/// for arbitrary joins, so this is full frame-hom strength.
#[derive(Clone)]
pub struct FrameHom {
    source: Arc<FiniteFrame>,
    target: Arc<FiniteFrame>,
    map: Vec<Elem>,
}

impl fmt::Debug for FrameHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameHom({:?})", self.map)
    }
}

impl FrameHom {
    pub fn new(
        source: Arc<FiniteFrame>,
        target: Arc<FiniteFrame>,
        map: Vec<Elem>,
    ) -> Result<Self, FrameError> {
        if map.len() != source.size() || map.iter().any(|e| e.0 >= target.size()) {
            return Err(FrameError::OutOfRange);
        }
        let h = FrameHom { source, target, map };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<(), FrameError> {
        let (s, t) = (&self.source, &self.target);
        if self.at(s.bottom()) != t.bottom() {
            return Err(FrameError::NotAHomomorphism {
                law: "bottom",
                at: (s.bottom(), s.bottom()),
            });
        }
        if self.at(s.top()) != t.top() {
            return Err(FrameError::NotAHomomorphism { law: "top", at: (s.top(), s.top()) });
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.at(s.meet(a, b)) != t.meet(self.at(a), self.at(b)) {
                    return Err(FrameError::NotAHomomorphism { law: "meet", at: (a, b) });
                }
                if self.at(s.join(a, b)) != t.join(self.at(a), self.at(b)) {
                    return Err(FrameError::NotAHomomorphism { law: "join", at: (a, b) });
                }
            }
        }
        Ok(())
    }

    pub fn identity(f: Arc<FiniteFrame>) -> Self {
        let map = f.elements().collect();
        FrameHom { source: f.clone(), target: f, map }
    }

    #[inline]
    pub fn at(&self, a: Elem) -> Elem {
        self.map[a.0]
    }

    pub fn source(&self) -> &Arc<FiniteFrame> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteFrame> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<Elem> = self.map.iter().copied().collect();
        hit.len() == self.target.size()
    }

    pub fn is_injective(&self) -> bool {
        let hit: BTreeSet<Elem> = self.map.iter().copied().collect();
        hit.len() == self.source.size()
    }

    /// Bijective hom whose inverse is a hom.
    pub fn is_isomorphism(&self) -> bool {
        if !self.is_surjective() || !self.is_injective() {
            return false;
        }
        let mut inv = vec![Elem(0); self.target.size()];
        for a in self.source.elements() {
            inv[self.at(a).0] = a;
        }
        FrameHom::new(self.target.clone(), self.source.clone(), inv).is_ok()
    }

    /// h ∘ self; requires target(self) and source(h) to be the same table.
    pub fn compose(&self, h: &FrameHom) -> Option<FrameHom> {
        if !Arc::ptr_eq(&self.target, h.source()) && self.target.as_ref() != h.source().as_ref() {
            return None;
        }
        Some(FrameHom {
            source: self.source.clone(),
            target: h.target.clone(),
            map: self.map.iter().map(|&a| h.at(a)).collect(),
        })
    }

    /// The right adjoint m⁎(b) = ⋁{a : m(a) ≤ b}, indexed by target elements.
    /// Satisfies m(a) ≤ b ⟺ a ≤ m⁎(b).
    pub fn right_adjoint(&self) -> Vec<Elem> {
        self.target
            .elements()
            .map(|b| {
                self.source
                    .join_set(self.source.elements().filter(|&a| self.target.le(self.at(a), b)))
            })
            .collect()
    }
}

/// Searches for a frame isomorphism f → g. Matches the join-irreducible
/// posets by backtracking, then lifts along joins; finite distributive
/// lattices are isomorphic exactly when their join-irreducible posets are.
pub fn find_isomorphism(f: &Arc<FiniteFrame>, g: &Arc<FiniteFrame>) -> Option<FrameHom> {
    if f.size() != g.size() {
        return None;
    }
    let jf = f.join_irreducibles();
    let jg = g.join_irreducibles();
    if jf.len() != jg.len() {
        return None;
    }

    fn order_compatible(
        f: &FiniteFrame,
        g: &FiniteFrame,
        jf: &[Elem],
        assign: &[Option<Elem>],
        i: usize,
        cand: Elem,
    ) -> bool {
        assign.iter().enumerate().all(|(k, a)| match a {
            Some(img) => {
                f.le(jf[k], jf[i]) == g.le(*img, cand) && f.le(jf[i], jf[k]) == g.le(cand, *img)
            }
            None => true,
        })
    }

    fn backtrack(
        f: &Arc<FiniteFrame>,
        g: &Arc<FiniteFrame>,
        jf: &[Elem],
        jg: &[Elem],
        assign: &mut Vec<Option<Elem>>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> Option<FrameHom> {
        if i == jf.len() {
            let map: Vec<Elem> = f
                .elements()
                .map(|x| {
                    g.join_set(
                        jf.iter()
                            .enumerate()
                            .filter(|&(_, &j)| f.le(j, x))
                            .map(|(k, _)| assign[k].unwrap()),
                    )
                })
                .collect();
            let h = FrameHom::new(f.clone(), g.clone(), map).ok()?;
            return h.is_isomorphism().then_some(h);
        }
        for c in 0..jg.len() {
            if used[c] {
                continue;
            }
            if order_compatible(f, g, jf, assign, i, jg[c]) {
                assign[i] = Some(jg[c]);
                used[c] = true;
                if let Some(h) = backtrack(f, g, jf, jg, assign, used, i + 1) {
                    return Some(h);
                }
                assign[i] = None;
                used[c] = false;
            }
        }
        None
    }

    let mut assign: Vec<Option<Elem>> = vec![None; jf.len()];
    let mut used = vec![false; jg.len()];
    backtrack(f, g, &jf, &jg, &mut assign, &mut used, 0)
}

/// Enumerates every frame homomorphism f → g by assigning images to the
/// join-irreducibles of f and lifting along joins. The lift preserves joins
/// automatically (join-irreducibles are join-prime in a distributive
/// lattice); meets and ⊤ are checked on each completed assignment.
///
/// `budget` caps the number of completed assignments inspected; `None` is
/// returned when the cap is hit, so callers can distinguish truncation from
/// an exhaustive answer.
pub fn all_homs(
    f: &Arc<FiniteFrame>,
    g: &Arc<FiniteFrame>,
    budget: usize,
) -> Option<Vec<FrameHom>> {
    fn recurse(
        f: &Arc<FiniteFrame>,
        g: &Arc<FiniteFrame>,
        ji: &[Elem],
        assign: &mut Vec<Elem>,
        out: &mut Vec<FrameHom>,
        inspected: &mut usize,
        budget: usize,
    ) -> bool {
        if assign.len() == ji.len() {
            *inspected += 1;
            if *inspected > budget {
                return false;
            }
            let map: Vec<Elem> = f
                .elements()
                .map(|x| {
                    g.join_set(
                        ji.iter()
                            .zip(assign.iter())
                            .filter_map(|(&j, &img)| f.le(j, x).then_some(img)),
                    )
                })
                .collect();
            if let Ok(h) = FrameHom::new(f.clone(), g.clone(), map) {
                out.push(h);
            }
            return true;
        }
        let i = assign.len();
        for cand in g.elements() {
            // Monotonicity against already-assigned irreducibles.
            let ok = ji[..i].iter().zip(assign.iter()).all(|(&j, &img)| {
                (!f.le(j, ji[i]) || g.le(img, cand)) && (!f.le(ji[i], j) || g.le(cand, img))
            });
            if ok {
                assign.push(cand);
                if !recurse(f, g, ji, assign, out, inspected, budget) {
                    return false;
                }
                assign.pop();
            }
        }
        true
    }

    let ji = f.join_irreducibles();
    let mut out = Vec::new();
    let mut assign: Vec<Elem> = Vec::with_capacity(ji.len());
    let mut inspected = 0usize;
    let complete = recurse(f, g, &ji, &mut assign, &mut out, &mut inspected, budget);
    complete.then_some(out)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn chain_is_a_frame() {
        let f = c3();
        assert_eq!(f.size(), 3);
        assert_eq!(f.bottom(), Elem(0));
        assert_eq!(f.top(), Elem(2));
        assert_eq!(f.meet(Elem(1), Elem(2)), Elem(1));
        assert_eq!(f.join(Elem(1), Elem(0)), Elem(1));
    }

    #[test]
    fn pentagon_rejected_with_witness() {
        // N5: ⊥ < a < b < ⊤ and ⊥ < c < ⊤ with c incomparable to a,b.
        let spec = PosetSpec::new(5, vec![(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]);
        match FiniteFrame::build(&spec) {
            Err(FrameError::NotDistributive { witness }) => {
                // Independent oracle: re-check the witness against the raw
                // bound tables of the underlying order.
                let (a, b, c) = witness;
                let leq = spec.order_table().unwrap();
                let n = 5;
                let le = |x: Elem, y: Elem| leq[x.0 * n + y.0];
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
                let lhs = glb(a, lub(b, c).unwrap()).unwrap();
                let rhs = lub(glb(a, b).unwrap(), glb(a, c).unwrap()).unwrap();
                assert_ne!(lhs, rhs, "reported witness must actually break distributivity");
            }
            other => panic!("expected NotDistributive, got {other:?}"),
        }
    }

    #[test]
    fn boolean_square_from_covers() {
        let f = b2();
        assert_eq!(f.size(), 4);
        assert_eq!(f.meet(Elem(1), Elem(2)), f.bottom());
        assert_eq!(f.join(Elem(1), Elem(2)), f.top());
    }

    #[test]
    fn heyting_values_match_candidate_scan() {
        let f = b2();
        // a → ⊥ is the other atom in B2.
        assert_eq!(f.heyting(Elem(1), f.bottom()), Elem(2));
        for a in f.elements() {
            assert_eq!(f.heyting(a, a), f.top());
        }
        let c = c3();
        assert_eq!(c.heyting(Elem(1), c.bottom()), c.bottom());
    }

    #[test]
    fn heyting_adjunction_exhaustive() {
        for f in [c3(), b2()] {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(
                            f.le(c, f.heyting(a, b)),
                            f.le(f.meet(a, c), b),
                            "adjunction fails"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn downsets_of_small_posets() {
        // 2-element antichain → B2.
        let b = FiniteFrame::downsets(&PosetSpec::new(2, vec![])).unwrap();
        assert_eq!(b.size(), 4);
        // 2-chain → C3.
        let c = FiniteFrame::downsets(&PosetSpec::new(2, vec![(0, 1)])).unwrap();
        assert_eq!(c.size(), 3);
        // Empty poset → one-element frame.
        let one = FiniteFrame::downsets(&PosetSpec::new(0, vec![])).unwrap();
        assert_eq!(one.size(), 1);
        assert_eq!(one.bottom(), one.top());
    }

    #[test]
    fn right_adjoint_galois() {
        let c = c3();
        let two = two();
        // Surjection C3 → 2 sending m ↦ ⊤ (the open quotient at m).
        let m = FrameHom::new(c.clone(), two.clone(), vec![Elem(0), Elem(1), Elem(1)]).unwrap();
        let adj = m.right_adjoint();
        assert_eq!(adj[0], Elem(0));
        assert_eq!(adj[1], Elem(2));
        for a in c.elements() {
            for b in two.elements() {
                assert_eq!(two.le(m.at(a), b), c.le(a, adj[b.0]));
            }
        }
        // m ∘ m⁎ ∘ m = m.
        for a in c.elements() {
            assert_eq!(m.at(adj[m.at(a).0]), m.at(a));
        }

        let b = b2();
        // B2 → 2 collapsing a ↦ ⊤, b ↦ ⊥ is the open quotient at the atom a.
        let h =
            FrameHom::new(b.clone(), two.clone(), vec![Elem(0), Elem(1), Elem(0), Elem(1)])
                .unwrap();
        assert_eq!(h.right_adjoint()[0], Elem(2), "m⁎(⊥) is the other atom");

        let idh = FrameHom::identity(c.clone());
        assert_eq!(idh.right_adjoint(), vec![Elem(0), Elem(1), Elem(2)]);
    }

    #[test]
    fn product_projections_and_maxima() {
        let c = c3();
        let two = two();
        let (p, p1, p2) = FiniteFrame::product(&c, &two);
        assert_eq!(p.size(), 6);
        assert!(p1.is_surjective() && p2.is_surjective());

        // 2 × 2 is B2 up to isomorphism.
        let (tt, _, _) = FiniteFrame::product(&two, &two);
        assert!(find_isomorphism(&tt, &b2()).is_some());

        // f × 1 ≅ f.
        let (c1, _, _) = FiniteFrame::product(&c, &one());
        assert!(find_isomorphism(&c1, &c).is_some());

        // Predecessors of ⊤ in C3 × 2 are exactly (m, ⊤) and (⊤, ⊥).
        let top = p.top();
        let mut maxima: Vec<Elem> =
            p.covers().iter().filter(|&&(_, u)| Elem(u) == top).map(|&(l, _)| Elem(l)).collect();
        maxima.sort();
        let mut expect =
            vec![FiniteFrame::product_pair(2, Elem(1), Elem(1)), FiniteFrame::product_pair(2, Elem(2), Elem(0))];
        expect.sort();
        assert_eq!(maxima, expect);
    }

    #[test]
    fn iso_is_equivalence_on_small_family() {
        let frames = [c3(), b2(), c3()];
        for f in &frames {
            assert!(find_isomorphism(f, f).is_some(), "reflexive");
        }
        for f in &frames {
            for g in &frames {
                let fg = find_isomorphism(f, g).is_some();
                let gf = find_isomorphism(g, f).is_some();
                assert_eq!(fg, gf, "symmetric");
            }
        }
        assert!(find_isomorphism(&c3(), &b2()).is_none());
    }

    #[test]
    fn interval_frames() {
        let b = b2();
        // [⊥, atom] is the two-element frame.
        let (sub, back) = b.interval_frame(b.bottom(), Elem(1)).unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(back, vec![Elem(0), Elem(1)]);
        // The whole interval recovers the frame.
        let (whole, _) = b.interval_frame(b.bottom(), b.top()).unwrap();
        assert!(find_isomorphism(&Arc::new(whole), &b).is_some());
        assert!(b.interval_frame(Elem(1), Elem(2)).is_err(), "incomparable bounds");
    }

    #[test]
    fn hom_enumeration_c3_to_two() {
        let homs = all_homs(&c3(), &two(), 10_000).unwrap();
        // m must go to ⊥ or ⊤; both choices give homs.
        assert_eq!(homs.len(), 2);
        assert_eq!(all_homs(&c3(), &one(), 10_000).unwrap().len(), 1);
        // No hom out of the one-element frame into a nontrivial frame:
        // ⊥ = ⊤ cannot map to both ⊥ and ⊤.
        assert_eq!(all_homs(&one(), &c3(), 10_000).unwrap().len(), 0);
    }
}
