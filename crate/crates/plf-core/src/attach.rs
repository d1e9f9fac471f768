//! Attaching finitely many points to the pointless interval fragment.
//!
//! Given distinct rationals x₁…xₙ, the point filters y_{xᵢ} form an
//! independent family W of regular filters on the pointless fragment E of
//! the interval carrier. The attachment frame consists of pairs (Y, a) of a
//! flag set Y ⊆ W and an unpunctured body a with every flagged filter
//! containing the body. Meets intersect flags and bodies; joins unite flags
//! and fill the united bodies.
//!
//! Point filters at distinct rationals are exactly the regular filters this
//! carrier can witness constructively; an arbitrary abstract family would
//! need caller-supplied oracles.

use crate::rline::{
    io_completely_below, io_is_punctured, io_le, io_meet, io_pseudocomplement, pl_join,
    pl_meet, IntervalOpen, PointFilter, Q, QBound,
};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::Ratio;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AttachError {
    /// The family of attachment points must be nonempty and duplicate-free.
    BadPoints,
    /// A flag refers to a filter that does not contain the body.
    InvariantBroken { flag: usize },
    /// Flag index out of range.
    UnknownFlag(usize),
    /// A subset operation received an empty subset.
    EmptyX,
    /// A witness-construction hypothesis fails.
    HypothesisViolated { reason: &'static str },
}

impl fmt::Display for AttachError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttachError::BadPoints => write!(f, "points must be distinct and nonempty"),
            AttachError::InvariantBroken { flag } => {
                write!(f, "flag {flag} set but the filter misses the body")
            }
            AttachError::UnknownFlag(i) => write!(f, "unknown flag {i}"),
            AttachError::EmptyX => write!(f, "subset of attachment points must be nonempty"),
            AttachError::HypothesisViolated { reason } => write!(f, "hypothesis violated: {reason}"),
        }
    }
}

/// The attachment data: distinct rationals defining W = {y_x}, with the
/// pairwise independence witnesses recorded at construction.
/// Disjoint members witnessing the independence of a filter pair.
pub type SeparationWitness = ((usize, usize), (IntervalOpen, IntervalOpen));

#[derive(Clone, Debug)]
pub struct AttachmentSpec {
    points: Vec<Q>,
    /// Per pair (i, j), i < j: disjoint members of the two filters.
    independence: Vec<SeparationWitness>,
}

impl AttachmentSpec {
    pub fn new(mut points: Vec<Q>) -> Result<Self, AttachError> {
        points.sort();
        if points.is_empty() || points.windows(2).any(|w| w[0] == w[1]) {
            return Err(AttachError::BadPoints);
        }
        let mut independence = Vec::new();
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let gap = (points[j] - points[i]) / 3;
                let u = IntervalOpen::span(
                    QBound::Fin(points[i] - gap),
                    QBound::Fin(points[i] + gap),
                );
                let v = IntervalOpen::span(
                    QBound::Fin(points[j] - gap),
                    QBound::Fin(points[j] + gap),
                );
                debug_assert!(io_meet(&u, &v).is_empty());
                independence.push(((i, j), (u, v)));
            }
        }
        let spec = AttachmentSpec { points, independence };
        // Roundness of each point filter, witnessed on a sample member.
        for i in 0..spec.points.len() {
            let y = spec.filter(i);
            let sample = spec.ball(i, Ratio::from_integer(1));
            let w = y.round_witness(&sample).ok_or(AttachError::BadPoints)?;
            if !y.contains(&w) || !io_completely_below(&w, &sample) {
                return Err(AttachError::BadPoints);
            }
        }
        Ok(spec)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Q] {
        &self.points
    }

    pub fn filter(&self, i: usize) -> PointFilter {
        PointFilter::new(self.points[i])
    }

    pub fn independence_witnesses(&self) -> &[SeparationWitness] {
        &self.independence
    }

    /// Open ball of the given radius around point i, clipped below the
    /// distance to the nearest other attachment point.
    pub fn ball(&self, i: usize, radius: Q) -> IntervalOpen {
        let r = radius.min(self.safe_radius(i));
        IntervalOpen::span(QBound::Fin(self.points[i] - r), QBound::Fin(self.points[i] + r))
    }

    /// A radius below half the distance to every other attachment point.
    pub fn safe_radius(&self, i: usize) -> Q {
        let mut r = Ratio::from_integer(1);
        for (j, &p) in self.points.iter().enumerate() {
            if j != i {
                let d = if p > self.points[i] { p - self.points[i] } else { self.points[i] - p };
                r = r.min(d / 2);
            }
        }
        r
    }

    /// W_a: the flags whose filters contain the body.
    pub fn flags_of(&self, body: &IntervalOpen) -> BTreeSet<usize> {
        (0..self.points.len()).filter(|&i| self.filter(i).contains(body)).collect()
    }
}

/// An element (Y, a) of the attachment frame.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LwElement {
    pub flags: BTreeSet<usize>,
    pub body: IntervalOpen,
}

impl fmt::Display for LwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (k, i) in self.flags.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}, {})", self.body)
    }
}

impl LwElement {
    /// Validates flags ⊆ W_body.
    pub fn new(
        spec: &AttachmentSpec,
        flags: BTreeSet<usize>,
        body: IntervalOpen,
    ) -> Result<Self, AttachError> {
        if io_is_punctured(&body) {
            return Err(AttachError::HypothesisViolated { reason: "body punctured" });
        }
        for &i in &flags {
            if i >= spec.len() {
                return Err(AttachError::UnknownFlag(i));
            }
            if !spec.filter(i).contains(&body) {
                return Err(AttachError::InvariantBroken { flag: i });
            }
        }
        Ok(LwElement { flags, body })
    }

    pub fn bottom() -> Self {
        LwElement { flags: BTreeSet::new(), body: IntervalOpen::empty() }
    }

    pub fn top(spec: &AttachmentSpec) -> Self {
        LwElement { flags: (0..spec.len()).collect(), body: IntervalOpen::whole() }
    }

    pub fn is_bottom(&self) -> bool {
        self.flags.is_empty() && self.body.is_empty()
    }

    pub fn le(&self, other: &LwElement) -> bool {
        self.flags.is_subset(&other.flags) && io_le(&self.body, &other.body)
    }
}

/// Componentwise meet: flags intersect, bodies intersect.
pub fn lw_meet(
    spec: &AttachmentSpec,
    e1: &LwElement,
    e2: &LwElement,
) -> Result<LwElement, AttachError> {
    let body = pl_meet(&[e1.body.clone(), e2.body.clone()])
        .map_err(|_| AttachError::HypothesisViolated { reason: "punctured meet input" })?;
    let flags: BTreeSet<usize> = e1.flags.intersection(&e2.flags).copied().collect();
    LwElement::new(spec, flags, body)
}

/// Join: flags unite, bodies join in the pointless fragment.
pub fn lw_join(spec: &AttachmentSpec, es: &[LwElement]) -> Result<LwElement, AttachError> {
    let bodies: Vec<IntervalOpen> = es.iter().map(|e| e.body.clone()).collect();
    let body = pl_join(&bodies)
        .map_err(|_| AttachError::HypothesisViolated { reason: "punctured join input" })?;
    let mut flags = BTreeSet::new();
    for e in es {
        flags.extend(e.flags.iter().copied());
    }
    LwElement::new(spec, flags, body)
}

/// The maximal elements: (W∖{w}, ⊤) per attachment point.
pub fn lw_max(spec: &AttachmentSpec) -> Vec<LwElement> {
    (0..spec.len())
        .map(|w| {
            let flags: BTreeSet<usize> = (0..spec.len()).filter(|&i| i != w).collect();
            LwElement { flags, body: IntervalOpen::whole() }
        })
        .collect()
}

/// Maximality probe for a candidate: every representable perturbation
/// strictly above it collapses to ⊤. Checks all flag additions and a body
/// bump for non-full bodies.
pub fn lw_validate_maximal(spec: &AttachmentSpec, m: &LwElement) -> bool {
    let top = LwElement::top(spec);
    if m == &top {
        return false;
    }
    // Adding any missing flag must reach ⊤ (when the result is an element).
    for w in 0..spec.len() {
        if !m.flags.contains(&w) {
            let mut flags = m.flags.clone();
            flags.insert(w);
            if let Ok(above) = LwElement::new(spec, flags, m.body.clone()) {
                if above != top {
                    return false;
                }
            }
        }
    }
    // Growing the body strictly must also overshoot (only ⊤ has full body
    // above a maximal element).
    !m.body.is_whole() || m.flags.len() == spec.len() - 1
}

/// The π-projection (Y, a) ↦ (W_a, a): the copy of the pointless fragment.
pub fn lw_pi_project(spec: &AttachmentSpec, e: &LwElement) -> LwElement {
    LwElement { flags: spec.flags_of(&e.body), body: e.body.clone() }
}

/// The σ-projection (Y, a) ↦ (Y, ⊤).
pub fn lw_sigma_project(e: &LwElement) -> LwElement {
    LwElement { flags: e.flags.clone(), body: IntervalOpen::whole() }
}

/// Meet of the two projections reconstructs the element (the σ∧π identity
/// on this carrier).
pub fn lw_projection_meet_identity(spec: &AttachmentSpec, e: &LwElement) -> bool {
    let pi = lw_pi_project(spec, e);
    let sigma = lw_sigma_project(e);
    match lw_meet(spec, &pi, &sigma) {
        Ok(m) => m == *e,
        Err(_) => false,
    }
}

/// Data for the rather-below witness of (Y,c) against (Y,a): the element
/// (Z, c* ∨ ⋁_Z t(z)) meeting (Y,c) at ⊥ and joining (Y,a) to ⊤.
pub struct CombelWitness {
    pub witness: LwElement,
    pub meets_to_bottom: bool,
    pub joins_to_top: bool,
}

/// Builds and validates the rather-below witness under the hypotheses:
/// Y ⊕ Z partitions W, t(z) ∈ z′ = {b ∈ z : b* ∈ ∩Y} for z ∈ Z, and
/// c ≪ a ≤ ⋀_Z t(z)* with a, c ∈ ∩Y.
pub fn lw_witness_combel(
    spec: &AttachmentSpec,
    flags_y: &BTreeSet<usize>,
    t: &[(usize, IntervalOpen)],
    c: &IntervalOpen,
    a: &IntervalOpen,
) -> Result<CombelWitness, AttachError> {
    let all: BTreeSet<usize> = (0..spec.len()).collect();
    let z_set: BTreeSet<usize> = all.difference(flags_y).copied().collect();
    let t_flags: BTreeSet<usize> = t.iter().map(|(z, _)| *z).collect();
    if t_flags != z_set {
        return Err(AttachError::HypothesisViolated { reason: "t must be defined exactly on Z" });
    }
    for &i in flags_y {
        if i >= spec.len() {
            return Err(AttachError::UnknownFlag(i));
        }
        if !spec.filter(i).contains(c) || !spec.filter(i).contains(a) {
            return Err(AttachError::HypothesisViolated { reason: "c, a must lie in every flagged filter" });
        }
    }
    for (z, tz) in t {
        if !spec.filter(*z).contains(tz) {
            return Err(AttachError::HypothesisViolated { reason: "t(z) must lie in z" });
        }
        let tz_star = io_pseudocomplement(tz);
        if flags_y.iter().any(|&i| !spec.filter(i).contains(&tz_star)) {
            return Err(AttachError::HypothesisViolated { reason: "t(z)* must lie in every flagged filter" });
        }
        if !io_le(a, &tz_star) {
            return Err(AttachError::HypothesisViolated { reason: "a must lie below every t(z)*" });
        }
    }
    if !io_completely_below(c, a) {
        return Err(AttachError::HypothesisViolated { reason: "c must be completely below a" });
    }

    // Witness body: c* ∨ ⋁_Z t(z), joined in the pointless fragment.
    let mut parts: Vec<IntervalOpen> = vec![io_pseudocomplement(c)];
    parts.extend(t.iter().map(|(_, tz)| tz.clone()));
    let body = pl_join(&parts)
        .map_err(|_| AttachError::HypothesisViolated { reason: "punctured witness part" })?;
    let witness = LwElement::new(spec, z_set, body)?;

    let yc = LwElement::new(spec, flags_y.clone(), c.clone())?;
    let ya = LwElement::new(spec, flags_y.clone(), a.clone())?;
    let meets_to_bottom = lw_meet(spec, &yc, &witness)?.is_bottom();
    let joins_to_top =
        lw_join(spec, &[ya, witness.clone()])? == LwElement::top(spec);
    Ok(CombelWitness { witness, meets_to_bottom, joins_to_top })
}

/// Restriction of flags to a nonempty subset X of the attachment points:
/// (Y, a) ↦ (Y ∩ X, a), re-indexed over the sub-spec.
pub struct KxQuotient {
    pub sub_spec: AttachmentSpec,
    /// Indices into the original spec, sorted.
    pub kept: Vec<usize>,
}

impl KxQuotient {
    pub fn new(spec: &AttachmentSpec, x: &BTreeSet<usize>) -> Result<Self, AttachError> {
        if x.is_empty() {
            return Err(AttachError::EmptyX);
        }
        if x.iter().any(|&i| i >= spec.len()) {
            return Err(AttachError::UnknownFlag(*x.iter().max().unwrap()));
        }
        let kept: Vec<usize> = x.iter().copied().collect();
        let sub_spec = AttachmentSpec::new(kept.iter().map(|&i| spec.points()[i]).collect())
            .expect("a nonempty subset of distinct points is valid");
        Ok(KxQuotient { sub_spec, kept })
    }

    pub fn apply(&self, e: &LwElement) -> LwElement {
        let flags: BTreeSet<usize> = self
            .kept
            .iter()
            .enumerate()
            .filter(|(_, &orig)| e.flags.contains(&orig))
            .map(|(new, _)| new)
            .collect();
        LwElement { flags, body: e.body.clone() }
    }
}

/// The self-check map k(u) = (flags-by-maximal-elements, π-body) applied to
/// the attachment frame itself: u ≰ m_w exactly when w is flagged, so k
/// must reproduce u.
pub fn prop19_map(spec: &AttachmentSpec, u: &LwElement) -> LwElement {
    let flags: BTreeSet<usize> = lw_max(spec)
        .iter()
        .enumerate()
        .filter(|(_, m)| !u.le(m))
        .map(|(w, _)| w)
        .collect();
    LwElement { flags, body: lw_pi_project(spec, u).body }
}

/// The surjectivity recipe: hit (Z, b) by meeting the embedded body with
/// the maximal elements of the flags to be dropped.
pub fn prop19_preimage(spec: &AttachmentSpec, target: &LwElement) -> Result<LwElement, AttachError> {
    let w_b = spec.flags_of(&target.body);
    if !target.flags.is_subset(&w_b) {
        return Err(AttachError::HypothesisViolated { reason: "target not an element" });
    }
    let mut e = LwElement { flags: w_b.clone(), body: target.body.clone() };
    let maxima = lw_max(spec);
    for w in w_b.difference(&target.flags) {
        e = lw_meet(spec, &e, &maxima[*w])?;
    }
    Ok(e)
}

/// Monotone partial-join evidence for the supremum ⋁_{b ∈ y_w} (W_{b*}, b*)
/// = (W∖{w}, ⊤), reckoned in the ambient product. Finite samples stay
/// strictly below the limit; the report records monotonicity and the flag
/// growth, not the limit itself.
pub struct Lemma32Report {
    pub partials: Vec<LwElement>,
    pub monotone: bool,
    pub flags_reach_complement: bool,
    pub body_strictly_below_top: bool,
}

pub fn lemma32_partial_check(
    spec: &AttachmentSpec,
    w: usize,
    members: &[IntervalOpen],
) -> Result<Lemma32Report, AttachError> {
    if w >= spec.len() {
        return Err(AttachError::UnknownFlag(w));
    }
    let y = spec.filter(w);
    let mut acc_flags: BTreeSet<usize> = BTreeSet::new();
    let mut acc_body = IntervalOpen::empty();
    let mut partials = Vec::new();
    let mut monotone = true;
    for b in members {
        if !y.contains(b) {
            return Err(AttachError::HypothesisViolated { reason: "sample must lie in y_w" });
        }
        let bstar = io_pseudocomplement(b);
        let flags = spec.flags_of(&bstar);
        let next_flags: BTreeSet<usize> = acc_flags.union(&flags).copied().collect();
        // Supremum in the ambient product E × 2^W: flag union, E-join of
        // the bodies.
        let next_body = pl_join(&[acc_body.clone(), bstar])
            .map_err(|_| AttachError::HypothesisViolated { reason: "punctured b*" })?;
        if !(acc_flags.is_subset(&next_flags) && io_le(&acc_body, &next_body)) {
            monotone = false;
        }
        acc_flags = next_flags;
        acc_body = next_body;
        partials.push(LwElement { flags: acc_flags.clone(), body: acc_body.clone() });
    }
    let complement: BTreeSet<usize> = (0..spec.len()).filter(|&i| i != w).collect();
    Ok(Lemma32Report {
        monotone,
        flags_reach_complement: acc_flags == complement,
        body_strictly_below_top: !acc_body.is_whole(),
        partials,
    })
}

/// A strictly smaller nonbottom minorant of a nonbottom element: shrink the
/// body inside one component, dropping the flags.
pub fn lw_shrink_witness(e: &LwElement) -> Option<LwElement> {
    if e.body.is_empty() {
        // Flags over an empty body are impossible, so e is ⊥.
        return None;
    }
    let s = e.body.spans()[0];
    let one = Ratio::from_integer(1);
    let (lo, hi) = (s.lo, s.hi);
    let (a, b) = match (lo, hi) {
        (QBound::NegInf, QBound::PosInf) => (-one, one),
        (QBound::NegInf, QBound::Fin(b)) => (b - one - one, b - one),
        (QBound::Fin(a), QBound::PosInf) => (a + one, a + one + one),
        (QBound::Fin(a), QBound::Fin(b)) => {
            let third = (b - a) / 3;
            (a + third, b - third)
        }
        _ => return None,
    };
    let small = IntervalOpen::span(QBound::Fin(a), QBound::Fin(b));
    let candidate = LwElement { flags: BTreeSet::new(), body: small };
    (candidate.le(e) && !candidate.is_bottom() && candidate != *e).then_some(candidate)
}

/// One stage of the complete-regularity recipe: the t-function at shrinking
/// radius, the trimmed meet body, and a flagged minorant completely below
/// the element, validated through the rather-below witness.
pub struct CrStage {
    pub t: Vec<(usize, IntervalOpen)>,
    /// a ∧ ⋀_Z t(z)*.
    pub trimmed: IntervalOpen,
    pub minor: LwElement,
    pub witness_ok: bool,
}

/// Runs the witness-level complete-regularity recipe on (Y, a) for the
/// given number of stages. Returns the stages and the monotone partial
/// joins of the minorants (all ≤ the element; finite evidence only).
pub fn lw_cr_stages(
    spec: &AttachmentSpec,
    e: &LwElement,
    stages: usize,
) -> Result<(Vec<CrStage>, Vec<LwElement>), AttachError> {
    let z_set: BTreeSet<usize> =
        (0..spec.len()).filter(|i| !e.flags.contains(i)).collect();
    let mut out = Vec::new();
    let mut partials = Vec::new();
    let mut acc: Option<LwElement> = None;
    for k in 0..stages {
        let denom = Ratio::from_integer(1 << (k + 1) as i64);
        let t: Vec<(usize, IntervalOpen)> = z_set
            .iter()
            .map(|&z| (z, spec.ball(z, spec.safe_radius(z) / denom)))
            .collect();
        let mut trimmed = e.body.clone();
        for (_, tz) in &t {
            trimmed = io_meet(&trimmed, &io_pseudocomplement(tz));
        }
        // Shrink each component of the trimmed body inward, keeping every
        // flagged point strictly inside.
        let minor_body = shrink_keeping_points(
            spec,
            &trimmed,
            &e.flags,
            Ratio::from_integer(1) / (denom * 2),
        );
        if minor_body.is_empty() {
            // Nothing survives at this stage; record an empty stage.
            out.push(CrStage { t, trimmed, minor: LwElement::bottom(), witness_ok: true });
            continue;
        }
        let minor = LwElement::new(spec, e.flags.clone(), minor_body.clone())?;
        let witness_ok = if z_set.is_empty() {
            // Degenerate partition: rather-below inside the fragment.
            io_completely_below(&minor_body, &e.body)
        } else {
            let w = lw_witness_combel(spec, &e.flags, &t, &minor_body, &trimmed)?;
            w.meets_to_bottom && w.joins_to_top
        };
        let next = match &acc {
            None => minor.clone(),
            Some(prev) => lw_join(spec, &[prev.clone(), minor.clone()])?,
        };
        acc = Some(next.clone());
        partials.push(next);
        out.push(CrStage { t, trimmed, minor, witness_ok });
    }
    Ok((out, partials))
}

/// Shrinks every component to a closed-containment minorant while keeping
/// the given attachment points inside; components without kept points
/// shrink symmetrically; components that cannot keep their points are
/// dropped.
fn shrink_keeping_points(
    spec: &AttachmentSpec,
    u: &IntervalOpen,
    keep: &BTreeSet<usize>,
    margin: Q,
) -> IntervalOpen {
    let mut raw: Vec<(QBound, QBound)> = Vec::new();
    for s in u.spans() {
        let inside: Vec<Q> = keep
            .iter()
            .map(|&i| spec.points()[i])
            .filter(|&p| s.lo < QBound::Fin(p) && QBound::Fin(p) < s.hi)
            .collect();
        let lo = match s.lo {
            QBound::NegInf => {
                // Anchor unbounded ends near a kept point or the opposite
                // finite endpoint, so the shrink stays inside the span.
                let anchor = inside.iter().copied().min().unwrap_or(match s.hi {
                    QBound::Fin(b) => b - Ratio::from_integer(2),
                    _ => Ratio::from_integer(0),
                });
                QBound::Fin(anchor - Ratio::from_integer(1) - margin)
            }
            QBound::Fin(a) => {
                let limit = inside.iter().copied().min();
                let cand = a + margin;
                match limit {
                    Some(p) if cand >= p => QBound::Fin((a + p) / 2),
                    _ => QBound::Fin(cand),
                }
            }
            QBound::PosInf => continue,
        };
        let hi = match s.hi {
            QBound::PosInf => {
                let anchor = inside.iter().copied().max().unwrap_or(match s.lo {
                    QBound::Fin(a) => a + Ratio::from_integer(2),
                    _ => Ratio::from_integer(0),
                });
                QBound::Fin(anchor + Ratio::from_integer(1) + margin)
            }
            QBound::Fin(b) => {
                let limit = inside.iter().copied().max();
                let cand = b - margin;
                match limit {
                    Some(p) if cand <= p => QBound::Fin((b + p) / 2),
                    _ => QBound::Fin(cand),
                }
            }
            QBound::NegInf => continue,
        };
        if lo < hi {
            raw.push((lo, hi));
        }
    }
    IntervalOpen::from_spans(raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rline::parse_interval_open;

    fn io(s: &str) -> IntervalOpen {
        parse_interval_open(s).unwrap()
    }

    fn q(n: i64) -> Q {
        Ratio::from_integer(n)
    }

    fn spec2() -> AttachmentSpec {
        AttachmentSpec::new(vec![q(0), q(2)]).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(AttachmentSpec::new(vec![]).is_err(), "nonempty finite family required");
        assert!(AttachmentSpec::new(vec![q(1), q(1)]).is_err());
        let s = AttachmentSpec::new(vec![q(5), q(0), Ratio::new(5, 2)]).unwrap();
        assert_eq!(s.points(), &[q(0), Ratio::new(5, 2), q(5)]);
        for ((_, _), (u, v)) in s.independence_witnesses() {
            assert!(io_meet(u, v).is_empty());
        }
    }

    #[test]
    fn element_invariant() {
        let s = spec2();
        // Flagged filter must contain the body.
        let ok = LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap();
        assert_eq!(ok.flags.len(), 1);
        assert!(matches!(
            LwElement::new(&s, [1].into(), io("(-1,1)")),
            Err(AttachError::InvariantBroken { flag: 1 })
        ));
        assert!(LwElement::new(&s, [0].into(), io("(-1,0)u(0,1)")).is_err());
    }

    #[test]
    fn meet_and_join_componentwise() {
        let s = spec2();
        let e1 = LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap();
        // (0,2) does not contain the point 0, so it cannot carry flag 0.
        assert!(LwElement::new(&s, [0].into(), io("(0,2)")).is_err());
        let e2 = LwElement::new(&s, [0].into(), io("(-1/2,2)")).unwrap();
        let m = lw_meet(&s, &e1, &e2).unwrap();
        assert_eq!(m.body, io("(-1/2,1)"));
        assert_eq!(m.flags.iter().copied().collect::<Vec<_>>(), vec![0]);

        // Join with ⊥ is identity.
        let j = lw_join(&s, &[e1.clone(), LwElement::bottom()]).unwrap();
        assert_eq!(j, e1);

        // Disjoint flags and bodies unite.
        let e3 = LwElement::new(&s, [1].into(), io("(3/2,3)")).unwrap();
        let j = lw_join(&s, &[e1.clone(), e3]).unwrap();
        assert_eq!(j.flags.iter().copied().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(j.body, io("(-1,1)u(3/2,3)"));
    }

    #[test]
    fn maxima_form_and_validate() {
        for n in 1..=4 {
            let s = AttachmentSpec::new((0..n).map(|i| q(i as i64 * 3)).collect()).unwrap();
            let maxima = lw_max(&s);
            assert_eq!(maxima.len(), n);
            for (w, m) in maxima.iter().enumerate() {
                assert!(m.body.is_whole());
                assert!(!m.flags.contains(&w));
                assert_eq!(m.flags.len(), n - 1);
                assert!(lw_validate_maximal(&s, m));
            }
        }
        // W = {y_0}: single maximal element (∅, ⊤).
        let s1 = AttachmentSpec::new(vec![q(0)]).unwrap();
        let m = lw_max(&s1);
        assert_eq!(m.len(), 1);
        assert!(m[0].flags.is_empty() && m[0].body.is_whole());
    }

    #[test]
    fn projections_and_meet_identity() {
        let s = spec2();
        let e = LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap();
        let pi = lw_pi_project(&s, &e);
        assert_eq!(pi.flags.iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(pi.body, e.body);
        let sg = lw_sigma_project(&e);
        assert!(sg.body.is_whole());
        assert!(lw_projection_meet_identity(&s, &e));

        // (∅, u) with the point outside u projects to (∅, ⊤) under σ.
        let e = LwElement::new(&s, BTreeSet::new(), io("(5,6)")).unwrap();
        assert!(lw_sigma_project(&e).flags.is_empty());
        // ⊤ projects to ⊤ both ways.
        let top = LwElement::top(&s);
        assert_eq!(lw_pi_project(&s, &top), top);
        assert_eq!(lw_sigma_project(&top), top);
    }

    #[test]
    fn combel_witness_example() {
        // W = {y_0, y_2}, Y = {0}, Z = {2}, t(2) = (3/2, 5/2),
        // c = (−1/4, 1/4), a = (−1/2, 1/2).
        let s = spec2();
        let y: BTreeSet<usize> = [0].into();
        let t = vec![(1usize, io("(3/2,5/2)"))];
        let c = io("(-1/4,1/4)");
        let a = io("(-1/2,1/2)");
        let w = lw_witness_combel(&s, &y, &t, &c, &a).unwrap();
        assert!(w.meets_to_bottom, "witness meets (Y,c) at ⊥");
        assert!(w.joins_to_top, "witness joins (Y,a) to ⊤");
        assert_eq!(w.witness.flags.iter().copied().collect::<Vec<_>>(), vec![1]);

        // Hypothesis violations are reported.
        assert!(lw_witness_combel(&s, &y, &t, &a, &c).is_err(), "a ≪ c fails");
        let bad_t = vec![(1usize, io("(-10,10)"))];
        assert!(
            lw_witness_combel(&s, &y, &bad_t, &c, &a).is_err(),
            "t(z)* misses the flagged filter"
        );
    }

    #[test]
    fn combel_witness_degenerate_partition() {
        // Z = ∅: the witness reduces to (∅, c*).
        let s = AttachmentSpec::new(vec![q(0)]).unwrap();
        let y: BTreeSet<usize> = [0].into();
        let c = io("(-1/4,1/4)");
        let a = io("(-1/2,1/2)");
        let w = lw_witness_combel(&s, &y, &[], &c, &a).unwrap();
        assert!(w.meets_to_bottom && w.joins_to_top);
        assert!(w.witness.flags.is_empty());
        assert_eq!(w.witness.body, io_pseudocomplement(&c));
    }

    #[test]
    fn z_prime_nonempty_for_sampled_partitions() {
        // Lemma-26 shape: for any nontrivial partition and z ∈ Z, some
        // member of z has its pseudocomplement in every flagged filter.
        let s = AttachmentSpec::new(vec![q(0), q(2), q(4)]).unwrap();
        for z in 0..3 {
            let y: BTreeSet<usize> = (0..3).filter(|&i| i != z).collect();
            let tz = s.ball(z, s.safe_radius(z) / 2);
            let tz_star = io_pseudocomplement(&tz);
            assert!(s.filter(z).contains(&tz));
            for &i in &y {
                assert!(s.filter(i).contains(&tz_star), "t(z)* lies in y_{i}");
            }
        }
    }

    #[test]
    fn kx_quotient_maps() {
        let s = AttachmentSpec::new(vec![q(0), q(2)]).unwrap();
        // X = W: identity.
        let kx = KxQuotient::new(&s, &[0, 1].into()).unwrap();
        let e = LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap();
        assert_eq!(kx.apply(&e), e);

        // X = {y_0}: the maximal element keeping flag 0 goes to ⊤ of L_X.
        let kx = KxQuotient::new(&s, &[0].into()).unwrap();
        let m1 = &lw_max(&s)[1];
        let image = kx.apply(m1);
        assert_eq!(image, LwElement::top(&kx.sub_spec));
        // Flags outside X drop.
        let e = LwElement::new(&s, [1].into(), io("(3/2,3)")).unwrap();
        let image = kx.apply(&e);
        assert!(image.flags.is_empty());
        assert_eq!(image.body, e.body);

        assert!(KxQuotient::new(&s, &BTreeSet::new()).is_err());
    }

    #[test]
    fn kx_coherence_on_nested_subsets() {
        let s = AttachmentSpec::new(vec![q(0), q(2), q(4)]).unwrap();
        let x: BTreeSet<usize> = [0, 1].into();
        let kx = KxQuotient::new(&s, &x).unwrap();
        let x_prime: BTreeSet<usize> = [0].into();
        let k_direct = KxQuotient::new(&s, &x_prime).unwrap();
        let k_second = KxQuotient::new(&kx.sub_spec, &[0].into()).unwrap();
        let e = LwElement::new(&s, [0, 2].into(), io("(-1,1)u(7/2,9/2)")).unwrap();
        assert_eq!(k_direct.apply(&e), k_second.apply(&kx.apply(&e)));
    }

    #[test]
    fn prop19_identity_and_preimage() {
        let s = spec2();
        let samples = [
            LwElement::top(&s),
            LwElement::bottom(),
            LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap(),
            LwElement::new(&s, BTreeSet::new(), io("(-1,1)")).unwrap(),
            LwElement::new(&s, [0, 1].into(), io("(-1,1)u(3/2,3)")).unwrap(),
        ];
        for u in &samples {
            assert_eq!(&prop19_map(&s, u), u, "k reproduces {u}");
        }
        // Meet preservation on sample pairs.
        for u in &samples {
            for v in &samples {
                let m = lw_meet(&s, u, v).unwrap();
                assert_eq!(prop19_map(&s, &m), lw_meet(&s, &prop19_map(&s, u), &prop19_map(&s, v)).unwrap());
            }
        }
        // Surjectivity witness: the target with a dropped flag is hit.
        let target = LwElement::new(&s, BTreeSet::new(), io("(-1,1)")).unwrap();
        let pre = prop19_preimage(&s, &target).unwrap();
        assert_eq!(prop19_map(&s, &pre), target);
        assert_eq!(pre, target, "the recipe lands on the target itself here");
    }

    #[test]
    fn lemma32_partial_joins() {
        let s = AttachmentSpec::new(vec![q(0), q(2)]).unwrap();
        let members: Vec<IntervalOpen> = (1..=4)
            .map(|k| s.ball(0, Ratio::new(1, 1 << k)))
            .collect();
        let rep = lemma32_partial_check(&s, 0, &members).unwrap();
        assert!(rep.monotone);
        assert!(rep.flags_reach_complement, "b* contains the other point for small b");
        assert!(rep.body_strictly_below_top, "finite partial joins stay below ⊤");

        // A single sample stays strictly below the limit.
        let rep = lemma32_partial_check(&s, 0, &members[..1]).unwrap();
        assert!(rep.body_strictly_below_top);
        assert!(rep.partials[0].flags.contains(&1));
    }

    #[test]
    fn shrink_witness_atomlessness() {
        let s = spec2();
        let samples = [
            LwElement::top(&s),
            LwElement::new(&s, [0].into(), io("(-1,1)")).unwrap(),
            LwElement::new(&s, BTreeSet::new(), io("(5,6)")).unwrap(),
            LwElement::new(&s, [1].into(), io("(-inf,0)u(1,inf)")).unwrap(),
        ];
        for e in &samples {
            let w = lw_shrink_witness(e).expect("nonbottom elements shrink");
            assert!(w.le(e) && w != *e && !w.is_bottom());
        }
        let _ = &s;
        assert!(lw_shrink_witness(&LwElement::bottom()).is_none());
    }

    #[test]
    fn cr_stages_monotone_below() {
        let s = spec2();
        let e = LwElement::new(&s, [0].into(), io("(-1,1)u(3/2,3)")).unwrap();
        let (stages, partials) = lw_cr_stages(&s, &e, 4).unwrap();
        assert_eq!(stages.len(), 4);
        for st in &stages {
            assert!(st.witness_ok, "every stage validates its witness");
            assert!(st.minor.le(&e));
        }
        for w in partials.windows(2) {
            assert!(w[0].le(&w[1]), "partial joins grow");
        }
        assert!(partials.last().unwrap().le(&e));

        // Fully flagged element: degenerate partition path.
        let e = LwElement::new(&s, [0, 1].into(), io("(-1,1)u(3/2,3)")).unwrap();
        let (stages, _) = lw_cr_stages(&s, &e, 2).unwrap();
        assert!(stages.iter().all(|st| st.witness_ok));
    }
}
