//! A finitely representable fragment of the topology of ℝ: canonical finite
//! unions of open rational intervals, with exact arithmetic.
//!
//! Canonical form: intervals sorted by left endpoint, pairwise disjoint as
//! point sets, overlapping or nested intervals merged. Abutting intervals —
//! hi of one equal to lo of the next — are kept separate: they are disjoint
//! point sets, and the shared endpoint is exactly what the puncturing
//! machinery is about. An element is unpunctured when no two of its
//! intervals abut; merging every abutting pair is the fill operator, which
//! realizes the successor-join nucleus on this carrier.
//!
//! Rational endpoints keep abutment decidable; ±∞ markers make ⊤ = ℝ and
//! the complements ℝ∖{x} representable.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// A rational endpoint or an infinity marker.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum QBound {
    NegInf,
    Fin(Q),
    PosInf,
}

impl QBound {
    pub fn fin(n: i64, d: i64) -> Self {
        QBound::Fin(Ratio::new(n, d))
    }

    pub fn q(self) -> Option<Q> {
        match self {
            QBound::Fin(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for QBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QBound::NegInf => write!(f, "-inf"),
            QBound::PosInf => write!(f, "inf"),
            QBound::Fin(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

/// One open interval (lo, hi) with lo < hi.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Span {
    pub lo: QBound,
    pub hi: QBound,
}

/// A canonical finite union of open rational intervals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalOpen {
    spans: Vec<Span>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RlineError {
    /// Textual element syntax error.
    Parse(String),
    /// A pointless-fragment operation received a punctured input.
    InputPunctured,
    /// A regularity challenge admits no witness. On this carrier that would
    /// contradict the regularity of point filters, so it is a test failure,
    /// not a user error.
    ChallengeUnanswerable,
}

impl fmt::Display for RlineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RlineError::Parse(s) => write!(f, "parse error: {s}"),
            RlineError::InputPunctured => write!(f, "input is punctured"),
            RlineError::ChallengeUnanswerable => write!(f, "challenge admits no witness"),
        }
    }
}

impl IntervalOpen {
    pub fn empty() -> Self {
        IntervalOpen { spans: Vec::new() }
    }

    pub fn whole() -> Self {
        IntervalOpen { spans: vec![Span { lo: QBound::NegInf, hi: QBound::PosInf }] }
    }

    /// Single open interval; empty when lo ≥ hi.
    pub fn span(lo: QBound, hi: QBound) -> Self {
        if lo < hi {
            IntervalOpen { spans: vec![Span { lo, hi }] }
        } else {
            Self::empty()
        }
    }

    pub fn from_spans(raw: impl IntoIterator<Item = (QBound, QBound)>) -> Self {
        let mut spans: Vec<Span> = raw
            .into_iter()
            .filter(|&(lo, hi)| lo < hi)
            .map(|(lo, hi)| Span { lo, hi })
            .collect();
        spans.sort_by_key(|s| (s.lo, s.hi));
        // Merge strict overlaps; keep abutments (hi == next lo) separate.
        let mut out: Vec<Span> = Vec::with_capacity(spans.len());
        for s in spans {
            match out.last_mut() {
                Some(last) if s.lo < last.hi => {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                    }
                }
                _ => out.push(s),
            }
        }
        IntervalOpen { spans: out }
    }

    pub fn spans(&self) -> &[Span] {
        &self.spans
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.spans.len() == 1
            && self.spans[0].lo == QBound::NegInf
            && self.spans[0].hi == QBound::PosInf
    }

    pub fn contains_point(&self, x: Q) -> bool {
        let p = QBound::Fin(x);
        self.spans.iter().any(|s| s.lo < p && p < s.hi)
    }

    /// Set inclusion of canonical opens. Each span is connected and the
    /// other side's spans are pairwise disjoint, so a span is covered
    /// exactly when a single span contains it.
    pub fn subset_of(&self, other: &IntervalOpen) -> bool {
        self.spans
            .iter()
            .all(|s| other.spans.iter().any(|t| t.lo <= s.lo && t.hi >= s.hi))
    }
}

impl fmt::Display for IntervalOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return write!(f, "empty");
        }
        for (i, s) in self.spans.iter().enumerate() {
            if i > 0 {
                write!(f, "u")?;
            }
            write!(f, "({},{})", s.lo, s.hi)?;
        }
        Ok(())
    }
}

fn parse_bound(s: &str) -> Result<QBound, RlineError> {
    let t = s.trim();
    match t {
        "inf" | "+inf" => return Ok(QBound::PosInf),
        "-inf" => return Ok(QBound::NegInf),
        _ => {}
    }
    let err = || RlineError::Parse(String::from(s));
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| err())?;
        let d: i64 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        Ok(QBound::Fin(Ratio::new(n, d)))
    } else {
        let n: i64 = t.parse().map_err(|_| err())?;
        Ok(QBound::Fin(Ratio::from_integer(n)))
    }
}

/// Parses the textual element syntax, e.g. `(0,1)u(3/2,2)u(5,inf)`;
/// `empty` denotes ⊥.
pub fn parse_interval_open(s: &str) -> Result<IntervalOpen, RlineError> {
    let t = s.trim();
    if t == "empty" {
        return Ok(IntervalOpen::empty());
    }
    let mut raw = Vec::new();
    for part in t.split('u') {
        let p = part.trim();
        let inner = p
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(|| RlineError::Parse(String::from(p)))?;
        let (lo, hi) =
            inner.split_once(',').ok_or_else(|| RlineError::Parse(String::from(p)))?;
        let (lo, hi) = (parse_bound(lo)?, parse_bound(hi)?);
        if lo >= hi {
            return Err(RlineError::Parse(String::from(p)));
        }
        raw.push((lo, hi));
    }
    Ok(IntervalOpen::from_spans(raw))
}

/// Union as point sets.
pub fn io_join(u: &IntervalOpen, v: &IntervalOpen) -> IntervalOpen {
    IntervalOpen::from_spans(
        u.spans.iter().chain(v.spans.iter()).map(|s| (s.lo, s.hi)),
    )
}

/// Intersection as point sets.
pub fn io_meet(u: &IntervalOpen, v: &IntervalOpen) -> IntervalOpen {
    let mut raw = Vec::new();
    for s in &u.spans {
        for t in &v.spans {
            let lo = s.lo.max(t.lo);
            let hi = s.hi.min(t.hi);
            if lo < hi {
                raw.push((lo, hi));
            }
        }
    }
    IntervalOpen::from_spans(raw)
}

pub fn io_le(u: &IntervalOpen, v: &IntervalOpen) -> bool {
    io_meet(u, v) == *u
}

/// A finite union of closed intervals [lo, hi]; degenerate points allowed
/// (lo == hi, finite). Used for closures and their complements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSet {
    pieces: Vec<(QBound, QBound)>,
}

impl ClosedSet {
    fn normalize(mut pieces: Vec<(QBound, QBound)>) -> Self {
        pieces.retain(|&(lo, hi)| lo <= hi && lo != QBound::PosInf && hi != QBound::NegInf);
        pieces.sort();
        let mut out: Vec<(QBound, QBound)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        ClosedSet { pieces: out }
    }

    pub fn pieces(&self) -> &[(QBound, QBound)] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The open complement ℝ ∖ self.
    pub fn complement(&self) -> IntervalOpen {
        if self.pieces.is_empty() {
            return IntervalOpen::whole();
        }
        let mut raw = Vec::new();
        if self.pieces[0].0 != QBound::NegInf {
            raw.push((QBound::NegInf, self.pieces[0].0));
        }
        for w in self.pieces.windows(2) {
            raw.push((w[0].1, w[1].0));
        }
        if self.pieces.last().unwrap().1 != QBound::PosInf {
            raw.push((self.pieces.last().unwrap().1, QBound::PosInf));
        }
        IntervalOpen::from_spans(raw)
    }
}

/// Topological closure: close every interval, merging across shared
/// endpoints.
pub fn closure(u: &IntervalOpen) -> ClosedSet {
    ClosedSet::normalize(u.spans.iter().map(|s| (s.lo, s.hi)).collect())
}

/// u* = interior of the complement = ℝ ∖ cl(u). Always unpunctured.
pub fn io_pseudocomplement(u: &IntervalOpen) -> IntervalOpen {
    closure(u).complement()
}

/// u → v = interior of (ℝ∖u) ∪ v = ℝ ∖ cl(u ∖ v).
pub fn io_heyting(u: &IntervalOpen, v: &IntervalOpen) -> IntervalOpen {
    // u ∖ v, closed up: subtract v's spans from each span of u, closing
    // every remaining piece (which may be a single point).
    let mut pieces: Vec<(QBound, QBound)> = Vec::new();
    for s in &u.spans {
        let mut cursor = s.lo;
        // v-components meeting (s.lo, s.hi), in order.
        for t in &v.spans {
            let lo = t.lo.max(s.lo);
            let hi = t.hi.min(s.hi);
            if lo >= hi {
                continue;
            }
            // Piece [cursor-closure ... lo] remains outside v.
            if cursor == s.lo {
                if lo > s.lo {
                    pieces.push((s.lo, lo));
                }
            } else if lo >= cursor {
                pieces.push((cursor, lo));
            }
            cursor = hi;
        }
        if cursor == s.lo {
            pieces.push((s.lo, s.hi));
        } else if s.hi > cursor {
            pieces.push((cursor, s.hi));
        }
    }
    ClosedSet::normalize(pieces).complement()
}

/// Closure containment cl(u) ⊆ v, deciding the completely-below relation on
/// this carrier: normality of ℝ makes ≺ interpolative, so ≺ and ≪ agree
/// here, and ≺ is witnessed by the pseudocomplement exactly when the
/// closure fits.
pub fn io_completely_below(u: &IntervalOpen, v: &IntervalOpen) -> bool {
    closure(u).pieces().iter().all(|&(lo, hi)| {
        v.spans.iter().any(|t| {
            let lo_ok = match (t.lo, lo) {
                (QBound::NegInf, QBound::NegInf) => true,
                (a, b) => a < b,
            };
            let hi_ok = match (t.hi, hi) {
                (QBound::PosInf, QBound::PosInf) => true,
                (a, b) => a > b,
            };
            lo_ok && hi_ok
        })
    })
}

/// A ≪-witness chain u ≪ w ≪ v by endpoint interpolation, when it exists.
pub fn io_interpolate(u: &IntervalOpen, v: &IntervalOpen) -> Option<IntervalOpen> {
    if !io_completely_below(u, v) {
        return None;
    }
    // Grow each closed piece of cl(u) halfway toward the boundary of the
    // covering component of v.
    let mut raw = Vec::new();
    for &(lo, hi) in closure(u).pieces() {
        let t = v
            .spans
            .iter()
            .find(|t| {
                (matches!((t.lo, lo), (QBound::NegInf, QBound::NegInf)) || t.lo < lo)
                    && (matches!((t.hi, hi), (QBound::PosInf, QBound::PosInf)) || t.hi > hi)
            })
            .expect("closure containment just verified");
        let new_lo = match (t.lo, lo) {
            (QBound::NegInf, QBound::NegInf) => QBound::NegInf,
            (QBound::NegInf, QBound::Fin(b)) => QBound::Fin(b - Ratio::from_integer(1)),
            (QBound::Fin(a), QBound::Fin(b)) => QBound::Fin((a + b) / 2),
            _ => unreachable!("lo bounds are never +inf"),
        };
        let new_hi = match (t.hi, hi) {
            (QBound::PosInf, QBound::PosInf) => QBound::PosInf,
            (QBound::PosInf, QBound::Fin(b)) => QBound::Fin(b + Ratio::from_integer(1)),
            (QBound::Fin(a), QBound::Fin(b)) => QBound::Fin((a + b) / 2),
            _ => unreachable!("hi bounds are never -inf"),
        };
        raw.push((new_lo, new_hi));
    }
    let w = IntervalOpen::from_spans(raw);
    debug_assert!(io_completely_below(u, &w) && io_completely_below(&w, v));
    Some(w)
}

/// Abutment points: rationals shared by adjacent intervals.
pub fn abutments(u: &IntervalOpen) -> Vec<Q> {
    u.spans
        .windows(2)
        .filter_map(|w| match (w[0].hi, w[1].lo) {
            (QBound::Fin(a), QBound::Fin(b)) if a == b => Some(a),
            _ => None,
        })
        .collect()
}

pub fn io_is_punctured(u: &IntervalOpen) -> bool {
    !abutments(u).is_empty()
}

/// The fill operator: merge every abutting pair. This is the puncturing
/// nucleus on representable elements — inflationary, idempotent, monotone,
/// and meet-preserving, with the unpunctured elements as its fixed points.
pub fn io_fill(u: &IntervalOpen) -> IntervalOpen {
    let mut out: Vec<Span> = Vec::with_capacity(u.spans.len());
    for &s in &u.spans {
        match out.last_mut() {
            Some(last) if last.hi == s.lo => last.hi = s.hi,
            _ => out.push(s),
        }
    }
    IntervalOpen { spans: out }
}

/// Join in the pointless fragment: fill of the union.
pub fn pl_join(us: &[IntervalOpen]) -> Result<IntervalOpen, RlineError> {
    if us.iter().any(io_is_punctured) {
        return Err(RlineError::InputPunctured);
    }
    let mut acc = IntervalOpen::empty();
    for u in us {
        acc = io_join(&acc, u);
    }
    Ok(io_fill(&acc))
}

/// Meet in the pointless fragment: plain intersection (the fragment is
/// meet-closed).
pub fn pl_meet(us: &[IntervalOpen]) -> Result<IntervalOpen, RlineError> {
    if us.iter().any(io_is_punctured) {
        return Err(RlineError::InputPunctured);
    }
    let mut acc = IntervalOpen::whole();
    for u in us {
        acc = io_meet(&acc, u);
    }
    Ok(acc)
}

/// The ray (p, ∞).
pub fn ray_right(p: Q) -> IntervalOpen {
    IntervalOpen::span(QBound::Fin(p), QBound::PosInf)
}

/// The ray (−∞, q).
pub fn ray_left(q: Q) -> IntervalOpen {
    IntervalOpen::span(QBound::NegInf, QBound::Fin(q))
}

/// Evidence report for the generator relations of the pointless fragment.
#[derive(Clone, Debug)]
pub struct Prop16Report {
    pub p: Q,
    pub q: Q,
    /// pl-join of the rays is ⊤ — exactly when p ≤ q.
    pub rel1_join_is_top: bool,
    /// Meet of the rays is ⊥ — on this carrier exactly when p ≥ q; the
    /// stated relation asserts only the direction p > q ⇒ ⊥.
    pub rel2_meet_is_bottom: bool,
    /// Monotone finite approximations of the sup/inf relations; the limits
    /// themselves are not asserted (finite evidence only).
    pub rel3_right_monotone: bool,
    pub rel3_right_strictly_below: bool,
    pub rel3_left_monotone: bool,
    pub rel3_left_strictly_below: bool,
    pub rel4_meet_monotone_down: bool,
    pub rel4_meet_never_bottom: bool,
    pub rel4_join_monotone_up: bool,
    pub rel4_join_never_top: bool,
    pub limit_semantics_asserted: bool,
}

pub fn prop16_check(p: Q, q: Q, stages: usize) -> Prop16Report {
    let rp = ray_right(p);
    let lq = ray_left(q);
    let rel1 = pl_join(&[rp.clone(), lq.clone()]).expect("rays are unpunctured").is_whole();
    let rel2 = io_meet(&rp, &lq).is_empty();

    let one = Ratio::from_integer(1);
    // rel3: ⇀p = ⋁_{p<r} ⇀r as monotone approximation with r ↓ p.
    let mut rel3_right_monotone = true;
    let mut rel3_right_strictly_below = true;
    let mut acc = IntervalOpen::empty();
    for k in 1..=stages.max(1) as i64 {
        let r = p + one / Ratio::from_integer(k);
        let next = pl_join(&[acc.clone(), ray_right(r)]).expect("rays");
        if !(io_le(&acc, &next)) {
            rel3_right_monotone = false;
        }
        acc = next;
        if !(io_le(&acc, &rp) && acc != rp) {
            rel3_right_strictly_below = false;
        }
    }
    // Dual for ↼q with r ↑ q.
    let mut rel3_left_monotone = true;
    let mut rel3_left_strictly_below = true;
    let mut acc = IntervalOpen::empty();
    for k in 1..=stages.max(1) as i64 {
        let r = q - one / Ratio::from_integer(k);
        let next = pl_join(&[acc.clone(), ray_left(r)]).expect("rays");
        if !io_le(&acc, &next) {
            rel3_left_monotone = false;
        }
        acc = next;
        if !(io_le(&acc, &lq) && acc != lq) {
            rel3_left_strictly_below = false;
        }
    }
    // rel4: ⋀_ℚ ⇀r = ⊥ and ⋁_ℚ ↼r = ⊤, as monotone evidence.
    let mut rel4_meet_monotone_down = true;
    let mut rel4_meet_never_bottom = true;
    let mut acc = IntervalOpen::whole();
    for k in 1..=stages.max(1) as i64 {
        let next = io_meet(&acc, &ray_right(Ratio::from_integer(k)));
        if !io_le(&next, &acc) {
            rel4_meet_monotone_down = false;
        }
        acc = next;
        if acc.is_empty() {
            rel4_meet_never_bottom = false;
        }
    }
    let mut rel4_join_monotone_up = true;
    let mut rel4_join_never_top = true;
    let mut acc = IntervalOpen::empty();
    for k in 1..=stages.max(1) as i64 {
        let next = pl_join(&[acc.clone(), ray_left(Ratio::from_integer(k))]).expect("rays");
        if !io_le(&acc, &next) {
            rel4_join_monotone_up = false;
        }
        acc = next;
        if acc.is_whole() {
            rel4_join_never_top = false;
        }
    }
    Prop16Report {
        p,
        q,
        rel1_join_is_top: rel1,
        rel2_meet_is_bottom: rel2,
        rel3_right_monotone,
        rel3_right_strictly_below,
        rel3_left_monotone,
        rel3_left_strictly_below,
        rel4_meet_monotone_down,
        rel4_meet_never_bottom,
        rel4_join_monotone_up,
        rel4_join_never_top,
        limit_semantics_asserted: false,
    }
}

/// The point filter y_x on the pointless fragment: unpunctured elements
/// containing x, with constructive roundness and regularity witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointFilter {
    pub base: Q,
}

impl PointFilter {
    pub fn new(base: Q) -> Self {
        PointFilter { base }
    }

    /// Membership in y_x: unpunctured and containing the base point.
    pub fn contains(&self, u: &IntervalOpen) -> bool {
        !io_is_punctured(u) && u.contains_point(self.base)
    }

    /// A member completely below u: the component containing the base,
    /// shrunk to endpoints strictly inside.
    pub fn round_witness(&self, u: &IntervalOpen) -> Option<IntervalOpen> {
        if !self.contains(u) {
            return None;
        }
        let x = self.base;
        let span = u
            .spans()
            .iter()
            .find(|s| s.lo < QBound::Fin(x) && QBound::Fin(x) < s.hi)
            .expect("membership just verified");
        let one = Ratio::from_integer(1);
        let lo = match span.lo {
            QBound::NegInf => QBound::Fin(x - one),
            QBound::Fin(a) => QBound::Fin((a + x) / 2),
            QBound::PosInf => unreachable!(),
        };
        let hi = match span.hi {
            QBound::PosInf => QBound::Fin(x + one),
            QBound::Fin(b) => QBound::Fin((x + b) / 2),
            QBound::NegInf => unreachable!(),
        };
        let w = IntervalOpen::span(lo, hi);
        debug_assert!(self.contains(&w) && io_completely_below(&w, u));
        Some(w)
    }

    /// Answers a regularity challenge: for unpunctured V < ⊤, produce a
    /// member b with b* ≰ V. The witness construction locates a closed
    /// rational interval [c, d] with c < d inside the complement of V —
    /// one exists precisely because V is unpunctured, so no complement
    /// point is isolated — then shrinks a neighborhood of the base until
    /// its closure misses a target point of [c, d].
    pub fn regularity_witness(&self, v: &IntervalOpen) -> Result<IntervalOpen, RlineError> {
        if io_is_punctured(v) || v.is_whole() {
            return Err(RlineError::ChallengeUnanswerable);
        }
        let x = self.base;
        let one = Ratio::from_integer(1);
        // Gap pieces of the complement, as closed rational intervals.
        let gap = {
            let compl = closure(&io_pseudocomplement(v));
            let mut found: Option<(Q, Q)> = None;
            for &(lo, hi) in compl.pieces() {
                let (c, d) = match (lo, hi) {
                    (QBound::NegInf, QBound::NegInf) => continue,
                    (QBound::NegInf, QBound::Fin(b)) => (b - Ratio::from_integer(2), b - one),
                    (QBound::Fin(a), QBound::PosInf) => (a + one, a + Ratio::from_integer(2)),
                    (QBound::Fin(a), QBound::Fin(b)) if a < b => (a, b),
                    (QBound::NegInf, QBound::PosInf) => {
                        (Ratio::from_integer(0), Ratio::from_integer(1))
                    }
                    _ => continue,
                };
                found = Some((c, d));
                break;
            }
            found.ok_or(RlineError::ChallengeUnanswerable)?
        };
        let (c, d) = gap;
        // A target point of the gap distinct from the base.
        let target = if x != c { c } else { d };
        let eps = {
            let dist = if target > x { target - x } else { x - target };
            dist / 2
        };
        let b = IntervalOpen::span(QBound::Fin(x - eps), QBound::Fin(x + eps));
        // Validation: member, and b* keeps a point outside V.
        if !self.contains(&b) {
            return Err(RlineError::ChallengeUnanswerable);
        }
        let bstar = io_pseudocomplement(&b);
        if io_le(&bstar, v) {
            return Err(RlineError::ChallengeUnanswerable);
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn io(s: &str) -> IntervalOpen {
        parse_interval_open(s).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["empty", "(0,1)", "(0,1)u(3/2,2)u(5,inf)", "(-inf,0)u(2,inf)", "(-inf,inf)"] {
            let u = io(s);
            assert_eq!(alloc::format!("{u}"), s);
        }
        assert!(parse_interval_open("(1,0)").is_err());
        assert!(parse_interval_open("(a,b)").is_err());
    }

    #[test]
    fn join_meet_basics() {
        // Abutment preserved by join: the shared endpoint is absent from
        // both sides.
        assert_eq!(io_join(&io("(0,1)"), &io("(1,2)")), io("(0,1)u(1,2)"));
        assert_eq!(io_meet(&io("(0,2)"), &io("(1,3)")), io("(1,2)"));
        let u = io("(0,1)u(3,4)");
        assert_eq!(io_join(&u, &IntervalOpen::empty()), u);
        assert_eq!(io_meet(&u, &IntervalOpen::whole()), u);
        // Overlap merges.
        assert_eq!(io_join(&io("(0,2)"), &io("(1,3)")), io("(0,3)"));
    }

    #[test]
    fn pseudocomplement_values() {
        assert_eq!(io_pseudocomplement(&io("(0,1)")), io("(-inf,0)u(1,inf)"));
        assert_eq!(io_pseudocomplement(&IntervalOpen::empty()), IntervalOpen::whole());
        assert_eq!(io_pseudocomplement(&IntervalOpen::whole()), IntervalOpen::empty());
        // The abutment point is swallowed by the closure.
        assert_eq!(io_pseudocomplement(&io("(0,1)u(1,2)")), io("(-inf,0)u(2,inf)"));
        // u ∧ u* = ⊥ and u* is the largest such on samples.
        for s in ["(0,1)", "(0,1)u(1,2)", "(-inf,0)u(2,3)"] {
            let u = io(s);
            let star = io_pseudocomplement(&u);
            assert!(io_meet(&u, &star).is_empty());
        }
    }

    #[test]
    fn heyting_values_and_adjunction() {
        assert_eq!(io_heyting(&io("(0,2)"), &io("(0,1)")), io("(-inf,1)u(2,inf)"));
        let u = io("(0,1)u(3,5)");
        assert!(io_heyting(&u, &u).is_whole());
        assert_eq!(io_heyting(&IntervalOpen::whole(), &u), u);
        // Isolated difference point: (0,2) → (0,1)u(1,2) = ℝ∖{1}.
        assert_eq!(io_heyting(&io("(0,2)"), &io("(0,1)u(1,2)")), io("(-inf,1)u(1,inf)"));

        // Adjunction spot checks: w ≤ u→v ⟺ w∧u ≤ v.
        let cases = [
            ("(0,2)", "(0,1)", "(-1,1/2)"),
            ("(0,2)", "(0,1)", "(1/2,3)"),
            ("(0,1)u(2,3)", "(0,3)", "(-inf,inf)"),
            ("(-inf,0)", "(-1,0)", "(-2,0)u(5,6)"),
        ];
        for (u, v, w) in cases {
            let (u, v, w) = (io(u), io(v), io(w));
            assert_eq!(
                io_le(&w, &io_heyting(&u, &v)),
                io_le(&io_meet(&w, &u), &v),
                "adjunction at ({u}, {v}, {w})"
            );
        }
    }

    #[test]
    fn completely_below_by_closure() {
        assert!(io_completely_below(&io("(0,1)"), &io("(-1,2)")));
        assert!(!io_completely_below(&io("(0,1)"), &io("(0,2)")));
        assert!(io_completely_below(&IntervalOpen::empty(), &io("(0,1)")));
        assert!(io_completely_below(&IntervalOpen::whole(), &IntervalOpen::whole()));
        assert!(io_completely_below(&io("(-inf,0)"), &io("(-inf,1)")));
        assert!(!io_completely_below(&io("(-inf,0)"), &io("(-1,1)")));

        // Interpolation produces a two-sided witness.
        let (u, v) = (io("(0,1)u(4,5)"), io("(-1,2)u(3,6)"));
        let w = io_interpolate(&u, &v).unwrap();
        assert!(io_completely_below(&u, &w));
        assert!(io_completely_below(&w, &v));
        assert!(io_interpolate(&io("(0,1)"), &io("(0,2)")).is_none());
    }

    #[test]
    fn puncturing_and_fill() {
        assert!(io_is_punctured(&io("(0,1)u(1,2)")));
        assert_eq!(abutments(&io("(0,1)u(1,2)")), vec![Ratio::from_integer(1)]);
        assert!(!io_is_punctured(&io("(0,1)u(2,3)")));
        assert!(!io_is_punctured(&IntervalOpen::whole()));

        assert_eq!(io_fill(&io("(0,1)u(1,2)")), io("(0,2)"));
        let unp = io("(0,1)u(2,3)");
        assert_eq!(io_fill(&unp), unp);
        // Chain of abutments merges in a single pass.
        assert_eq!(io_fill(&io("(0,1)u(1,2)u(2,3)")), io("(0,3)"));
    }

    #[test]
    fn fill_is_a_nucleus_on_samples() {
        let samples = [
            "empty",
            "(0,1)",
            "(0,1)u(1,2)",
            "(0,1)u(1,2)u(3,4)",
            "(-inf,0)u(0,inf)",
            "(0,1)u(2,3)u(3,4)",
            "(-inf,inf)",
        ];
        for s in &samples {
            let u = io(s);
            let fu = io_fill(&u);
            assert!(io_le(&u, &fu), "inflationary");
            assert_eq!(io_fill(&fu), fu, "idempotent");
            for t in &samples {
                let v = io(t);
                if io_le(&u, &v) {
                    assert!(io_le(&io_fill(&u), &io_fill(&v)), "monotone at {s} ≤ {t}");
                }
                assert_eq!(
                    io_fill(&io_meet(&u, &v)),
                    io_meet(&io_fill(&u), &io_fill(&v)),
                    "meet preservation at ({s}, {t})"
                );
            }
        }
    }

    #[test]
    fn pointless_fragment_ops() {
        assert_eq!(pl_join(&[io("(0,1)"), io("(1,2)")]).unwrap(), io("(0,2)"));
        assert_eq!(pl_join(&[io("(0,1)")]).unwrap(), io("(0,1)"));
        assert!(pl_join(&[io("(0,1)u(1,2)")]).is_err());
        let m = pl_meet(&[io("(0,2)u(3,5)"), io("(1,4)")]).unwrap();
        assert_eq!(m, io("(1,2)u(3,4)"));
        assert!(!io_is_punctured(&m));
    }

    #[test]
    fn prop16_relations() {
        let z = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        // p = q: the union misses the point but the fill closes it.
        let r = prop16_check(z, z, 6);
        assert!(r.rel1_join_is_top);
        assert!(r.rel2_meet_is_bottom, "(0,∞) ∩ (−∞,0) is empty");
        // p > q: join below ⊤, meet ⊥.
        let r = prop16_check(one, z, 6);
        assert!(!r.rel1_join_is_top);
        assert!(r.rel2_meet_is_bottom);
        // p < q: join ⊤ without fill, meet the open interval (p, q).
        let r = prop16_check(z, one, 6);
        assert!(r.rel1_join_is_top);
        assert!(!r.rel2_meet_is_bottom);
        assert!(r.rel3_right_monotone && r.rel3_right_strictly_below);
        assert!(r.rel3_left_monotone && r.rel3_left_strictly_below);
        assert!(r.rel4_meet_monotone_down && r.rel4_meet_never_bottom);
        assert!(r.rel4_join_monotone_up && r.rel4_join_never_top);
        assert!(!r.limit_semantics_asserted);
    }

    #[test]
    fn point_filter_membership_and_roundness() {
        let y0 = PointFilter::new(Ratio::from_integer(0));
        assert!(y0.contains(&io("(-1,1)")));
        assert!(!y0.contains(&io("(1,2)")));
        assert!(!y0.contains(&io("(-1,0)u(0,1)")), "punctured elements are out");

        let w = y0.round_witness(&io("(-1,1)")).unwrap();
        assert_eq!(w, io("(-1/2,1/2)"));
        assert!(io_completely_below(&w, &io("(-1,1)")));
        assert!(y0.round_witness(&io("(1,2)")).is_none());
    }

    #[test]
    fn point_filter_regularity_challenges() {
        let y0 = PointFilter::new(Ratio::from_integer(0));
        // Challenge from the operation contract: V = (−∞,0)∪(2,∞) leaves
        // the gap [0,2]; the witness closure must miss part of it.
        let v = io("(-inf,0)u(2,inf)");
        let b = y0.regularity_witness(&v).unwrap();
        assert!(y0.contains(&b));
        let bstar = io_pseudocomplement(&b);
        assert!(!io_le(&bstar, &v), "b* ≰ V");

        // ⊤ admits no witness.
        assert!(y0.regularity_witness(&IntervalOpen::whole()).is_err());

        // A challenge whose gap contains the base point.
        let v = io("(-inf,-1)u(1,inf)");
        let b = y0.regularity_witness(&v).unwrap();
        assert!(!io_le(&io_pseudocomplement(&b), &v));
    }

    #[test]
    fn neighborhood_filter_star_join_stays_below_punctured_complement() {
        // On the full carrier, the filter of opens containing 0 is exactly
        // {b : b ≰ ℝ∖{0}}, and the pseudocomplements of its members join
        // toward ℝ∖{0}, never past it: monotone evidence that the filter is
        // not regular.
        let a = io("(-inf,0)u(0,inf)");
        let mut acc = IntervalOpen::empty();
        for k in 1..=12i64 {
            let b = IntervalOpen::span(
                QBound::Fin(Ratio::new(-1, k)),
                QBound::Fin(Ratio::new(1, k)),
            );
            assert_eq!(b.contains_point(Ratio::from_integer(0)), !io_le(&b, &a));
            let next = io_join(&acc, &io_pseudocomplement(&b));
            assert!(io_le(&acc, &next), "partial joins grow");
            acc = next;
            assert!(io_le(&acc, &a), "⋁b* stays below ℝ∖{{0}}");
            assert!(!acc.is_whole());
        }
        // The bound is tight at this stage: the join equals the
        // pseudocomplement of the smallest member so far.
        assert_eq!(
            acc,
            io_pseudocomplement(&IntervalOpen::span(
                QBound::Fin(Ratio::new(-1, 12)),
                QBound::Fin(Ratio::new(1, 12)),
            ))
        );
    }

    #[test]
    fn distinct_point_filters_independent() {
        let y0 = PointFilter::new(Ratio::from_integer(0));
        let y1 = PointFilter::new(Ratio::from_integer(1));
        // Separating members with disjoint carriers.
        let u = io("(-1/4,1/4)");
        let v = io("(3/4,5/4)");
        assert!(y0.contains(&u) && y1.contains(&v));
        assert!(io_meet(&u, &v).is_empty());
    }
}
