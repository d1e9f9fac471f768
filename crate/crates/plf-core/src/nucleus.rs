//! Prenuclei and nuclei on finite frames: fixed-point iteration, kernels,
//! normal filters, the σ and π nuclei, and dropping homomorphisms through
//! nuclei.
//!
//! A prenucleus is inflationary and monotone and satisfies the weak meet law
//! δ′(a∧b) ≥ a ∧ δ′(b); iterating it pointwise reaches the least nucleus
//! with the same fixed points. On a finite carrier the iteration converges
//! within |L| steps, so the ω-chain suffices and no transfinite stages are
//! needed.
//!
//! σ sends a to the meet of the maximal elements above it; π iterates the
//! successor-join prenucleus a ↦ ⋁a⁺. Both follow the defining formulas
//! literally even on carriers that fail complete regularity, where some of
//! their contract-level properties are documented to diverge; callers that
//! need the completely regular behaviour should gate on it explicitly.

use crate::congruence::{quotient, Congruence, QuotientResult};
use crate::filter::ExtFilter;
use crate::frame::{Elem, FiniteFrame, FrameHom};
use crate::order::{plus_set, CoverStructure};
use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Above this size, nucleus/prenucleus law validation samples triples
/// instead of scanning all of them.
const EXHAUSTIVE_VALIDATION_LIMIT: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusError {
    NotAPrenucleus { law: &'static str, at: (Elem, Elem) },
    NotANucleus { law: &'static str, at: (Elem, Elem) },
    /// Hom does not map the source kernel into the target kernel.
    KernelNotPreserved { witness: Elem },
    /// The kernel condition held but the dropped map is not well defined on
    /// the carrier (possible off the completely regular contract).
    DropInvalid { at: (Elem, Elem) },
    /// m(a) = ⊤ does not imply n(a) = ⊤ at the witness.
    TopConditionFails { witness: Elem },
    /// Top condition held but no factorization exists on this carrier
    /// (possible off the completely regular contract).
    FactorizationInvalid { at: (Elem, Elem) },
}

impl fmt::Display for NucleusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NucleusError::NotAPrenucleus { law, at } => {
                write!(f, "not a prenucleus: {} fails at ({}, {})", law, at.0, at.1)
            }
            NucleusError::NotANucleus { law, at } => {
                write!(f, "not a nucleus: {} fails at ({}, {})", law, at.0, at.1)
            }
            NucleusError::KernelNotPreserved { witness } => {
                write!(f, "kernel not preserved at {witness}")
            }
            NucleusError::DropInvalid { at } => {
                write!(f, "dropped map ill-defined at ({}, {})", at.0, at.1)
            }
            NucleusError::TopConditionFails { witness } => {
                write!(f, "top condition fails at {witness}")
            }
            NucleusError::FactorizationInvalid { at } => {
                write!(f, "factorization ill-defined at ({}, {})", at.0, at.1)
            }
        }
    }
}

/// Deterministic triple sample for oversized carriers.
fn sample_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let step = (n / 61).max(1);
    (0..n).step_by(step).flat_map(move |a| (0..n).step_by(step).map(move |b| (a, b)))
}

/// An inflationary monotone operator with the weak meet law.
#[derive(Clone, Debug)]
pub struct Prenucleus {
    frame: Arc<FiniteFrame>,
    op: Vec<Elem>,
}

impl Prenucleus {
    pub fn new(frame: Arc<FiniteFrame>, op: Vec<Elem>) -> Result<Self, NucleusError> {
        let p = Prenucleus { frame, op };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), NucleusError> {
        let f = &self.frame;
        let n = f.size();
        for a in f.elements() {
            if !f.le(a, self.at(a)) {
                return Err(NucleusError::NotAPrenucleus { law: "inflationary", at: (a, a) });
            }
        }
        let check = |a: Elem, b: Elem| -> Result<(), NucleusError> {
            if f.le(a, b) && !f.le(self.at(a), self.at(b)) {
                return Err(NucleusError::NotAPrenucleus { law: "monotone", at: (a, b) });
            }
            if !f.le(f.meet(a, self.at(b)), self.at(f.meet(a, b))) {
                return Err(NucleusError::NotAPrenucleus { law: "weak meet", at: (a, b) });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_VALIDATION_LIMIT {
            for a in f.elements() {
                for b in f.elements() {
                    check(a, b)?;
                }
            }
        } else {
            for (a, b) in sample_pairs(n) {
                check(Elem(a), Elem(b))?;
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    #[inline]
    pub fn at(&self, a: Elem) -> Elem {
        self.op[a.0]
    }

    pub fn fix_set(&self) -> BTreeSet<Elem> {
        self.frame.elements().filter(|&a| self.at(a) == a).collect()
    }
}

/// An inflationary, monotone, idempotent, meet-preserving operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nucleus {
    frame: Arc<FiniteFrame>,
    op: Vec<Elem>,
}

impl Nucleus {
    pub fn new(frame: Arc<FiniteFrame>, op: Vec<Elem>) -> Result<Self, NucleusError> {
        let nu = Nucleus { frame, op };
        nu.validate()?;
        Ok(nu)
    }

    pub fn identity(frame: Arc<FiniteFrame>) -> Self {
        let op = frame.elements().collect();
        Nucleus { frame, op }
    }

    fn validate(&self) -> Result<(), NucleusError> {
        let f = &self.frame;
        let n = f.size();
        for a in f.elements() {
            if !f.le(a, self.at(a)) {
                return Err(NucleusError::NotANucleus { law: "inflationary", at: (a, a) });
            }
            if self.at(self.at(a)) != self.at(a) {
                return Err(NucleusError::NotANucleus { law: "idempotent", at: (a, a) });
            }
        }
        let check = |a: Elem, b: Elem| -> Result<(), NucleusError> {
            if f.le(a, b) && !f.le(self.at(a), self.at(b)) {
                return Err(NucleusError::NotANucleus { law: "monotone", at: (a, b) });
            }
            if self.at(f.meet(a, b)) != f.meet(self.at(a), self.at(b)) {
                return Err(NucleusError::NotANucleus { law: "meet", at: (a, b) });
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_VALIDATION_LIMIT {
            for a in f.elements() {
                for b in f.elements() {
                    check(a, b)?;
                }
            }
        } else {
            for (a, b) in sample_pairs(n) {
                check(Elem(a), Elem(b))?;
            }
        }
        Ok(())
    }

    pub fn frame(&self) -> &Arc<FiniteFrame> {
        &self.frame
    }

    #[inline]
    pub fn at(&self, a: Elem) -> Elem {
        self.op[a.0]
    }

    pub fn op(&self) -> &[Elem] {
        &self.op
    }

    /// ker δ = {a : δ(a) = ⊤}.
    pub fn kernel(&self) -> BTreeSet<Elem> {
        self.frame.elements().filter(|&a| self.at(a) == self.frame.top()).collect()
    }

    pub fn fix_set(&self) -> BTreeSet<Elem> {
        self.frame.elements().filter(|&a| self.at(a) == a).collect()
    }

    /// The congruence identifying elements with the same image.
    pub fn congruence(&self) -> Congruence {
        let raw: Vec<usize> = self.op.iter().map(|e| e.0).collect();
        Congruence::from_classes(self.frame.clone(), raw)
            .expect("fibers of a nucleus form a congruence")
    }

    /// The quotient of the nucleus congruence: the fix set as a frame,
    /// together with the reflector surjection onto it.
    pub fn quotient(&self) -> QuotientResult {
        quotient(&self.congruence())
    }
}

/// Pointwise least fixed point of a prenucleus above the identity.
/// Converges in at most |L| steps and always returns a lawful nucleus with
/// the same fixed points.
pub fn iterate_prenucleus(p: &Prenucleus) -> Result<(Nucleus, usize), NucleusError> {
    let f = p.frame().clone();
    let mut op: Vec<Elem> = f.elements().collect();
    let mut steps = 0usize;
    loop {
        let next: Vec<Elem> = op.iter().map(|&a| p.at(a)).collect();
        if next == op {
            break;
        }
        op = next;
        steps += 1;
        debug_assert!(steps <= f.size(), "iteration must converge within |L| steps");
    }
    let nu = Nucleus::new(f, op)?;
    debug_assert_eq!(nu.fix_set(), p.fix_set());
    Ok((nu, steps))
}

/// The prenucleus a ↦ ⋁{b → a : b ∈ F} induced by a filter.
pub fn prenucleus_from_filter(f: &Arc<FiniteFrame>, filter: &ExtFilter) -> Prenucleus {
    let op: Vec<Elem> = f
        .elements()
        .map(|a| f.join_set(filter.members().iter().map(|&b| f.heyting(b, a))))
        .collect();
    Prenucleus::new(f.clone(), op).expect("a filter always induces a prenucleus")
}

/// The nucleus of a filter: the iteration of its prenucleus.
pub fn nucleus_from_filter(f: &Arc<FiniteFrame>, filter: &ExtFilter) -> Nucleus {
    iterate_prenucleus(&prenucleus_from_filter(f, filter))
        .expect("filter prenucleus iterates to a nucleus")
        .0
}

/// A filter is normal exactly when it is the kernel of its own induced
/// nucleus.
pub fn is_normal_filter(f: &Arc<FiniteFrame>, filter: &ExtFilter) -> bool {
    let nu = nucleus_from_filter(f, filter);
    nu.kernel() == *filter.members()
}

/// σ: a ↦ ⋀{m maximal : m ≥ a}, the empty meet being ⊤.
pub fn sigma_nucleus(f: &Arc<FiniteFrame>, cov: &CoverStructure) -> Nucleus {
    let op: Vec<Elem> = f
        .elements()
        .map(|a| f.meet_set(cov.maxima.iter().copied().filter(|&m| f.le(a, m))))
        .collect();
    Nucleus::new(f.clone(), op).expect("meet of maxima is a nucleus: maxima are prime")
}

/// The successor-join prenucleus π′: a ↦ ⋁a⁺.
pub fn pi_prime(f: &Arc<FiniteFrame>, cov: &CoverStructure) -> Prenucleus {
    let op: Vec<Elem> =
        f.elements().map(|a| f.join_set(plus_set(f, cov, a))).collect();
    Prenucleus::new(f.clone(), op).expect("successor join is a prenucleus")
}

/// π as the iteration of π′, together with the step count.
pub fn pi_nucleus(f: &Arc<FiniteFrame>, cov: &CoverStructure) -> (Nucleus, usize) {
    iterate_prenucleus(&pi_prime(f, cov)).expect("π′ iterates to a nucleus")
}

/// Kernel of π by its first-order description: a is in the kernel iff every
/// b ≥ a below ⊤ has a successor.
pub fn pi_kernel_described(f: &Arc<FiniteFrame>, cov: &CoverStructure) -> BTreeSet<Elem> {
    f.elements()
        .filter(|&a| {
            f.elements().all(|b| {
                !f.le(a, b) || b == f.top() || !cov.successors_of(b).is_empty()
            })
        })
        .collect()
}

/// Drops m through nuclei on its source and target: produces m̄ with
/// m̄ ∘ q_L = q_M ∘ m on the quotient frames of the nuclei.
///
/// The kernel condition m(ker νL) ⊆ ker νM is necessary; on completely
/// regular carriers it is also sufficient. Off that contract the condition
/// can hold while no drop exists, in which case `DropInvalid` reports the
/// witness pair rather than returning a broken map.
pub fn drop_hom(
    m: &FrameHom,
    nu_l: &Nucleus,
    nu_m: &Nucleus,
) -> Result<FrameHom, NucleusError> {
    let f = m.source();
    if let Some(a) = nu_l
        .kernel()
        .iter()
        .find(|&&a| !nu_m.kernel().contains(&m.at(a)))
    {
        return Err(NucleusError::KernelNotPreserved { witness: *a });
    }
    // Well-definedness on fibers: νL(a₁) = νL(a₂) must force
    // νM(m(a₁)) = νM(m(a₂)).
    for a1 in f.elements() {
        for a2 in f.elements() {
            if nu_l.at(a1) == nu_l.at(a2) && nu_m.at(m.at(a1)) != nu_m.at(m.at(a2)) {
                return Err(NucleusError::DropInvalid { at: (a1, a2) });
            }
        }
    }
    let ql = nu_l.quotient();
    let qm = nu_m.quotient();
    let mut map: Vec<Elem> = alloc::vec![Elem(0); ql.quotient.size()];
    for a in f.elements() {
        map[ql.map.at(a).0] = qm.map.at(m.at(a));
    }
    FrameHom::new(ql.quotient.clone(), qm.quotient.clone(), map)
        .map_err(|_| NucleusError::DropInvalid { at: (f.bottom(), f.bottom()) })
}

/// Factors n through a surjection m: returns h with n = h ∘ m.
///
/// The classical criterion is the top condition (m(a) = ⊤ ⇒ n(a) = ⊤),
/// which is necessary in general and sufficient under complete regularity.
/// The constructed candidate h = n ∘ m⁎ is validated before being returned;
/// a carrier off the contract yields `FactorizationInvalid` instead of a
/// bogus hom.
pub fn factor_through_surjection(m: &FrameHom, n: &FrameHom) -> Result<FrameHom, NucleusError> {
    let f = m.source();
    debug_assert!(m.is_surjective());
    if let Some(a) = f
        .elements()
        .find(|&a| m.at(a) == m.target().top() && n.at(a) != n.target().top())
    {
        return Err(NucleusError::TopConditionFails { witness: a });
    }
    let adj = m.right_adjoint();
    let map: Vec<Elem> = m.target().elements().map(|b| n.at(adj[b.0])).collect();
    let h = FrameHom::new(m.target().clone(), n.target().clone(), map)
        .map_err(|e| match e {
            crate::frame::FrameError::NotAHomomorphism { at, .. } => {
                NucleusError::FactorizationInvalid { at }
            }
            _ => NucleusError::FactorizationInvalid { at: (f.bottom(), f.bottom()) },
        })?;
    for a in f.elements() {
        if h.at(m.at(a)) != n.at(a) {
            return Err(NucleusError::FactorizationInvalid { at: (a, a) });
        }
    }
    Ok(h)
}

/// The maximal-element decomposition data of an element: the π-image, the
/// accumulated set A(b) of maximal elements collected along the iteration,
/// and the per-stage history.
pub struct Decomposition {
    pub pi_of_b: Elem,
    pub a_set: BTreeSet<Elem>,
    /// (πᵏ(b), A collected so far) per stage, including stage 0.
    pub stages: Vec<(Elem, BTreeSet<Elem>)>,
}

/// Decomposes b as π(b) ∧ ⋀A(b), where A(b) accumulates, along the
/// π-iteration, the maximal elements a ≥ πᵏ(b) with a → πᵏ(b) > πᵏ(b).
/// The meet identity b = πᵏ(b) ∧ ⋀Aᵏ(b) holds at every stage.
pub fn decompose_by_maxima(
    f: &Arc<FiniteFrame>,
    cov: &CoverStructure,
    b: Elem,
) -> Decomposition {
    let a_prime = |x: Elem| -> BTreeSet<Elem> {
        cov.maxima
            .iter()
            .copied()
            .filter(|&a| f.le(x, a) && f.lt(x, f.heyting(a, x)))
            .collect()
    };
    let prime = pi_prime(f, cov);
    let mut cur = b;
    let mut a_set: BTreeSet<Elem> = [b].into_iter().collect();
    let mut stages = Vec::new();
    loop {
        a_set.extend(a_prime(cur));
        stages.push((cur, a_set.clone()));
        let next = prime.at(cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    Decomposition { pi_of_b: cur, a_set, stages }
}
