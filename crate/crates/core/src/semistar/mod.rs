//! Stable semistar operations on the semilocal model.
//!
//! A stable operation on an overring `T` with `Max(T) = {M_i : i ∈ Λ(T)}` is
//! determined by a support `Λ ⊆ Λ(T)`: it sends `I` to `⋂_{i∈Λ} I·D_{M_i}`,
//! which on valuation vectors keeps the components in `Λ` and frees the rest.
//! Everything here is checked by brute force over the truncated module
//! lattice `{-b..b} ∪ {BOT}` per component.

mod axioms;
mod lattice;
mod transfer;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

pub use axioms::{verify_axioms, AxiomReport, AxiomTally, ClampedOp, Counterexample};
pub use lattice::{enumerate_ops, enumerate_stable, exhaustive_search_n1, op_le, Completeness, OpLattice, DEFAULT_ENUMERATION_LIMIT};
pub use transfer::{
    factorization_iso, is_stable_preserving, phi_extend, psi_phi_roundtrip, psi_restrict, FactorizationReport,
    StablePreservingReport,
};

use crate::domain::{Domain, Overring, Val, ValuationVector};
use crate::error::{Error, Result};

/// A map on the nonzero modules of some overring of the semilocal model.
pub trait Operation: Sync {
    /// Number of maximal ideals of the ambient model.
    fn n(&self) -> usize;
    /// `Λ(T)` of the ring the operation lives on (1-based).
    fn ring(&self) -> &BTreeSet<usize>;
    fn act(&self, i: &ValuationVector) -> ValuationVector;
}

/// The stable operation with support `Λ` on the ring with maximal ideals `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StableOp {
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    ring: BTreeSet<usize>,
    support: BTreeSet<usize>,
}

impl StableOp {
    /// The operation with the given support on the overring `t`.
    pub fn on(d: &Domain, t: &Overring, support: impl IntoIterator<Item = usize>) -> Result<StableOp> {
        let n = semilocal_n(d)?;
        let ring = d.indices(t)?;
        let support: BTreeSet<usize> = support.into_iter().collect();
        if !support.is_subset(&ring) {
            return Err(Error::InvalidDomain(format!(
                "support {support:?} is not a set of maximal ideals of the ring {ring:?}"
            )));
        }
        Ok(StableOp { n, ring, support })
    }

    pub fn identity(d: &Domain, t: &Overring) -> Result<StableOp> {
        let ring = d.indices(t)?;
        Self::on(d, t, ring)
    }

    /// `I ↦ K`.
    pub fn constant_field(d: &Domain, t: &Overring) -> Result<StableOp> {
        Self::on(d, t, [])
    }

    pub(crate) fn raw(n: usize, ring: BTreeSet<usize>, support: BTreeSet<usize>) -> StableOp {
        debug_assert!(support.is_subset(&ring));
        StableOp { n, ring, support }
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn is_identity(&self) -> bool {
        self.support == self.ring
    }

    pub fn apply(&self, i: &ValuationVector) -> Result<ValuationVector> {
        if i.len() != self.n {
            return Err(Error::MixedModels);
        }
        Ok(self.act(i))
    }
}

impl Operation for StableOp {
    fn n(&self) -> usize {
        self.n
    }

    fn ring(&self) -> &BTreeSet<usize> {
        &self.ring
    }

    fn act(&self, i: &ValuationVector) -> ValuationVector {
        i.keep_only(|k| self.support.contains(&(k + 1)))
    }
}

impl fmt::Display for StableOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.support.iter().map(|i| i.to_string()).collect();
        write!(f, "star{{{}}}", s.join(","))
    }
}

pub fn apply(op: &StableOp, i: &ValuationVector) -> Result<ValuationVector> {
    op.apply(i)
}

/// The operation read off its definition: `⋂_{i∈Λ} I·D_{M_i}`, with the
/// empty intersection equal to `K`.
pub fn apply_by_intersection(d: &Domain, op: &StableOp, i: &ValuationVector) -> Result<ValuationVector> {
    let n = semilocal_n(d)?;
    if i.is_zero() {
        return Ok(i.clone());
    }
    let mut out = ValuationVector::field(n);
    for k in &op.support {
        let local = d.extend_to_overring(i, &d.local(*k)?)?;
        out = out.intersect(&local)?;
    }
    Ok(out)
}

/// `I ↦ ⋂_{⋆∈Δ} I^⋆`; in support form, the union of the supports.
pub fn infimum(ops: &[StableOp]) -> Result<StableOp> {
    let first = ops
        .first()
        .ok_or_else(|| Error::HypothesisViolation("infimum of an empty set of operations".into()))?;
    if ops.iter().any(|o| o.n != first.n || o.ring != first.ring) {
        return Err(Error::MixedModels);
    }
    let support = ops.iter().flat_map(|o| o.support.iter().copied()).collect();
    Ok(StableOp::raw(first.n, first.ring.clone(), support))
}

pub(crate) fn semilocal_n(d: &Domain) -> Result<usize> {
    d.n()
        .ok_or_else(|| Error::InvalidDomain("semistar operations need a semilocal model".into()))
}

/// Nonzero modules of the ring `Λ` with every free component in `{-b..b} ∪ {BOT}`.
pub fn bounded_modules(n: usize, ring: &BTreeSet<usize>, bound: i64) -> Vec<ValuationVector> {
    let choices: Vec<Val> = std::iter::once(Val::Bot).chain((-bound..=bound).map(Val::Fin)).collect();
    let mut out = vec![Vec::with_capacity(n)];
    for k in 1..=n {
        let opts: &[Val] = if ring.contains(&k) { &choices } else { &[Val::Bot] };
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(ValuationVector::new).collect()
}

pub(crate) fn in_range(i: &ValuationVector, bound: i64) -> bool {
    i.comps().iter().all(|c| match c {
        Val::Fin(v) => v.abs() <= bound,
        _ => true,
    })
}
