use rayon::prelude::*;
use serde::Serialize;

use super::{bounded_modules, enumerate_ops, infimum, op_le, semilocal_n, Operation, StableOp};
use crate::domain::{Domain, Overring, ValuationVector};
use crate::error::{Error, Result};
use crate::family::{check_family, Family};

/// `Ψ_T`: the restriction of `op` to the modules of the overring `t`.
pub fn psi_restrict(d: &Domain, op: &StableOp, t: &Overring) -> Result<StableOp> {
    let n = semilocal_n(d)?;
    if op.n() != n {
        return Err(Error::MixedModels);
    }
    let ring = d.indices(t)?;
    if !ring.is_subset(op.ring()) {
        return Err(Error::HypothesisViolation(format!(
            "{} is not an overring of the ring the operation lives on",
            t.label()
        )));
    }
    let support = op.support().intersection(&ring).copied().collect();
    Ok(StableOp::raw(n, ring, support))
}

/// `Φ_T`: `I ↦ (IT)^⋆` for an operation `op` of an overring of the base of `d`.
pub fn phi_extend(d: &Domain, op: &StableOp) -> Result<StableOp> {
    let n = semilocal_n(d)?;
    if op.n() != n {
        return Err(Error::MixedModels);
    }
    let ring = d.indices(&d.whole())?;
    if !op.ring().is_subset(&ring) {
        return Err(Error::HypothesisViolation("the operation does not live on an overring of the base".into()));
    }
    Ok(StableOp::raw(n, ring, op.support().clone()))
}

fn finite_members(f: &Family) -> Result<Vec<Overring>> {
    Ok(f.members()
        .ok_or_else(|| Error::HypothesisViolation("semistar transfer needs a finite family".into()))?
        .into_iter()
        .map(|(_, t)| t)
        .collect())
}

/// `Φ_Θ`: the infimum of the extensions of the given member operations.
fn phi_family(d: &Domain, ops: &[StableOp]) -> Result<StableOp> {
    let ext: Vec<StableOp> = ops.iter().map(|o| phi_extend(d, o)).collect::<Result<_>>()?;
    if ext.is_empty() {
        return StableOp::constant_field(d, &d.whole());
    }
    infimum(&ext)
}

fn same_action(a: &StableOp, b: &StableOp, bound: i64) -> bool {
    a.ring() == b.ring()
        && bounded_modules(a.n(), a.ring(), bound)
            .iter()
            .all(|i| a.act(i) == b.act(i))
}

/// `Ψ_Θ ∘ Φ_Θ = id` on the given tuple, compared by action on each member's
/// truncated lattice.
pub fn psi_phi_roundtrip(f: &Family, ops: &[StableOp], bound: i64) -> Result<bool> {
    let d = f.domain();
    let report = check_family(f);
    if !(report.complete && report.independent) {
        return Err(Error::HypothesisViolation("the family must be complete and independent".into()));
    }
    let members = finite_members(f)?;
    if members.len() != ops.len() {
        return Err(Error::HypothesisViolation(format!(
            "{} operations for {} members",
            ops.len(),
            members.len()
        )));
    }
    for (t, op) in members.iter().zip(ops) {
        if *op.ring() != d.indices(t)? {
            return Err(Error::HypothesisViolation(format!("operation {op} does not live on {}", t.label())));
        }
    }
    let phi = phi_family(d, ops)?;
    for (t, op) in members.iter().zip(ops) {
        if !same_action(&psi_restrict(d, &phi, t)?, op, bound) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StablePreservingReport {
    pub holds: bool,
    pub ops_checked: usize,
    pub modules_checked: usize,
    /// The first operation and module with `I^⋆ != ⋂ (IT)^⋆`.
    pub counterexample: Option<(StableOp, ValuationVector)>,
}

/// `I^⋆ = ⋂_{T∈Θ} (IT)^⋆` for every stable `⋆` of the base and every bounded `I`.
pub fn is_stable_preserving(f: &Family, bound: i64) -> Result<StablePreservingReport> {
    let d = f.domain();
    let n = semilocal_n(d)?;
    let members = finite_members(f)?;
    let ops = enumerate_ops(d, &d.whole())?;
    let ring = d.indices(&d.whole())?;
    let universe = bounded_modules(n, &ring, bound);
    let mut counterexample = None;
    for op in &ops {
        let bad = universe.par_iter().find_first(|i| {
            let lhs = op.act(i);
            let rhs = members.iter().fold(ValuationVector::field(n), |acc, t| {
                let it = d.extend_to_overring(i, t).expect("semilocal model");
                acc.intersect(&op.act(&it)).expect("same model")
            });
            lhs != rhs
        });
        if let Some(i) = bad {
            counterexample = Some((op.clone(), i.clone()));
            break;
        }
    }
    Ok(StablePreservingReport {
        holds: counterexample.is_none(),
        ops_checked: ops.len(),
        modules_checked: universe.len(),
        counterexample,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub base_ops: usize,
    pub member_ops: Vec<usize>,
    pub product: usize,
    /// `2*2*2`.
    pub factorization: String,
    pub cardinality_match: bool,
    pub phi_after_psi_is_identity: bool,
    pub psi_after_phi_is_identity: bool,
    pub order_preserving: bool,
    pub holds: bool,
}

/// Builds `Ψ_Θ` and `Φ_Θ` between the stable operations of the base and the
/// product over the members, and checks they are inverse order isomorphisms.
pub fn factorization_iso(f: &Family, bound: i64) -> Result<FactorizationReport> {
    let sp = is_stable_preserving(f, bound)?;
    if let Some((op, i)) = sp.counterexample {
        return Err(Error::NotStablePreserving(format!("{op} at {i}")));
    }
    let d = f.domain();
    let members = finite_members(f)?;
    let base = enumerate_ops(d, &d.whole())?;
    let per_member: Vec<Vec<StableOp>> = members.iter().map(|t| enumerate_ops(d, t)).collect::<Result<_>>()?;
    let product: usize = per_member.iter().map(|v| v.len()).product();

    let psi = |op: &StableOp| -> Result<Vec<usize>> {
        members
            .iter()
            .zip(&per_member)
            .map(|(t, list)| {
                let r = psi_restrict(d, op, t)?;
                Ok(list.iter().position(|o| *o == r).expect("restriction is a stable operation of T"))
            })
            .collect()
    };
    let phi = |tuple: &[usize]| -> Result<usize> {
        let ops: Vec<StableOp> = tuple.iter().zip(&per_member).map(|(k, list)| list[*k].clone()).collect();
        let op = phi_family(d, &ops)?;
        Ok(base.iter().position(|o| *o == op).expect("extension is a stable operation of the base"))
    };

    let images: Vec<Vec<usize>> = base.iter().map(psi).collect::<Result<_>>()?;
    let mut phi_after_psi = true;
    for (k, tuple) in images.iter().enumerate() {
        phi_after_psi &= phi(tuple)? == k;
    }

    let mut psi_after_phi = true;
    let mut tuple = vec![0usize; per_member.len()];
    'outer: loop {
        psi_after_phi &= psi(&base[phi(&tuple)?])? == tuple;
        for (slot, list) in tuple.iter_mut().zip(&per_member) {
            *slot += 1;
            if *slot < list.len() {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }

    let order_preserving = (0..base.len()).into_par_iter().all(|a| {
        (0..base.len()).all(|b| {
            let below = op_le(&base[a], &base[b], bound);
            let below_each = per_member
                .iter()
                .enumerate()
                .all(|(m, list)| op_le(&list[images[a][m]], &list[images[b][m]], bound));
            below == below_each
        })
    });

    let member_ops: Vec<usize> = per_member.iter().map(|v| v.len()).collect();
    let factorization = if member_ops.is_empty() {
        "1".to_string()
    } else {
        member_ops.iter().map(|k| k.to_string()).collect::<Vec<_>>().join("*")
    };
    let cardinality_match = base.len() == product;
    Ok(FactorizationReport {
        base_ops: base.len(),
        member_ops,
        product,
        factorization,
        cardinality_match,
        phi_after_psi_is_identity: phi_after_psi,
        psi_after_phi_is_identity: psi_after_phi,
        order_preserving,
        holds: cardinality_match && phi_after_psi && psi_after_phi && order_preserving,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn locals(d: &Domain) -> Family {
        Family::all_localizations(d.clone())
    }

    #[test]
    fn restriction_examples() {
        let d = Domain::semilocal(3).unwrap();
        let op = StableOp::on(&d, &d.whole(), [1, 2]).unwrap();
        let t = d.overring_of(&[2, 3]).unwrap();
        let r = psi_restrict(&d, &op, &t).unwrap();
        assert_eq!(r.support(), &[2].into_iter().collect());
        for i in bounded_modules(3, r.ring(), 2) {
            assert_eq!(r.act(&i), op.act(&i));
        }
        let id = StableOp::identity(&d, &d.whole()).unwrap();
        assert!(psi_restrict(&d, &id, &t).unwrap().is_identity());
        let k = StableOp::constant_field(&d, &d.whole()).unwrap();
        assert!(psi_restrict(&d, &k, &t).unwrap().support().is_empty());
    }

    #[test]
    fn extension_examples() {
        let d = Domain::semilocal(3).unwrap();
        let t = d.overring_of(&[2, 3]).unwrap();
        let id_t = StableOp::identity(&d, &t).unwrap();
        let e = phi_extend(&d, &id_t).unwrap();
        assert_eq!(e.support(), &[2, 3].into_iter().collect());
        for i in bounded_modules(3, &(1..=3).collect(), 2) {
            let it = d.extend_to_overring(&i, &t).unwrap();
            assert_eq!(e.act(&i), id_t.act(&it));
        }
        let whole_id = StableOp::identity(&d, &d.whole()).unwrap();
        assert_eq!(phi_extend(&d, &whole_id).unwrap(), whole_id);
    }

    #[test]
    fn roundtrip_and_hypotheses() {
        let d = Domain::semilocal(3).unwrap();
        let f = locals(&d);
        let members: Vec<Overring> = f.members().unwrap().into_iter().map(|(_, t)| t).collect();
        let ops: Vec<StableOp> = members.iter().map(|t| StableOp::identity(&d, t).unwrap()).collect();
        assert!(psi_phi_roundtrip(&f, &ops, 2).unwrap());
        let single = Family::explicit(d.clone(), vec![d.whole()]).unwrap();
        assert!(psi_phi_roundtrip(&single, &[StableOp::on(&d, &d.whole(), [2]).unwrap()], 2).unwrap());
        let overlapping =
            Family::explicit(d.clone(), vec![d.overring_of(&[1, 2]).unwrap(), d.overring_of(&[2, 3]).unwrap()]).unwrap();
        assert!(matches!(psi_phi_roundtrip(&overlapping, &ops[..2], 2), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn stable_preserving_and_factorization() {
        let d = Domain::semilocal(3).unwrap();
        assert!(is_stable_preserving(&locals(&d), 2).unwrap().holds);
        let r = factorization_iso(&locals(&d), 2).unwrap();
        assert_eq!((r.base_ops, r.product), (8, 8));
        assert_eq!(r.factorization, "2*2*2");
        assert!(r.holds);

        let d4 = Domain::semilocal(4).unwrap();
        let split = Family::explicit(d4.clone(), vec![d4.overring_of(&[1, 2]).unwrap(), d4.overring_of(&[3, 4]).unwrap()])
            .unwrap();
        let r = factorization_iso(&split, 1).unwrap();
        assert_eq!(r.factorization, "4*4");
        assert!(r.holds);

        let whole = Family::explicit(d.clone(), vec![d.whole()]).unwrap();
        assert!(factorization_iso(&whole, 1).unwrap().holds);
    }

    #[test]
    fn incomplete_family_is_not_stable_preserving() {
        let d = Domain::semilocal(3).unwrap();
        let f = Family::explicit(d.clone(), vec![d.overring_of(&[1, 2]).unwrap()]).unwrap();
        assert!(!is_stable_preserving(&f, 1).unwrap().holds);
        assert!(matches!(factorization_iso(&f, 1), Err(Error::NotStablePreserving(_))));
    }
}
