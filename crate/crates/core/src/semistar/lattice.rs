use rayon::prelude::*;
use serde::Serialize;

use super::{bounded_modules, semilocal_n, verify_axioms, AxiomReport, AxiomTally, Operation, StableOp};
use crate::domain::{Domain, Overring, Val};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 4;

/// All stable operations of `t`, one per subset of `Λ(t)`, ordered by support size.
pub fn enumerate_ops(d: &Domain, t: &Overring) -> Result<Vec<StableOp>> {
    let n = semilocal_n(d)?;
    let ring: Vec<usize> = d.indices(t)?.into_iter().collect();
    let mut ops: Vec<StableOp> = (0u32..1 << ring.len())
        .map(|mask| {
            let support = ring
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, i)| *i)
                .collect();
            StableOp::raw(n, ring.iter().copied().collect(), support)
        })
        .collect();
    ops.sort_by(|a, b| a.support().len().cmp(&b.support().len()).then_with(|| a.support().cmp(b.support())));
    Ok(ops)
}

/// `⋆_a ≤ ⋆_b`: `I^a ⊆ I^b` for every bounded module.
pub fn op_le<A: Operation + ?Sized, B: Operation + ?Sized>(a: &A, b: &B, bound: i64) -> bool {
    bounded_modules(a.n(), a.ring(), bound)
        .par_iter()
        .all(|i| a.act(i).is_subset(&b.act(i)).expect("same model"))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Completeness {
    /// Every closure operator on the truncated lattice was enumerated.
    SearchVerified,
    /// Completeness of the support family rests on the classification theorem.
    TheoremBacked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpLattice {
    pub n: usize,
    pub bound: i64,
    pub ops: Vec<StableOp>,
    /// `order[a][b]` iff `ops[a] ≤ ops[b]` on the truncated lattice.
    pub order: Vec<Vec<bool>>,
    /// Covering pairs `(a, b)` with `ops[a] < ops[b]`.
    pub hasse: Vec<(usize, usize)>,
    pub order_matches_supports: bool,
    pub verification: Vec<AxiomReport>,
    pub tally: AxiomTally,
    pub exhaustive_count: Option<usize>,
    pub completeness: Completeness,
}

impl OpLattice {
    pub fn all_pass(&self) -> bool {
        self.verification.iter().all(|r| r.holds)
    }
}

pub fn enumerate_stable(d: &Domain, bound: i64) -> Result<OpLattice> {
    let n = semilocal_n(d)?;
    if n > DEFAULT_ENUMERATION_LIMIT {
        return Err(Error::HypothesisViolation(format!(
            "enumeration is limited to n <= {DEFAULT_ENUMERATION_LIMIT}, got {n}"
        )));
    }
    let ops = enumerate_ops(d, &d.whole())?;
    let verification: Vec<AxiomReport> = ops.iter().map(|op| verify_axioms(op, bound)).collect();
    let mut tally = AxiomTally::default();
    for r in &verification {
        let t = r.total();
        tally.pass += t.pass;
        tally.fail += t.fail;
        tally.skip += t.skip;
    }
    let order: Vec<Vec<bool>> = ops
        .iter()
        .map(|a| ops.iter().map(|b| op_le(a, b, bound)).collect())
        .collect();
    let order_matches_supports = ops.iter().enumerate().all(|(x, a)| {
        ops.iter()
            .enumerate()
            .all(|(y, b)| order[x][y] == a.support().is_superset(b.support()))
    });
    let m = ops.len();
    let lt = |a: usize, b: usize| a != b && order[a][b];
    let hasse = (0..m)
        .flat_map(|a| (0..m).map(move |b| (a, b)))
        .filter(|&(a, b)| lt(a, b) && !(0..m).any(|c| lt(a, c) && lt(c, b)))
        .collect();

    let ring = d.indices(&d.whole())?;
    let (exhaustive_count, completeness) = if ring.len() == 1 {
        let found = exhaustive_search_n1(bound);
        let universe = bounded_modules(n, &ring, bound);
        let k = *ring.iter().next().expect("one maximal ideal");
        for table in &found {
            let matched = ops.iter().any(|op| {
                universe
                    .iter()
                    .zip(table)
                    .all(|(i, v)| op.act(i).comps()[k - 1] == *v)
            });
            if !matched {
                return Err(Error::EnumerationMismatch(format!(
                    "closure operator {table:?} is not a support operation"
                )));
            }
        }
        if found.len() != ops.len() {
            return Err(Error::EnumerationMismatch(format!(
                "exhaustive search found {} operations, the support family has {}",
                found.len(),
                ops.len()
            )));
        }
        (Some(found.len()), Completeness::SearchVerified)
    } else {
        (None, Completeness::TheoremBacked)
    };

    Ok(OpLattice {
        n,
        bound,
        ops,
        order,
        hasse,
        order_matches_supports,
        verification,
        tally,
        exhaustive_count,
        completeness,
    })
}

/// Every map on the nonzero modules of a one-ideal ring, truncated to
/// `{BOT} ∪ {-b..b}`, that is extensive, idempotent, monotone, stable and
/// compatible with translations staying in range. Each map is returned as
/// its table on `[BOT, -b, ..., b]`.
pub fn exhaustive_search_n1(bound: i64) -> Vec<Vec<Val>> {
    let universe: Vec<Val> = std::iter::once(Val::Bot).chain((-bound..=bound).map(Val::Fin)).collect();
    let m = universe.len();
    let idx = |v: Val| universe.iter().position(|u| *u == v);
    // Extensive: I ⊆ I*, i.e. the image component is at most the input.
    let choices: Vec<Vec<usize>> = (0..m).map(|a| (0..=a).collect()).collect();
    let total: u64 = choices.iter().map(|c| c.len() as u64).product();

    let check = |f: &[usize]| -> bool {
        for a in 0..m {
            if f[f[a]] != f[a] {
                return false;
            }
            for b in 0..m {
                // I ⊆ J iff the component of I is at least that of J.
                if universe[a] >= universe[b] && universe[f[a]] < universe[f[b]] {
                    return false;
                }
                let meet = universe[a].max(universe[b]);
                let lhs = f[idx(meet).expect("meet in range")];
                if universe[lhs] != universe[f[a]].max(universe[f[b]]) {
                    return false;
                }
            }
            for s in -2 * bound..=2 * bound {
                let shifted = universe[a].add(Val::Fin(s));
                let Some(xa) = idx(shifted) else { continue };
                if universe[f[a]].add(Val::Fin(s)) != universe[f[xa]] {
                    return false;
                }
            }
        }
        true
    };

    (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let f: Vec<usize> = choices
                .iter()
                .map(|c| {
                    let k = (code % c.len() as u64) as usize;
                    code /= c.len() as u64;
                    c[k]
                })
                .collect();
            check(&f).then(|| f.iter().map(|k| universe[*k]).collect())
        })
        .collect()
}
