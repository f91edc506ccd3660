use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{bounded_modules, in_range, Operation, StableOp};
use crate::domain::{Val, ValuationVector};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomTally {
    pub pass: u64,
    pub fail: u64,
    pub skip: u64,
}

impl AxiomTally {
    fn add(&mut self, o: &AxiomTally) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.skip += o.skip;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: &'static str,
    pub i: ValuationVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<ValuationVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub holds: bool,
    pub bound: i64,
    pub modules: usize,
    pub tallies: BTreeMap<&'static str, AxiomTally>,
    pub counterexample: Option<Counterexample>,
}

impl AxiomReport {
    pub fn total(&self) -> AxiomTally {
        let mut t = AxiomTally::default();
        for v in self.tallies.values() {
            t.add(v);
        }
        t
    }
}

pub const AXIOMS: [&str; 5] = ["extensive", "idempotent", "monotone", "translation", "stable"];

/// Integer vectors realizing principal modules: every shift in `{-2..2}` on
/// the ring's components.
fn shifts(n: usize, ring: &BTreeSet<usize>) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for k in 1..=n {
        let opts: Vec<i64> = if ring.contains(&k) { (-2..=2).collect() } else { vec![0] };
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                opts.iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(*s);
                    q
                })
            })
            .collect();
    }
    out
}

struct Partial {
    tallies: BTreeMap<&'static str, AxiomTally>,
    first: Option<Counterexample>,
}

impl Partial {
    fn new() -> Self {
        Partial {
            tallies: AXIOMS.iter().map(|a| (*a, AxiomTally::default())).collect(),
            first: None,
        }
    }

    fn record(&mut self, axiom: &'static str, ok: bool, cx: impl FnOnce() -> Counterexample) {
        let t = self.tallies.get_mut(axiom).expect("known axiom");
        if ok {
            t.pass += 1;
        } else {
            t.fail += 1;
            if self.first.is_none() {
                self.first = Some(cx());
            }
        }
    }

    fn skip(&mut self, axiom: &'static str) {
        self.tallies.get_mut(axiom).expect("known axiom").skip += 1;
    }
}

/// Brute-force check of the semistar axioms and stability over every
/// bounded module of the operation's ring. Instances whose exact input would
/// leave the bounded range are skipped, never clamped.
pub fn verify_axioms<O: Operation + ?Sized>(op: &O, bound: i64) -> AxiomReport {
    assert!(bound >= 1, "bound must be at least 1");
    let universe = bounded_modules(op.n(), op.ring(), bound);
    let images: Vec<ValuationVector> = universe.par_iter().map(|i| op.act(i)).collect();
    let shifts = shifts(op.n(), op.ring());

    let partials: Vec<Partial> = (0..universe.len())
        .into_par_iter()
        .map(|a| {
            let mut p = Partial::new();
            let i = &universe[a];
            let si = &images[a];
            p.record("extensive", i.is_subset(si).expect("same model"), || Counterexample {
                axiom: "extensive",
                i: i.clone(),
                j: None,
                shift: None,
            });
            p.record("idempotent", op.act(si) == *si, || Counterexample {
                axiom: "idempotent",
                i: i.clone(),
                j: None,
                shift: None,
            });
            for x in &shifts {
                let xi = i.shift(x).expect("same model");
                if !in_range(&xi, bound) {
                    p.skip("translation");
                    continue;
                }
                let lhs = si.shift(x).expect("same model");
                p.record("translation", lhs == op.act(&xi), || Counterexample {
                    axiom: "translation",
                    i: i.clone(),
                    j: None,
                    shift: Some(x.clone()),
                });
            }
            for (b, j) in universe.iter().enumerate() {
                let sj = &images[b];
                if i.is_subset(j).expect("same model") {
                    p.record("monotone", si.is_subset(sj).expect("same model"), || Counterexample {
                        axiom: "monotone",
                        i: i.clone(),
                        j: Some(j.clone()),
                        shift: None,
                    });
                }
                let meet = i.intersect(j).expect("same model");
                let rhs = si.intersect(sj).expect("same model");
                p.record("stable", op.act(&meet) == rhs, || Counterexample {
                    axiom: "stable",
                    i: i.clone(),
                    j: Some(j.clone()),
                    shift: None,
                });
            }
            p
        })
        .collect();

    let mut tallies: BTreeMap<&'static str, AxiomTally> = AXIOMS.iter().map(|a| (*a, AxiomTally::default())).collect();
    let mut counterexample = None;
    for p in partials {
        for (k, v) in &p.tallies {
            tallies.get_mut(k).expect("known axiom").add(v);
        }
        if counterexample.is_none() {
            counterexample = p.first;
        }
    }
    AxiomReport {
        holds: counterexample.is_none(),
        bound,
        modules: universe.len(),
        tallies,
        counterexample,
    }
}

/// Test mutant: a stable operation with one component capped from above.
#[derive(Clone, Debug)]
pub struct ClampedOp {
    pub inner: StableOp,
    /// 1-based component to cap.
    pub component: usize,
    pub ceiling: i64,
}

impl Operation for ClampedOp {
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn ring(&self) -> &BTreeSet<usize> {
        self.inner.ring()
    }

    fn act(&self, i: &ValuationVector) -> ValuationVector {
        let out = self.inner.act(i);
        let comps = out
            .comps()
            .iter()
            .enumerate()
            .map(|(k, c)| match c {
                Val::Fin(v) if k + 1 == self.component => Val::Fin((*v).min(self.ceiling)),
                other => *other,
            })
            .collect();
        ValuationVector::new(comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    #[test]
    fn stable_ops_pass() {
        let d = Domain::semilocal(2).unwrap();
        for op in super::super::enumerate_ops(&d, &d.whole()).unwrap() {
            let r = verify_axioms(&op, 2);
            assert!(r.holds, "{op}: {:?}", r.counterexample);
            assert_eq!(r.total().fail, 0);
            assert!(r.tallies["translation"].skip > 0);
        }
    }

    #[test]
    fn clamped_mutant_fails_translation() {
        let d = Domain::semilocal(2).unwrap();
        let op = ClampedOp {
            inner: StableOp::identity(&d, &d.whole()).unwrap(),
            component: 1,
            ceiling: 0,
        };
        let r = verify_axioms(&op, 2);
        assert!(!r.holds);
        let cx = r.counterexample.unwrap();
        assert_eq!(cx.axiom, "translation");
        assert!(r.tallies["extensive"].fail == 0);
    }

    #[test]
    fn report_is_deterministic() {
        let d = Domain::semilocal(2).unwrap();
        let op = ClampedOp {
            inner: StableOp::on(&d, &d.whole(), [1]).unwrap(),
            component: 1,
            ceiling: -1,
        };
        assert_eq!(verify_axioms(&op, 2), verify_axioms(&op, 2));
    }
}
