//! Finite spectral spaces given by their specialization order.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Topology {
    Zariski,
    Inverse,
    Constructible,
}

/// `leq[x][y]` means `y` is a specialization of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds from generating pairs, taking the reflexive-transitive closure and
    /// rejecting cycles.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::InvalidPoset(format!("pair ({x}, {y}) refers to a missing point")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are mutually below each other",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    /// Builds from an explicit relation that must already be a partial order.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("{} is not below itself", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset("relation is not antisymmetric".into()));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::InvalidPoset("relation is not transitive".into()));
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    pub fn antichain(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("p{i}")).collect(), &[]).expect("antichain is a poset")
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).expect("chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Specialization-closed sets.
    pub fn is_up_set(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&x| (0..self.len()).all(|y| !self.leq[x][y] || s.contains(&y)))
    }

    /// Generization-closed sets.
    pub fn is_down_set(&self, s: &BTreeSet<usize>) -> bool {
        s.iter().all(|&y| (0..self.len()).all(|x| !self.leq[x][y] || s.contains(&x)))
    }

    pub fn is_open(&self, s: &BTreeSet<usize>, t: Topology) -> bool {
        match t {
            Topology::Zariski => self.is_down_set(s),
            Topology::Inverse => self.is_up_set(s),
            Topology::Constructible => true,
        }
    }

    pub fn is_closed(&self, s: &BTreeSet<usize>, t: Topology) -> bool {
        let complement: BTreeSet<usize> = (0..self.len()).filter(|x| !s.contains(x)).collect();
        self.is_open(&complement, t)
    }

    pub fn closure(&self, s: &BTreeSet<usize>, t: Topology) -> BTreeSet<usize> {
        let n = self.len();
        match t {
            Topology::Zariski => (0..n).filter(|&y| s.iter().any(|&x| self.leq[x][y])).collect(),
            Topology::Inverse => (0..n).filter(|&x| s.iter().any(|&y| self.leq[x][y])).collect(),
            Topology::Constructible => s.clone(),
        }
    }

    /// Points of `subset` that are isolated in it as a subspace.
    pub fn isolated_in(&self, subset: &BTreeSet<usize>, t: Topology) -> BTreeSet<usize> {
        subset
            .iter()
            .copied()
            .filter(|&x| match t {
                Topology::Zariski => subset.iter().all(|&y| y == x || !self.leq[y][x]),
                Topology::Inverse => subset.iter().all(|&y| y == x || !self.leq[x][y]),
                Topology::Constructible => true,
            })
            .collect()
    }

    /// Cantor-Bendixson derivative of a subspace.
    pub fn derived_set(&self, subset: &BTreeSet<usize>, t: Topology) -> BTreeSet<usize> {
        let iso = self.isolated_in(subset, t);
        subset.difference(&iso).copied().collect()
    }

    /// Least `k` with `D^k = D^(k+1)`; finite spaces are scattered so this ends at the empty set.
    pub fn cb_rank(&self, t: Topology) -> usize {
        let mut s: BTreeSet<usize> = (0..self.len()).collect();
        let mut k = 0;
        loop {
            let next = self.derived_set(&s, t);
            if next == s {
                return k;
            }
            s = next;
            k += 1;
        }
    }
}

/// Points whose singleton is open: minimal points for Zariski, maximal for inverse.
pub fn finite_isolated_points(p: &FinitePoset, topology: Topology) -> BTreeSet<usize> {
    p.isolated_in(&(0..p.len()).collect(), topology)
}
