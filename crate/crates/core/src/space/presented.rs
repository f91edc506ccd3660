use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// One summand of a presented space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Atom {
    /// `size` isolated points, addressed `0..size`.
    Discrete { size: u64 },
    /// The ordinal interval `[0, w^rank * copies]` in the order topology.
    Ordinal {
        rank: Ordinal,
        #[serde(default = "one")]
        copies: u64,
    },
    /// A perfect compact zero-dimensional space.
    Cantor,
}

fn one() -> u64 {
    1
}

impl Atom {
    pub fn discrete(size: u64) -> Self {
        Atom::Discrete { size }
    }

    pub fn interval(rank: impl Into<Ordinal>, copies: u64) -> Self {
        Atom::Ordinal {
            rank: rank.into(),
            copies,
        }
    }

    fn is_empty(&self) -> bool {
        matches!(
            self,
            Atom::Discrete { size: 0 } | Atom::Ordinal { copies: 0, .. }
        )
    }

    fn validate(&self) -> Result<()> {
        if let Atom::Ordinal { rank, .. } = self {
            if !rank.terms().iter().all(|(e, _)| e.is_finite()) {
                return Err(Error::InvalidSpace(format!(
                    "interval rank {rank} must have finite exponents"
                )));
            }
        }
        Ok(())
    }

    fn order_key(&self) -> (u8, Option<&Ordinal>) {
        match self {
            Atom::Discrete { .. } => (0, None),
            Atom::Ordinal { rank, .. } => (1, Some(rank)),
            Atom::Cantor => (2, None),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Discrete { size } => write!(f, "Discrete({size})"),
            Atom::Ordinal { rank, copies } if *copies == 1 => write!(f, "[0, w^({rank})]"),
            Atom::Ordinal { rank, copies } => write!(f, "[0, w^({rank})*{copies}]"),
            Atom::Cantor => write!(f, "Cantor"),
        }
    }
}

/// A finite topological sum of atoms, kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PresentedSpace {
    atoms: Vec<Atom>,
}

impl PresentedSpace {
    /// Normalizes: empty atoms dropped, Discrete atoms merged, atoms ordered
    /// Discrete, then intervals by rank, then Cantor.
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            a.validate()?;
        }
        let mut discrete = 0u64;
        let mut rest = Vec::new();
        for a in atoms.into_iter().filter(|a| !a.is_empty()) {
            match a {
                Atom::Discrete { size } => discrete += size,
                other => rest.push(other),
            }
        }
        rest.sort_by(|a, b| a.order_key().cmp(&b.order_key()));
        let mut out = Vec::with_capacity(rest.len() + 1);
        if discrete > 0 {
            out.push(Atom::Discrete { size: discrete });
        }
        out.extend(rest);
        if out.is_empty() {
            return Err(Error::InvalidSpace("space has no points".into()));
        }
        Ok(PresentedSpace { atoms: out })
    }

    pub fn single(atom: Atom) -> Result<Self> {
        Self::new(vec![atom])
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> Result<&Atom> {
        self.atoms
            .get(i)
            .ok_or_else(|| Error::MalformedDescriptor(format!("atom index {i} out of range")))
    }

    pub fn has_cantor(&self) -> bool {
        self.atoms.iter().any(|a| matches!(a, Atom::Cantor))
    }

    /// Whether `p` names a point of atom `i`.
    pub fn contains_point(&self, i: usize, p: &Ordinal) -> Result<bool> {
        match self.atom(i)? {
            Atom::Discrete { size } => Ok(p.as_finite().is_some_and(|k| k < *size)),
            Atom::Ordinal { rank, copies } => Ok(*p <= Ordinal::monomial(rank.clone(), *copies)),
            Atom::Cantor => Err(Error::CantorPoint),
        }
    }

    /// Points of an interval atom at the top level, i.e. `w^rank * k`.
    pub fn top_points(rank: &Ordinal, copies: u64) -> Vec<Ordinal> {
        if rank.is_zero() {
            (0..=copies).map(Ordinal::finite).collect()
        } else {
            (1..=copies)
                .map(|k| Ordinal::monomial(rank.clone(), k))
                .collect()
        }
    }
}

impl<'de> Deserialize<'de> for PresentedSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            atoms: Vec<Atom>,
        }
        let raw = Raw::deserialize(d)?;
        PresentedSpace::new(raw.atoms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PresentedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The level of a point of an interval atom: its last CNF exponent.
pub fn point_level(p: &Ordinal) -> Ordinal {
    p.last_exponent()
}
