//! Nonzero and zero K-submodules of a semilocal model, as valuation vectors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One component: `Bot` imposes no condition (the component module is K),
/// `Top` is the zero module.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Bot,
    Fin(i64),
    Top,
}

impl Val {
    pub fn add(self, other: Val) -> Val {
        match (self, other) {
            (Val::Top, _) | (_, Val::Top) => Val::Top,
            (Val::Bot, _) | (_, Val::Bot) => Val::Bot,
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Bot => write!(f, "BOT"),
            Val::Fin(v) => write!(f, "{v}"),
            Val::Top => write!(f, "TOP"),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Val::Fin(v) => s.serialize_i64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Val {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Val::Fin(v)),
            Raw::Str(s) => match s.to_ascii_uppercase().as_str() {
                "BOT" => Ok(Val::Bot),
                "TOP" => Ok(Val::Top),
                _ => Err(serde::de::Error::custom(format!("unknown component `{s}`"))),
            },
        }
    }
}

/// The module `{x : v_i(x) >= c_i for all i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ValuationVector {
    comps: Vec<Val>,
}

impl<'de> Deserialize<'de> for ValuationVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ValuationVector::new(Vec::<Val>::deserialize(d)?))
    }
}

impl ValuationVector {
    /// Normalizes: a single `Top` component makes the whole module zero.
    pub fn new(comps: Vec<Val>) -> Self {
        if comps.contains(&Val::Top) {
            ValuationVector {
                comps: vec![Val::Top; comps.len()],
            }
        } else {
            ValuationVector { comps }
        }
    }

    pub fn finite(values: &[i64]) -> Self {
        Self::new(values.iter().map(|v| Val::Fin(*v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Val::Top; n])
    }

    /// The quotient field K.
    pub fn field(n: usize) -> Self {
        Self::new(vec![Val::Bot; n])
    }

    /// The ring D itself.
    pub fn unit(n: usize) -> Self {
        Self::new(vec![Val::Fin(0); n])
    }

    pub fn comps(&self) -> &[Val] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.first() == Some(&Val::Top)
    }

    fn same_model(&self, other: &Self) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::MixedModels)
        }
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(Self::new(
            self.comps.iter().zip(&other.comps).map(|(a, b)| *a.max(b)).collect(),
        ))
    }

    /// Module product: componentwise sum, `Top` dominating and `Bot` absorbing.
    pub fn mult(&self, other: &Self) -> Result<Self> {
        self.same_model(other)?;
        Ok(Self::new(
            self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(*b)).collect(),
        ))
    }

    /// Containment of modules: larger components cut out smaller modules.
    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_model(other)?;
        Ok(self.comps.iter().zip(&other.comps).all(|(a, b)| a >= b))
    }

    /// Multiplication by an element with the given valuations.
    pub fn shift(&self, by: &[i64]) -> Result<Self> {
        if by.len() != self.len() {
            return Err(Error::MixedModels);
        }
        Ok(Self::new(
            self.comps.iter().zip(by).map(|(a, s)| a.add(Val::Fin(*s))).collect(),
        ))
    }

    /// Keeps the components listed in `keep` (0-based) and frees the others.
    pub fn keep_only(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::new(
            self.comps
                .iter()
                .enumerate()
                .map(|(i, c)| if *c == Val::Top || keep(i) { *c } else { Val::Bot })
                .collect(),
        )
    }
}

impl fmt::Display for ValuationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn module_intersect(a: &ValuationVector, b: &ValuationVector) -> Result<ValuationVector> {
    a.intersect(b)
}

pub fn module_mult(a: &ValuationVector, b: &ValuationVector) -> Result<ValuationVector> {
    a.mult(b)
}
