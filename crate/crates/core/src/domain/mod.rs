//! Domain models: semilocal one-dimensional Prüfer domains and sequence
//! domains whose maximal spectrum, in the inverse topology, is a presented
//! space.
//!
//! Both are carried by one representation. A domain is a presented space
//! (its maximal ideals) together with a closed base region: the maximal
//! ideals of the ring currently playing the role of D. An overring of the
//! base is determined by the closed set `Σ(T)` of maximal ideals `M` with
//! `T ⊆ D_M`; the zero prime is implicit everywhere.

mod sketch;
mod valuation;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use sketch::{ideal_survives, IdealSketch};
pub use valuation::{module_intersect, module_mult, Val, ValuationVector};

use crate::error::{Error, Result};
use crate::space::{region_label, region_view, Atom, AtomView, Point, PresentedSpace, Region, SetDescriptor};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Semilocal,
    Sequence,
}

/// Where a statement about the model comes from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Basis {
    /// Exact in the semilocal model.
    Theorem,
    /// Depends on the sequence-domain axiom `Σ(T_C) = cl(C)`.
    ModelAxiom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    kind: ModelKind,
    space: Arc<PresentedSpace>,
    base: Region,
}

/// A flat overring, recorded by `Σ(T)`, which is closed and equals `σ(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Overring {
    space: Arc<PresentedSpace>,
    support: Region,
}

impl Overring {
    pub fn support(&self) -> &Region {
        &self.support
    }

    pub fn space(&self) -> &PresentedSpace {
        &self.space
    }

    /// Whether this is the quotient field.
    pub fn is_field(&self) -> bool {
        self.support.is_empty()
    }

    pub fn view(&self) -> Vec<AtomView> {
        region_view(&self.support, &self.space)
    }

    pub fn label(&self) -> String {
        if self.is_field() {
            "K".into()
        } else {
            region_label(&self.support, &self.space)
        }
    }
}

impl Domain {
    /// Semilocal model with maximal ideals `M_1..M_n`.
    pub fn semilocal(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDomain("a semilocal model needs n >= 1".into()));
        }
        let space = PresentedSpace::single(Atom::discrete(n as u64))?;
        Ok(Self::with_base(ModelKind::Semilocal, Arc::new(space), None))
    }

    /// Sequence domain whose `Max(D)^inverse` is `space`.
    pub fn sequence(space: PresentedSpace) -> Self {
        Self::with_base(ModelKind::Sequence, Arc::new(space), None)
    }

    fn with_base(kind: ModelKind, space: Arc<PresentedSpace>, base: Option<Region>) -> Self {
        let base = base.unwrap_or_else(|| Region::all(&space));
        Domain { kind, space, base }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn basis(&self) -> Basis {
        match self.kind {
            ModelKind::Semilocal => Basis::Theorem,
            ModelKind::Sequence => Basis::ModelAxiom,
        }
    }

    pub fn space(&self) -> &PresentedSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<PresentedSpace> {
        &self.space
    }

    /// `Max(D)` of the current base ring.
    pub fn base(&self) -> &Region {
        &self.base
    }

    /// Number of maximal ideals of the ambient semilocal model.
    pub fn n(&self) -> Option<usize> {
        match (self.kind, self.space.atoms()) {
            (ModelKind::Semilocal, [Atom::Discrete { size }]) => Some(*size as usize),
            _ => None,
        }
    }

    /// The same model with `t` as the base ring.
    pub fn over(&self, t: &Overring) -> Result<Domain> {
        self.check(t)?;
        Ok(Domain {
            kind: self.kind,
            space: self.space.clone(),
            base: t.support.clone(),
        })
    }

    pub fn same_model(&self, other: &Domain) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    pub(crate) fn check(&self, t: &Overring) -> Result<()> {
        if Arc::ptr_eq(&self.space, &t.space) || *self.space == *t.space {
            Ok(())
        } else {
            Err(Error::MixedModels)
        }
    }

    fn make(&self, support: Region) -> Overring {
        Overring {
            space: self.space.clone(),
            support,
        }
    }

    /// D itself.
    pub fn whole(&self) -> Overring {
        self.make(self.base.clone())
    }

    /// The quotient field K.
    pub fn field(&self) -> Overring {
        self.make(Region::empty(&self.space))
    }

    /// `T_C = ⋂_{M ∈ C} D_M`, with `Σ(T_C) = cl(C)`. `C` is cut down to the base.
    pub fn sublocalization(&self, c: &Region) -> Overring {
        let c = c.intersect(&self.base, &self.space);
        self.make(c.closure(&self.space))
    }

    pub fn sublocalization_desc(&self, c: &SetDescriptor) -> Result<Overring> {
        Ok(self.sublocalization(&c.to_region(&self.space)?))
    }

    /// `D_M` for a maximal ideal `M` of the base.
    pub fn localization(&self, m: &Point) -> Result<Overring> {
        let r = Region::point(&self.space, m)?;
        if !r.is_subset(&self.base, &self.space) {
            return Err(Error::InvalidDomain(format!("{m:?} is not a maximal ideal of the base")));
        }
        Ok(self.make(r))
    }

    fn semilocal_point(&self, i: usize) -> Result<Point> {
        let n = self.n().ok_or_else(|| Error::InvalidDomain("index sets need a semilocal model".into()))?;
        if i == 0 || i > n {
            return Err(Error::InvalidDomain(format!("maximal ideal index {i} outside 1..={n}")));
        }
        Ok(Point::new(0, (i - 1) as u64))
    }

    /// `T_Λ` for a set of 1-based maximal ideal indices of a semilocal model.
    pub fn overring_of(&self, lambda: &[usize]) -> Result<Overring> {
        let pts = lambda
            .iter()
            .map(|i| self.semilocal_point(*i))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.sublocalization(&Region::points(&self.space, &pts)?))
    }

    /// `D_{M_i}`, 1-based.
    pub fn local(&self, i: usize) -> Result<Overring> {
        self.localization(&self.semilocal_point(i)?)
    }

    /// 1-based indices of `Σ(T)` in a semilocal model.
    pub fn indices(&self, t: &Overring) -> Result<BTreeSet<usize>> {
        self.check(t)?;
        self.n()
            .ok_or_else(|| Error::InvalidDomain("index sets need a semilocal model".into()))?;
        Ok(t.support
            .finite_points()
            .expect("discrete supports are finite")
            .into_iter()
            .map(|p| p.at.and_then(|x| x.as_finite()).unwrap_or_default() as usize + 1)
            .collect())
    }

    /// `(σ(T), Σ(T))`. All overrings here are flat, so the two coincide; the
    /// covering `Σ(T) ∪ Σ(T^⊥) = Max(D)` is asserted on the way out.
    pub fn sigma_sigma(&self, t: &Overring) -> Result<(Region, Region)> {
        self.check(t)?;
        let perp = self.orthogonal(t)?;
        let cover = t.support.union(&perp.support, &self.space);
        assert!(
            self.base.is_subset(&cover, &self.space),
            "Σ(T) and Σ(T^⊥) fail to cover the spectrum"
        );
        Ok((t.support.clone(), t.support.clone()))
    }

    /// `T^⊥`, the sublocalization at the maximal ideals outside `Σ(T)`.
    pub fn orthogonal(&self, t: &Overring) -> Result<Overring> {
        self.check(t)?;
        let outside = self.base.difference(&t.support, &self.space);
        Ok(self.make(outside.closure(&self.space)))
    }

    /// `AB`, with `Σ(AB) = Σ(A) ∩ Σ(B)`.
    pub fn product(&self, a: &Overring, b: &Overring) -> Result<Overring> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.make(a.support.intersect(&b.support, &self.space)))
    }

    /// `T ⊆ S` as rings.
    pub fn ring_le(&self, t: &Overring, s: &Overring) -> Result<bool> {
        self.check(t)?;
        self.check(s)?;
        Ok(s.support.is_subset(&t.support, &self.space))
    }

    /// `IT` for a module of the semilocal model.
    pub fn extend_to_overring(&self, i: &ValuationVector, t: &Overring) -> Result<ValuationVector> {
        let n = self
            .n()
            .ok_or_else(|| Error::InvalidDomain("module arithmetic needs a semilocal model".into()))?;
        if i.len() != n {
            return Err(Error::MixedModels);
        }
        let keep = self.indices(t)?;
        Ok(i.keep_only(|k| keep.contains(&(k + 1))))
    }
}

pub fn orthogonal(d: &Domain, t: &Overring) -> Result<Overring> {
    d.orthogonal(t)
}

pub fn overring_product(d: &Domain, a: &Overring, b: &Overring) -> Result<Overring> {
    d.product(a, b)
}

pub fn extend_to_overring(d: &Domain, i: &ValuationVector, t: &Overring) -> Result<ValuationVector> {
    d.extend_to_overring(i, t)
}
