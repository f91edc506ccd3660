//! Families of overrings: classification, the Jaffard part, and the derived
//! sequence engine.
//!
//! A family is the set of localizations `D_M` for `M` in a region of
//! `Max(D)`, plus finitely many explicitly listed overrings. The canonical
//! family of a one-dimensional domain is the region `Max(D)` with no
//! explicit members.

mod construct;
mod derived;
mod jaffard;
mod report;

use serde::{Deserialize, Serialize};

pub use construct::{extend_family, hausdorff_check, merge_compact_subsets, HausdorffReport, MemberSubset};
pub use derived::{degree_translation, derived_sequence, derived_step, DegreeTranslation, DerivedSequence, DerivedStep, Stage, Verdict, DEFAULT_MAX_STEPS};
pub use jaffard::{is_jaffard_overring, theta_j, JaffardEvidence, ThetaJ};
pub use report::{check_family, Classification, FamilyReport, Tri};

use crate::domain::{Domain, Overring};
use crate::error::{Error, Result};
use crate::space::{Point, Region};

/// A member of a family, named either by its maximal ideal or by its
/// position among the explicit members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MemberRef {
    Localized(Point),
    Explicit(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    domain: Domain,
    localized: Region,
    explicit: Vec<Overring>,
}

impl Family {
    pub fn new(domain: Domain, localized: Region, explicit: Vec<Overring>) -> Result<Self> {
        let space = domain.space();
        if localized.parts().len() != space.atoms().len() {
            return Err(Error::MixedModels);
        }
        if !localized.is_subset(domain.base(), space) {
            return Err(Error::InvalidDomain(
                "localized members must sit at maximal ideals of the base".into(),
            ));
        }
        for (i, t) in explicit.iter().enumerate() {
            domain.check(t)?;
            if !t.support().is_subset(domain.base(), space) {
                return Err(Error::InvalidDomain(format!("explicit member {i} is not an overring of the base")));
            }
        }
        Ok(Family {
            domain,
            localized,
            explicit,
        })
    }

    /// `{D_M : M ∈ Max(D)}`.
    pub fn all_localizations(domain: Domain) -> Self {
        let localized = domain.base().clone();
        Family {
            domain,
            localized,
            explicit: Vec::new(),
        }
    }

    pub fn explicit(domain: Domain, members: Vec<Overring>) -> Result<Self> {
        let empty = Region::empty(domain.space());
        Self::new(domain, empty, members)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn localized(&self) -> &Region {
        &self.localized
    }

    pub fn explicit_members(&self) -> &[Overring] {
        &self.explicit
    }

    pub fn is_finite(&self) -> bool {
        self.localized.is_finite()
    }

    pub fn is_empty(&self) -> bool {
        self.localized.is_empty() && self.explicit.is_empty()
    }

    /// Number of members, `None` for infinite families.
    pub fn len(&self) -> Option<usize> {
        self.localized.cardinality().map(|n| n + self.explicit.len())
    }

    /// Union of all member supports.
    pub fn support_union(&self) -> Region {
        let space = self.domain.space();
        self.explicit
            .iter()
            .fold(self.localized.clone(), |acc, t| acc.union(t.support(), space))
    }

    /// `⋂ Θ`, whose `Σ` is the closure of the union of supports.
    pub fn intersection(&self) -> Overring {
        self.domain.sublocalization(&self.support_union())
    }

    /// The members as overrings; only for finite families.
    pub fn members(&self) -> Option<Vec<(MemberRef, Overring)>> {
        let pts = self.localized.finite_points()?;
        let mut out: Vec<(MemberRef, Overring)> = pts
            .into_iter()
            .map(|p| {
                let t = self.domain.localization(&p).expect("localized points lie in the base");
                (MemberRef::Localized(p), t)
            })
            .collect();
        out.extend(self.explicit.iter().cloned().enumerate().map(|(i, t)| (MemberRef::Explicit(i), t)));
        Some(out)
    }

    /// The same members regarded as a family of another base ring of the model.
    pub fn rebase(&self, domain: Domain) -> Result<Family> {
        Family::new(domain, self.localized.clone(), self.explicit.clone())
    }

    pub fn contains_field(&self) -> bool {
        self.explicit.iter().any(|t| t.is_field())
    }
}
