use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::jaffard::theta_j;
use super::{Family, MemberRef};
use crate::domain::Basis;

/// A flag that may not be decidable for a given family.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tri {
    Yes,
    No,
    NotApplicable,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tri::Yes => write!(f, "true"),
            Tri::No => write!(f, "false"),
            Tri::NotApplicable => write!(f, "N/A"),
        }
    }
}

impl Serialize for Tri {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Tri::Yes => s.serialize_bool(true),
            Tri::No => s.serialize_bool(false),
            Tri::NotApplicable => s.serialize_str("N/A"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Jaffard,
    WeakJaffard { pointed_at: MemberRef },
    PreJaffard,
    None,
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Jaffard => "JAFFARD",
            Classification::WeakJaffard { .. } => "WEAK_JAFFARD",
            Classification::PreJaffard => "PRE_JAFFARD",
            Classification::None => "NONE",
        }
    }

    pub fn is_pre_jaffard(&self) -> bool {
        *self != Classification::None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub finite: bool,
    /// `K ∉ Θ` or `Θ = {K}`.
    pub k_convention: bool,
    pub complete: bool,
    pub independent: bool,
    pub strongly_independent: Tri,
    pub locally_finite: Tri,
    pub compact: bool,
    pub classification: Classification,
    pub basis: Basis,
}

impl FamilyReport {
    /// Name of the first pre-Jaffard condition that fails.
    pub fn failed_condition(&self) -> Option<&'static str> {
        if !self.k_convention {
            Some("k_convention")
        } else if !self.complete {
            Some("complete")
        } else if !self.independent {
            Some("independent")
        } else if !self.compact {
            Some("compact")
        } else {
            None
        }
    }
}

/// `T · ⋂(others) = K` for every member, read off supports: no member
/// support meets the closure of the union of the others.
fn strongly_independent_finite(f: &Family) -> bool {
    let members = f.members().expect("finite family");
    let space = f.domain.space();
    (0..members.len()).into_par_iter().all(|i| {
        let others = members
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(crate::space::Region::empty(space), |acc, (_, (_, t))| acc.union(t.support(), space));
        let rest = f.domain.sublocalization(&others);
        f.domain
            .product(&members[i].1, &rest)
            .expect("same model")
            .is_field()
    })
}

/// The same condition in region form, valid for infinite families.
fn strongly_independent_region(f: &Family) -> bool {
    let space = f.domain.space();
    let l = &f.localized;
    let e_union = f
        .explicit
        .iter()
        .fold(crate::space::Region::empty(space), |acc, t| acc.union(t.support(), space));
    if !l.is_disjoint(&l.limit_points(space), space) || !l.is_disjoint(&e_union.closure(space), space) {
        return false;
    }
    f.explicit.iter().enumerate().all(|(i, t)| {
        let others = f
            .explicit
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(l.clone(), |acc, (_, s)| acc.union(s.support(), space));
        t.support().is_disjoint(&others.closure(space), space)
    })
}

pub(crate) struct Flags {
    pub finite: bool,
    pub k_convention: bool,
    pub complete: bool,
    pub independent: bool,
    pub compact: bool,
    pub strongly_independent: Tri,
    pub locally_finite: Tri,
}

pub(crate) fn flags(f: &Family) -> Flags {
    let d = &f.domain;
    let space = d.space();
    let k_convention = !f.contains_field() || (f.localized.is_empty() && f.explicit.len() == 1);
    let union = f.support_union();
    let complete = d.base().is_subset(&union, space);
    let mut independent = f.explicit.iter().all(|t| t.support().is_disjoint(&f.localized, space));
    for (i, a) in f.explicit.iter().enumerate() {
        for b in &f.explicit[i + 1..] {
            independent &= a.support().is_disjoint(b.support(), space);
        }
    }
    let compact = f.localized.closure(space).is_subset(&union, space);
    let finite = f.is_finite();
    let (strongly_independent, locally_finite) = if finite {
        (Tri::from_bool(strongly_independent_finite(f)), Tri::Yes)
    } else if complete && independent {
        let s = Tri::from_bool(strongly_independent_region(f));
        (s, s)
    } else {
        (Tri::NotApplicable, Tri::NotApplicable)
    };
    Flags {
        finite,
        k_convention,
        complete,
        independent,
        compact,
        strongly_independent,
        locally_finite,
    }
}

pub fn check_family(f: &Family) -> FamilyReport {
    let d = &f.domain;
    let space = d.space();
    let Flags {
        finite,
        k_convention,
        complete,
        independent,
        compact,
        strongly_independent,
        locally_finite,
    } = flags(f);
    let pre = k_convention && complete && independent && compact;
    let classification = if !pre {
        Classification::None
    } else {
        let tj = theta_j(f);
        let bad_localized = f.localized.difference(&tj.localized, space);
        let bad_explicit: Vec<usize> = (0..f.explicit.len()).filter(|i| !tj.explicit.contains(i)).collect();
        let bad_points = bad_localized.finite_points();
        match (bad_points.as_deref(), bad_explicit.as_slice()) {
            (Some([]), []) if locally_finite.is_yes() => Classification::Jaffard,
            (Some([p]), []) => Classification::WeakJaffard {
                pointed_at: MemberRef::Localized(p.clone()),
            },
            (Some([]), [i]) => Classification::WeakJaffard {
                pointed_at: MemberRef::Explicit(*i),
            },
            _ => Classification::PreJaffard,
        }
    };
    FamilyReport {
        finite,
        k_convention,
        complete,
        independent,
        strongly_independent,
        locally_finite,
        compact,
        classification,
        basis: d.basis(),
    }
}
