use std::collections::BTreeSet;

use serde::Serialize;

use super::report::check_family;
use super::{Family, MemberRef};
use crate::domain::Overring;
use crate::error::{Error, Result};
use crate::space::Region;

/// A subset of a family's members: localized points plus explicit indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemberSubset {
    pub localized: Region,
    pub explicit: Vec<usize>,
}

/// Replaces each part by the intersection of its members. Parts must be
/// pairwise disjoint and compact; members outside every part are kept.
pub fn merge_compact_subsets(f: &Family, parts: &[MemberSubset]) -> Result<Family> {
    let d = f.domain();
    let space = d.space();
    for (i, p) in parts.iter().enumerate() {
        if !p.localized.is_subset(f.localized(), space) {
            return Err(Error::InvalidDomain(format!("part {i} names localizations outside the family")));
        }
        if let Some(k) = p.explicit.iter().find(|k| **k >= f.explicit_members().len()) {
            return Err(Error::InvalidDomain(format!("part {i} names explicit member {k}, which does not exist")));
        }
    }
    for (i, a) in parts.iter().enumerate() {
        for (j, b) in parts.iter().enumerate().skip(i + 1) {
            let shared = a.explicit.iter().any(|k| b.explicit.contains(k));
            if shared || !a.localized.is_disjoint(&b.localized, space) {
                return Err(Error::OverlappingParts(i, j));
            }
        }
    }
    let mut localized = f.localized().clone();
    let mut used = BTreeSet::new();
    let mut merged = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let union = p
            .explicit
            .iter()
            .fold(p.localized.clone(), |acc, k| acc.union(f.explicit_members()[*k].support(), space));
        if !p.localized.closure(space).is_subset(&union, space) {
            return Err(Error::NotCompactPart(i));
        }
        localized = localized.difference(&p.localized, space);
        used.extend(p.explicit.iter().copied());
        merged.push(d.sublocalization(&union));
    }
    let mut explicit: Vec<Overring> = f
        .explicit_members()
        .iter()
        .enumerate()
        .filter(|(k, _)| !used.contains(k))
        .map(|(_, t)| t.clone())
        .collect();
    explicit.extend(merged);
    let out = Family::new(d.clone(), localized, explicit)?;
    if check_family(f).classification.is_pre_jaffard() {
        assert!(
            check_family(&out).classification.is_pre_jaffard(),
            "merging compact parts of a pre-Jaffard family must stay pre-Jaffard"
        );
    }
    Ok(out)
}

/// `{T·B : T ∈ Θ}` as a family of `B`, with copies of `K` dropped unless
/// nothing else is left.
pub fn extend_family(f: &Family, b: &Overring) -> Result<Family> {
    let d = f.domain();
    let space = d.space();
    let db = d.over(b)?;
    let localized = f.localized().intersect(b.support(), space);
    let products: Vec<Overring> = f
        .explicit_members()
        .iter()
        .map(|t| d.product(t, b))
        .collect::<Result<_>>()?;
    let all_field = localized.is_empty() && products.iter().all(|t| t.is_field());
    let explicit: Vec<Overring> = if all_field {
        vec![db.field()]
    } else {
        products.into_iter().filter(|t| !t.is_field()).collect()
    };
    Family::new(db, localized, explicit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub a: MemberRef,
    pub b: MemberRef,
    /// `T_a · T_b = K`.
    pub product_is_field: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HausdorffReport {
    pub holds: bool,
    pub pairs: Vec<PairWitness>,
}

/// Checks that distinct members of a finite family generate `K` pairwise.
pub fn hausdorff_check(f: &Family) -> Result<HausdorffReport> {
    let d = f.domain();
    let members = f
        .members()
        .ok_or_else(|| Error::HypothesisViolation("the Hausdorff check needs a finite family".into()))?;
    let mut pairs = Vec::new();
    for (i, (ra, ta)) in members.iter().enumerate() {
        for (rb, tb) in &members[i + 1..] {
            pairs.push(PairWitness {
                a: ra.clone(),
                b: rb.clone(),
                product_is_field: d.product(ta, tb)?.is_field(),
            });
        }
    }
    Ok(HausdorffReport {
        holds: pairs.iter().all(|p| p.product_is_field),
        pairs,
    })
}
