use std::collections::BTreeMap;

use serde::Serialize;

use super::report::flags;
use super::Family;
use crate::domain::{ideal_survives, Basis, Domain, IdealSketch, Overring};
use crate::error::{Error, Result};
use crate::space::{Region, SetDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JaffardEvidence {
    pub verdict: bool,
    /// Every equivalent condition that applies, with its value.
    pub conditions: BTreeMap<&'static str, bool>,
    pub basis: Basis,
}

/// Decides whether `t` is a Jaffard overring of the base of `d` by evaluating
/// each applicable equivalent condition separately; they must agree.
pub fn is_jaffard_overring(d: &Domain, t: &Overring) -> Result<JaffardEvidence> {
    let space = d.space();
    let perp = d.orthogonal(t)?;
    let mut c = BTreeMap::new();

    c.insert("product_with_orthogonal_is_field", d.product(t, &perp)?.is_field());

    let (sigma_t, _) = d.sigma_sigma(t)?;
    let (sigma_p, _) = d.sigma_sigma(&perp)?;
    c.insert("sigma_disjoint_from_orthogonal", sigma_t.is_disjoint(&sigma_p, space));

    let closed = SetDescriptor::from_region(&sigma_t, space).expect("supports are closed, hence representable");
    let j = IdealSketch::new(vec![(closed, 1)]);
    c.insert("primes_die_in_orthogonal", !ideal_survives(d, &j, &perp)?);

    let pair: Vec<Overring> = [t.clone(), perp.clone()].into_iter().filter(|s| !s.is_field()).collect();
    let pair = Family::explicit(d.clone(), pair)?;
    let fl = flags(&pair);
    c.insert(
        "pair_is_jaffard_family",
        fl.k_convention && fl.complete && fl.independent && fl.locally_finite.is_yes(),
    );

    c.insert(
        "complement_is_closed",
        d.base().difference(t.support(), space).is_closed(space),
    );

    if let Some([p]) = t.support().finite_points().as_deref() {
        let isolated = !d.base().limit_points(space).contains(space, p)?;
        c.insert("maximal_ideal_is_isolated", isolated);
    }

    let verdict = c["product_with_orthogonal_is_field"];
    if let Some((name, _)) = c.iter().find(|(_, v)| **v != verdict) {
        return Err(Error::ConditionDisagreement(format!(
            "{name} differs from product_with_orthogonal_is_field for {}: {c:?}",
            t.label()
        )));
    }
    Ok(JaffardEvidence {
        verdict,
        conditions: c,
        basis: d.basis(),
    })
}

/// The Jaffard members of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaJ {
    /// Maximal ideals `M` with `D_M` a Jaffard overring: the isolated points of the base among the localized ones.
    pub localized: Region,
    /// Indices of Jaffard explicit members.
    pub explicit: Vec<usize>,
}

impl ThetaJ {
    pub fn descriptor(&self, d: &Domain) -> Result<SetDescriptor> {
        SetDescriptor::from_region(&self.localized, d.space())
    }

    pub fn is_empty(&self) -> bool {
        self.localized.is_empty() && self.explicit.is_empty()
    }
}

pub fn theta_j(f: &Family) -> ThetaJ {
    let d = f.domain();
    let space = d.space();
    let localized = f.localized().difference(&d.base().limit_points(space), space);
    if let Some(points) = f.localized().finite_points() {
        for p in points {
            let t = d.localization(&p).expect("localized points lie in the base");
            let ev = is_jaffard_overring(d, &t).unwrap_or_else(|e| panic!("{e}"));
            assert_eq!(
                ev.verdict,
                localized.contains(space, &p).expect("point of the space"),
                "isolated-point test and Jaffard conditions disagree at {p:?}"
            );
        }
    }
    let explicit = f
        .explicit_members()
        .iter()
        .enumerate()
        .filter(|(_, t)| is_jaffard_overring(d, t).unwrap_or_else(|e| panic!("{e}")).verdict)
        .map(|(i, _)| i)
        .collect();
    ThetaJ { localized, explicit }
}
