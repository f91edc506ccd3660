//! Job specifications, read from TOML or JSON.

use std::path::Path;

use serde::Deserialize;

use crate::domain::{Domain, Overring};
use crate::error::{Error, Result};
use crate::family::Family;
use crate::semistar::StableOp;
use crate::space::{PresentedSpace, Region, SetDescriptor};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub domain: DomainSpec,
    #[serde(default)]
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub max_steps: Option<usize>,
    #[serde(default)]
    pub bound: Option<i64>,
    #[serde(default)]
    pub format: Option<super::Format>,
    #[serde(default)]
    pub semistar: Option<SemistarSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Semilocal { n: usize },
    Sequence { space: PresentedSpace },
}

/// Which maximal ideals a set names: 1-based indices on the semilocal
/// model, a set descriptor on either model.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SupportSpec {
    Indices(Vec<usize>),
    Descriptor(SetDescriptor),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverringSpec {
    pub support: SupportSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LocalizedSpec {
    /// `"all"` or `"none"`.
    Keyword(String),
    Support(SupportSpec),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(default)]
    pub localized: Option<LocalizedSpec>,
    #[serde(default)]
    pub explicit: Vec<OverringSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClampSpec {
    pub support: Vec<usize>,
    pub component: usize,
    pub ceiling: i64,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemistarSpec {
    /// Extra operations of the base to verify, as supports.
    #[serde(default)]
    pub ops: Vec<OverringSpec>,
    /// A corrupted operation, verified alongside the others.
    #[serde(default)]
    pub clamp: Option<ClampSpec>,
}

impl JobSpec {
    pub fn parse(text: &str, path: Option<&Path>) -> Result<JobSpec> {
        let ext = path.and_then(|p| p.extension()).and_then(|e| e.to_str());
        match ext {
            Some("json") => serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string())),
            Some("toml") => toml::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string())),
            _ => {
                if text.trim_start().starts_with('{') {
                    serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
                } else {
                    toml::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
                }
            }
        }
    }

    pub fn load(path: &Path) -> Result<JobSpec> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, Some(path))
    }

    pub fn build_domain(&self) -> Result<Domain> {
        match &self.domain {
            DomainSpec::Semilocal { n } => Domain::semilocal(*n),
            DomainSpec::Sequence { space } => Ok(Domain::sequence(space.clone())),
        }
    }

    /// The family named by the spec; all localizations when none is given.
    pub fn build_family(&self, d: &Domain) -> Result<Family> {
        let Some(f) = &self.family else {
            return Ok(Family::all_localizations(d.clone()));
        };
        let localized = match &f.localized {
            None => {
                if f.explicit.is_empty() {
                    d.base().clone()
                } else {
                    Region::empty(d.space())
                }
            }
            Some(LocalizedSpec::Keyword(k)) => match k.as_str() {
                "all" => d.base().clone(),
                "none" => Region::empty(d.space()),
                other => return Err(Error::InvalidSpec(format!("unknown localized keyword `{other}`"))),
            },
            Some(LocalizedSpec::Support(s)) => support_region(d, s)?,
        };
        let explicit = f.explicit.iter().map(|o| build_overring(d, o)).collect::<Result<_>>()?;
        Family::new(d.clone(), localized, explicit)
    }

    pub fn build_ops(&self, d: &Domain) -> Result<Vec<StableOp>> {
        let Some(s) = &self.semistar else {
            return Ok(Vec::new());
        };
        s.ops
            .iter()
            .map(|o| match &o.support {
                SupportSpec::Indices(ix) => StableOp::on(d, &d.whole(), ix.iter().copied()),
                SupportSpec::Descriptor(_) => {
                    Err(Error::InvalidSpec("semistar operations take index supports".into()))
                }
            })
            .collect()
    }
}

fn support_region(d: &Domain, s: &SupportSpec) -> Result<Region> {
    match s {
        SupportSpec::Indices(ix) => Ok(d.overring_of(ix)?.support().clone()),
        SupportSpec::Descriptor(desc) => desc.to_region(d.space()),
    }
}

/// An overring from its support; the support is closed up, as for sublocalizations.
pub fn build_overring(d: &Domain, o: &OverringSpec) -> Result<Overring> {
    match &o.support {
        SupportSpec::Indices(ix) => d.overring_of(ix),
        SupportSpec::Descriptor(desc) => d.sublocalization_desc(desc),
    }
}
