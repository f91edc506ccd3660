//! Named fixtures with their expected results pinned.

use serde_json::{json, Value};

use super::commands::{derive, semistar_default, Outcome};
use super::{DEFAULT_BOUND, EXIT_INTERNAL, EXIT_OK};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::family::{derived_sequence, Family, Verdict};
use crate::ordinal::Ordinal;
use crate::space::{cb_rank, is_scattered, Atom, CantorPart, Part, Point, PresentedSpace, Region};

pub const DEMO_IDS: [&str; 8] = [
    "ex-jaffard",
    "ex-weak",
    "ex-almded",
    "ex-algint",
    "ex-algint-merged",
    "cor-cantbend",
    "cor-scattered",
    "cor-powerset",
];

/// Three localizations of a semilocal domain with three maximal ideals.
pub fn jaffard_fixture() -> Family {
    let d = Domain::semilocal(3).expect("n = 3");
    let members = (1..=3).map(|i| d.local(i).expect("index in range")).collect();
    Family::explicit(d, members).expect("localizations of the base")
}

/// `Max(D) = [0, w]`: localizations at the isolated points plus `D_w`.
pub fn weak_fixture() -> Family {
    let d = Domain::sequence(PresentedSpace::single(Atom::interval(1u64, 1)).expect("valid atom"));
    let omega = Point::new(0, Ordinal::omega());
    let space = d.space();
    let isolated = d.base().difference(&Region::point(space, &omega).expect("point of the space"), space);
    let dw = d.localization(&omega).expect("point of the base");
    Family::new(d, isolated, vec![dw]).expect("members of the base")
}

/// An almost Dedekind domain with `Max(D) = [0, w*n]`.
pub fn almded_fixture(n: u64) -> Family {
    let d = Domain::sequence(PresentedSpace::single(Atom::interval(1u64, n)).expect("valid atom"));
    Family::all_localizations(d)
}

/// `Max(D)` a Cantor space.
pub fn algint_fixture() -> Family {
    Family::all_localizations(Domain::sequence(PresentedSpace::single(Atom::Cantor).expect("valid atom")))
}

/// Two Cantor copies; the localizations of the second are merged into one overring.
pub fn algint_merged_fixture() -> Family {
    let d = Domain::sequence(PresentedSpace::new(vec![Atom::Cantor, Atom::Cantor]).expect("valid atoms"));
    let space = d.space();
    let second = Region::from_parts(space, vec![Part::Cantor(CantorPart::Empty), Part::Cantor(CantorPart::All)])
        .expect("one part per atom");
    let first = d.base().difference(&second, space);
    let merged = d.sublocalization(&second);
    Family::new(d, first, vec![merged]).expect("members of the base")
}

/// The same shape with the merged copy collapsed to a single point.
pub fn algint_point_fixture() -> Family {
    Family::all_localizations(Domain::sequence(
        PresentedSpace::new(vec![Atom::discrete(1), Atom::Cantor]).expect("valid atoms"),
    ))
}

/// Spaces for the rank and scatteredness corollaries.
pub fn corollary_spaces() -> Vec<PresentedSpace> {
    let o = |s: &str| s.parse::<Ordinal>().expect("ordinal literal");
    [
        vec![Atom::discrete(5)],
        vec![Atom::interval(1u64, 3)],
        vec![Atom::interval(2u64, 2), Atom::discrete(4)],
        vec![Atom::interval(3u64, 1), Atom::interval(1u64, 2)],
        vec![Atom::interval(o("w"), 1)],
        vec![Atom::interval(o("w + 2"), 1), Atom::discrete(1)],
        vec![Atom::Cantor],
        vec![Atom::Cantor, Atom::interval(1u64, 1)],
        vec![Atom::Cantor, Atom::Cantor, Atom::discrete(2)],
    ]
    .into_iter()
    .map(|a| PresentedSpace::new(a).expect("valid atoms"))
    .collect()
}

fn derive_demo(id: &str, f: &Family, max_steps: usize, expected: Value, observe: impl Fn(&Value) -> Value) -> Outcome {
    let inner = derive(f, max_steps);
    let observed = observe(&inner.json);
    let matches = observed == expected;
    Outcome {
        json: json!({
            "demo": id,
            "expected": expected,
            "observed": observed,
            "matches": matches,
            "report": inner.json,
        }),
        summary: format!("{id}: {}{}", inner.summary, if matches { "" } else { " (MISMATCH)" }),
        dot: inner.dot,
        code: if inner.code != EXIT_OK { inner.code } else if matches { EXIT_OK } else { EXIT_INTERNAL },
    }
}

fn degree_verdict(v: &Value) -> Value {
    json!({
        "degree": v["sequence"]["degree"],
        "verdict": v["sequence"]["verdict"],
    })
}

pub fn run_demo(id: &str, n: Option<usize>, max_steps: usize, bound: Option<i64>) -> Result<Outcome> {
    let out = match id {
        "ex-jaffard" => derive_demo(id, &jaffard_fixture(), max_steps, json!({"degree": "1", "verdict": "SHARP"}), degree_verdict),
        "ex-weak" => derive_demo(id, &weak_fixture(), max_steps, json!({"degree": "2", "verdict": "SHARP"}), degree_verdict),
        "ex-almded" => {
            let n = n.unwrap_or(2);
            if n == 0 {
                return Err(Error::InvalidSpec("--n must be at least 1".into()));
            }
            derive_demo(
                id,
                &almded_fixture(n as u64),
                max_steps,
                json!({"degree": "2", "verdict": "SHARP", "theta_1_size": n}),
                |v| {
                    json!({
                        "degree": v["sequence"]["degree"],
                        "verdict": v["sequence"]["verdict"],
                        "theta_1_size": v["sequence"]["steps"][1]["theta_size"],
                    })
                },
            )
        }
        "ex-algint" => derive_demo(
            id,
            &algint_fixture(),
            max_steps,
            json!({"degree": "0", "verdict": "DULL", "dull_limit_is_whole": true}),
            |v| {
                json!({
                    "degree": v["sequence"]["degree"],
                    "verdict": v["sequence"]["verdict"],
                    "dull_limit_is_whole": v["sequence"]["dull_limit"] == v["sequence"]["steps"][0]["T_support"],
                })
            },
        ),
        "ex-algint-merged" => {
            let point = derived_sequence(&algint_point_fixture(), max_steps)?;
            let point_dv = json!({
                "degree": point.degree.as_ref().map(|d| d.to_string()),
                "verdict": point.verdict,
            });
            derive_demo(
                id,
                &algint_merged_fixture(),
                max_steps,
                json!({"degree": "1", "verdict": "DULL", "point_model_agrees": true}),
                move |v| {
                    let dv = degree_verdict(v);
                    json!({
                        "degree": dv["degree"],
                        "verdict": dv["verdict"],
                        "point_model_agrees": dv == point_dv,
                    })
                },
            )
        }
        "cor-cantbend" | "cor-scattered" => corollary_demo(id, max_steps)?,
        "cor-powerset" => {
            let n = n.unwrap_or(3);
            if !(1..=4).contains(&n) {
                return Err(Error::InvalidSpec("--n must be between 1 and 4".into()));
            }
            let bound = bound.unwrap_or(if n == 4 { 2 } else { DEFAULT_BOUND });
            let inner = semistar_default(&Domain::semilocal(n)?, bound);
            let expected = json!({"ops": 1usize << n, "factorization": vec!["2"; n].join("*"), "result": "PASS"});
            let observed = json!({
                "ops": inner.json["ops"].as_array().map(|a| a.len()),
                "factorization": inner.json["factorization"]["factorization"],
                "result": inner.json["result"],
            });
            let matches = observed == expected;
            Outcome {
                json: json!({"demo": id, "expected": expected, "observed": observed, "matches": matches, "report": inner.json}),
                summary: format!("{id}: {}{}", inner.summary, if matches { "" } else { " (MISMATCH)" }),
                dot: None,
                code: if inner.code != EXIT_OK { inner.code } else if matches { EXIT_OK } else { EXIT_INTERNAL },
            }
        }
        other => return Err(Error::InvalidSpec(format!("unknown demo `{other}`"))),
    };
    Ok(out)
}

fn corollary_demo(id: &str, max_steps: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut all = true;
    for space in corollary_spaces() {
        let f = Family::all_localizations(Domain::sequence(space.clone()));
        let ds = derived_sequence(&f, max_steps)?;
        let degree = ds.degree.clone().expect("complete run");
        let rank = cb_rank(&space);
        let scattered = is_scattered(&space);
        let sharp = ds.verdict == Some(Verdict::Sharp);
        let ok = if id == "cor-cantbend" { degree == rank } else { sharp == scattered };
        all &= ok;
        rows.push(json!({
            "space": space.to_string(),
            "degree": degree,
            "cb_rank": rank,
            "verdict": ds.verdict,
            "scattered": scattered,
            "ok": ok,
        }));
    }
    let claim = if id == "cor-cantbend" { "degree = cb_rank" } else { "SHARP iff scattered" };
    Ok(Outcome {
        json: json!({
            "demo": id,
            "expected": {"all_hold": true},
            "observed": {"all_hold": all},
            "matches": all,
            "claim": claim,
            "rows": rows,
        }),
        summary: format!("{id}: {claim} on {} spaces: {}", rows.len(), if all { "OK" } else { "MISMATCH" }),
        dot: None,
        code: if all { EXIT_OK } else { EXIT_INTERNAL },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_matches() {
        for id in DEMO_IDS {
            let out = run_demo(id, None, 64, Some(2)).unwrap();
            assert_eq!(out.json["matches"], json!(true), "{id}: {}", out.json);
            assert_eq!(out.code, EXIT_OK);
        }
    }
}
