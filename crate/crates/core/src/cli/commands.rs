use serde::Serialize;
use serde_json::{json, Value};

use super::spec::JobSpec;
use super::{EXIT_BUDGET, EXIT_NOT_PRE_JAFFARD, EXIT_OK, EXIT_SEMISTAR_FAIL};
use crate::domain::{Domain, ModelKind};
use crate::error::{Error, Result};
use crate::family::{
    check_family, derived_sequence, hausdorff_check, is_jaffard_overring, theta_j, Classification, Family,
};
use crate::semistar::{
    enumerate_stable, factorization_iso, is_stable_preserving, verify_axioms, AxiomReport, ClampedOp, StableOp,
};
use crate::space::{cb_rank, is_scattered, perfect_kernel, region_view};

/// A finished job: the JSON report, a one-line summary derived from it, an
/// optional DOT rendering, and the exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: Value,
    pub summary: String,
    pub dot: Option<String>,
    pub code: i32,
}

fn model_name(d: &Domain) -> &'static str {
    match d.kind() {
        ModelKind::Semilocal => "semilocal",
        ModelKind::Sequence => "sequence",
    }
}

pub fn cmd_analyze(spec: &JobSpec) -> Result<Outcome> {
    let d = spec.build_domain()?;
    let f = spec.build_family(&d)?;
    Ok(analyze(&d, &f))
}

pub(crate) fn analyze(d: &Domain, f: &Family) -> Outcome {
    let space = d.space();
    let report = check_family(f);
    let rank = cb_rank(space);
    let scattered = is_scattered(space);
    let json = json!({
        "command": "analyze",
        "model": model_name(d),
        "space": space.to_string(),
        "cb_rank": rank,
        "scattered": scattered,
        "perfect_kernel": region_view(&perfect_kernel(space), space),
        "family": report,
        "theta_j": region_view(&theta_j(f).localized, space),
    });
    let summary = format!(
        "scattered={scattered}, cb_rank={rank}, classification={}",
        report.classification.label()
    );
    Outcome {
        json,
        summary,
        dot: None,
        code: EXIT_OK,
    }
}

pub fn cmd_derive(spec: &JobSpec, max_steps: usize) -> Result<Outcome> {
    let d = spec.build_domain()?;
    let f = spec.build_family(&d)?;
    Ok(derive(&f, max_steps))
}

pub(crate) fn derive(f: &Family, max_steps: usize) -> Outcome {
    let report = check_family(f);
    if let Some(failed) = report.failed_condition() {
        return Outcome {
            json: json!({
                "command": "derive",
                "error": "not_pre_jaffard",
                "failed": failed,
                "family": report,
            }),
            summary: format!("not pre-Jaffard: {failed} failed"),
            dot: None,
            code: EXIT_NOT_PRE_JAFFARD,
        };
    }
    match derived_sequence(f, max_steps) {
        Ok(ds) => {
            let r = ds.report();
            let degree = r.degree.as_ref().map(|d| d.to_string()).unwrap_or_default();
            let verdict = r.verdict.map(|v| v.to_string()).unwrap_or_default();
            let mut summary = format!("degree={degree}, verdict={verdict}");
            if let Some(s) = &r.sharp_degree {
                summary.push_str(&format!(", sharp_degree={s}"));
            }
            if let Some(s) = &r.dull_degree {
                summary.push_str(&format!(", dull_degree={s}"));
            }
            Outcome {
                json: json!({ "command": "derive", "family": report, "sequence": r }),
                summary,
                dot: Some(ds.to_dot()),
                code: EXIT_OK,
            }
        }
        Err(Error::StepBudgetExceeded { budget, partial }) => Outcome {
            json: json!({
                "command": "derive",
                "error": "step_budget_exceeded",
                "budget": budget,
                "family": report,
                "sequence": partial.report(),
            }),
            summary: format!("step budget {budget} exceeded; partial sequence has {} stages", partial.steps.len()),
            dot: Some(partial.to_dot()),
            code: EXIT_BUDGET,
        },
        Err(e) => panic!("derived sequence of a pre-Jaffard family failed: {e}"),
    }
}

#[derive(Serialize)]
struct NamedReport {
    op: String,
    report: AxiomReport,
}

pub fn cmd_semistar(spec: &JobSpec, bound: i64) -> Result<Outcome> {
    let d = spec.build_domain()?;
    if d.kind() != ModelKind::Semilocal {
        return Err(Error::InvalidDomain("semistar needs the semilocal model".into()));
    }
    let f = spec.build_family(&d)?;
    let mut extra: Vec<NamedReport> = spec
        .build_ops(&d)?
        .iter()
        .map(|op| NamedReport {
            op: op.to_string(),
            report: verify_axioms(op, bound),
        })
        .collect();
    if let Some(c) = spec.semistar.as_ref().and_then(|s| s.clamp.as_ref()) {
        let inner = StableOp::on(&d, &d.whole(), c.support.iter().copied())?;
        if c.component == 0 || c.component > d.n().expect("semilocal") {
            return Err(Error::InvalidSpec(format!("clamp component {} is out of range", c.component)));
        }
        let op = ClampedOp {
            inner: inner.clone(),
            component: c.component,
            ceiling: c.ceiling,
        };
        extra.push(NamedReport {
            op: format!("clamp({inner}, component {}, ceiling {})", c.component, c.ceiling),
            report: verify_axioms(&op, bound),
        });
    }
    Ok(semistar(&d, &f, bound, extra))
}

fn semistar(d: &Domain, f: &Family, bound: i64, extra: Vec<NamedReport>) -> Outcome {
    let lattice = match enumerate_stable(d, bound) {
        Ok(l) => l,
        Err(e) => {
            return Outcome {
                json: json!({ "command": "semistar", "error": e.to_string() }),
                summary: format!("FAIL: {e}"),
                dot: None,
                code: EXIT_SEMISTAR_FAIL,
            }
        }
    };
    let sp = is_stable_preserving(f, bound).expect("finite family over the semilocal model");
    let fact = if sp.holds {
        Some(factorization_iso(f, bound).expect("stable-preserving family"))
    } else {
        None
    };
    let failed_extra: Vec<&NamedReport> = extra.iter().filter(|r| !r.report.holds).collect();
    let fail = !lattice.all_pass()
        || !lattice.order_matches_supports
        || fact.as_ref().is_some_and(|r| !r.holds)
        || !failed_extra.is_empty();

    let mut summary = format!("ops={}", lattice.ops.len());
    if let Some(r) = &fact {
        summary.push_str(&format!(
            ", factorization={} {}",
            r.factorization,
            if r.holds { "OK" } else { "FAIL" }
        ));
    } else {
        summary.push_str(", stable_preserving=false");
    }
    summary.push_str(&format!(
        ", pass={} fail={} skip={}",
        lattice.tally.pass, lattice.tally.fail, lattice.tally.skip
    ));
    if let Some(r) = failed_extra.first() {
        let cx = r.report.counterexample.as_ref().expect("failed report has a counterexample");
        summary.push_str(&format!(", FAIL {} ({} at {})", r.op, cx.axiom, cx.i));
    }
    let ops: Vec<String> = lattice.ops.iter().map(|o| o.to_string()).collect();
    Outcome {
        json: json!({
            "command": "semistar",
            "n": lattice.n,
            "bound": bound,
            "ops": lattice.ops,
            "op_names": ops,
            "hasse": lattice.hasse,
            "order_matches_supports": lattice.order_matches_supports,
            "verification": lattice.tally,
            "first_counterexample": lattice.verification.iter().find_map(|r| r.counterexample.clone()),
            "exhaustive_count": lattice.exhaustive_count,
            "completeness": lattice.completeness,
            "stable_preserving": sp,
            "factorization": fact,
            "extra": extra,
            "result": if fail { "FAIL" } else { "PASS" },
        }),
        summary,
        dot: None,
        code: if fail { EXIT_SEMISTAR_FAIL } else { EXIT_OK },
    }
}

pub(crate) fn semistar_default(d: &Domain, bound: i64) -> Outcome {
    semistar(d, &Family::all_localizations(d.clone()), bound, Vec::new())
}

pub fn cmd_check(spec: &JobSpec) -> Result<Outcome> {
    let d = spec.build_domain()?;
    let f = spec.build_family(&d)?;
    let space = d.space();
    let report = check_family(&f);
    let tj = theta_j(&f);
    let evidence = f
        .explicit_members()
        .iter()
        .map(|t| Ok(json!({ "support": t.view(), "evidence": is_jaffard_overring(&d, t)? })))
        .collect::<Result<Vec<Value>>>()?;
    let hausdorff = if f.is_finite() { Some(hausdorff_check(&f)?) } else { None };
    let code = if report.classification == Classification::None {
        EXIT_NOT_PRE_JAFFARD
    } else {
        EXIT_OK
    };
    let summary = match report.failed_condition() {
        Some(c) => format!("classification={}, failed={c}", report.classification.label()),
        None => format!("classification={}", report.classification.label()),
    };
    Ok(Outcome {
        json: json!({
            "command": "check",
            "family": report,
            "theta_j": {
                "localized": region_view(&tj.localized, space),
                "explicit": tj.explicit,
            },
            "explicit_evidence": evidence,
            "hausdorff": hausdorff,
        }),
        summary,
        dot: None,
        code,
    })
}
