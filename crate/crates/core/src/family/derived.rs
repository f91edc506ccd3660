use std::fmt;

use serde::{Deserialize, Serialize};

use super::jaffard::theta_j;
use super::report::{check_family, Classification};
use super::{Family, MemberRef};
use crate::domain::{Basis, Overring};
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, PointClass};
use crate::space::{region_label, region_view, AtomView, Region};

pub const DEFAULT_MAX_STEPS: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Sharp,
    Dull,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Sharp => write!(f, "SHARP"),
            Verdict::Dull => write!(f, "DULL"),
        }
    }
}

/// One step of the construction that splits off the Jaffard members.
#[derive(Clone, Debug)]
pub struct DerivedStep {
    /// `Θ_J ∪ {T1}`, a family of the current base.
    pub weak: Family,
    pub pointed_at: MemberRef,
    /// `Θ ∖ Θ_J`, a family of `T1`.
    pub rest: Family,
    pub t1: Overring,
}

pub fn derived_step(f: &Family) -> Result<DerivedStep> {
    let report = check_family(f);
    if let Some(failed) = report.failed_condition() {
        return Err(Error::NotPreJaffard(failed.into()));
    }
    let d = f.domain();
    let space = d.space();
    let tj = theta_j(f);
    let rest_l = f.localized().difference(&tj.localized, space);
    type Indexed<'a> = Vec<(usize, &'a Overring)>;
    let (jaff_e, rest_e): (Indexed, Indexed) =
        f.explicit_members().iter().enumerate().partition(|(i, _)| tj.explicit.contains(i));
    let rest_e: Vec<Overring> = rest_e.into_iter().map(|(_, t)| t.clone()).collect();
    if rest_l.is_empty() && rest_e.is_empty() {
        return Err(Error::AlreadyJaffard);
    }
    let rest_union = rest_e.iter().fold(rest_l.clone(), |acc, t| acc.union(t.support(), space));
    let t1 = d.sublocalization(&rest_union);

    let mut weak_members: Vec<Overring> = jaff_e.into_iter().map(|(_, t)| t.clone()).collect();
    weak_members.push(t1.clone());
    let pointed_at = MemberRef::Explicit(weak_members.len() - 1);
    let weak = Family::new(d.clone(), tj.localized.clone(), weak_members)?;
    match check_family(&weak).classification {
        Classification::Jaffard => {}
        Classification::WeakJaffard { pointed_at: p } if p == pointed_at => {}
        other => panic!("Θ_J ∪ {{T1}} classified as {other:?}, expected a weak Jaffard family pointed at T1"),
    }

    let rest = Family::new(d.over(&t1)?, rest_l, rest_e)?;
    let rest_class = check_family(&rest).classification;
    assert!(
        rest_class.is_pre_jaffard(),
        "Θ ∖ Θ_J is not pre-Jaffard over T1 ({rest_class:?})"
    );
    Ok(DerivedStep {
        weak,
        pointed_at,
        rest,
        t1,
    })
}

/// `(α, Θ_α, T_α)`; `theta` is a family of `T_α`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub alpha: Ordinal,
    pub theta: Family,
    pub t: Overring,
}

impl Stage {
    /// Union of the supports of the members of `Θ_α`.
    pub fn theta_support(&self) -> Region {
        self.theta.support_union()
    }
}

#[derive(Clone, Debug)]
pub struct DerivedSequence {
    pub family: Family,
    /// Listed stages: every successor stage that is materialized, plus the
    /// limit stages `γ + w` reached by closed-form jumps.
    pub steps: Vec<Stage>,
    /// `None` when the run stopped on the step budget.
    pub degree: Option<Ordinal>,
    pub verdict: Option<Verdict>,
    pub dull_limit: Option<Overring>,
    pub basis: Basis,
}

fn successor(stage: &Stage) -> Result<Stage> {
    let alpha = stage.alpha.succ();
    match derived_step(&stage.theta) {
        Ok(step) => Ok(Stage {
            alpha,
            theta: step.rest,
            t: step.t1,
        }),
        Err(Error::AlreadyJaffard) => {
            let d = stage.theta.domain();
            let k = d.field();
            let theta = Family::new(d.over(&k)?, Region::empty(d.space()), Vec::new())?;
            Ok(Stage { alpha, theta, t: k })
        }
        Err(e) => Err(e),
    }
}

/// Explicit members still present at the next limit stage: those meeting
/// the limit points of every finite derivative of the localized part.
fn limit_explicit(stage: &Stage) -> Vec<Overring> {
    let space = stage.theta.domain().space();
    let lim = stage.theta.localized().limit_points_omega(space);
    stage
        .theta
        .explicit_members()
        .iter()
        .filter(|t| !t.support().is_disjoint(&lim, space))
        .cloned()
        .collect()
}

fn jump(root: &Family, stage: &Stage) -> Result<Stage> {
    let space = root.domain().space();
    let localized = stage.theta.localized().derivative_omega(space);
    let explicit = limit_explicit(stage);
    let union = explicit.iter().fold(localized.clone(), |acc, t| acc.union(t.support(), space));
    let t = root.domain().sublocalization(&union);
    let theta = Family::new(root.domain().over(&t)?, localized, explicit)?;
    Ok(Stage {
        alpha: stage.alpha.add(&Ordinal::omega()),
        theta,
        t,
    })
}

/// Runs the derived sequence until `T_α = T_{α+1}` or the budget of listed
/// stages is spent.
pub fn derived_sequence(f: &Family, max_steps: usize) -> Result<DerivedSequence> {
    let report = check_family(f);
    if let Some(failed) = report.failed_condition() {
        return Err(Error::NotPreJaffard(failed.into()));
    }
    let mut seq = DerivedSequence {
        family: f.clone(),
        steps: vec![Stage {
            alpha: Ordinal::zero(),
            theta: f.clone(),
            t: f.domain().whole(),
        }],
        degree: None,
        verdict: None,
        dull_limit: None,
        basis: f.domain().basis(),
    };
    let mut block_start = 0;
    loop {
        if seq.steps.len() > max_steps {
            return Err(Error::StepBudgetExceeded {
                budget: max_steps,
                partial: Box::new(seq),
            });
        }
        let idx = seq.steps.len() - 1;
        let cur = &seq.steps[idx];
        let space = cur.theta.domain().space();
        if cur.theta.localized().has_infinite_band()
            && idx > block_start
            && cur.theta.explicit_members() == limit_explicit(cur).as_slice()
        {
            let next = jump(f, cur)?;
            seq.steps.push(next);
            block_start = idx + 1;
            continue;
        }
        let next = successor(cur)?;
        if next.t == cur.t {
            debug_assert!(next.theta.localized() == cur.theta.localized() || next.theta.is_empty(), "{space}");
            let limit = cur.t.clone();
            seq.verdict = Some(if limit.is_field() { Verdict::Sharp } else { Verdict::Dull });
            seq.degree = Some(cur.alpha.clone());
            seq.dull_limit = Some(limit);
            return Ok(seq);
        }
        seq.steps.push(next);
    }
}

impl DerivedSequence {
    pub fn is_complete(&self) -> bool {
        self.degree.is_some()
    }

    /// `(Θ_α, T_α)` at any ordinal, listed or not.
    pub fn stage_at(&self, alpha: &Ordinal) -> Result<Stage> {
        if let Some(deg) = &self.degree {
            if alpha >= deg {
                let last = self.steps.last().expect("at least one stage");
                let mut s = last.clone();
                s.alpha = alpha.clone();
                return Ok(s);
            }
        }
        let base = self
            .steps
            .iter()
            .rev()
            .find(|s| s.alpha <= *alpha)
            .expect("stage 0 is listed");
        let gap = alpha.sub_left(&base.alpha).expect("base <= alpha");
        let n = gap.as_finite().ok_or_else(|| {
            Error::HypothesisViolation(format!("stage {alpha} lies beyond the computed part of the sequence"))
        })?;
        let mut s = base.clone();
        for _ in 0..n {
            s = successor(&s)?;
        }
        Ok(s)
    }

    /// Index of an explicit member of the original family.
    fn explicit_index(&self, t: &Overring) -> Option<usize> {
        self.family.explicit_members().iter().position(|s| s == t)
    }

    pub fn report(&self) -> DerivedReport {
        let space = self.family.domain().space();
        let steps = self
            .steps
            .iter()
            .map(|s| StepReport {
                alpha: s.alpha.clone(),
                theta_localized: region_view(s.theta.localized(), space),
                theta_explicit: s.theta.explicit_members().iter().filter_map(|t| self.explicit_index(t)).collect(),
                theta_size: s.theta.len(),
                theta_support: region_view(&s.theta_support(), space),
                t_support: s.t.view(),
                t_is_field: s.t.is_field(),
            })
            .collect();
        let translation = self.is_complete().then(|| degree_translation(self));
        DerivedReport {
            steps,
            degree: self.degree.clone(),
            verdict: self.verdict,
            dull_limit: self.dull_limit.as_ref().map(|t| t.view()),
            dull_limit_is_field: self.dull_limit.as_ref().map(|t| t.is_field()),
            sharp_degree: translation.as_ref().and_then(|t| t.sharp_degree.clone()),
            dull_degree: translation.as_ref().and_then(|t| t.dull_degree.clone()),
            basis: self.basis,
            complete: self.is_complete(),
        }
    }

    /// Graphviz rendering of the chain `D = T_0 ⊆ T_1 ⊆ ...`.
    pub fn to_dot(&self) -> String {
        let space = self.family.domain().space();
        let mut out = String::from("digraph derived {\n  rankdir=LR;\n  node [shape=box];\n");
        for (i, s) in self.steps.iter().enumerate() {
            let t = if s.t.is_field() { "K".to_string() } else { region_label(s.t.support(), space) };
            out.push_str(&format!("  t{i} [label=\"T_{{{}}}\\nSigma: {}\"];\n", s.alpha, t.replace('"', "'")));
            if i > 0 {
                out.push_str(&format!("  t{} -> t{i};\n", i - 1));
            }
        }
        if let (Some(deg), Some(v)) = (&self.degree, self.verdict) {
            out.push_str(&format!("  label=\"degree {deg}, {v}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub alpha: Ordinal,
    pub theta_localized: Vec<AtomView>,
    pub theta_explicit: Vec<usize>,
    pub theta_size: Option<usize>,
    pub theta_support: Vec<AtomView>,
    #[serde(rename = "T_support")]
    pub t_support: Vec<AtomView>,
    #[serde(rename = "T_is_field")]
    pub t_is_field: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedReport {
    pub steps: Vec<StepReport>,
    pub degree: Option<Ordinal>,
    pub verdict: Option<Verdict>,
    pub dull_limit: Option<Vec<AtomView>>,
    pub dull_limit_is_field: Option<bool>,
    pub sharp_degree: Option<Ordinal>,
    pub dull_degree: Option<Ordinal>,
    pub basis: Basis,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTranslation {
    pub sharp_degree: Option<Ordinal>,
    pub dull_degree: Option<Ordinal>,
}

/// Sharp/dull degree in the one-dimensional sense: a sharp family of degree
/// `α + 1` has sharp degree `α`; limit or zero degrees have none.
pub fn degree_translation(ds: &DerivedSequence) -> DegreeTranslation {
    let (Some(degree), Some(verdict)) = (&ds.degree, ds.verdict) else {
        return DegreeTranslation {
            sharp_degree: None,
            dull_degree: None,
        };
    };
    match verdict {
        Verdict::Sharp => DegreeTranslation {
            sharp_degree: match degree.classify() {
                PointClass::Successor => {
                    let mut terms = degree.terms().to_vec();
                    let (_, n) = terms.pop().expect("successor has a finite tail");
                    Some(Ordinal::from_terms(terms).add_nat(n - 1))
                }
                _ => None,
            },
            dull_degree: None,
        },
        Verdict::Dull => DegreeTranslation {
            sharp_degree: None,
            dull_degree: Some(degree.clone()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::space::{cb_iterate_region, Atom, Point, PresentedSpace};

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn canonical(atoms: Vec<Atom>) -> Family {
        Family::all_localizations(Domain::sequence(PresentedSpace::new(atoms).unwrap()))
    }

    fn run(f: &Family) -> DerivedSequence {
        derived_sequence(f, DEFAULT_MAX_STEPS).unwrap()
    }

    #[test]
    fn semilocal_is_sharp_of_degree_one() {
        let d = Domain::semilocal(3).unwrap();
        let f = Family::explicit(d.clone(), (1..=3).map(|i| d.local(i).unwrap()).collect()).unwrap();
        let ds = run(&f);
        assert_eq!(ds.degree, Some(o("1")));
        assert_eq!(ds.verdict, Some(Verdict::Sharp));
        assert!(ds.steps[1].t.is_field());
        assert_eq!(degree_translation(&ds).sharp_degree, Some(o("0")));
    }

    #[test]
    fn weak_family_takes_two_steps() {
        let d = Domain::sequence(PresentedSpace::single(Atom::interval(1u64, 1)).unwrap());
        let omega = Point::new(0, Ordinal::omega());
        let iso = d.base().difference(&Region::point(d.space(), &omega).unwrap(), d.space());
        let f = Family::new(d.clone(), iso, vec![d.localization(&omega).unwrap()]).unwrap();
        let ds = run(&f);
        assert_eq!(ds.degree, Some(o("2")));
        assert_eq!(ds.verdict, Some(Verdict::Sharp));
        assert_eq!(ds.steps[1].t, d.localization(&omega).unwrap());
        let step = derived_step(&f).unwrap();
        assert_eq!(step.pointed_at, MemberRef::Explicit(0));
        assert_eq!(step.rest.len(), Some(1));
    }

    #[test]
    fn almost_dedekind_tower() {
        for n in 1..=4u64 {
            let ds = run(&canonical(vec![Atom::interval(1u64, n)]));
            assert_eq!(ds.degree, Some(o("2")), "n = {n}");
            assert_eq!(ds.verdict, Some(Verdict::Sharp));
            assert_eq!(ds.steps[1].theta.len(), Some(n as usize));
            assert_eq!(degree_translation(&ds).sharp_degree, Some(o("1")));
        }
    }

    #[test]
    fn cantor_is_dull_at_once() {
        let ds = run(&canonical(vec![Atom::Cantor]));
        assert_eq!(ds.degree, Some(o("0")));
        assert_eq!(ds.verdict, Some(Verdict::Dull));
        assert_eq!(ds.dull_limit.as_ref().unwrap(), &ds.family.domain().whole());
        assert_eq!(degree_translation(&ds).dull_degree, Some(o("0")));
        assert!(matches!(derived_step(&ds.family), Ok(s) if s.t1 == ds.family.domain().whole()));
    }

    #[test]
    fn merged_cantor_copy_matches_a_point() {
        let x = PresentedSpace::new(vec![Atom::Cantor, Atom::Cantor]).unwrap();
        let d = Domain::sequence(x);
        let space = d.space();
        let second = Region::from_parts(
            space,
            vec![crate::space::Part::Cantor(crate::space::CantorPart::Empty), crate::space::Part::Cantor(crate::space::CantorPart::All)],
        )
        .unwrap();
        let first = d.base().difference(&second, space);
        let f = Family::new(d.clone(), first, vec![d.sublocalization(&second)]).unwrap();
        let ds = run(&f);
        assert_eq!(ds.degree, Some(o("1")));
        assert_eq!(ds.verdict, Some(Verdict::Dull));

        let y = PresentedSpace::new(vec![Atom::discrete(1), Atom::Cantor]).unwrap();
        let other = run(&canonical(y.atoms().to_vec()));
        assert_eq!(other.degree, ds.degree);
        assert_eq!(other.verdict, ds.verdict);
    }

    #[test]
    fn limit_stage_by_jump() {
        let f = canonical(vec![Atom::interval(Ordinal::omega(), 1)]);
        let ds = run(&f);
        assert_eq!(ds.degree, Some(o("w + 1")));
        assert_eq!(ds.verdict, Some(Verdict::Sharp));
        assert!(ds.steps.iter().any(|s| s.alpha == Ordinal::omega()));
        assert_eq!(degree_translation(&ds).sharp_degree, Some(o("w")));
        let space = f.domain().space();
        for a in ["0", "1", "5", "w", "w + 1", "w + 7"] {
            let s = ds.stage_at(&o(a)).unwrap();
            let expect = cb_iterate_region(space, &o(a));
            let expect = if o(a) > o("w") { Region::empty(space) } else { expect };
            assert_eq!(s.theta.localized(), &expect, "stage {a}");
        }
    }

    #[test]
    fn canonical_stages_follow_derivatives() {
        let f = canonical(vec![Atom::interval(2u64, 1), Atom::discrete(2)]);
        let ds = run(&f);
        let space = f.domain().space();
        assert_eq!(ds.degree, Some(o("3")));
        for s in &ds.steps {
            assert_eq!(s.theta.localized(), &cb_iterate_region(space, &s.alpha), "stage {}", s.alpha);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = canonical(vec![Atom::interval(3u64, 1)]);
        match derived_sequence(&f, 2) {
            Err(Error::StepBudgetExceeded { budget, partial }) => {
                assert_eq!(budget, 2);
                assert!(partial.steps.len() > 2);
                assert!(partial.degree.is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_pre_jaffard_rejected() {
        let d = Domain::semilocal(3).unwrap();
        let f = Family::explicit(d.clone(), vec![d.overring_of(&[1, 2]).unwrap(), d.overring_of(&[2, 3]).unwrap()])
            .unwrap();
        assert!(matches!(derived_sequence(&f, 8), Err(Error::NotPreJaffard(c)) if c == "independent"));
    }
}
