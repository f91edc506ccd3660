//! Acceptance suite: one PASS/FAIL line per criterion, with the time limit
//! each one is held to. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use jaffard::cli::demos::{
    algint_fixture, algint_merged_fixture, almded_fixture, jaffard_fixture, weak_fixture, DEMO_IDS,
};
use jaffard::domain::{Domain, Overring, ValuationVector};
use jaffard::family::{derived_sequence, is_jaffard_overring, DerivedSequence, Family, Verdict, DEFAULT_MAX_STEPS};
use jaffard::ordinal::{Ordinal, PointClass};
use jaffard::semistar::{
    apply_by_intersection, bounded_modules, enumerate_ops, enumerate_stable, exhaustive_search_n1, factorization_iso,
    is_stable_preserving, psi_phi_roundtrip, StableOp,
};
use jaffard::space::{
    cb_derivative, cb_iterate, cb_rank, is_scattered, Atom, AtomPiece, Piece, Point, PresentedSpace, Region,
    SetDescriptor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{is_limit_pointwise, level_by_quotient, o, ordinal_corpus, sample_points, space_corpus, CORPUS_SEED};

const CORPUS_SIZE: usize = 24;
const SEMISTAR_BOUND: i64 = 3;
const ROUNDTRIP_TUPLES: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], ok_detail: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: ok_detail,
        }
    } else {
        let shown: Vec<&String> = failures.iter().take(3).collect();
        Outcome {
            pass: false,
            detail: format!("{} failures, first: {shown:?}", failures.len()),
        }
    }
}

fn canonical(space: &PresentedSpace) -> Family {
    Family::all_localizations(Domain::sequence(space.clone()))
}

fn degree_is(ds: &DerivedSequence, degree: &str, verdict: Verdict) -> bool {
    ds.degree == Some(o(degree)) && ds.verdict == Some(verdict)
}

fn criterion_1() -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut expect = |name: String, f: &Family, degree: &str, verdict: Verdict, extra: &dyn Fn(&DerivedSequence) -> bool| {
        checked += 1;
        match derived_sequence(f, DEFAULT_MAX_STEPS) {
            Ok(ds) if degree_is(&ds, degree, verdict) && extra(&ds) => {}
            Ok(ds) => fails.push(format!("{name}: got degree {:?} {:?}", ds.degree, ds.verdict)),
            Err(e) => fails.push(format!("{name}: {e}")),
        }
    };
    expect("jaffard".into(), &jaffard_fixture(), "1", Verdict::Sharp, &|_| true);
    expect("weak".into(), &weak_fixture(), "2", Verdict::Sharp, &|_| true);
    for n in [1u64, 2, 5] {
        let f = almded_fixture(n);
        let tops: Vec<Point> = (1..=n).map(|k| Point::new(0, Ordinal::monomial(Ordinal::one(), k))).collect();
        let space = f.domain().space().clone();
        let want = Region::points(&space, &tops).expect("points of the space");
        expect(format!("almded n={n}"), &f, "2", Verdict::Sharp, &|ds| {
            ds.steps[1].theta.len() == Some(n as usize) && ds.steps[1].theta.localized() == &want
        });
    }
    let alg = algint_fixture();
    let whole = alg.domain().whole();
    expect("algint".into(), &alg, "0", Verdict::Dull, &|ds| ds.dull_limit.as_ref() == Some(&whole));
    expect("algint-merged".into(), &algint_merged_fixture(), "1", Verdict::Dull, &|_| true);
    outcome(&fails, format!("{checked} fixtures reproduce degree and verdict exactly"))
}

fn criteria_2_3(corpus: &[PresentedSpace]) -> (Outcome, Outcome, Duration) {
    let t = Instant::now();
    let runs: Vec<(PresentedSpace, jaffard::Result<DerivedSequence>)> = corpus
        .iter()
        .map(|s| (s.clone(), derived_sequence(&canonical(s), DEFAULT_MAX_STEPS)))
        .collect();
    let mut fails = Vec::new();
    let mut stages = 0;
    for (space, run) in &runs {
        let ds = match run {
            Ok(ds) => ds,
            Err(e) => {
                fails.push(format!("{space}: {e}"));
                continue;
            }
        };
        let degree = ds.degree.as_ref().and_then(|d| d.as_finite()).expect("finite ranks give finite degrees");
        for a in 0..=degree + 1 {
            let alpha = Ordinal::finite(a);
            let stage = ds.stage_at(&alpha).expect("stage within the run");
            let engine = SetDescriptor::from_region(stage.theta.localized(), space).expect("levels are representable");
            stages += 1;
            if engine != cb_iterate(space, &alpha) {
                fails.push(format!("{space} at {alpha}"));
            }
        }
    }
    let c2 = outcome(&fails, format!("{} spaces, {stages} stages: engine descriptor = topological iterate", runs.len()));
    let bridge_time = t.elapsed();

    let mut fails = Vec::new();
    for (space, run) in &runs {
        let Ok(ds) = run else { continue };
        let rank = cb_rank(space);
        if ds.degree.as_ref() != Some(&rank) {
            fails.push(format!("{space}: degree {:?} vs rank {rank}", ds.degree));
        }
        if (ds.verdict == Some(Verdict::Sharp)) != is_scattered(space) {
            fails.push(format!("{space}: verdict {:?} vs scattered {}", ds.verdict, is_scattered(space)));
        }
    }
    let scattered = runs.iter().filter(|(s, _)| is_scattered(s)).count();
    let c3 = outcome(
        &fails,
        format!("degree = cb_rank and SHARP iff scattered on {} spaces ({scattered} scattered)", runs.len()),
    );
    (c2, c3, bridge_time)
}

/// `(Θ ∖ Θ_α) ∪ {T_α}` for every stage of a finite family's derived sequence.
fn derived_families(f: &Family) -> Vec<Family> {
    let ds = derived_sequence(f, DEFAULT_MAX_STEPS).expect("fixture runs");
    let d = f.domain();
    let space = d.space();
    ds.steps
        .iter()
        .map(|s| {
            let localized = f.localized().difference(s.theta.localized(), space);
            let mut explicit: Vec<Overring> = f
                .explicit_members()
                .iter()
                .filter(|t| !s.theta.explicit_members().contains(t))
                .cloned()
                .collect();
            explicit.push(s.t.clone());
            Family::new(d.clone(), localized, explicit).expect("members of the base")
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut fails = Vec::new();
    let mut notes = Vec::new();

    for n in 1..=3usize {
        let d = Domain::semilocal(n).expect("n >= 1");
        match enumerate_stable(&d, SEMISTAR_BOUND) {
            Ok(lat) => {
                if lat.ops.len() != 1 << n || !lat.all_pass() || lat.tally.fail != 0 || !lat.order_matches_supports {
                    fails.push(format!("n={n}: {} ops, {} FAILs", lat.ops.len(), lat.tally.fail));
                }
                if n == 1 && lat.exhaustive_count != Some(2) {
                    fails.push(format!("n=1 exhaustive count {:?}", lat.exhaustive_count));
                }
                notes.push(format!("n={n}: {} ops, fail={} skip={}", lat.ops.len(), lat.tally.fail, lat.tally.skip));
            }
            Err(e) => fails.push(format!("n={n}: {e}")),
        }
        let all = Family::all_localizations(d.clone());
        match factorization_iso(&all, SEMISTAR_BOUND) {
            Ok(r) if r.holds && r.base_ops == 1 << n && r.product == 1 << n => {}
            Ok(r) => fails.push(format!("n={n}: factorization {r:?}")),
            Err(e) => fails.push(format!("n={n}: {e}")),
        }
    }
    let exhaustive = exhaustive_search_n1(SEMISTAR_BOUND).len();
    if exhaustive != 2 {
        fails.push(format!("exhaustive n=1 search found {exhaustive}"));
    }

    // Ψ∘Φ on random operation tuples over complete independent families.
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let d3 = Domain::semilocal(3).expect("n = 3");
    let ov = |ix: &[usize]| d3.overring_of(ix).expect("indices in range");
    let families = [
        Family::all_localizations(d3.clone()),
        Family::explicit(d3.clone(), vec![ov(&[1, 2]), ov(&[3])]).expect("family"),
        Family::explicit(d3.clone(), vec![ov(&[1]), ov(&[2, 3])]).expect("family"),
        Family::explicit(d3.clone(), vec![ov(&[1, 3]), ov(&[2])]).expect("family"),
        Family::explicit(d3.clone(), vec![d3.whole()]).expect("family"),
    ];
    let mut roundtrips = 0;
    for _ in 0..ROUNDTRIP_TUPLES {
        let f = &families[rng.gen_range(0..families.len())];
        let ops: Vec<StableOp> = f
            .members()
            .expect("finite")
            .iter()
            .map(|(_, t)| {
                let ring: Vec<usize> = d3.indices(t).expect("same model").into_iter().collect();
                let support: Vec<usize> = ring.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
                StableOp::on(&d3, t, support).expect("support inside the ring")
            })
            .collect();
        match psi_phi_roundtrip(f, &ops, SEMISTAR_BOUND) {
            Ok(true) => roundtrips += 1,
            Ok(false) => fails.push(format!("roundtrip failed for {ops:?}")),
            Err(e) => fails.push(format!("roundtrip: {e}")),
        }
    }

    // Stable preservation: all-localization families and every derived family of the finite fixtures.
    let mut preserving = 0;
    let mut check = |label: String, f: &Family| match is_stable_preserving(f, SEMISTAR_BOUND) {
        Ok(r) if r.holds => preserving += 1,
        Ok(r) => fails.push(format!("{label}: counterexample {:?}", r.counterexample)),
        Err(e) => fails.push(format!("{label}: {e}")),
    };
    for n in 1..=3 {
        check(format!("all localizations n={n}"), &Family::all_localizations(Domain::semilocal(n).expect("n")));
    }
    for (k, f) in derived_families(&jaffard_fixture()).iter().enumerate() {
        check(format!("derived family {k} of the Jaffard fixture"), f);
    }
    let sequence_fixtures = [
        ("weak", weak_fixture()),
        ("almded", almded_fixture(2)),
        ("algint", algint_fixture()),
        ("algint-merged", algint_merged_fixture()),
    ];
    let infinite: Vec<String> = sequence_fixtures
        .iter()
        .map(|(name, f)| format!("{name}: ultimately sharp = {}", is_scattered(f.domain().space())))
        .collect();

    outcome(
        &fails,
        format!(
            "{}; factorizations 2, 4, 8; n=1 search finds {exhaustive}; {roundtrips}/{ROUNDTRIP_TUPLES} roundtrips; \
             {preserving} finite families stable-preserving; infinite fixtures reported by scatteredness [{}]",
            notes.join(", "),
            infinite.join(", ")
        ),
    )
}

fn criterion_5(corpus: &[PresentedSpace]) -> Outcome {
    let mut fails = Vec::new();
    let mut evaluations = 0usize;
    for n in 1..=4usize {
        let d = Domain::semilocal(n).expect("n >= 1");
        let subsets: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
            .collect();
        for base in &subsets {
            let db = d.over(&d.overring_of(base).expect("indices")).expect("same model");
            for s in subsets.iter().filter(|s| s.iter().all(|i| base.contains(i))) {
                evaluations += 1;
                if let Err(e) = is_jaffard_overring(&db, &d.overring_of(s).expect("indices")) {
                    fails.push(format!("n={n} base {base:?} overring {s:?}: {e}"));
                }
            }
        }
    }
    for space in corpus {
        let root = Domain::sequence(space.clone());
        let mut points = Vec::new();
        for (i, atom) in space.atoms().iter().enumerate() {
            match atom {
                Atom::Discrete { size } => points.extend((0..*size).map(|k| Point::new(i, k))),
                Atom::Ordinal { rank, copies } => {
                    let r = rank.as_finite().expect("finite ranks in the corpus");
                    points.extend(sample_points(r, *copies).into_iter().map(|p| Point::new(i, p)));
                }
                Atom::Cantor => points.push(Point::generic(i)),
            }
        }
        let bases: Vec<Domain> = match derived_sequence(&canonical(space), DEFAULT_MAX_STEPS) {
            Ok(ds) => ds.steps.iter().map(|s| root.over(&s.t).expect("same model")).collect(),
            Err(e) => {
                fails.push(format!("{space}: {e}"));
                vec![root.clone()]
            }
        };
        for d in &bases {
            for p in &points {
                if !d.base().contains(space, p).expect("point of the space") {
                    continue;
                }
                evaluations += 1;
                let t = d.localization(p).expect("point of the base");
                if let Err(e) = is_jaffard_overring(d, &t) {
                    fails.push(format!("{space} at {p:?}: {e}"));
                }
            }
        }
    }
    outcome(&fails, format!("{evaluations} overrings, every applicable condition agrees"))
}

fn descriptor_family(rank: u64, copies: u64) -> Vec<SetDescriptor> {
    let pts = sample_points(rank, copies);
    let pick = |k: usize| -> Vec<Ordinal> { pts.iter().step_by(k.max(1)).take(4).cloned().collect() };
    let single = |p: Piece| SetDescriptor::single(0, p);
    let mut out = vec![single(Piece::All), single(Piece::Empty)];
    for j in 0..=rank + 1 {
        out.push(single(Piece::Level { j: Ordinal::finite(j) }));
        out.push(single(Piece::LevelMinusFinite { j: Ordinal::finite(j), points: pick(3 + j as usize) }));
    }
    out.push(single(Piece::FinitePoints { points: pick(2) }));
    out.push(SetDescriptor::new(vec![AtomPiece {
        atom: 0,
        piece: Piece::FinitePoints { points: pick(5) },
    }]));
    out
}

fn criterion_6() -> Outcome {
    let mut fails = Vec::new();
    let mut point_checks = 0usize;
    for rank in 0..=5u64 {
        for copies in 1..=3u64 {
            let space = PresentedSpace::single(Atom::interval(rank, copies)).expect("valid atom");
            let pts = sample_points(rank, copies);
            // Levels against iterated division by w.
            for j in 0..=rank + 1 {
                let lvl = Region::level(&space, &Ordinal::finite(j));
                for p in &pts {
                    point_checks += 1;
                    let inside = lvl.contains(&space, &Point::new(0, p.clone())).expect("point");
                    if inside != (level_by_quotient(p) >= j) {
                        fails.push(format!("rank {rank}: {p} in level {j}"));
                    }
                }
            }
            let mut regions: Vec<Region> = descriptor_family(rank, copies)
                .iter()
                .map(|d| d.to_region(&space).expect("valid descriptor"))
                .collect();
            // A few sets outside the descriptor fragment.
            let l1 = Region::level(&space, &Ordinal::one());
            let l3 = Region::level(&space, &Ordinal::finite(3));
            regions.push(l1.difference(&l3, &space));
            regions.push(Region::all(&space).difference(&l1, &space).union(&l3, &space));
            for (k, s) in regions.iter().enumerate() {
                let member = |q: &Ordinal| s.contains(&space, &Point::new(0, q.clone())).expect("point");
                let lp = s.limit_points(&space);
                let der = s.derivative(&space);
                let structural = SetDescriptor::from_region(s, &space)
                    .ok()
                    .map(|desc| cb_derivative(&space, &desc).expect("fragment is closed under derivatives"));
                for p in &pts {
                    point_checks += 1;
                    let pt = Point::new(0, p.clone());
                    let limit = is_limit_pointwise(&member, p);
                    let want = member(p) && limit;
                    if lp.contains(&space, &pt).expect("point") != limit {
                        fails.push(format!("rank {rank} copies {copies} set {k}: limit point {p}"));
                    }
                    if der.contains(&space, &pt).expect("point") != want {
                        fails.push(format!("rank {rank} copies {copies} set {k}: derivative at {p}"));
                    }
                    if let Some(desc) = &structural {
                        let r = desc.to_region(&space).expect("valid descriptor");
                        if r.contains(&space, &pt).expect("point") != want {
                            fails.push(format!("rank {rank} copies {copies} set {k}: cb_derivative at {p}"));
                        }
                    }
                }
            }
        }
    }

    let mut modules = 0usize;
    for n in 1..=3usize {
        let d = Domain::semilocal(n).expect("n");
        let ring: BTreeSet<usize> = (1..=n).collect();
        let mut universe = bounded_modules(n, &ring, SEMISTAR_BOUND);
        universe.push(ValuationVector::zero(n));
        for op in enumerate_ops(&d, &d.whole()).expect("semilocal") {
            for i in &universe {
                modules += 1;
                if op.apply(i).expect("same model") != apply_by_intersection(&d, &op, i).expect("same model") {
                    fails.push(format!("n={n} {op} at {i}"));
                }
            }
        }
    }

    let corpus = ordinal_corpus(CORPUS_SEED, 600);
    let mut limits = 0;
    for x in &corpus {
        match x.classify() {
            PointClass::Successor => {
                if x.omega_quotient().is_ok() {
                    fails.push(format!("{x} is a successor but divides by w"));
                }
            }
            _ => {
                limits += 1;
                let q = x.omega_quotient().expect("limits and zero divide by w");
                let times_w = Ordinal::from_terms(q.terms().iter().map(|(e, c)| (Ordinal::one().add(e), *c)));
                if times_w != *x {
                    fails.push(format!("w*({q}) = {times_w} != {x}"));
                }
            }
        }
    }
    outcome(
        &fails,
        format!("{point_checks} pointwise checks on 18 interval atoms; {modules} module actions; {limits} limits w-divided"),
    )
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jaffard"))
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = bin().args(args).stderr(Stdio::null()).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_7() -> Outcome {
    let mut fails = Vec::new();
    for id in DEMO_IDS {
        let (c1, a) = run(&["demo", id]);
        let (c2, b) = run(&["demo", id]);
        if c1 != 0 || c2 != 0 || a != b || a.is_empty() {
            fails.push(format!("demo {id}: exit {c1}/{c2}, identical {}", a == b));
        }
    }
    let dir = tempfile::tempdir().expect("temp dir");
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::File::create(&p).and_then(|mut f| f.write_all(body.as_bytes())).expect("write spec");
        p.to_string_lossy().into_owned()
    };
    let overlapping = write(
        "overlap.toml",
        "[domain]\nmodel = \"semilocal\"\nn = 3\n[family]\nexplicit = [{ support = [1, 2] }, { support = [2, 3] }]\n",
    );
    let deep = write(
        "deep.toml",
        "[domain]\nmodel = \"sequence\"\nspace = { atoms = [{ kind = \"ordinal\", rank = \"3\" }] }\n",
    );
    let unknown = write("unknown.toml", "[domain]\nmodel = \"semilocal\"\nn = 3\ncolour = 1\n");
    let bad_ordinal = write(
        "bad.toml",
        "[domain]\nmodel = \"sequence\"\nspace = { atoms = [{ kind = \"ordinal\", rank = \"w^^2\" }] }\n",
    );
    let mutant = write(
        "mutant.toml",
        "[domain]\nmodel = \"semilocal\"\nn = 2\n[semistar]\nclamp = { support = [1, 2], component = 1, ceiling = 0 }\n",
    );
    let semi = write("semi.toml", "[domain]\nmodel = \"semilocal\"\nn = 2\n");
    let missing = dir.path().join("missing.toml").to_string_lossy().into_owned();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["derive", "--input", &deep], 0),
        (vec!["derive", "--input", &overlapping], 3),
        (vec!["check", "--input", &overlapping], 3),
        (vec!["derive", "--input", &deep, "--max-steps", "2"], 4),
        (vec!["semistar", "--input", &mutant, "--bound", "2"], 5),
        (vec!["semistar", "--input", &semi, "--bound", "2"], 0),
        (vec!["analyze", "--input", &unknown], 2),
        (vec!["analyze", "--input", &bad_ordinal], 2),
        (vec!["analyze", "--input", &missing], 2),
        (vec!["semistar", "--input", &deep], 2),
        (vec!["semistar", "--input", &semi, "--bound", "0"], 2),
        (vec!["demo", "no-such-demo"], 2),
        (vec!["analyze", "--input", &semi, "--format", "dot"], 2),
    ];
    for (args, want) in &cases {
        let (code, _) = run(args);
        if code != *want {
            fails.push(format!("{args:?}: exit {code}, expected {want}"));
        }
    }
    outcome(
        &fails,
        format!("{} demos byte-identical across runs; exit codes 0/2/3/4/5 on {} cases", DEMO_IDS.len(), cases.len()),
    )
}

fn report(n: usize, title: &str, limit: Duration, elapsed: Duration, o: &Outcome) -> bool {
    let in_time = elapsed <= limit;
    let pass = o.pass && in_time;
    println!(
        "criterion {n} [PRIMARY] {}: {title}: {} ({:.2}s, limit {}s)",
        if pass { "PASS" } else { "FAIL" },
        if in_time { o.detail.clone() } else { format!("{} but over the time limit", o.detail) },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn main() {
    let corpus = space_corpus(CORPUS_SEED, CORPUS_SIZE);
    let mut all = true;

    let t = Instant::now();
    let c1 = criterion_1();
    all &= report(1, "worked-example degree table", Duration::from_secs(1), t.elapsed(), &c1);

    let t = Instant::now();
    let (c2, c3, bridge) = criteria_2_3(&corpus);
    let both = t.elapsed();
    all &= report(2, "bridge equivalence on the space corpus", Duration::from_secs(5), bridge, &c2);
    all &= report(3, "rank identity and scatteredness", Duration::from_secs(5), both, &c3);

    let t = Instant::now();
    let c4 = criterion_4();
    all &= report(4, "semistar suite", Duration::from_secs(60), t.elapsed(), &c4);

    let t = Instant::now();
    let c5 = criterion_5(&corpus);
    all &= report(5, "agreement of the equivalent Jaffard conditions", Duration::from_secs(60), t.elapsed(), &c5);

    let t = Instant::now();
    let c6 = criterion_6();
    all &= report(6, "oracle cross-checks", Duration::from_secs(60), t.elapsed(), &c6);

    let t = Instant::now();
    let c7 = criterion_7();
    all &= report(7, "CLI determinism and exit codes", Duration::from_secs(60), t.elapsed(), &c7);

    if !all {
        std::process::exit(1);
    }
}
