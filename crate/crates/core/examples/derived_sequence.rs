//! Derived sequences: degree, verdict and the stages.

use jaffard::cli::demos::{algint_fixture, almded_fixture, weak_fixture};
use jaffard::domain::Domain;
use jaffard::family::{degree_translation, derived_sequence, Family, DEFAULT_MAX_STEPS};
use jaffard::ordinal::Ordinal;
use jaffard::space::{region_label, Atom, PresentedSpace};

fn main() {
    let rank: Ordinal = "w + 1".parse().expect("valid ordinal");
    let rank_w_plus_1 = PresentedSpace::single(Atom::interval(rank, 1)).expect("valid atom");
    let cases = [
        ("weak", weak_fixture()),
        ("almded", almded_fixture(2)),
        ("cantor", algint_fixture()),
        ("[0, w^(w+1)]", Family::all_localizations(Domain::sequence(rank_w_plus_1))),
    ];
    for (name, f) in cases {
        let ds = derived_sequence(&f, DEFAULT_MAX_STEPS).expect("pre-Jaffard family");
        let tr = degree_translation(&ds);
        println!(
            "{name}: degree {}, verdict {}, sharp degree {:?}, dull degree {:?}",
            ds.degree.as_ref().expect("complete run"),
            ds.verdict.expect("complete run"),
            tr.sharp_degree.map(|o| o.to_string()),
            tr.dull_degree.map(|o| o.to_string()),
        );
        let space = f.domain().space();
        for s in &ds.steps {
            println!("  stage {}: theta {}, T over {}", s.alpha, region_label(&s.theta_support(), space), s.t.label());
        }
    }

    println!("{}", derived_sequence(&weak_fixture(), DEFAULT_MAX_STEPS).expect("runs").to_dot());
}
