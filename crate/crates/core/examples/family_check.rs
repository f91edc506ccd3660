//! Family flags and classification.

use jaffard::cli::demos::{almded_fixture, jaffard_fixture, weak_fixture};
use jaffard::domain::Domain;
use jaffard::family::{check_family, hausdorff_check, theta_j, Family};
use jaffard::space::region_label;

fn main() {
    for (name, f) in [("semilocal", jaffard_fixture()), ("weak", weak_fixture()), ("almded", almded_fixture(3))] {
        let r = check_family(&f);
        let tj = theta_j(&f);
        println!(
            "{name}: {}, complete {}, independent {}, compact {}, Jaffard localizations {}",
            r.classification.label(),
            r.complete,
            r.independent,
            r.compact,
            region_label(&tj.localized, f.domain().space())
        );
    }

    let d = Domain::semilocal(3).expect("n >= 1");
    let overlap = Family::explicit(
        d.clone(),
        vec![d.overring_of(&[1, 2]).expect("indices"), d.overring_of(&[2, 3]).expect("indices")],
    )
    .expect("members of the base");
    let r = check_family(&overlap);
    println!("overlapping: {}, first failure {:?}", r.classification.label(), r.failed_condition());
    println!("hausdorff: {}", hausdorff_check(&overlap).expect("finite family").holds);
}
