//! Sublocalizations, orthogonals and the Jaffard test in both models.

use jaffard::domain::{Domain, ValuationVector};
use jaffard::family::is_jaffard_overring;
use jaffard::ordinal::Ordinal;
use jaffard::space::{Atom, Point, PresentedSpace};

fn main() {
    let d = Domain::semilocal(4).expect("n >= 1");
    let t = d.overring_of(&[1, 3]).expect("indices in range");
    let perp = d.orthogonal(&t).expect("same model");
    println!("T over {:?}, T^perp over {:?}", d.indices(&t).expect("same model"), d.indices(&perp).expect("same model"));
    println!("T T^perp is a field: {}", d.product(&t, &perp).expect("same model").is_field());

    let i = ValuationVector::finite(&[2, 0, -1, 5]);
    println!("I = {i}, IT = {}", d.extend_to_overring(&i, &t).expect("semilocal"));

    let s = Domain::sequence(PresentedSpace::single(Atom::interval(1u64, 1)).expect("valid atom"));
    for at in [Ordinal::finite(3), Ordinal::omega()] {
        let m = s.localization(&Point::new(0, at.clone())).expect("point of the base");
        let ev = is_jaffard_overring(&s, &m).expect("same model");
        println!("D_M at {at}: Jaffard {}, conditions {:?}", ev.verdict, ev.conditions);
    }
}
