//! Stable semistar operations of a semilocal domain, checked by brute force.

use jaffard::domain::{Domain, ValuationVector};
use jaffard::family::Family;
use jaffard::semistar::{enumerate_stable, factorization_iso, verify_axioms, ClampedOp, StableOp};

fn main() {
    let d = Domain::semilocal(3).expect("n >= 1");
    let lat = enumerate_stable(&d, 2).expect("n <= 4");
    let names: Vec<String> = lat.ops.iter().map(|o| o.to_string()).collect();
    println!("{} operations: {}", lat.ops.len(), names.join(" "));
    println!("order is reverse support inclusion: {}", lat.order_matches_supports);
    println!("axiom checks: {:?}", lat.tally);

    let op = StableOp::on(&d, &d.whole(), [1, 3]).expect("support in range");
    let i = ValuationVector::finite(&[1, -2, 4]);
    println!("{op} applied to {i} = {}", op.apply(&i).expect("same model"));

    let f = Family::explicit(d.clone(), vec![d.overring_of(&[1, 2]).expect("indices"), d.local(3).expect("index")])
        .expect("members of the base");
    let fr = factorization_iso(&f, 2).expect("stable-preserving family");
    println!("factorization {} holds: {}", fr.factorization, fr.holds);

    let mutant = ClampedOp { inner: op, component: 1, ceiling: 0 };
    let r = verify_axioms(&mutant, 2);
    println!("clamped mutant holds: {}, counterexample {:?}", r.holds, r.counterexample);
}
