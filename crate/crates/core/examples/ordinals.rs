//! Cantor normal form arithmetic and the point classes used by the topology.

use jaffard::ordinal::Ordinal;

fn main() {
    let a: Ordinal = "w^2*3 + w + 4".parse().expect("valid ordinal");
    let b: Ordinal = "w*2 + 1".parse().expect("valid ordinal");

    println!("a = {a}, b = {b}");
    println!("a + b = {}", a.add(&b));
    println!("b + a = {}", b.add(&a));
    println!("a < b: {}", a < b);

    for x in ["0", "7", "w*3", "w^2 + w*2", "w^w"] {
        let x: Ordinal = x.parse().expect("valid ordinal");
        match x.omega_quotient() {
            Ok(q) => println!("{x}: {:?}, equals w*({q})", x.classify()),
            Err(_) => println!("{x}: {:?}", x.classify()),
        }
    }

    // The left difference undoes addition.
    let d = a.add(&b).sub_left(&a).expect("a <= a + b");
    println!("(a + b) - a = {d}");
}
