//! Derived sets, iterates and ranks of presented spaces.

use jaffard::ordinal::Ordinal;
use jaffard::space::{cb_iterate, cb_rank, is_scattered, region_label, Atom, Point, PresentedSpace, Region};

fn main() {
    let spaces = [
        vec![Atom::interval(2u64, 2), Atom::discrete(3)],
        vec![Atom::interval(Ordinal::omega().add(&Ordinal::one()), 1)],
        vec![Atom::Cantor, Atom::interval(1u64, 1)],
    ];
    for atoms in spaces {
        let s = PresentedSpace::new(atoms).expect("valid atoms");
        println!("{s}: rank {}, scattered {}", cb_rank(&s), is_scattered(&s));
        for k in 0..4 {
            let alpha = Ordinal::finite(k);
            let lvl = cb_iterate(&s, &alpha).to_region(&s).expect("valid descriptor");
            println!("  derivative {k}: {}", region_label(&lvl, &s));
        }
    }

    // Removing a limit point from a level leaves a set that is not closed.
    let s = PresentedSpace::single(Atom::interval(2u64, 1)).expect("valid atom");
    let hole = Region::point(&s, &Point::new(0, Ordinal::omega())).expect("point of the space");
    let a = Region::level(&s, &Ordinal::zero()).difference(&hole, &s);
    println!("closed: {}, closure adds back: {}", a.is_closed(&s), region_label(&a.closure(&s).difference(&a, &s), &s));
    println!("derivative: {}", region_label(&a.derivative(&s), &s));
}
