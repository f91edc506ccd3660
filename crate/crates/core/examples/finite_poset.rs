//! Finite spectral spaces from a specialization order.

use jaffard::space::{finite_isolated_points, FinitePoset, Topology};

fn main() {
    // Spec of a two-dimensional local domain: (0) < p, q < m.
    let labels = ["(0)", "p", "q", "m"].map(String::from).to_vec();
    let p = FinitePoset::new(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("acyclic");
    for t in [Topology::Zariski, Topology::Inverse, Topology::Constructible] {
        let iso: Vec<&str> = finite_isolated_points(&p, t).iter().map(|&i| p.labels()[i].as_str()).collect();
        println!("{t:?}: isolated {iso:?}, cb rank {}", p.cb_rank(t));
    }
}
