//! Cantor-Bendixson derivatives, ranks and scatteredness of presented spaces.

use super::descriptor::SetDescriptor;
use super::presented::{Atom, PresentedSpace};
use super::region::Region;
use crate::error::Result;
use crate::ordinal::Ordinal;

/// Derived set of the subspace described by `s`.
pub fn cb_derivative(space: &PresentedSpace, s: &SetDescriptor) -> Result<SetDescriptor> {
    SetDescriptor::from_region(&s.to_region(space)?.derivative(space), space)
}

/// Derived set of the whole space.
pub fn cb_derivative_space(space: &PresentedSpace) -> SetDescriptor {
    cb_iterate(space, &Ordinal::one())
}

/// `D^alpha(X)`, closed form per atom: level `alpha` of each interval, the
/// whole of each Cantor atom, and a Discrete atom only for `alpha = 0`.
pub fn cb_iterate_region(space: &PresentedSpace, alpha: &Ordinal) -> Region {
    Region::level(space, alpha)
}

pub fn cb_iterate(space: &PresentedSpace, alpha: &Ordinal) -> SetDescriptor {
    SetDescriptor::from_region(&cb_iterate_region(space, alpha), space)
        .expect("level sets are always representable")
}

/// Least `alpha` with `D^alpha(X) = D^(alpha+1)(X)`.
pub fn cb_rank(space: &PresentedSpace) -> Ordinal {
    space
        .atoms()
        .iter()
        .map(|a| match a {
            Atom::Discrete { .. } => Ordinal::one(),
            Atom::Ordinal { rank, .. } => rank.succ(),
            Atom::Cantor => Ordinal::zero(),
        })
        .max()
        .unwrap_or_default()
}

/// The perfect kernel `D^rank(X)`.
pub fn perfect_kernel(space: &PresentedSpace) -> Region {
    cb_iterate_region(space, &cb_rank(space))
}

pub fn is_scattered(space: &PresentedSpace) -> bool {
    !space.has_cantor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::descriptor::Piece;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn space(atoms: Vec<Atom>) -> PresentedSpace {
        PresentedSpace::new(atoms).unwrap()
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(cb_derivative_space(&space(vec![Atom::discrete(5)])), SetDescriptor::default());
        let x = space(vec![Atom::interval(1u64, 2)]);
        assert_eq!(
            cb_derivative_space(&x),
            SetDescriptor::single(0, Piece::FinitePoints { points: vec![o("w"), o("w*2")] })
        );
        let c = space(vec![Atom::Cantor]);
        assert_eq!(cb_derivative_space(&c), SetDescriptor::single(0, Piece::All));
    }

    #[test]
    fn derivative_of_subsets() {
        let x = space(vec![Atom::interval(1u64, 1)]);
        let pts = SetDescriptor::single(0, Piece::FinitePoints { points: vec![o("3"), o("w")] });
        assert_eq!(cb_derivative(&x, &pts).unwrap(), SetDescriptor::default());
        let y = space(vec![Atom::interval(3u64, 1)]);
        let lmf = SetDescriptor::single(0, Piece::LevelMinusFinite { j: o("1"), points: vec![o("w^2")] });
        assert_eq!(
            cb_derivative(&y, &lmf).unwrap(),
            SetDescriptor::single(0, Piece::LevelMinusFinite { j: o("2"), points: vec![o("w^2")] })
        );
    }

    #[test]
    fn iterate_examples() {
        assert_eq!(cb_iterate(&space(vec![Atom::discrete(3)]), &o("1")), SetDescriptor::default());
        assert_eq!(
            cb_iterate(&space(vec![Atom::interval(2u64, 1)]), &o("2")),
            SetDescriptor::single(0, Piece::FinitePoints { points: vec![o("w^2")] })
        );
        let x = space(vec![Atom::Cantor, Atom::discrete(1)]);
        assert_eq!(cb_iterate(&x, &o("7")), SetDescriptor::single(1, Piece::All));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(cb_rank(&space(vec![Atom::Cantor])), o("0"));
        assert_eq!(cb_rank(&space(vec![Atom::discrete(4)])), o("1"));
        assert_eq!(cb_rank(&space(vec![Atom::interval(3u64, 2)])), o("4"));
        assert_eq!(cb_rank(&space(vec![Atom::interval(o("w"), 1)])), o("w+1"));
    }

    #[test]
    fn scattered_examples() {
        assert!(is_scattered(&space(vec![Atom::interval(2u64, 1)])));
        assert!(!is_scattered(&space(vec![Atom::Cantor])));
        assert!(!is_scattered(&space(vec![Atom::discrete(4), Atom::Cantor])));
        assert!(perfect_kernel(&space(vec![Atom::interval(2u64, 3)])).is_empty());
    }

    #[test]
    fn rank_is_a_fixpoint() {
        let x = space(vec![Atom::discrete(2), Atom::interval(2u64, 1), Atom::interval(o("w+1"), 2)]);
        let r = cb_rank(&x);
        assert_eq!(cb_iterate(&x, &r), cb_iterate(&x, &r.succ()));
        assert_ne!(cb_iterate(&x, &o("w+1")), cb_iterate(&x, &o("w+2")));
    }
}
