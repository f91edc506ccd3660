//! Finite spectral spaces, presented compact zero-dimensional spaces, their
//! subsets and Cantor-Bendixson machinery.

mod cb;
mod descriptor;
mod poset;
mod presented;
mod region;

pub use cb::{cb_derivative, cb_derivative_space, cb_iterate, cb_iterate_region, cb_rank, is_scattered, perfect_kernel};
pub use descriptor::{
    descriptor_closure, descriptor_complement, descriptor_intersection, descriptor_is_closed, descriptor_is_empty,
    descriptor_union, region_label, region_view, AtomPiece, AtomView, Piece, PieceView, SetDescriptor,
};
pub use poset::{finite_isolated_points, FinitePoset, Topology};
pub use presented::{point_level, Atom, PresentedSpace};
pub use region::{CantorPart, OrdSet, Part, Point, Region};
