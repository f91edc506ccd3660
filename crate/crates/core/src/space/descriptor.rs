//! Public set descriptors: a finite, serializable fragment of the region algebra.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::presented::{Atom, PresentedSpace};
use super::region::{CantorPart, OrdSet, Part, Region};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// The shape of a descriptor on one atom. `Level { j }` is the j-th
/// Cantor-Bendixson derivative of the atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Piece {
    Empty,
    All,
    FinitePoints {
        points: Vec<Ordinal>,
    },
    Level {
        j: Ordinal,
    },
    LevelMinusFinite {
        j: Ordinal,
        points: Vec<Ordinal>,
    },
    /// The designated generic point of a Cantor atom.
    GenericPoint,
    /// A Cantor atom with its generic point removed.
    AllButGenericPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomPiece {
    pub atom: usize,
    pub piece: Piece,
}

/// A subset given piecewise; atoms without an entry are empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SetDescriptor {
    pieces: Vec<AtomPiece>,
}

impl<'de> Deserialize<'de> for SetDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum OneOrMany {
            One(AtomPiece),
            Many(Vec<AtomPiece>),
        }
        Ok(match OneOrMany::deserialize(d)? {
            OneOrMany::One(p) => SetDescriptor { pieces: vec![p] },
            OneOrMany::Many(pieces) => SetDescriptor { pieces },
        })
    }
}

impl SetDescriptor {
    pub fn new(pieces: Vec<AtomPiece>) -> Self {
        SetDescriptor { pieces }
    }

    pub fn single(atom: usize, piece: Piece) -> Self {
        SetDescriptor {
            pieces: vec![AtomPiece { atom, piece }],
        }
    }

    pub fn all(space: &PresentedSpace) -> Self {
        SetDescriptor {
            pieces: (0..space.atoms().len())
                .map(|atom| AtomPiece { atom, piece: Piece::All })
                .collect(),
        }
    }

    pub fn pieces(&self) -> &[AtomPiece] {
        &self.pieces
    }

    /// The piece on atom `i` (Empty when absent).
    pub fn piece(&self, i: usize) -> Piece {
        self.pieces
            .iter()
            .find(|p| p.atom == i)
            .map(|p| p.piece.clone())
            .unwrap_or(Piece::Empty)
    }

    pub fn to_region(&self, space: &PresentedSpace) -> Result<Region> {
        let mut seen = BTreeSet::new();
        for p in &self.pieces {
            space.atom(p.atom)?;
            if !seen.insert(p.atom) {
                return Err(Error::MalformedDescriptor(format!("atom {} described twice", p.atom)));
            }
        }
        let parts = space
            .atoms()
            .iter()
            .enumerate()
            .map(|(i, atom)| piece_to_part(&self.piece(i), atom, i))
            .collect::<Result<Vec<_>>>()?;
        Region::from_parts(space, parts)
    }

    /// Canonical descriptor of a region, or `UnrepresentableResult`.
    pub fn from_region(region: &Region, space: &PresentedSpace) -> Result<Self> {
        let mut pieces = Vec::new();
        for (i, (part, atom)) in region.parts().iter().zip(space.atoms()).enumerate() {
            let piece = part_to_piece(part, atom).ok_or_else(|| {
                Error::UnrepresentableResult(format!("subset of atom {i} ({atom}) leaves the descriptor fragment"))
            })?;
            if piece != Piece::Empty {
                pieces.push(AtomPiece { atom: i, piece });
            }
        }
        Ok(SetDescriptor { pieces })
    }

    /// Re-expresses in canonical form.
    pub fn normalize(&self, space: &PresentedSpace) -> Result<Self> {
        Self::from_region(&self.to_region(space)?, space)
    }
}

fn check_points(points: &[Ordinal], atom: &Atom, i: usize) -> Result<()> {
    let limit = match atom {
        Atom::Discrete { size } => {
            if let Some(p) = points.iter().find(|p| p.as_finite().is_none_or(|k| k >= *size)) {
                return Err(Error::MalformedDescriptor(format!("point {p} is not in atom {i}")));
            }
            return Ok(());
        }
        Atom::Ordinal { rank, copies } => Ordinal::monomial(rank.clone(), *copies),
        Atom::Cantor => return Err(Error::CantorPoint),
    };
    match points.iter().find(|p| **p > limit) {
        Some(p) => Err(Error::MalformedDescriptor(format!("point {p} is not in atom {i}"))),
        None => Ok(()),
    }
}

fn piece_to_part(piece: &Piece, atom: &Atom, i: usize) -> Result<Part> {
    if let Piece::FinitePoints { points } | Piece::LevelMinusFinite { points, .. } = piece {
        check_points(points, atom, i)?;
    }
    let level = |j: &Ordinal| Region::atom_level(atom, j);
    Ok(match (piece, atom) {
        (Piece::Empty, _) => match atom {
            Atom::Discrete { .. } => Part::Discrete(BTreeSet::new()),
            Atom::Ordinal { .. } => Part::Ordinal(OrdSet::empty()),
            Atom::Cantor => Part::Cantor(CantorPart::Empty),
        },
        (Piece::All, _) => level(&Ordinal::zero()),
        (Piece::Level { j }, _) => level(j),
        (Piece::FinitePoints { points }, Atom::Discrete { .. }) => {
            Part::Discrete(points.iter().filter_map(|p| p.as_finite()).collect())
        }
        (Piece::FinitePoints { points }, Atom::Ordinal { .. }) => Part::Ordinal(OrdSet::points(points.iter().cloned())),
        (Piece::LevelMinusFinite { j, points }, Atom::Discrete { .. }) => match level(j) {
            Part::Discrete(s) => Part::Discrete(
                s.into_iter()
                    .filter(|k| !points.contains(&Ordinal::finite(*k)))
                    .collect(),
            ),
            _ => unreachable!(),
        },
        (Piece::LevelMinusFinite { j, points }, Atom::Ordinal { rank, copies }) => match level(j) {
            Part::Ordinal(o) => Part::Ordinal(OrdSet::from_raw(
                o.bands().to_vec(),
                o.extra().iter().filter(|p| !points.contains(p)).cloned(),
                o.missing().iter().cloned().chain(points.iter().cloned()),
                rank,
                *copies,
            )?),
            _ => unreachable!(),
        },
        (Piece::GenericPoint, Atom::Cantor) => Part::Cantor(CantorPart::Point),
        (Piece::AllButGenericPoint, Atom::Cantor) => Part::Cantor(CantorPart::AllButPoint),
        (Piece::GenericPoint | Piece::AllButGenericPoint, _) => {
            return Err(Error::MalformedDescriptor(format!("atom {i} is not a Cantor atom")))
        }
        (Piece::FinitePoints { .. } | Piece::LevelMinusFinite { .. }, Atom::Cantor) => return Err(Error::CantorPoint),
    })
}

fn part_to_piece(part: &Part, atom: &Atom) -> Option<Piece> {
    let finite = |pts: Vec<Ordinal>| Piece::FinitePoints { points: pts };
    match (part, atom) {
        (Part::Discrete(s), Atom::Discrete { size }) => Some(if s.is_empty() {
            Piece::Empty
        } else if s.len() as u64 == *size {
            Piece::All
        } else {
            finite(s.iter().map(|k| Ordinal::finite(*k)).collect())
        }),
        (Part::Cantor(c), Atom::Cantor) => Some(match c {
            CantorPart::Empty => Piece::Empty,
            CantorPart::Point => Piece::GenericPoint,
            CantorPart::AllButPoint => Piece::AllButGenericPoint,
            CantorPart::All => Piece::All,
        }),
        (Part::Ordinal(o), Atom::Ordinal { rank, copies }) => {
            if o.is_empty() {
                return Some(Piece::Empty);
            }
            if *o == OrdSet::level(&Ordinal::zero(), rank, *copies) {
                return Some(Piece::All);
            }
            match o.bands() {
                [] => Some(finite(o.extra().iter().cloned().collect())),
                [(j, end)] if end == rank => {
                    let top: BTreeSet<Ordinal> = PresentedSpace::top_points(rank, *copies).into_iter().collect();
                    if !o.extra().is_subset(&top) {
                        return None;
                    }
                    let removed: Vec<Ordinal> = o
                        .missing()
                        .iter()
                        .cloned()
                        .chain(top.difference(o.extra()).cloned())
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect();
                    Some(if removed.is_empty() {
                        Piece::Level { j: j.clone() }
                    } else {
                        Piece::LevelMinusFinite {
                            j: j.clone(),
                            points: removed,
                        }
                    })
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Serializable view of any region: descriptor pieces where possible, the raw
/// band form otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PieceView {
    Piece(Piece),
    Bands {
        kind: &'static str,
        bands: Vec<(Ordinal, Ordinal)>,
        extra: Vec<Ordinal>,
        missing: Vec<Ordinal>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtomView {
    pub atom: usize,
    pub piece: PieceView,
}

pub fn region_view(region: &Region, space: &PresentedSpace) -> Vec<AtomView> {
    region
        .parts()
        .iter()
        .zip(space.atoms())
        .enumerate()
        .filter_map(|(i, (part, atom))| {
            let piece = match part_to_piece(part, atom) {
                Some(Piece::Empty) => return None,
                Some(p) => PieceView::Piece(p),
                None => match part {
                    Part::Ordinal(o) => PieceView::Bands {
                        kind: "bands",
                        bands: o.bands().to_vec(),
                        extra: o.extra().iter().cloned().collect(),
                        missing: o.missing().iter().cloned().collect(),
                    },
                    _ => unreachable!("discrete and Cantor parts are always representable"),
                },
            };
            Some(AtomView { atom: i, piece })
        })
        .collect()
}

/// Compact one-line rendering of a region, used by text and DOT output.
pub fn region_label(region: &Region, space: &PresentedSpace) -> String {
    let views = region_view(region, space);
    if views.is_empty() {
        return "{}".into();
    }
    let list = |v: &[Ordinal]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    views
        .iter()
        .map(|v| {
            let body = match &v.piece {
                PieceView::Piece(Piece::Empty) => "{}".to_string(),
                PieceView::Piece(Piece::All) => "all".to_string(),
                PieceView::Piece(Piece::FinitePoints { points }) => format!("{{{}}}", list(points)),
                PieceView::Piece(Piece::Level { j }) => format!("D^({j})"),
                PieceView::Piece(Piece::LevelMinusFinite { j, points }) => format!("D^({j}) - {{{}}}", list(points)),
                PieceView::Piece(Piece::GenericPoint) => "{generic}".to_string(),
                PieceView::Piece(Piece::AllButGenericPoint) => "all - {generic}".to_string(),
                PieceView::Bands { bands, extra, missing, .. } => {
                    let b: Vec<String> = bands.iter().map(|(a, c)| format!("[{a}, {c})")).collect();
                    format!("levels {} + {{{}}} - {{{}}}", b.join(" "), list(extra), list(missing))
                }
            };
            format!("#{}:{}", v.atom, body)
        })
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Union of two descriptors, exact or `UnrepresentableResult`.
pub fn descriptor_union(a: &SetDescriptor, b: &SetDescriptor, space: &PresentedSpace) -> Result<SetDescriptor> {
    SetDescriptor::from_region(&a.to_region(space)?.union(&b.to_region(space)?, space), space)
}

pub fn descriptor_intersection(a: &SetDescriptor, b: &SetDescriptor, space: &PresentedSpace) -> Result<SetDescriptor> {
    SetDescriptor::from_region(&a.to_region(space)?.intersect(&b.to_region(space)?, space), space)
}

pub fn descriptor_complement(a: &SetDescriptor, space: &PresentedSpace) -> Result<SetDescriptor> {
    SetDescriptor::from_region(&a.to_region(space)?.complement(space), space)
}

pub fn descriptor_is_empty(a: &SetDescriptor, space: &PresentedSpace) -> Result<bool> {
    Ok(a.to_region(space)?.is_empty())
}

pub fn descriptor_is_closed(a: &SetDescriptor, space: &PresentedSpace) -> Result<bool> {
    Ok(a.to_region(space)?.is_closed(space))
}

pub fn descriptor_closure(a: &SetDescriptor, space: &PresentedSpace) -> Result<SetDescriptor> {
    SetDescriptor::from_region(&a.to_region(space)?.closure(space), space)
}
