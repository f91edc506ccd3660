//! Exact Boolean algebra of the subsets used by the engine.
//!
//! On an interval atom `[0, w^r * m]` a subset is stored as a sorted list of
//! disjoint, non-adjacent level bands `[a, b)` with `b <= r`, plus finitely
//! many added points outside the bands and removed points inside them. Points
//! of level `r` are finite in number and always live in the exception sets.
//! The form is canonical, so structural equality is set equality.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::presented::{point_level, Atom, PresentedSpace};
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// A point of a presented space. `at = None` names the designated generic
/// point of a Cantor atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub atom: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<Ordinal>,
}

impl Point {
    pub fn new(atom: usize, at: impl Into<Ordinal>) -> Self {
        Point {
            atom,
            at: Some(at.into()),
        }
    }

    pub fn generic(atom: usize) -> Self {
        Point { atom, at: None }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrdSet {
    bands: Vec<(Ordinal, Ordinal)>,
    extra: BTreeSet<Ordinal>,
    missing: BTreeSet<Ordinal>,
}

fn in_bands(bands: &[(Ordinal, Ordinal)], level: &Ordinal) -> bool {
    bands.iter().any(|(a, b)| a <= level && level < b)
}

impl OrdSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `{x : level(x) >= j}`.
    pub fn level(j: &Ordinal, rank: &Ordinal, copies: u64) -> Self {
        if j > rank {
            return Self::empty();
        }
        let bands = if j < rank {
            vec![(j.clone(), rank.clone())]
        } else {
            Vec::new()
        };
        OrdSet {
            bands,
            extra: PresentedSpace::top_points(rank, copies).into_iter().collect(),
            missing: BTreeSet::new(),
        }
    }

    pub fn points(points: impl IntoIterator<Item = Ordinal>) -> Self {
        OrdSet {
            bands: Vec::new(),
            extra: points.into_iter().collect(),
            missing: BTreeSet::new(),
        }
    }

    pub fn bands(&self) -> &[(Ordinal, Ordinal)] {
        &self.bands
    }

    pub fn extra(&self) -> &BTreeSet<Ordinal> {
        &self.extra
    }

    pub fn missing(&self) -> &BTreeSet<Ordinal> {
        &self.missing
    }

    pub fn contains(&self, p: &Ordinal, rank: &Ordinal) -> bool {
        if self.extra.contains(p) {
            return true;
        }
        let lev = point_level(p);
        lev < *rank && in_bands(&self.bands, &lev) && !self.missing.contains(p)
    }

    pub fn is_empty(&self) -> bool {
        self.bands.is_empty() && self.extra.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.bands.is_empty()
    }

    fn combine(
        a: &OrdSet,
        b: &OrdSet,
        rank: &Ordinal,
        copies: u64,
        op: impl Fn(bool, bool) -> bool,
    ) -> OrdSet {
        debug_assert!(!op(false, false));
        let mut cuts: Vec<Ordinal> = vec![Ordinal::zero(), rank.clone()];
        for (x, y) in a.bands.iter().chain(&b.bands) {
            cuts.push(x.clone());
            cuts.push(y.clone());
        }
        cuts.sort();
        cuts.dedup();
        let mut bands: Vec<(Ordinal, Ordinal)> = Vec::new();
        for w in cuts.windows(2) {
            let (x, y) = (&w[0], &w[1]);
            if op(in_bands(&a.bands, x), in_bands(&b.bands, x)) {
                match bands.last_mut() {
                    Some(last) if last.1 == *x => last.1 = y.clone(),
                    _ => bands.push((x.clone(), y.clone())),
                }
            }
        }
        let mut candidates: BTreeSet<Ordinal> = PresentedSpace::top_points(rank, copies).into_iter().collect();
        for s in [&a.extra, &a.missing, &b.extra, &b.missing] {
            candidates.extend(s.iter().cloned());
        }
        let mut extra = BTreeSet::new();
        let mut missing = BTreeSet::new();
        for c in candidates {
            let member = op(a.contains(&c, rank), b.contains(&c, rank));
            let lev = point_level(&c);
            let banded = lev < *rank && in_bands(&bands, &lev);
            if member && !banded {
                extra.insert(c);
            } else if !member && banded {
                missing.insert(c);
            }
        }
        OrdSet {
            bands,
            extra,
            missing,
        }
    }

    /// Canonical form of an arbitrary band/exception description.
    pub fn from_raw(
        bands: Vec<(Ordinal, Ordinal)>,
        extra: impl IntoIterator<Item = Ordinal>,
        missing: impl IntoIterator<Item = Ordinal>,
        rank: &Ordinal,
        copies: u64,
    ) -> Result<OrdSet> {
        for (x, y) in &bands {
            if x >= y || y > rank {
                return Err(Error::MalformedDescriptor(format!(
                    "band [{x}, {y}) is not a nonempty level range below {rank}"
                )));
            }
        }
        let limit = Ordinal::monomial(rank.clone(), copies);
        let extra: Vec<Ordinal> = extra.into_iter().collect();
        let missing: Vec<Ordinal> = missing.into_iter().collect();
        for p in extra.iter().chain(&missing) {
            if *p > limit {
                return Err(Error::MalformedDescriptor(format!("point {p} lies outside [0, {limit}]")));
            }
        }
        let banded = OrdSet {
            bands: Vec::new(),
            extra: BTreeSet::new(),
            missing: BTreeSet::new(),
        };
        let banded = bands.into_iter().fold(banded, |acc, (x, y)| {
            let piece = OrdSet::combine(
                &OrdSet::level(&x, rank, copies),
                &OrdSet::level(&y, rank, copies),
                rank,
                copies,
                |p, q| p && !q,
            );
            OrdSet::combine(&acc, &piece, rank, copies, |p, q| p || q)
        });
        let without = OrdSet::combine(&banded, &OrdSet::points(missing), rank, copies, |p, q| p && !q);
        Ok(OrdSet::combine(&without, &OrdSet::points(extra), rank, copies, |p, q| p || q))
    }

    /// Limit points: a set whose lowest band starts at level `a` accumulates
    /// exactly at the points of level `> a`.
    pub fn limit_points(&self, rank: &Ordinal, copies: u64) -> OrdSet {
        match self.bands.first() {
            None => OrdSet::empty(),
            Some((a, _)) => OrdSet::level(&a.succ(), rank, copies),
        }
    }

    /// First band `[c, d)` with `c + w <= d`.
    fn infinite_band_start(&self) -> Option<&Ordinal> {
        self.bands
            .iter()
            .find(|(c, d)| c.add(&Ordinal::omega()) <= *d)
            .map(|(c, _)| c)
    }

    /// `lim_n lp(D^n S)`, the intersection of the limit sets of all finite derivatives.
    pub fn limit_points_omega(&self, rank: &Ordinal, copies: u64) -> OrdSet {
        match self.infinite_band_start() {
            None => OrdSet::empty(),
            Some(c) => OrdSet::level(&c.add(&Ordinal::omega()), rank, copies),
        }
    }
}

/// A subset of a Cantor atom, tracked by whether it holds the designated
/// generic point and whether it holds the rest of the atom.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CantorPart {
    Empty,
    Point,
    AllButPoint,
    All,
}

impl CantorPart {
    fn bits(self) -> (bool, bool) {
        match self {
            CantorPart::Empty => (false, false),
            CantorPart::Point => (true, false),
            CantorPart::AllButPoint => (false, true),
            CantorPart::All => (true, true),
        }
    }

    fn from_bits(point: bool, rest: bool) -> Self {
        match (point, rest) {
            (false, false) => CantorPart::Empty,
            (true, false) => CantorPart::Point,
            (false, true) => CantorPart::AllButPoint,
            (true, true) => CantorPart::All,
        }
    }

    fn limit_points(self) -> Self {
        if self.bits().1 {
            CantorPart::All
        } else {
            CantorPart::Empty
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Discrete(BTreeSet<u64>),
    Ordinal(OrdSet),
    Cantor(CantorPart),
}

/// A subset of a presented space, one part per atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    parts: Vec<Part>,
}

impl Region {
    pub fn empty(space: &PresentedSpace) -> Self {
        Region {
            parts: space
                .atoms()
                .iter()
                .map(|a| match a {
                    Atom::Discrete { .. } => Part::Discrete(BTreeSet::new()),
                    Atom::Ordinal { .. } => Part::Ordinal(OrdSet::empty()),
                    Atom::Cantor => Part::Cantor(CantorPart::Empty),
                })
                .collect(),
        }
    }

    pub fn all(space: &PresentedSpace) -> Self {
        Self::level(space, &Ordinal::zero())
    }

    /// `D^j` of the whole space, atom by atom.
    pub fn level(space: &PresentedSpace, j: &Ordinal) -> Self {
        Region {
            parts: space
                .atoms()
                .iter()
                .map(|a| Self::atom_level(a, j))
                .collect(),
        }
    }

    pub fn atom_level(atom: &Atom, j: &Ordinal) -> Part {
        match atom {
            Atom::Discrete { size } if j.is_zero() => Part::Discrete((0..*size).collect()),
            Atom::Discrete { .. } => Part::Discrete(BTreeSet::new()),
            Atom::Ordinal { rank, copies } => Part::Ordinal(OrdSet::level(j, rank, *copies)),
            Atom::Cantor => Part::Cantor(CantorPart::All),
        }
    }

    pub fn from_parts(space: &PresentedSpace, parts: Vec<Part>) -> Result<Self> {
        if parts.len() != space.atoms().len() {
            return Err(Error::MalformedDescriptor(format!(
                "{} parts for {} atoms",
                parts.len(),
                space.atoms().len()
            )));
        }
        for (i, (p, a)) in parts.iter().zip(space.atoms()).enumerate() {
            let ok = match (p, a) {
                (Part::Discrete(s), Atom::Discrete { size }) => s.iter().all(|k| k < size),
                (Part::Ordinal(_), Atom::Ordinal { .. }) => true,
                (Part::Cantor(_), Atom::Cantor) => true,
                _ => false,
            };
            if !ok {
                return Err(Error::MalformedDescriptor(format!("part {i} does not fit atom {a}")));
            }
        }
        Ok(Region { parts })
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// A single point; Cantor atoms accept only the generic point.
    pub fn point(space: &PresentedSpace, p: &Point) -> Result<Self> {
        Self::points(space, std::iter::once(p))
    }

    pub fn points<'a>(space: &PresentedSpace, pts: impl IntoIterator<Item = &'a Point>) -> Result<Self> {
        let mut r = Self::empty(space);
        for p in pts {
            let atom = space.atom(p.atom)?;
            match (&mut r.parts[p.atom], &p.at, atom) {
                (Part::Cantor(c), None, _) => *c = CantorPart::Point,
                (Part::Cantor(_), Some(_), _) => return Err(Error::CantorPoint),
                (_, None, _) => {
                    return Err(Error::MalformedDescriptor(format!(
                        "atom {} has no generic point",
                        p.atom
                    )))
                }
                (part, Some(x), _) => {
                    if !space.contains_point(p.atom, x)? {
                        return Err(Error::MalformedDescriptor(format!(
                            "point {x} is not in atom {}",
                            p.atom
                        )));
                    }
                    match part {
                        Part::Discrete(s) => {
                            s.insert(x.as_finite().unwrap_or_default());
                        }
                        Part::Ordinal(o) => {
                            let Atom::Ordinal { rank, copies } = atom else { unreachable!() };
                            *o = OrdSet::combine(o, &OrdSet::points([x.clone()]), rank, *copies, |a, b| a || b);
                        }
                        Part::Cantor(_) => unreachable!(),
                    }
                }
            }
        }
        Ok(r)
    }

    pub fn contains(&self, space: &PresentedSpace, p: &Point) -> Result<bool> {
        let part = self
            .parts
            .get(p.atom)
            .ok_or_else(|| Error::MalformedDescriptor(format!("atom index {} out of range", p.atom)))?;
        match (part, &p.at, space.atom(p.atom)?) {
            (Part::Cantor(c), None, _) => Ok(c.bits().0),
            (Part::Cantor(_), Some(_), _) => Err(Error::CantorPoint),
            (_, None, _) => Err(Error::MalformedDescriptor("generic point outside a Cantor atom".into())),
            (Part::Discrete(s), Some(x), _) => Ok(x.as_finite().is_some_and(|k| s.contains(&k))),
            (Part::Ordinal(o), Some(x), Atom::Ordinal { rank, .. }) => {
                Ok(space.contains_point(p.atom, x)? && o.contains(x, rank))
            }
            _ => Err(Error::MalformedDescriptor("part does not fit atom".into())),
        }
    }

    fn zip(&self, other: &Region, space: &PresentedSpace, op: impl Fn(bool, bool) -> bool + Copy) -> Region {
        assert_eq!(self.parts.len(), other.parts.len(), "regions of different spaces");
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .zip(space.atoms())
            .map(|((a, b), atom)| match (a, b, atom) {
                (Part::Discrete(x), Part::Discrete(y), Atom::Discrete { size }) => {
                    Part::Discrete((0..*size).filter(|k| op(x.contains(k), y.contains(k))).collect())
                }
                (Part::Ordinal(x), Part::Ordinal(y), Atom::Ordinal { rank, copies }) => {
                    Part::Ordinal(OrdSet::combine(x, y, rank, *copies, op))
                }
                (Part::Cantor(x), Part::Cantor(y), Atom::Cantor) => {
                    let (xp, xr) = x.bits();
                    let (yp, yr) = y.bits();
                    Part::Cantor(CantorPart::from_bits(op(xp, yp), op(xr, yr)))
                }
                _ => panic!("region does not match its space"),
            })
            .collect();
        Region { parts }
    }

    pub fn union(&self, other: &Region, space: &PresentedSpace) -> Region {
        self.zip(other, space, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Region, space: &PresentedSpace) -> Region {
        self.zip(other, space, |a, b| a && b)
    }

    pub fn difference(&self, other: &Region, space: &PresentedSpace) -> Region {
        self.zip(other, space, |a, b| a && !b)
    }

    pub fn complement(&self, space: &PresentedSpace) -> Region {
        Region::all(space).difference(self, space)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| match p {
            Part::Discrete(s) => s.is_empty(),
            Part::Ordinal(o) => o.is_empty(),
            Part::Cantor(c) => *c == CantorPart::Empty,
        })
    }

    pub fn is_subset(&self, other: &Region, space: &PresentedSpace) -> bool {
        self.difference(other, space).is_empty()
    }

    pub fn is_disjoint(&self, other: &Region, space: &PresentedSpace) -> bool {
        self.intersect(other, space).is_empty()
    }

    fn map_parts(&self, space: &PresentedSpace, f: impl Fn(&Part, &Atom) -> Part) -> Region {
        Region {
            parts: self
                .parts
                .iter()
                .zip(space.atoms())
                .map(|(p, a)| f(p, a))
                .collect(),
        }
    }

    /// The set of accumulation points of `self` in the ambient space.
    pub fn limit_points(&self, space: &PresentedSpace) -> Region {
        self.map_parts(space, |p, a| match (p, a) {
            (Part::Discrete(_), _) => Part::Discrete(BTreeSet::new()),
            (Part::Ordinal(o), Atom::Ordinal { rank, copies }) => Part::Ordinal(o.limit_points(rank, *copies)),
            (Part::Cantor(c), _) => Part::Cantor(c.limit_points()),
            _ => unreachable!(),
        })
    }

    pub fn closure(&self, space: &PresentedSpace) -> Region {
        self.union(&self.limit_points(space), space)
    }

    pub fn is_closed(&self, space: &PresentedSpace) -> bool {
        self.limit_points(space).is_subset(self, space)
    }

    /// Cantor-Bendixson derivative of `self` as a subspace: its non-isolated points.
    pub fn derivative(&self, space: &PresentedSpace) -> Region {
        self.intersect(&self.limit_points(space), space)
    }

    pub fn isolated_points(&self, space: &PresentedSpace) -> Region {
        self.difference(&self.limit_points(space), space)
    }

    pub fn derivative_n(&self, space: &PresentedSpace, n: u64) -> Region {
        let mut r = self.clone();
        for _ in 0..n {
            let next = r.derivative(space);
            if next == r {
                break;
            }
            r = next;
        }
        r
    }

    /// `lim_n lp(D^n self)`: the points that stay accumulation points of
    /// every finite derivative.
    pub fn limit_points_omega(&self, space: &PresentedSpace) -> Region {
        self.map_parts(space, |p, a| match (p, a) {
            (Part::Discrete(_), _) => Part::Discrete(BTreeSet::new()),
            (Part::Ordinal(o), Atom::Ordinal { rank, copies }) => Part::Ordinal(o.limit_points_omega(rank, *copies)),
            (Part::Cantor(c), _) => Part::Cantor(c.limit_points()),
            _ => unreachable!(),
        })
    }

    /// `D^w self`, the intersection of all finite derivatives.
    pub fn derivative_omega(&self, space: &PresentedSpace) -> Region {
        self.intersect(&self.limit_points_omega(space), space)
    }

    /// Whether some interval part has a band `[c, d)` with `c + w <= d`, so that
    /// its finite derivatives never stabilize.
    pub fn has_infinite_band(&self) -> bool {
        self.parts.iter().any(|p| match p {
            Part::Ordinal(o) => o.infinite_band_start().is_some(),
            _ => false,
        })
    }

    /// Whether every part is a finite set (Cantor parts never are, unless empty).
    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(|p| match p {
            Part::Discrete(_) => true,
            Part::Ordinal(o) => o.is_finite(),
            Part::Cantor(c) => matches!(c, CantorPart::Empty | CantorPart::Point),
        })
    }

    /// The points of a finite region.
    pub fn finite_points(&self) -> Option<Vec<Point>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            match p {
                Part::Discrete(s) => out.extend(s.iter().map(|k| Point::new(i, *k))),
                Part::Ordinal(o) => out.extend(o.extra.iter().map(|x| Point::new(i, x.clone()))),
                Part::Cantor(CantorPart::Point) => out.push(Point::generic(i)),
                Part::Cantor(_) => {}
            }
        }
        Some(out)
    }

    /// Number of points, `None` when infinite.
    pub fn cardinality(&self) -> Option<usize> {
        self.finite_points().map(|v| v.len())
    }
}
