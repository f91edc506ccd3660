use serde::{Deserialize, Serialize};

use super::{Domain, Overring};
use crate::error::Result;
use crate::space::{Region, SetDescriptor};

/// An ideal known only through which maximal ideals contain it: entries are
/// applied in order, later ones overriding earlier ones, and every point not
/// mentioned has value 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSketch {
    pub entries: Vec<(SetDescriptor, u32)>,
}

impl IdealSketch {
    pub fn new(entries: Vec<(SetDescriptor, u32)>) -> Self {
        IdealSketch { entries }
    }

    /// The maximal ideals containing the ideal.
    pub fn support(&self, d: &Domain) -> Result<Region> {
        let space = d.space();
        let mut s = Region::empty(space);
        for (desc, v) in &self.entries {
            let r = desc.to_region(space)?;
            s = if *v > 0 { s.union(&r, space) } else { s.difference(&r, space) };
        }
        Ok(s.intersect(d.base(), space))
    }
}

/// Whether `JT != T`, i.e. some maximal ideal over `J` survives in `T`.
pub fn ideal_survives(d: &Domain, j: &IdealSketch, t: &Overring) -> Result<bool> {
    d.check(t)?;
    Ok(!j.support(d)?.is_disjoint(t.support(), d.space()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use crate::space::{Atom, Piece, Point, PresentedSpace};

    fn domain() -> Domain {
        Domain::sequence(PresentedSpace::single(Atom::interval(2u64, 1)).unwrap())
    }

    #[test]
    fn survival_on_isolated_point() {
        let d = domain();
        let p = Point::new(0, 3u64);
        let j = IdealSketch::new(vec![(SetDescriptor::single(0, Piece::FinitePoints { points: vec![3u64.into()] }), 1)]);
        assert!(ideal_survives(&d, &j, &d.localization(&p).unwrap()).unwrap());
        let other = d.localization(&Point::new(0, 4u64)).unwrap();
        assert!(!ideal_survives(&d, &j, &other).unwrap());
    }

    #[test]
    fn survival_on_level() {
        let d = domain();
        let lvl = SetDescriptor::single(0, Piece::Level { j: Ordinal::one() });
        let j = IdealSketch::new(vec![(lvl.clone(), 2)]);
        let t1 = d.sublocalization_desc(&lvl).unwrap();
        assert!(ideal_survives(&d, &j, &t1).unwrap());
    }

    #[test]
    fn later_entries_override() {
        let d = domain();
        let all = SetDescriptor::single(0, Piece::All);
        let lvl = SetDescriptor::single(0, Piece::Level { j: Ordinal::one() });
        let j = IdealSketch::new(vec![(all, 1), (lvl.clone(), 0)]);
        let t1 = d.sublocalization_desc(&lvl).unwrap();
        assert!(!ideal_survives(&d, &j, &t1).unwrap());
        assert!(ideal_survives(&d, &j, &d.whole()).unwrap());
    }
}
