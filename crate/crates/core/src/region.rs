//! Closed sets of a ground space that the crate can represent exactly, and
//! Hausdorff distances between them.
//!
//! Finite spaces and point clouds carry finite point sets; the real line
//! carries interval unions (a finite point set there is a union of degenerate
//! intervals).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{Dist, ExtReal};
use crate::interval::IntervalUnion;
use crate::space::{Coord, GroundSpace, Point};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// Label indices of a finite space.
    Labels(BTreeSet<usize>),
    /// Finite subset of `R^m`.
    Cloud(BTreeSet<Coord>),
    Line(IntervalUnion),
}

impl Region {
    /// The empty set of the same kind as `space` expects.
    pub fn empty_in(space: &GroundSpace) -> Region {
        match space {
            GroundSpace::Finite(_) => Region::Labels(BTreeSet::new()),
            GroundSpace::Euclidean { .. } => Region::Cloud(BTreeSet::new()),
            GroundSpace::RealLine => Region::Line(IntervalUnion::empty()),
        }
    }

    pub fn labels<I: IntoIterator<Item = usize>>(it: I) -> Region {
        Region::Labels(it.into_iter().collect())
    }

    pub fn cloud<I: IntoIterator<Item = Vec<f64>>>(it: I) -> Region {
        Region::Cloud(it.into_iter().map(Coord).collect())
    }

    pub fn reals<I: IntoIterator<Item = f64>>(it: I) -> Region {
        Region::Line(IntervalUnion::from_points(it))
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Labels(s) => s.is_empty(),
            Region::Cloud(s) => s.is_empty(),
            Region::Line(u) => u.is_empty(),
        }
    }

    /// Whether this region's kind fits the space (and its points lie in it).
    pub fn fits(&self, space: &GroundSpace) -> bool {
        match (self, space) {
            (Region::Labels(s), GroundSpace::Finite(fs)) => s.iter().all(|&i| i < fs.len()),
            (Region::Cloud(s), GroundSpace::Euclidean { dim }) => s.iter().all(|c| c.dim() == *dim),
            (Region::Line(_), GroundSpace::RealLine) => true,
            _ => false,
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Region::Line(u) => u.is_closed(),
            _ => true,
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Region::Line(u) => u.is_bounded(),
            _ => true,
        }
    }

    /// Closed, bounded sets are exactly the compact ones in every supported
    /// space.
    pub fn is_compact(&self) -> bool {
        self.is_closed() && self.is_bounded()
    }

    pub fn closure(&self) -> Region {
        match self {
            Region::Line(u) => Region::Line(u.closure()),
            other => other.clone(),
        }
    }

    fn mismatch() -> Error {
        Error::KindMismatch("regions of different kinds")
    }

    pub fn union(&self, other: &Region) -> Result<Region> {
        Ok(match (self, other) {
            (Region::Labels(a), Region::Labels(b)) => Region::Labels(a | b),
            (Region::Cloud(a), Region::Cloud(b)) => Region::Cloud(a | b),
            (Region::Line(a), Region::Line(b)) => Region::Line(a.union(b)),
            _ => return Err(Self::mismatch()),
        })
    }

    pub fn intersection(&self, other: &Region) -> Result<Region> {
        Ok(match (self, other) {
            (Region::Labels(a), Region::Labels(b)) => Region::Labels(a & b),
            (Region::Cloud(a), Region::Cloud(b)) => Region::Cloud(a & b),
            (Region::Line(a), Region::Line(b)) => Region::Line(a.intersection(b)),
            _ => return Err(Self::mismatch()),
        })
    }

    pub fn difference(&self, other: &Region) -> Result<Region> {
        Ok(match (self, other) {
            (Region::Labels(a), Region::Labels(b)) => Region::Labels(a - b),
            (Region::Cloud(a), Region::Cloud(b)) => Region::Cloud(a - b),
            (Region::Line(a), Region::Line(b)) => Region::Line(a.difference(b)),
            _ => return Err(Self::mismatch()),
        })
    }

    pub fn is_subset(&self, other: &Region) -> Result<bool> {
        Ok(match (self, other) {
            (Region::Labels(a), Region::Labels(b)) => a.is_subset(b),
            (Region::Cloud(a), Region::Cloud(b)) => a.is_subset(b),
            (Region::Line(a), Region::Line(b)) => a.is_subset(b),
            _ => return Err(Self::mismatch()),
        })
    }

    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (Region::Labels(s), Point::Label(i)) => s.contains(i),
            (Region::Cloud(s), Point::Coord(c)) => s.contains(c),
            (Region::Line(u), Point::Real(x)) => u.contains(*x),
            _ => false,
        }
    }

    /// The points of a finite region (`None` for interval unions).
    pub fn points(&self) -> Option<Vec<Point>> {
        match self {
            Region::Labels(s) => Some(s.iter().map(|&i| Point::Label(i)).collect()),
            Region::Cloud(s) => Some(s.iter().cloned().map(Point::Coord).collect()),
            Region::Line(_) => None,
        }
    }

    pub fn as_line(&self) -> Option<&IntervalUnion> {
        match self {
            Region::Line(u) => Some(u),
            _ => None,
        }
    }

    /// Number of points for finite regions, number of intervals otherwise.
    pub fn size(&self) -> usize {
        match self {
            Region::Labels(s) => s.len(),
            Region::Cloud(s) => s.len(),
            Region::Line(u) => u.len(),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Labels(s) => {
                let v: Vec<String> = s.iter().map(|i| format!("#{i}")).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
            Region::Cloud(s) => {
                let v: Vec<String> = s.iter().map(|c| format!("{:?}", c.0)).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
            Region::Line(u) => write!(f, "{u}"),
        }
    }
}

/// Distance from `p` to a nonempty region.
pub fn point_to_region(p: &Point, b: &Region, space: &GroundSpace) -> Result<Dist> {
    if b.is_empty() {
        return Err(Error::EmptySet("point-to-set distance"));
    }
    match (p, b) {
        (Point::Real(x), Region::Line(u)) => u.distance_from(*x),
        (_, Region::Line(_)) => Err(Error::KindMismatch("non-real point against an interval union")),
        (_, _) => {
            let mut best = Dist::INF;
            for q in b.points().into_iter().flatten() {
                best = best.min(space.distance(p, &q)?);
            }
            Ok(best)
        }
    }
}

/// `H*(A, B) = max_{a in A} min_{b in B} d(a, b)`, exact.
pub fn point_set_directed_hausdorff(a: &Region, b: &Region, space: &GroundSpace) -> Result<Dist> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("directed Hausdorff distance"));
    }
    if !a.fits(space) || !b.fits(space) {
        return Err(Error::KindMismatch("set does not belong to the ground space"));
    }
    match (a, b) {
        (Region::Line(x), Region::Line(y)) => x.directed_hausdorff(y),
        (Region::Labels(x), Region::Labels(y)) => {
            let GroundSpace::Finite(fs) = space else {
                return Err(Error::KindMismatch("label set outside a finite space"));
            };
            let mut worst = 0.0f64;
            for &i in x {
                let near = y.iter().map(|&j| fs.distance(i, j)).fold(f64::INFINITY, f64::min);
                worst = worst.max(near);
            }
            Ok(Dist::of(worst))
        }
        (Region::Cloud(x), Region::Cloud(y)) => {
            let mut worst = 0.0f64;
            for p in x {
                let near = y.iter().map(|q| p.euclid(q)).fold(f64::INFINITY, f64::min);
                worst = worst.max(near);
            }
            Ok(Dist::of(worst))
        }
        _ => Err(Error::KindMismatch("regions of different kinds")),
    }
}

/// `H(A, B) = max{H*(A,B), H*(B,A)}`.
pub fn point_set_hausdorff(a: &Region, b: &Region, space: &GroundSpace) -> Result<Dist> {
    Ok(point_set_directed_hausdorff(a, b, space)?.max(point_set_directed_hausdorff(b, a, space)?))
}

/// Directed Hausdorff distance with a witness point of `A` (or of its
/// closure) attaining it. `None` when the value is `+inf`.
pub fn farthest_point(a: &Region, b: &Region, space: &GroundSpace) -> Result<(Dist, Option<Point>)> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("directed Hausdorff distance"));
    }
    match (a, b) {
        (Region::Line(x), Region::Line(y)) => {
            let (d, w) = x.directed_hausdorff_witness(y)?;
            Ok((d, w.map(|t| Point::Real(ExtReal::of(t)))))
        }
        _ => {
            let mut best: (Dist, Option<Point>) = (Dist::ZERO, None);
            for p in a.points().into_iter().flatten() {
                let d = point_to_region(&p, b, space)?;
                if best.1.is_none() || d > best.0 {
                    best = (d, Some(p));
                }
            }
            Ok(best)
        }
    }
}
