//! Ground metric spaces and the product metric on `X x [0,1]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{Dist, ExtReal};

/// Slack allowed when checking the triangle inequality of a distance table;
/// tables are written in decimal, so sums of entries carry rounding.
const TRIANGLE_SLACK: f64 = 1e-12;

/// A finite metric space given by labels and a symmetric distance table.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    table: Vec<Vec<f64>>,
}

impl FiniteSpace {
    /// Validates the table eagerly: square, finite, zero diagonal, positive
    /// off-diagonal, symmetric, and satisfying the triangle inequality.
    pub fn new(labels: Vec<String>, table: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidSpace("a metric space needs at least one point".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidSpace(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSpace(format!("distance table must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let d = table[i][j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidSpace(format!(
                        "d({},{}) = {d} is not a finite nonnegative number",
                        labels[i], labels[j]
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidSpace(format!("d({0},{0}) must be 0", labels[i])));
                }
                if i != j && d == 0.0 {
                    return Err(Error::InvalidSpace(format!(
                        "distinct points {} and {} at distance 0",
                        labels[i], labels[j]
                    )));
                }
                if d != table[j][i] {
                    return Err(Error::InvalidSpace(format!(
                        "table is not symmetric at ({},{})",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = table[i][k];
                    let rhs = table[i][j] + table[j][k];
                    if lhs > rhs + TRIANGLE_SLACK * rhs.max(1.0) {
                        return Err(Error::InvalidSpace(format!(
                            "triangle inequality fails: d({a},{c}) = {lhs} > d({a},{b}) + d({b},{c}) = {rhs}",
                            a = labels[i],
                            b = labels[j],
                            c = labels[k]
                        )));
                    }
                }
            }
        }
        Ok(FiniteSpace { labels, table })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<f64>] {
        &self.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.table[i][j]
    }
}

/// A point of `R^m`, ordered lexicographically (total order on the bits so
/// point sets dedupe exactly).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coord(pub Vec<f64>);

impl Coord {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn euclid(&self, other: &Coord) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

impl Eq for Coord {}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.total_cmp(b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

/// The carrier `X` with its metric `d`.
#[derive(Clone, Debug, PartialEq)]
pub enum GroundSpace {
    Finite(FiniteSpace),
    Euclidean { dim: usize },
    /// The real line; coordinates are extended reals and `|x - y|` may be
    /// `+inf`.
    RealLine,
}

impl GroundSpace {
    pub fn finite(labels: Vec<String>, table: Vec<Vec<f64>>) -> Result<Self> {
        FiniteSpace::new(labels, table).map(GroundSpace::Finite)
    }

    /// A finite space whose points are the given reals with `|x - y|`.
    pub fn finite_from_reals(points: &[f64]) -> Result<Self> {
        let labels = points.iter().map(|x| format!("{x}")).collect();
        let table = points
            .iter()
            .map(|x| points.iter().map(|y| (x - y).abs()).collect())
            .collect();
        Self::finite(labels, table)
    }

    pub fn euclidean(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpace("Euclidean dimension must be positive".into()));
        }
        Ok(GroundSpace::Euclidean { dim })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroundSpace::Finite(_) => "finite",
            GroundSpace::Euclidean { .. } => "euclidean",
            GroundSpace::RealLine => "real-line",
        }
    }

    /// Distance between two points of this space.
    pub fn distance(&self, p: &Point, q: &Point) -> Result<Dist> {
        match (self, p, q) {
            (GroundSpace::Finite(fs), Point::Label(i), Point::Label(j)) => {
                if *i >= fs.len() || *j >= fs.len() {
                    return Err(Error::KindMismatch("label index outside the finite space"));
                }
                Ok(Dist::of(fs.distance(*i, *j)))
            }
            (GroundSpace::Euclidean { dim }, Point::Coord(a), Point::Coord(b)) => {
                if a.dim() != *dim || b.dim() != *dim {
                    return Err(Error::KindMismatch("coordinate dimension differs from the space"));
                }
                Ok(Dist::of(a.euclid(b)))
            }
            (GroundSpace::RealLine, Point::Real(a), Point::Real(b)) => Ok(a.abs_diff(*b)),
            _ => Err(Error::KindMismatch("point kind does not belong to this space")),
        }
    }
}

/// A point of some ground space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Label(usize),
    Coord(Coord),
    Real(ExtReal),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Label(i) => write!(f, "#{i}"),
            Point::Coord(c) => write!(f, "{:?}", c.0),
            Point::Real(x) => write!(f, "{x}"),
        }
    }
}

/// A point `(x, alpha)` of `X x [0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPoint {
    pub base: Point,
    height: f64,
}

impl ProductPoint {
    pub fn new(base: Point, height: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&height) {
            return Err(Error::InvalidArgument(format!("height {height} outside [0,1]")));
        }
        Ok(ProductPoint { base, height })
    }

    pub fn height(&self) -> f64 {
        self.height
    }
}

/// The product metric `d(x,y) + |alpha - beta|` on `X x [0,1]`.
pub fn product_distance(p: &ProductPoint, q: &ProductPoint, space: &GroundSpace) -> Result<Dist> {
    Ok(space.distance(&p.base, &q.base)? + Dist::of((p.height - q.height).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> Point {
        Point::Real(ExtReal::of(x))
    }

    #[test]
    fn product_distance_examples() {
        let line = GroundSpace::RealLine;
        let p = |x, h| ProductPoint::new(real(x), h).unwrap();
        assert_eq!(product_distance(&p(0.3, 0.5), &p(0.3, 0.5), &line).unwrap(), Dist::ZERO);
        assert_eq!(product_distance(&p(0.0, 0.0), &p(1.0, 1.0), &line).unwrap(), Dist::of(2.0));
        assert_eq!(product_distance(&p(0.0, 0.25), &p(0.5, 0.75), &line).unwrap(), Dist::of(1.0));
    }

    #[test]
    fn product_distance_rejects_foreign_points() {
        let e2 = GroundSpace::euclidean(2).unwrap();
        let p = ProductPoint::new(real(0.0), 0.0).unwrap();
        assert!(product_distance(&p, &p, &e2).is_err());
        assert!(ProductPoint::new(real(0.0), 1.5).is_err());
    }

    #[test]
    fn finite_table_validation() {
        let l = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert!(GroundSpace::finite(l(&["a", "b"]), vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        // asymmetric
        assert!(GroundSpace::finite(l(&["a", "b"]), vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        // nonzero diagonal
        assert!(GroundSpace::finite(l(&["a", "b"]), vec![vec![0.5, 1.0], vec![1.0, 0.0]]).is_err());
        // triangle
        let t = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        let err = GroundSpace::finite(l(&["a", "b", "c"]), t).unwrap_err();
        assert!(err.to_string().contains("triangle"));
        // decimal rounding is tolerated
        assert!(GroundSpace::finite_from_reals(&[0.0, 0.1, 0.3]).is_ok());
    }

    #[test]
    fn infinite_real_points() {
        let line = GroundSpace::RealLine;
        let d = line
            .distance(&Point::Real(ExtReal::NEG_INF), &real(0.0))
            .unwrap();
        assert_eq!(d, Dist::INF);
    }
}
