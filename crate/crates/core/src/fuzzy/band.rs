use super::check_level;
use super::validate::{self, ValidationReport};
use crate::error::{Error, Result};
use crate::interval::IntervalUnion;
use crate::region::Region;

/// A piecewise-constant fuzzy set on the real line: value `a_i` on piece
/// `P_i`, 0 elsewhere. Pieces need not be closed, so the set need not be
/// upper semicontinuous; only cut queries and level classification apply.
#[derive(Clone, Debug, PartialEq)]
pub struct BandFuzzySet {
    pieces: Vec<(IntervalUnion, f64)>,
    normal: bool,
}

impl BandFuzzySet {
    pub fn from_parts(pieces: Vec<(IntervalUnion, f64)>, normal: bool) -> Self {
        BandFuzzySet { pieces, normal }
    }

    pub fn new(pieces: Vec<(IntervalUnion, f64)>, normal: bool) -> Result<Self> {
        let u = Self::from_parts(pieces, normal);
        let r = u.validate();
        if r.is_valid() {
            Ok(u)
        } else {
            Err(Error::InvalidFuzzySet(r.to_string()))
        }
    }

    pub fn pieces(&self) -> &[(IntervalUnion, f64)] {
        &self.pieces
    }

    pub fn claims_normal(&self) -> bool {
        self.normal
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate_band(self)
    }

    fn union_where(&self, keep: impl Fn(f64) -> bool) -> IntervalUnion {
        self.pieces
            .iter()
            .filter(|(_, a)| keep(*a))
            .fold(IntervalUnion::empty(), |acc, (p, _)| acc.union(p))
    }

    /// `[u]_α`; at `α = 0` the closed support.
    pub fn cut(&self, alpha: f64) -> Result<Region> {
        check_level(alpha)?;
        if alpha == 0.0 {
            return Ok(Region::Line(self.union_where(|_| true).closure()));
        }
        Ok(Region::Line(self.union_where(|a| a >= alpha)))
    }

    /// `{u > α}`.
    pub fn strict_cut(&self, alpha: f64) -> Result<Region> {
        check_level(alpha)?;
        Ok(Region::Line(self.union_where(|a| a > alpha)))
    }

    /// The distinct values taken, in increasing order.
    pub fn values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.pieces.iter().map(|(_, a)| *a).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    pub fn membership(&self, x: f64) -> f64 {
        let x = crate::extreal::ExtReal::of(x);
        self.pieces
            .iter()
            .find(|(p, _)| p.contains(x))
            .map_or(0.0, |(_, a)| *a)
    }
}
