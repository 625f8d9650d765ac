use std::sync::Arc;

use super::validate::{self, ValidationReport};
use super::{check_level, Leveled};
use crate::error::{Error, Result};
use crate::region::Region;
use crate::space::{GroundSpace, Point};

/// A fuzzy set with finitely many membership values.
///
/// Thresholds `0 < a_1 < ... < a_k = 1`, cuts `C_1 ⊇ ... ⊇ C_k`; the α-cut
/// is `C_i` for `α ∈ (a_{i-1}, a_i]` (`a_0 = 0`) and `[u]_0 = cl(C_1)`.
/// The 0-cut is always derived, never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFuzzySet {
    space: Arc<GroundSpace>,
    thresholds: Vec<f64>,
    cuts: Vec<Region>,
}

impl StepFuzzySet {
    /// Assembles a set without checking it. Use [`StepFuzzySet::validate`]
    /// before handing the result to anything but the validator.
    pub fn from_parts(space: Arc<GroundSpace>, thresholds: Vec<f64>, cuts: Vec<Region>) -> Self {
        StepFuzzySet {
            space,
            thresholds,
            cuts,
        }
    }

    /// Assembles and validates.
    pub fn new(space: Arc<GroundSpace>, thresholds: Vec<f64>, cuts: Vec<Region>) -> Result<Self> {
        let u = Self::from_parts(space, thresholds, cuts);
        let report = u.validate();
        if report.is_valid() {
            Ok(u)
        } else {
            Err(Error::InvalidFuzzySet(report.to_string()))
        }
    }

    /// The crisp set `χ_S`.
    pub fn crisp(space: Arc<GroundSpace>, s: Region) -> Result<Self> {
        Self::new(space, vec![1.0], vec![s])
    }

    /// `x̂ = χ_{x}`.
    pub fn singleton(space: Arc<GroundSpace>, x: Point) -> Result<Self> {
        let s = match &x {
            Point::Label(i) => Region::labels([*i]),
            Point::Coord(c) => Region::cloud([c.0.clone()]),
            Point::Real(r) => Region::reals([r.get()]),
        };
        Self::crisp(space, s)
    }

    /// Step set from a level → cut rule sampled at the right end of each
    /// band of `thresholds`.
    pub fn from_cut_rule<F>(space: Arc<GroundSpace>, thresholds: Vec<f64>, mut rule: F) -> Result<Self>
    where
        F: FnMut(f64) -> Region,
    {
        let cuts = thresholds.iter().map(|&a| rule(a)).collect();
        Self::new(space, thresholds, cuts)
    }

    pub fn space_arc(&self) -> &Arc<GroundSpace> {
        &self.space
    }

    pub fn cuts(&self) -> &[Region] {
        &self.cuts
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate_step(self)
    }

    /// `[u]_α` for `α ∈ [0,1]`.
    pub fn cut(&self, alpha: f64) -> Result<Region> {
        check_level(alpha)?;
        Ok(self.level(alpha))
    }

    /// `{u > α}`.
    pub fn strict_cut(&self, alpha: f64) -> Result<Region> {
        check_level(alpha)?;
        let i = self.thresholds.partition_point(|&a| a <= alpha);
        Ok(match self.cuts.get(i) {
            Some(c) => c.clone(),
            None => Region::empty_in(&self.space),
        })
    }

    pub fn support(&self) -> Region {
        self.cuts[0].closure()
    }

    /// Membership `u(x)`: the largest threshold whose cut contains `x`.
    pub fn membership(&self, x: &Point) -> f64 {
        let mut m = 0.0;
        for (a, c) in self.thresholds.iter().zip(&self.cuts) {
            if c.contains(x) {
                m = *a;
            } else {
                break;
            }
        }
        m
    }

    /// Whether every cut (hence the support) is bounded. For step sets this
    /// is both the USCB and the USCG condition, as `[u]_0 = C_1`.
    pub fn has_compact_support(&self) -> bool {
        self.cuts.first().is_some_and(Region::is_compact)
    }

    /// Drops thresholds whose cut equals the next one.
    pub fn canonical(&self) -> StepFuzzySet {
        let mut thresholds = Vec::with_capacity(self.thresholds.len());
        let mut cuts: Vec<Region> = Vec::with_capacity(self.cuts.len());
        for (k, (a, c)) in self.thresholds.iter().zip(&self.cuts).enumerate() {
            if self.cuts.get(k + 1) == Some(c) {
                continue;
            }
            thresholds.push(*a);
            cuts.push(c.clone());
        }
        StepFuzzySet {
            space: self.space.clone(),
            thresholds,
            cuts,
        }
    }
}

impl Leveled for StepFuzzySet {
    fn space(&self) -> &GroundSpace {
        &self.space
    }

    fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    fn band_cut(&self, i: usize) -> &Region {
        &self.cuts[i]
    }

    fn zero_level(&self) -> Region {
        self.support()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::ExtReal;
    use crate::interval::{Interval, IntervalUnion};

    fn line() -> Arc<GroundSpace> {
        Arc::new(GroundSpace::RealLine)
    }

    /// 1 at 0, 1/n at 1.
    fn two_point(n: u32) -> StepFuzzySet {
        let a = 1.0 / n as f64;
        if n == 1 {
            return StepFuzzySet::new(line(), vec![1.0], vec![Region::reals([0.0, 1.0])]).unwrap();
        }
        StepFuzzySet::new(line(), vec![a, 1.0], vec![Region::reals([0.0, 1.0]), Region::reals([0.0])])
            .unwrap()
    }

    #[test]
    fn singleton_cuts() {
        let x = StepFuzzySet::singleton(line(), Point::Real(ExtReal::of(2.0))).unwrap();
        assert_eq!(x.cut(0.7).unwrap(), Region::reals([2.0]));
        assert!(x.strict_cut(1.0).unwrap().is_empty());
        assert_eq!(x.cut(0.0).unwrap(), Region::reals([2.0]));
    }

    #[test]
    fn two_point_cuts_around_threshold() {
        let u = two_point(4);
        assert_eq!(u.cut(0.25).unwrap(), Region::reals([0.0, 1.0]));
        assert_eq!(u.cut(0.25 + 1e-12).unwrap(), Region::reals([0.0]));
        assert_eq!(u.strict_cut(0.25).unwrap(), Region::reals([0.0]));
        assert_eq!(u.strict_cut(0.0).unwrap(), Region::reals([0.0, 1.0]));
        assert_eq!(u.membership(&Point::Real(ExtReal::of(1.0))), 0.25);
        assert_eq!(u.membership(&Point::Real(ExtReal::of(0.5))), 0.0);
    }

    #[test]
    fn support_is_closure_of_first_cut() {
        let cut = Region::Line(IntervalUnion::from_intervals([Interval::new(0.0, 1.0, true, false)]));
        let top = Region::reals([1.0]);
        // (0,1] is not closed, so this is not admissible as a USC cut; the
        // derived support still closes it.
        let u = StepFuzzySet::from_parts(line(), vec![0.5, 1.0], vec![cut, top]);
        assert!(!u.validate().is_valid());
        assert_eq!(u.support(), Region::Line(IntervalUnion::from_interval(Interval::closed(0.0, 1.0))));
    }

    #[test]
    fn out_of_range_levels() {
        let u = two_point(2);
        assert!(u.cut(1.5).is_err());
        assert!(u.strict_cut(-0.1).is_err());
    }

    #[test]
    fn canonical_merges_equal_bands() {
        let s = Region::reals([0.0]);
        let u = StepFuzzySet::new(line(), vec![0.3, 0.6, 1.0], vec![s.clone(), s.clone(), s]).unwrap();
        let c = u.canonical();
        assert_eq!(c.thresholds(), &[1.0]);
        assert_eq!(c.cut(0.1).unwrap(), u.cut(0.1).unwrap());
    }
}
