//! Finitely represented fuzzy sets and elements of the `P^1` spaces.
//!
//! * [`StepFuzzySet`]: finitely many levels; the α-cut is constant on each
//!   half-open band `(a_{i-1}, a_i]`.
//! * [`SendoElement`]: a step set plus a "ghost" closed set at level 0, i.e.
//!   an element of `P^1_USC` that need not be a sendograph.
//! * [`BandFuzzySet`]: a piecewise-constant membership function on the real
//!   line, not necessarily upper semicontinuous. Only the cut and level-set
//!   queries accept it.

mod band;
mod levels;
mod sendo;
mod step;
mod validate;

pub use band::BandFuzzySet;
pub use levels::{classify_levels, CutQueries, LevelSetReport};
pub use sendo::{is_arrow_image, ArrowImageReport, SendoElement};
pub use step::StepFuzzySet;
pub use validate::{canonical_violation, Clause, ValidationReport, Violation};

use crate::error::{Error, Result};
use crate::region::Region;
use crate::space::GroundSpace;

/// Anything described by a threshold ladder `0 < a_1 < ... < a_k = 1` with a
/// nested cut per band and a closed level-0 set.
///
/// This is the input type of every metric: step sets and `P^1` elements
/// implement it, non-USC band sets do not.
pub trait Leveled {
    fn space(&self) -> &GroundSpace;

    fn thresholds(&self) -> &[f64];

    /// Cut on band `i`, i.e. on `(a_{i-1}, a_i]`.
    fn band_cut(&self, i: usize) -> &Region;

    /// `<v>_0`: the closed support, together with any ghost.
    fn zero_level(&self) -> Region;

    /// Index of the band containing `alpha` in `(0, 1]`.
    fn band_of(&self, alpha: f64) -> Option<usize> {
        if alpha <= 0.0 || alpha > 1.0 {
            return None;
        }
        let t = self.thresholds();
        let i = t.partition_point(|&a| a < alpha);
        (i < t.len()).then_some(i)
    }

    /// The level set at `alpha in [0, 1]`.
    fn level(&self, alpha: f64) -> Region {
        if alpha <= 0.0 {
            return self.zero_level();
        }
        match self.band_of(alpha) {
            Some(i) => self.band_cut(i).clone(),
            None => Region::empty_in(self.space()),
        }
    }

    fn num_bands(&self) -> usize {
        self.thresholds().len()
    }
}

pub(crate) fn check_level(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("level {alpha} outside [0,1]")));
    }
    Ok(())
}

/// Whether two objects live over the same ground space.
pub fn same_space<A: Leveled + ?Sized, B: Leveled + ?Sized>(a: &A, b: &B) -> bool {
    a.space() == b.space()
}

/// Whether two objects have the same level sets at every level in `[0,1]`.
pub fn equivalent<A: Leveled + ?Sized, B: Leveled + ?Sized>(a: &A, b: &B) -> bool {
    if !same_space(a, b) || a.zero_level() != b.zero_level() {
        return false;
    }
    let mut ladder: Vec<f64> = a.thresholds().iter().chain(b.thresholds()).copied().collect();
    ladder.sort_by(f64::total_cmp);
    ladder.dedup();
    ladder.iter().all(|&t| a.level(t) == b.level(t))
}
