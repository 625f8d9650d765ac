//! Built-in sequence families, generated per index.
//!
//! Families whose cuts vary continuously with the level are discretized by
//! right-endpoint sampling on a ladder containing every level the checks
//! read (band edges of all members up to `max_n`), so cuts at those levels
//! are exact. The true 0-level is kept as a ghost when sampling loses it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::{SendoElement, StepFuzzySet};
use crate::interval::{Interval, IntervalUnion};
use crate::region::Region;
use crate::space::GroundSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `u_n`: 1 at 0, `1/n` on `(0,1]`; limit `0̂`.
    Remark45,
    /// Two-point space `{0,1}`: `u_n(0) = 1`, `u_n(1) = 1/n`; limit has
    /// `{0}` at every positive level and a ghost at 1.
    Nce,
    /// `[u]_α = [0,1]` up to `1/2`, `{0}` above; `u_n` moves the step to
    /// `1/2 - 1/n`.
    PlatformFail,
    /// Cuts `(-inf, (1 - c)/(α - c)]` above `c`, the whole line below, with
    /// `c = 1/3` for the limit and `c_n = (n-1)/(3n)` for `u_n`.
    Snc,
    /// `[u]_α = {1} ∪ (-inf, -1/(1-α)]`, `[u]_1 = {1}`; `u_n` freezes the
    /// cuts above `1 - 1/n`.
    Fnc,
    /// `[u]_α = [0, 1/α]`; `u_n` adds `n²` to the right end for `α <= 1/n`.
    Snp,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Remark45,
        FamilyKind::Nce,
        FamilyKind::PlatformFail,
        FamilyKind::Snc,
        FamilyKind::Fnc,
        FamilyKind::Snp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            FamilyKind::Remark45 => "remark45",
            FamilyKind::Nce => "nce",
            FamilyKind::PlatformFail => "platform-fail",
            FamilyKind::Snc => "snc",
            FamilyKind::Fnc => "fnc",
            FamilyKind::Snp => "snp",
        }
    }

    /// Whether members are sampled from a continuum of levels.
    pub fn is_discretized(self) -> bool {
        matches!(self, FamilyKind::Snc | FamilyKind::Fnc | FamilyKind::Snp)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.id()).collect();
                Error::InvalidArgument(format!("unknown family {s:?}; known: {}", ids.join(", ")))
            })
    }
}

/// A family instance: kind, the largest index it will be asked for, and the
/// sampling resolution for discretized kinds.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub kind: FamilyKind,
    pub max_n: usize,
    /// Uniform ladder size for discretized kinds.
    pub levels: usize,
    /// Levels added to the ladder so that cuts there are exact.
    pub extra_levels: Vec<f64>,
}

fn closed(lo: f64, hi: f64) -> Region {
    Region::Line(IntervalUnion::from_interval(Interval::closed(lo, hi)))
}

fn left_ray(hi: f64) -> Region {
    Region::Line(IntervalUnion::from_interval(Interval::new(f64::NEG_INFINITY, hi, true, false)))
}

fn whole_line() -> Region {
    Region::Line(IntervalUnion::real_line())
}

fn two_level(space: &Arc<GroundSpace>, low: f64, wide: Region, narrow: Region) -> Result<StepFuzzySet> {
    if low <= 0.0 {
        return StepFuzzySet::crisp(space.clone(), narrow);
    }
    if low >= 1.0 {
        return StepFuzzySet::crisp(space.clone(), wide);
    }
    StepFuzzySet::new(space.clone(), vec![low, 1.0], vec![wide, narrow])
}

fn snc_cut(c: f64, alpha: f64) -> Region {
    if alpha <= c {
        whole_line()
    } else {
        left_ray((1.0 - c) / (alpha - c))
    }
}

fn fnc_cut(alpha: f64) -> Region {
    if alpha >= 1.0 {
        return Region::reals([1.0]);
    }
    left_ray(-1.0 / (1.0 - alpha))
        .union(&Region::reals([1.0]))
        .expect("same kind")
}

fn snp_cut(n: Option<usize>, alpha: f64) -> Region {
    if alpha <= 0.0 {
        return Region::Line(IntervalUnion::from_interval(Interval::new(0.0, f64::INFINITY, false, true)));
    }
    let bump = match n {
        Some(n) if alpha <= 1.0 / n as f64 => (n * n) as f64,
        _ => 0.0,
    };
    closed(0.0, 1.0 / alpha + bump)
}

/// Right-endpoint sampling of `rule` on `ladder`, keeping `rule(0)` as a
/// ghost when the sampled support misses part of it.
pub fn discretize<F>(space: Arc<GroundSpace>, ladder: &[f64], rule: F) -> Result<SendoElement>
where
    F: Fn(f64) -> Region,
{
    let cuts: Vec<Region> = ladder.iter().map(|&a| rule(a)).collect();
    let support = cuts[0].closure();
    let base = StepFuzzySet::new(space, ladder.to_vec(), cuts)?;
    let zero = rule(0.0);
    if zero.is_subset(&support)? {
        Ok(SendoElement::arrow_forward(&base))
    } else {
        SendoElement::new(base, zero)
    }
}

/// `{k/m : 1 <= k <= m}` merged with `extra ∩ (0,1)`.
pub fn uniform_ladder(m: usize, extra: &[f64]) -> Vec<f64> {
    let mut t: Vec<f64> = (1..=m).map(|k| k as f64 / m as f64).collect();
    t.extend(extra.iter().copied().filter(|&a| a > 0.0 && a < 1.0));
    t.sort_by(f64::total_cmp);
    t.dedup();
    t
}

impl Family {
    pub fn new(kind: FamilyKind, max_n: usize) -> Self {
        let levels = match kind {
            FamilyKind::Snp => 512,
            FamilyKind::Snc | FamilyKind::Fnc => 400,
            _ => 0,
        };
        Family {
            kind,
            max_n: max_n.max(1),
            levels,
            extra_levels: Vec::new(),
        }
    }

    pub fn with_levels(mut self, m: usize) -> Self {
        self.levels = m;
        self
    }

    pub fn with_extra_levels(mut self, extra: &[f64]) -> Self {
        self.extra_levels.extend_from_slice(extra);
        self
    }

    pub fn id(&self) -> &'static str {
        self.kind.id()
    }

    pub fn space(&self) -> Arc<GroundSpace> {
        match self.kind {
            FamilyKind::Nce => Arc::new(GroundSpace::finite_from_reals(&[0.0, 1.0]).expect("two-point space")),
            _ => Arc::new(GroundSpace::RealLine),
        }
    }

    /// The shared ladder of a discretized family.
    pub fn ladder(&self) -> Vec<f64> {
        let mut extra = self.extra_levels.clone();
        match self.kind {
            FamilyKind::Snc => {
                extra.push(1.0 / 3.0);
                extra.extend((1..=self.max_n).map(|n| snc_step(n)));
            }
            FamilyKind::Fnc => extra.extend((1..=self.max_n).map(|n| 1.0 - 1.0 / n as f64)),
            _ => {}
        }
        uniform_ladder(self.levels.max(1), &extra)
    }

    fn check_index(&self, n: usize) -> Result<()> {
        if n == 0 || (self.kind.is_discretized() && n > self.max_n) {
            return Err(Error::InvalidArgument(format!(
                "index {n} outside 1..={} for family {}",
                self.max_n,
                self.id()
            )));
        }
        Ok(())
    }

    pub fn member(&self, n: usize) -> Result<SendoElement> {
        self.check_index(n)?;
        let sp = self.space();
        let inv = 1.0 / n as f64;
        Ok(match self.kind {
            FamilyKind::Remark45 => two_level(&sp, inv, closed(0.0, 1.0), Region::reals([0.0]))?.into(),
            FamilyKind::Nce => two_level(&sp, inv, Region::labels([0, 1]), Region::labels([0]))?.into(),
            FamilyKind::PlatformFail => {
                two_level(&sp, 0.5 - inv, closed(0.0, 1.0), Region::reals([0.0]))?.into()
            }
            FamilyKind::Snc => {
                let c = snc_step(n);
                discretize(sp, &self.ladder(), |a| snc_cut(c, a))?
            }
            FamilyKind::Fnc => {
                let top = 1.0 - inv;
                discretize(sp, &self.ladder(), |a| fnc_cut(a.min(top)))?
            }
            FamilyKind::Snp => discretize(sp, &self.ladder(), |a| snp_cut(Some(n), a))?,
        })
    }

    pub fn limit(&self) -> Result<SendoElement> {
        let sp = self.space();
        Ok(match self.kind {
            FamilyKind::Remark45 => StepFuzzySet::crisp(sp, Region::reals([0.0]))?.into(),
            FamilyKind::Nce => {
                let base = StepFuzzySet::crisp(sp, Region::labels([0]))?;
                SendoElement::new(base, Region::labels([1]))?
            }
            FamilyKind::PlatformFail => two_level(&sp, 0.5, closed(0.0, 1.0), Region::reals([0.0]))?.into(),
            FamilyKind::Snc => discretize(sp, &self.ladder(), |a| snc_cut(1.0 / 3.0, a))?,
            FamilyKind::Fnc => discretize(sp, &self.ladder(), fnc_cut)?,
            FamilyKind::Snp => discretize(sp, &self.ladder(), |a| snp_cut(None, a))?,
        })
    }

    pub fn members(&self, indices: &[usize]) -> Result<Vec<(usize, SendoElement)>> {
        indices.iter().map(|&n| Ok((n, self.member(n)?))).collect()
    }
}

/// `c_n = (n-1)/(3n)`.
pub fn snc_step(n: usize) -> f64 {
    (n - 1) as f64 / (3 * n) as f64
}
