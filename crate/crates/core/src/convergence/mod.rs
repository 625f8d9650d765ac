//! Finite-prefix diagnostics for sequences of fuzzy sets.
//!
//! A prefix cannot decide a limit. Every verdict here is a statement about
//! the computed indices only and says so ("diagnostic at N"): it compares
//! the last quartile of the trajectory (the tail) with its beginning.

pub mod families;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::Dist;
use crate::fuzzy::{classify_levels, CutQueries, Leveled, SendoElement};
use crate::metrics::{self, MetricReport};
use crate::region::{point_set_directed_hausdorff, point_set_hausdorff, Region};
use crate::space::GroundSpace;

pub use families::{Family, FamilyKind};

/// Default vanishing tolerance for exactly computed trajectories.
pub const EXACT_TOL: f64 = 1e-9;

/// Trend of a trajectory over a finite index prefix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    /// Tail max below the tolerance.
    Vanishing,
    /// Tail non-increasing and at most a quarter of the head max.
    Decaying,
    /// Neither vanishing, decaying nor divergent.
    Persistent,
    /// Tail infinite, or strictly above the head max and non-decreasing.
    Divergent,
}

impl Trend {
    pub fn name(self) -> &'static str {
        match self {
            Trend::Vanishing => "vanishing",
            Trend::Decaying => "decaying",
            Trend::Persistent => "persistent",
            Trend::Divergent => "divergent",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub trend: Trend,
    /// Largest index computed.
    pub at_n: usize,
    pub head_max: Dist,
    pub tail_max: Dist,
    pub tail_min: Dist,
}

impl Verdict {
    /// Vanishing or decaying at the computed resolution.
    pub fn tail_vanishes(&self) -> bool {
        matches!(self.trend, Trend::Vanishing | Trend::Decaying)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "diagnostic at N={}: {} (head max {}, tail max {})",
            self.at_n,
            self.trend.name(),
            self.head_max,
            self.tail_max
        )
    }
}

/// Judges a trajectory given as `(n, value)` pairs in increasing `n`.
pub fn judge(values: &[(usize, Dist)], tol: f64) -> Verdict {
    let k = values.len();
    let at_n = values.last().map_or(0, |v| v.0);
    if k == 0 {
        return Verdict {
            trend: Trend::Vanishing,
            at_n,
            head_max: Dist::ZERO,
            tail_max: Dist::ZERO,
            tail_min: Dist::ZERO,
        };
    }
    let tail_len = k.div_ceil(4).max(1);
    let (head, tail) = values.split_at(k - tail_len);
    let head: &[(usize, Dist)] = if head.is_empty() { &values[..1] } else { head };
    let max = |s: &[(usize, Dist)]| s.iter().fold(Dist::ZERO, |m, v| m.max(v.1));
    let head_max = max(head);
    let tail_max = max(tail);
    let tail_min = tail.iter().fold(Dist::INF, |m, v| m.min(v.1));
    let non_increasing = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    let non_decreasing = tail.windows(2).all(|w| w[1].1 >= w[0].1);
    let trend = if tail_max.get() < tol {
        Trend::Vanishing
    } else if tail_max.is_infinite() || (tail_min > head_max && non_decreasing) {
        Trend::Divergent
    } else if non_increasing && tail_max.get() <= 0.25 * head_max.get() {
        Trend::Decaying
    } else {
        Trend::Persistent
    };
    Verdict {
        trend,
        at_n,
        head_max,
        tail_max,
        tail_min,
    }
}

pub type Members = [(usize, SendoElement)];

fn check_members(members: &Members, u: &SendoElement) -> Result<()> {
    for (n, m) in members {
        if !crate::fuzzy::same_space(m, u) {
            return Err(Error::InvalidArgument(format!("member {n} lives in another space")));
        }
    }
    Ok(())
}

/// One row of a metric trajectory.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrajectoryRow {
    pub n: usize,
    pub report: MetricReport,
}

/// Metric trajectories of `u_n` against `u`, with verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SequenceDiagnostics {
    pub rows: Vec<TrajectoryRow>,
    pub h_send: Verdict,
    pub h_end: Verdict,
    pub h_zero: Verdict,
    pub d_inf: Verdict,
    /// `(p, verdict)` per requested `p`.
    pub d_p: Vec<(f64, Verdict)>,
}

impl SequenceDiagnostics {
    pub fn series(&self, pick: impl Fn(&MetricReport) -> Dist) -> Vec<(usize, Dist)> {
        self.rows.iter().map(|r| (r.n, pick(&r.report))).collect()
    }

    /// Implications that must hold between the verdicts: a vanishing `H_send`
    /// forces vanishing `H_end` and `H_0`; a vanishing `d_p` forces a
    /// vanishing `H_end`. Returns the violated ones.
    pub fn implication_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.h_send.tail_vanishes() {
            if !self.h_end.tail_vanishes() {
                out.push(format!("H_send vanishes but H_end is {}", self.h_end.trend.name()));
            }
            if !self.h_zero.tail_vanishes() {
                out.push(format!("H_send vanishes but H_0 is {}", self.h_zero.trend.name()));
            }
        }
        for (p, v) in &self.d_p {
            if v.tail_vanishes() && !self.h_end.tail_vanishes() {
                out.push(format!("d_{p} vanishes but H_end is {}", self.h_end.trend.name()));
            }
        }
        out
    }
}

/// Computes every metric of `u_n` against `u` for the given members.
pub fn metric_trajectory(members: &Members, u: &SendoElement, ps: &[f64], tol: f64) -> Result<SequenceDiagnostics> {
    check_members(members, u)?;
    let rows = members
        .iter()
        .map(|(n, m)| {
            Ok(TrajectoryRow {
                n: *n,
                report: MetricReport::compute(m, u, ps)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(diagnostics_from_rows(rows, ps, tol))
}

/// Verdicts over precomputed rows (rows may be computed in parallel).
pub fn diagnostics_from_rows(mut rows: Vec<TrajectoryRow>, ps: &[f64], tol: f64) -> SequenceDiagnostics {
    rows.sort_by_key(|r| r.n);
    let series = |pick: &dyn Fn(&MetricReport) -> Dist| -> Vec<(usize, Dist)> {
        rows.iter().map(|r| (r.n, pick(&r.report))).collect()
    };
    let h_send = judge(&series(&|r| r.h_send.value()), tol);
    let h_end = judge(&series(&|r| r.h_end.value()), tol);
    let h_zero = judge(&series(&|r| r.h_zero.value()), tol);
    let d_inf = judge(&series(&|r| r.d_inf), tol);
    let d_p = ps
        .iter()
        .map(|&p| {
            let s = series(&|r| r.d_p.iter().find(|(q, _)| *q == p).map_or(Dist::INF, |x| x.1));
            (p, judge(&s, tol))
        })
        .collect();
    SequenceDiagnostics {
        rows,
        h_send,
        h_end,
        h_zero,
        d_inf,
        d_p,
    }
}

/// `H([u_n]_α, [u]_α)` along `n` for one level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelTrajectory {
    pub alpha: f64,
    pub values: Vec<(usize, Dist)>,
    pub verdict: Verdict,
    /// Whether `α ∈ P_0(u)`.
    pub in_p0: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelDecomposition {
    pub levels: Vec<LevelTrajectory>,
}

impl LevelDecomposition {
    /// Levels whose trajectory does not tail-vanish.
    pub fn flagged(&self) -> Vec<f64> {
        self.levels
            .iter()
            .filter(|l| !l.verdict.tail_vanishes())
            .map(|l| l.alpha)
            .collect()
    }

    /// Flagged levels outside `P_0(u)`. When `H_end(u_n, u) -> 0` this must
    /// be empty.
    pub fn unexplained(&self) -> Vec<f64> {
        self.levels
            .iter()
            .filter(|l| !l.verdict.tail_vanishes() && !l.in_p0)
            .map(|l| l.alpha)
            .collect()
    }
}

/// Per-level cut distances of `u_n` against `u`.
pub fn level_decomposition_test(
    members: &Members,
    u: &SendoElement,
    levels: &[f64],
    tol: f64,
) -> Result<LevelDecomposition> {
    check_members(members, u)?;
    let p0 = classify_levels(u).p0;
    let space = u.space();
    let mut out = Vec::with_capacity(levels.len());
    for &alpha in levels {
        crate::fuzzy::check_level(alpha)?;
        let target = u.level(alpha);
        let values = members
            .iter()
            .map(|(n, m)| Ok((*n, point_set_hausdorff(&m.level(alpha), &target, space)?)))
            .collect::<Result<Vec<_>>>()?;
        out.push(LevelTrajectory {
            alpha,
            verdict: judge(&values, tol),
            values,
            in_p0: p0.contains(crate::extreal::ExtReal::of(alpha)),
        });
    }
    Ok(LevelDecomposition { levels: out })
}

/// Inclusion residuals for `{u > α} ⊆ liminf [u_n]_α ⊆ limsup [u_n]_α ⊆ [u]_α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaResidual {
    pub alpha: f64,
    /// `H*(cl{u > α}, [u_n]_α)`; 0 when the strict cut is empty.
    pub inner: Vec<(usize, Dist)>,
    /// `H*([u_n]_α, [u]_α)`.
    pub outer: Vec<(usize, Dist)>,
    pub inner_verdict: Verdict,
    /// Infimum of the outer residual over the tail window; a limsup
    /// inclusion needs this to vanish, not the residual itself.
    pub outer_tail_inf: Dist,
    pub outer_verdict: Verdict,
}

fn directed_or_zero(a: &Region, b: &Region, space: &GroundSpace) -> Result<Dist> {
    if a.is_empty() {
        return Ok(Dist::ZERO);
    }
    point_set_directed_hausdorff(a, b, space)
}

pub fn gamma_residuals(members: &Members, u: &SendoElement, levels: &[f64], tol: f64) -> Result<Vec<GammaResidual>> {
    check_members(members, u)?;
    let space = u.space();
    let mut out = Vec::new();
    for &alpha in levels {
        crate::fuzzy::check_level(alpha)?;
        let strict = u.strict_cut_at(alpha).closure();
        let cut = u.level(alpha);
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        for (n, m) in members {
            let c = m.level(alpha);
            inner.push((*n, directed_or_zero(&strict, &c, space)?));
            outer.push((*n, point_set_directed_hausdorff(&c, &cut, space)?));
        }
        let outer_verdict = judge(&outer, tol);
        out.push(GammaResidual {
            alpha,
            inner_verdict: judge(&inner, tol),
            outer_tail_inf: outer_verdict.tail_min,
            outer_verdict,
            inner,
            outer,
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecompositionRow {
    pub n: usize,
    pub h_send: Dist,
    pub h_end: Dist,
    pub h_zero: Dist,
    /// `H_send <= H_end + H_0`, checked only when `H_end < 1`.
    pub bound_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub rows: Vec<DecompositionRow>,
    pub h_send: Verdict,
    pub h_end: Verdict,
    pub h_zero: Verdict,
}

impl Decomposition {
    pub fn bound_failures(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| r.bound_holds == Some(false))
            .map(|r| r.n)
            .collect()
    }
}

/// `H_send` against `H_end + H_0` along the sequence.
pub fn decomposition_trajectory(members: &Members, u: &SendoElement, tol: f64) -> Result<Decomposition> {
    check_members(members, u)?;
    let mut rows = Vec::new();
    for (n, m) in members {
        let h_send = metrics::send_metric(m, u)?.value();
        let h_end = metrics::end_metric(m, u)?.value();
        let h_zero = metrics::zero_distance(m, u)?.value();
        let bound_holds = (h_end < Dist::of(1.0)).then(|| h_send.le_tol(h_end + h_zero, metrics::CHECK_TOL));
        rows.push(DecompositionRow {
            n: *n,
            h_send,
            h_end,
            h_zero,
            bound_holds,
        });
    }
    let s = |f: fn(&DecompositionRow) -> Dist| rows.iter().map(|r| (r.n, f(r))).collect::<Vec<_>>();
    Ok(Decomposition {
        h_send: judge(&s(|r| r.h_send), tol),
        h_end: judge(&s(|r| r.h_end), tol),
        h_zero: judge(&s(|r| r.h_zero), tol),
        rows,
    })
}

/// `δ -> max_n H([u_n]_δ, [u_n]_0)`.
pub fn equi_rc_modulus(members: &Members, deltas: &[f64]) -> Result<Vec<(f64, Dist)>> {
    let mut out = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidArgument(format!("δ = {delta} outside (0,1]")));
        }
        let mut worst = Dist::ZERO;
        for (_, m) in members {
            worst = worst.max(point_set_hausdorff(&m.level(delta), &m.zero_level(), m.space())?);
        }
        out.push((delta, worst));
    }
    Ok(out)
}

/// Whether the modulus curve dips below `eps` somewhere.
pub fn equi_rc_at(modulus: &[(f64, Dist)], eps: f64) -> Option<f64> {
    modulus
        .iter()
        .filter(|(_, d)| d.get() < eps)
        .map(|(delta, _)| *delta)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))))
}

/// Prefix unions `D_n = C_1 ∪ ... ∪ C_n` and their distance to `D_N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyUnion {
    #[serde(skip)]
    pub limit: Region,
    pub limit_text: String,
    /// `H(D_n, D_N)` for `n = 1..N`.
    pub stabilization: Vec<Dist>,
}

pub fn cauchy_union_limit(sets: &[Region], space: &GroundSpace) -> Result<CauchyUnion> {
    if sets.is_empty() {
        return Err(Error::EmptySet("sequence of sets"));
    }
    let mut prefixes = Vec::with_capacity(sets.len());
    let mut acc: Option<Region> = None;
    for s in sets {
        if s.is_empty() {
            return Err(Error::EmptySet("member of the sequence"));
        }
        let next = match acc {
            None => s.closure(),
            Some(a) => a.union(&s.closure())?,
        };
        prefixes.push(next.clone());
        acc = Some(next);
    }
    let limit = acc.expect("nonempty");
    let stabilization = prefixes
        .iter()
        .map(|d| point_set_hausdorff(d, &limit, space))
        .collect::<Result<Vec<_>>>()?;
    Ok(CauchyUnion {
        limit_text: limit.to_string(),
        limit,
        stabilization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{Interval, IntervalUnion};

    #[test]
    fn verdicts() {
        let decay: Vec<(usize, Dist)> = (1..=20).map(|n| (n, Dist::of(1.0 / n as f64))).collect();
        assert_eq!(judge(&decay, EXACT_TOL).trend, Trend::Decaying);
        let zero: Vec<(usize, Dist)> = (1..=8).map(|n| (n, Dist::ZERO)).collect();
        assert_eq!(judge(&zero, EXACT_TOL).trend, Trend::Vanishing);
        let grow: Vec<(usize, Dist)> = (1..=8).map(|n| (n, Dist::of(n as f64))).collect();
        assert_eq!(judge(&grow, EXACT_TOL).trend, Trend::Divergent);
        let flat: Vec<(usize, Dist)> = (1..=8).map(|n| (n, Dist::of(1.0))).collect();
        assert_eq!(judge(&flat, EXACT_TOL).trend, Trend::Persistent);
        assert!(judge(&decay, EXACT_TOL).to_string().starts_with("diagnostic at N=20"));
    }

    #[test]
    fn cauchy_union_of_points() {
        let line = GroundSpace::RealLine;
        let sets: Vec<Region> = (1..=5).map(|n| Region::reals([0.0, 1.0 - 1.0 / n as f64])).collect();
        let c = cauchy_union_limit(&sets, &line).unwrap();
        for (k, d) in c.stabilization.iter().enumerate() {
            let n = (k + 1) as f64;
            assert!(d.approx_eq(Dist::of(1.0 / n - 1.0 / 5.0), 1e-12), "n={n}: {d}");
        }
        let iv: Vec<Region> = (1..=4)
            .map(|n| Region::Line(IntervalUnion::from_interval(Interval::closed(0.0, 1.0 - 1.0 / n as f64))))
            .collect();
        let c = cauchy_union_limit(&iv, &line).unwrap();
        assert!(c.stabilization[1].approx_eq(Dist::of(0.25), 1e-12));
    }

    #[test]
    fn ghost_family_modulus() {
        let f = Family::new(FamilyKind::Nce, 10);
        let members = f.members(&(1..=10).collect::<Vec<_>>()).unwrap();
        let m = equi_rc_modulus(&members, &[0.05, 0.1, 0.2, 0.5]).unwrap();
        assert_eq!(m[0].1, Dist::ZERO);
        assert_eq!(m[1].1, Dist::ZERO);
        assert_eq!(m[2].1, Dist::of(1.0));
        assert_eq!(m[3].1, Dist::of(1.0));
    }
}
