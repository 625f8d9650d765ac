//! Exact `H_send`, `H_end`, `d_∞` and `d_p` between level-structured sets.
//!
//! Graph metrics use the height reduction: a point `(x, t)` of the graph of
//! `u` is at distance `min_y [d(x,y) + max(0, t - v(y))]` from the
//! sendograph of `v`, nondecreasing in `t`; so only band-top heights matter.
//! The endograph version is additionally capped by `t` (the zero slab).

use std::sync::Arc;

use serde::Serialize;

use crate::envelope::PiecewiseLinear;
use crate::error::{Error, Result};
use crate::extreal::Dist;
use crate::fuzzy::{same_space, Leveled, SendoElement, StepFuzzySet};
use crate::region::{point_set_directed_hausdorff, point_set_hausdorff, Region};
use crate::space::{GroundSpace, Point};

/// Distances are compared with this absolute tolerance in self-checks.
pub const CHECK_TOL: f64 = 1e-12;

/// A distance with its two directed halves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Directed {
    /// `H*(graph u, graph v)`.
    pub forward: Dist,
    /// `H*(graph v, graph u)`.
    pub backward: Dist,
}

impl Directed {
    pub fn value(&self) -> Dist {
        self.forward.max(self.backward)
    }
}

fn check_pair<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<()> {
    if !same_space(u, v) {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

/// Points of `<u>_0` with their membership heights (ghost points at 0).
fn heights<A: Leveled + ?Sized>(u: &A) -> Vec<(Point, f64)> {
    let zero = u.zero_level();
    let t = u.thresholds();
    zero.points()
        .unwrap_or_default()
        .into_iter()
        .map(|p| {
            let mut h = 0.0;
            for (i, &a) in t.iter().enumerate() {
                if u.band_cut(i).contains(&p) {
                    h = a;
                } else {
                    break;
                }
            }
            (p, h)
        })
        .collect()
}

fn finite_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B, capped: bool) -> Result<Dist> {
    let space = u.space();
    let pu = heights(u);
    let pv = heights(v);
    let mut worst = Dist::ZERO;
    for (x, hx) in &pu {
        if capped && Dist::of(*hx) <= worst {
            continue;
        }
        let mut best = Dist::INF;
        for (y, hy) in &pv {
            let d = space.distance(x, y)? + Dist::of((hx - hy).max(0.0));
            best = best.min(d);
        }
        let val = if capped { best.min(Dist::of(*hx)) } else { best };
        worst = worst.max(val);
    }
    Ok(worst)
}

fn line_of(r: &Region) -> Result<&crate::interval::IntervalUnion> {
    r.as_line()
        .ok_or(Error::KindMismatch("real-line set expected"))
}

fn line_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B, capped: bool) -> Result<Dist> {
    let vzero = v.zero_level();
    let vt = v.thresholds();
    let mut dist_fns: Vec<Option<PiecewiseLinear>> = vec![None; vt.len() + 1];
    let mut worst = Dist::ZERO;
    if !capped {
        worst = point_set_directed_hausdorff(&u.zero_level(), &vzero, u.space())?;
    }
    for (i, &a) in u.thresholds().iter().enumerate() {
        if capped && Dist::of(a) <= worst {
            continue;
        }
        let c_i = line_of(u.band_cut(i))?;
        // First band of v whose top reaches a: reaching it costs nothing and
        // its cut contains every higher one.
        let jstar = vt.partition_point(|&b| b < a);
        let mut env: Option<PiecewiseLinear> = None;
        let mut sup = Dist::INF;
        for jj in (0..=jstar + 1).rev() {
            let b = if jj == 0 { 0.0 } else { vt[jj - 1] };
            let c = (a - b).max(0.0);
            if env.is_some() && (Dist::of(c) >= sup || (capped && c >= a)) {
                break;
            }
            if dist_fns[jj].is_none() {
                let d = if jj == 0 { &vzero } else { v.band_cut(jj - 1) };
                dist_fns[jj] = Some(PiecewiseLinear::distance_to(line_of(d)?));
            }
            let g = dist_fns[jj].as_ref().unwrap().add_constant(c);
            let e = match env {
                Some(e) => e.min(&g),
                None => g,
            };
            sup = e.sup_over(c_i);
            env = Some(e);
            if sup == Dist::ZERO {
                break;
            }
        }
        let val = if capped { sup.min(Dist::of(a)) } else { sup };
        worst = worst.max(val);
    }
    Ok(worst)
}

fn graph_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B, capped: bool) -> Result<Dist> {
    check_pair(u, v)?;
    match u.space() {
        GroundSpace::RealLine => line_directed(u, v, capped),
        _ => finite_directed(u, v, capped),
    }
}

/// `H*(send u, send v)`.
pub fn send_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Dist> {
    graph_directed(u, v, false)
}

/// `H*(end u, end v)`; at most 1.
pub fn end_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Dist> {
    graph_directed(u, v, true)
}

pub fn send_metric<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Directed> {
    Ok(Directed {
        forward: send_directed(u, v)?,
        backward: send_directed(v, u)?,
    })
}

pub fn end_metric<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Directed> {
    Ok(Directed {
        forward: end_directed(u, v)?,
        backward: end_directed(v, u)?,
    })
}

/// `H(<u>_0, <v>_0)`.
pub fn zero_distance<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Directed> {
    check_pair(u, v)?;
    let (a, b) = (u.zero_level(), v.zero_level());
    Ok(Directed {
        forward: point_set_directed_hausdorff(&a, &b, u.space())?,
        backward: point_set_directed_hausdorff(&b, &a, u.space())?,
    })
}

/// `H*([u]_α, [v]_β)`.
pub fn cut_directed<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, alpha: f64, v: &B, beta: f64) -> Result<Dist> {
    check_pair(u, v)?;
    crate::fuzzy::check_level(alpha)?;
    crate::fuzzy::check_level(beta)?;
    point_set_directed_hausdorff(&u.level(alpha), &v.level(beta), u.space())
}

/// `H([u]_α, [v]_α)` on one band `(lo, hi]` of the merged ladder.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelBand {
    pub lo: f64,
    pub hi: f64,
    pub dist: Dist,
}

/// The level-distance function `α -> H([u]_α, [v]_α)`, which is constant on
/// each band of the merged ladder, together with its value at 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelProfile {
    pub at_zero: Dist,
    pub bands: Vec<LevelBand>,
}

impl LevelProfile {
    pub fn at(&self, alpha: f64) -> Dist {
        if alpha <= 0.0 {
            return self.at_zero;
        }
        self.bands
            .iter()
            .find(|b| alpha <= b.hi)
            .map_or(Dist::ZERO, |b| b.dist)
    }

    pub fn sup(&self) -> Dist {
        self.bands.iter().fold(self.at_zero, |m, b| m.max(b.dist))
    }

    /// `(∫_0^1 f^p)^{1/p}` for the step function `f`, computed as
    /// `M (∫ (f/M)^p)^{1/p}` with `M` the largest band value, and never above
    /// `M`.
    pub fn lp(&self, p: f64) -> Result<Dist> {
        check_p(p)?;
        let wide = || self.bands.iter().filter(|b| b.hi > b.lo);
        let m = wide().fold(Dist::ZERO, |m, b| m.max(b.dist));
        if m.is_infinite() {
            return Ok(Dist::INF);
        }
        if m == Dist::ZERO {
            return Ok(Dist::ZERO);
        }
        let top = m.get();
        let sum: f64 = wide().map(|b| (b.dist.get() / top).powf(p) * (b.hi - b.lo)).sum();
        Ok(Dist::of((top * sum.powf(1.0 / p)).min(top)))
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("p = {p}; need a finite p >= 1")));
    }
    Ok(())
}

pub fn merged_ladder(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut t: Vec<f64> = a.iter().chain(b).copied().collect();
    t.sort_by(f64::total_cmp);
    t.dedup();
    t
}

pub fn level_profile<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<LevelProfile> {
    check_pair(u, v)?;
    let space = u.space();
    let at_zero = point_set_hausdorff(&u.zero_level(), &v.zero_level(), space)?;
    let mut bands = Vec::new();
    let mut lo = 0.0;
    for t in merged_ladder(u.thresholds(), v.thresholds()) {
        let dist = point_set_hausdorff(&u.level(t), &v.level(t), space)?;
        bands.push(LevelBand { lo, hi: t, dist });
        lo = t;
    }
    Ok(LevelProfile { at_zero, bands })
}

/// `d_∞(u, v) = sup_α H([u]_α, [v]_α)`.
pub fn sup_metric<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B) -> Result<Dist> {
    Ok(level_profile(u, v)?.sup())
}

/// `d_p(u, v)`, `p >= 1`. Level distances of step sets are step functions,
/// so this is also `d_p*`.
pub fn dp_metric<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B, p: f64) -> Result<Dist> {
    check_p(p)?;
    level_profile(u, v)?.lp(p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricReport {
    pub d_inf: Dist,
    pub h_send: Directed,
    pub h_end: Directed,
    pub h_zero: Directed,
    /// `(p, d_p)` for each requested `p`.
    pub d_p: Vec<(f64, Dist)>,
}

impl MetricReport {
    pub fn compute<A: Leveled + ?Sized, B: Leveled + ?Sized>(u: &A, v: &B, ps: &[f64]) -> Result<Self> {
        let profile = level_profile(u, v)?;
        let d_p = ps
            .iter()
            .map(|&p| Ok((p, profile.lp(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MetricReport {
            d_inf: profile.sup(),
            h_send: send_metric(u, v)?,
            h_end: end_metric(u, v)?,
            h_zero: zero_distance(u, v)?,
            d_p,
        })
    }

    /// Violated links of the inequality chain, empty when all hold within
    /// `tol`.
    pub fn chain_violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        let (send, end, zero) = (self.h_send.value(), self.h_end.value(), self.h_zero.value());
        let mut need = |ok: bool, what: String| {
            if !ok {
                out.push(what);
            }
        };
        need(send.le_tol(self.d_inf, tol), format!("H_send {send} > d_inf {}", self.d_inf));
        need(end.le_tol(send, tol), format!("H_end {end} > H_send {send}"));
        need(zero.le_tol(send, tol), format!("H_0 {zero} > H_send {send}"));
        need(end.le_tol(Dist::of(1.0), tol), format!("H_end {end} > 1"));
        if end < Dist::of(1.0) {
            need(
                send.le_tol(end + zero, tol),
                format!("H_send {send} > H_end {end} + H_0 {zero}"),
            );
        }
        for (p, d) in &self.d_p {
            need(d.le_tol(self.d_inf, tol), format!("d_{p} {d} > d_inf {}", self.d_inf));
        }
        out
    }
}

/// Result of `d_p` on step approximations of two cut oracles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleEstimate {
    /// `d_p` at `m` levels.
    pub value: Dist,
    /// `d_p` at `2m` levels.
    pub refined: Dist,
    /// `|value - refined|`; `+inf` when exactly one of them is infinite.
    pub error_estimate: Dist,
}

/// Step approximation of a level -> cut oracle on the uniform ladder
/// `k/m`, taking the cut at the right end of each band. When `ghost` is
/// given it is added at level 0, so the approximation keeps the oracle's
/// 0-level even if the cuts grow without bound as the level falls to 0.
pub fn sample_oracle<F>(space: Arc<GroundSpace>, oracle: F, m: usize, ghost: Option<Region>) -> Result<SendoElement>
where
    F: Fn(f64) -> Region,
{
    if m < 1 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    let top = oracle(1.0);
    if top.is_empty() {
        return Err(Error::Domain("oracle returned an empty cut at level 1".into()));
    }
    let thresholds: Vec<f64> = (1..=m).map(|k| k as f64 / m as f64).collect();
    let cuts = thresholds[..m - 1].iter().map(|&a| oracle(a)).chain([top]).collect();
    let base = StepFuzzySet::new(space.clone(), thresholds, cuts)?;
    match ghost {
        Some(g) => SendoElement::new(base, g),
        None => Ok(SendoElement::arrow_forward(&base)),
    }
}

/// `d_p` between two oracle-defined sets, with a refinement error estimate.
pub fn dp_via_oracle<F, G>(space: Arc<GroundSpace>, u: F, v: G, p: f64, m: usize) -> Result<OracleEstimate>
where
    F: Fn(f64) -> Region,
    G: Fn(f64) -> Region,
{
    check_p(p)?;
    if m < 2 {
        return Err(Error::InvalidArgument(format!("m = {m}; need at least 2 levels")));
    }
    let run = |k: usize| -> Result<Dist> {
        let a = sample_oracle(space.clone(), &u, k, None)?;
        let b = sample_oracle(space.clone(), &v, k, None)?;
        let prof = level_profile(&a, &b)?;
        prof.lp(p)
    };
    let value = run(m)?;
    let refined = run(2 * m)?;
    let error_estimate = match (value.is_finite(), refined.is_finite()) {
        (true, true) => Dist::of((value.get() - refined.get()).abs()),
        (false, false) => Dist::ZERO,
        _ => Dist::INF,
    };
    Ok(OracleEstimate {
        value,
        refined,
        error_estimate,
    })
}

/// Both sides of the level-shift bound
/// `H*([u]_α, [v]_β) <= H*(end u, end v)` for `α - β >= ε`, which is
/// claimed when `H*(end u, end v) < ε`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AenReport {
    pub cut_directed: Dist,
    pub end_directed: Dist,
    pub hypothesis: bool,
    pub holds: bool,
}

pub fn aen_bound_check<A: Leveled + ?Sized, B: Leveled + ?Sized>(
    u: &A,
    v: &B,
    alpha: f64,
    beta: f64,
    eps: f64,
) -> Result<AenReport> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(format!("ε = {eps} outside (0,1]")));
    }
    if !(alpha - beta >= eps) {
        return Err(Error::InvalidArgument(format!(
            "need α - β >= ε, got α = {alpha}, β = {beta}, ε = {eps}"
        )));
    }
    let cut = cut_directed(u, alpha, v, beta)?;
    let end = end_directed(u, v)?;
    let hypothesis = end < Dist::of(eps);
    Ok(AenReport {
        cut_directed: cut,
        end_directed: end,
        hypothesis,
        holds: !hypothesis || cut.le_tol(end, CHECK_TOL),
    })
}

/// A metric selector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Metric {
    HEnd,
    HSend,
    DInf,
    Dp(f64),
}

impl Metric {
    /// Parses `hend`, `hsend`, `dinf` or `dp` (the latter with `p`).
    pub fn parse(name: &str, p: Option<f64>) -> Result<Metric> {
        Ok(match name {
            "hend" => Metric::HEnd,
            "hsend" => Metric::HSend,
            "dinf" => Metric::DInf,
            "dp" => {
                let p = p.unwrap_or(1.0);
                check_p(p)?;
                Metric::Dp(p)
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown metric {other:?}; expected hend, hsend, dinf or dp"
                )))
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            Metric::HEnd => "hend".into(),
            Metric::HSend => "hsend".into(),
            Metric::DInf => "dinf".into(),
            Metric::Dp(p) => format!("d{p}"),
        }
    }

    pub fn eval<A: Leveled + ?Sized, B: Leveled + ?Sized>(&self, u: &A, v: &B) -> Result<Dist> {
        match self {
            Metric::HEnd => Ok(end_metric(u, v)?.value()),
            Metric::HSend => Ok(send_metric(u, v)?.value()),
            Metric::DInf => sup_metric(u, v),
            Metric::Dp(p) => dp_metric(u, v, *p),
        }
    }
}
