//! ε-net certificates for level unions and the constructions that
//! approximate elements of the completions: flattening low levels into the
//! 0-level, freezing cuts below a level, and snapping cuts onto a finite
//! grid.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extreal::{Dist, ExtReal};
use crate::fuzzy::{check_level, equivalent, Leveled, SendoElement, StepFuzzySet};
use crate::interval::IntervalUnion;
use crate::metrics::{self, Metric, CHECK_TOL};
use crate::region::{farthest_point, point_set_hausdorff, point_to_region, Region};
use crate::space::{GroundSpace, Point};

fn same_spaces(u: &[SendoElement]) -> Result<()> {
    if let Some(first) = u.first() {
        if u.iter().any(|v| v.space() != first.space()) {
            return Err(Error::SpaceMismatch);
        }
    }
    Ok(())
}

/// `U(α) = ∪_{u ∈ U} [u]_α`, ghosts included at `α = 0`.
pub fn union_at_level(u: &[SendoElement], alpha: f64) -> Result<Region> {
    check_level(alpha)?;
    same_spaces(u)?;
    let first = u.first().ok_or(Error::EmptySet("collection"))?;
    let mut acc = Region::empty_in(first.space());
    for v in u {
        acc = acc.union(&v.level(alpha))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NetOutcome {
    /// Every point of the set lies within `ε` of a center.
    Covered,
    /// The set is unbounded, so no finite net exists at any radius.
    Unbounded,
}

/// A finite `ε`-net of a set, or a certified reason none exists.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetCertificate {
    pub alpha: Option<f64>,
    pub eps: f64,
    pub outcome: NetOutcome,
    #[serde(skip)]
    pub centers: Vec<Point>,
    pub center_text: Vec<String>,
    /// Largest distance from the set to the centers.
    pub coverage: Dist,
    pub set_text: String,
}

impl NetCertificate {
    pub fn success(&self) -> bool {
        self.outcome == NetOutcome::Covered && self.coverage.get() <= self.eps
    }
}

fn centers_region(centers: &[Point], space: &GroundSpace) -> Region {
    match space {
        GroundSpace::Finite(_) => Region::labels(centers.iter().filter_map(|p| match p {
            Point::Label(i) => Some(*i),
            _ => None,
        })),
        GroundSpace::Euclidean { .. } => Region::cloud(centers.iter().filter_map(|p| match p {
            Point::Coord(c) => Some(c.0.clone()),
            _ => None,
        })),
        GroundSpace::RealLine => Region::reals(centers.iter().filter_map(|p| match p {
            Point::Real(x) => Some(x.get()),
            _ => None,
        })),
    }
}

/// Greedy farthest-point `ε`-net of a nonempty set.
///
/// Starts from the least point and keeps adding the point of `s` farthest
/// from the current centers while that distance exceeds `ε`.
pub fn greedy_eps_net(s: &Region, eps: f64, space: &GroundSpace) -> Result<NetCertificate> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("ε = {eps} must be positive")));
    }
    if s.is_empty() {
        return Err(Error::EmptySet("set to cover"));
    }
    if !s.fits(space) {
        return Err(Error::KindMismatch("set does not belong to the ground space"));
    }
    let set_text = s.to_string();
    if !s.is_bounded() {
        return Ok(NetCertificate {
            alpha: None,
            eps,
            outcome: NetOutcome::Unbounded,
            centers: Vec::new(),
            center_text: Vec::new(),
            coverage: Dist::INF,
            set_text,
        });
    }
    let first = match s {
        Region::Line(u) => Point::Real(u.intervals()[0].lo),
        _ => s.points().expect("finite region").remove(0),
    };
    let mut centers = vec![first];
    let coverage = loop {
        let cr = centers_region(&centers, space);
        let (d, w) = farthest_point(s, &cr, space)?;
        match w {
            Some(p) if d.get() > eps => centers.push(p),
            _ => break d,
        }
    };
    Ok(NetCertificate {
        alpha: None,
        eps,
        outcome: NetOutcome::Covered,
        center_text: centers.iter().map(|p| p.to_string()).collect(),
        centers,
        coverage,
        set_text,
    })
}

/// Re-verifies a net without the Hausdorff machinery: exhaustive for finite
/// sets; for interval unions, the farthest point of each closed interval
/// from a sorted center list is an endpoint or a midpoint between
/// neighbouring centers.
pub fn verify_cover(s: &Region, centers: &[Point], eps: f64, space: &GroundSpace) -> Result<bool> {
    if centers.is_empty() {
        return Ok(s.is_empty());
    }
    match s {
        Region::Line(u) => {
            if !u.is_bounded() {
                return Ok(false);
            }
            let mut cs: Vec<f64> = centers
                .iter()
                .map(|p| match p {
                    Point::Real(x) => Ok(x.get()),
                    _ => Err(Error::KindMismatch("non-real center")),
                })
                .collect::<Result<_>>()?;
            cs.sort_by(f64::total_cmp);
            let near = |x: f64| cs.iter().map(|c| (x - c).abs()).fold(f64::INFINITY, f64::min);
            for iv in u.intervals() {
                let (lo, hi) = (iv.lo.get(), iv.hi.get());
                let mut probes = vec![lo, hi];
                for w in cs.windows(2) {
                    let m = 0.5 * (w[0] + w[1]);
                    if m > lo && m < hi {
                        probes.push(m);
                    }
                }
                if probes.into_iter().any(|x| near(x) > eps) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            for p in s.points().expect("finite region") {
                let mut best = f64::INFINITY;
                for c in centers {
                    best = best.min(space.distance(&p, c)?.get());
                }
                if best > eps {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundednessMode {
    /// `H_end`: every positive level union must be totally bounded.
    End,
    /// `H_send`: the 0-level union must be totally bounded.
    Send,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundednessReport {
    pub mode: BoundednessMode,
    pub eps: f64,
    pub certificates: Vec<NetCertificate>,
    /// All certificates succeed. A statement about this prefix at this
    /// resolution only.
    pub totally_bounded_at_eps: bool,
}

/// Per-level nets of `U(α)`. In `End` mode the levels must lie in `(0,1]`;
/// in `Send` mode only `α = 0` is examined.
pub fn total_boundedness_report(
    u: &[SendoElement],
    levels: &[f64],
    eps: f64,
    mode: BoundednessMode,
) -> Result<BoundednessReport> {
    same_spaces(u)?;
    let space = u.first().ok_or(Error::EmptySet("collection"))?.space();
    let levels: Vec<f64> = match mode {
        BoundednessMode::Send => vec![0.0],
        BoundednessMode::End => {
            if let Some(a) = levels.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
                return Err(Error::InvalidArgument(format!("level {a} outside (0,1]")));
            }
            levels.to_vec()
        }
    };
    let mut certificates = Vec::with_capacity(levels.len());
    for a in levels {
        let set = union_at_level(u, a)?;
        let mut c = greedy_eps_net(&set, eps, space)?;
        c.alpha = Some(a);
        certificates.push(c);
    }
    let totally_bounded_at_eps = certificates.iter().all(NetCertificate::success);
    Ok(BoundednessReport {
        mode,
        eps,
        certificates,
        totally_bounded_at_eps,
    })
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("ε = {eps} outside (0,1)")));
    }
    Ok(())
}

fn require_valid(r: crate::fuzzy::ValidationReport) -> Result<()> {
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidFuzzySet(r.to_string()))
    }
}

/// `u_ε`: the 0-level of `v` on `(0, ε]`, the cuts of `v` above `ε`.
/// Asserts `H_send(v, →u_ε) <= ε`.
pub fn flatten_below(v: &SendoElement, eps: f64) -> Result<StepFuzzySet> {
    check_eps(eps)?;
    require_valid(v.validate_uscb())?;
    let mut thresholds = vec![eps];
    let mut cuts = vec![v.zero_level()];
    for (i, &a) in v.thresholds().iter().enumerate() {
        if a > eps {
            thresholds.push(a);
            cuts.push(v.band_cut(i).clone());
        }
    }
    let u = StepFuzzySet::new(v.base().space_arc().clone(), thresholds, cuts)?;
    let d = metrics::send_metric(v, &u)?.value();
    if !d.le_tol(Dist::of(eps), CHECK_TOL) {
        return Err(Error::Postcondition(format!("H_send(v, u_ε) = {d} > ε = {eps}")));
    }
    Ok(u)
}

/// `u^ε`: the cuts of `u` above `ε`, frozen at `[u]_ε` below. Asserts
/// `H_end(u, u^ε) <= ε`.
pub fn truncate_above(u: &StepFuzzySet, eps: f64) -> Result<StepFuzzySet> {
    check_eps(eps)?;
    require_valid(u.validate())?;
    let k = u.band_of(eps).expect("ε in (0,1)");
    let frozen = u.band_cut(k);
    if !frozen.is_bounded() {
        return Err(Error::Domain(format!(
            "[u]_{eps} = {frozen} is unbounded, so u has a non-compact cut at a positive level"
        )));
    }
    let w = StepFuzzySet::new(
        u.space_arc().clone(),
        u.thresholds()[k..].to_vec(),
        u.cuts()[k..].to_vec(),
    )?;
    let d = metrics::end_metric(u, &w)?.value();
    if !d.le_tol(Dist::of(eps), CHECK_TOL) {
        return Err(Error::Postcondition(format!("H_end(u, u^ε) = {d} > ε = {eps}")));
    }
    Ok(w)
}

/// Builds a region of the same kind as `space` from points.
fn region_of_points(points: Vec<Point>, space: &GroundSpace) -> Region {
    centers_region(&points, space)
}

/// `w` over the finite set `C_0` with `[w]_α = {x ∈ C_0 : d(x, [v]_α) <= ε}`
/// on the ladder of `v`. Requires `H(C_0, [v]_0) < ε`; asserts that `w` is
/// valid and `d_∞(v, w) <= ε`.
pub fn project_to_grid(v: &StepFuzzySet, c0: &Region, eps: f64) -> Result<StepFuzzySet> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("ε = {eps} must be positive")));
    }
    require_valid(v.validate())?;
    let space = v.space();
    let grid = finite_points(c0)?;
    if grid.is_empty() {
        return Err(Error::EmptySet("grid"));
    }
    let h = point_set_hausdorff(c0, &v.support(), space)?;
    if !(h.get() < eps) {
        return Err(Error::Precondition(format!("H(C_0, [v]_0) = {h} is not below ε = {eps}")));
    }
    let mut cuts = Vec::with_capacity(v.num_bands());
    for i in 0..v.num_bands() {
        let target = v.band_cut(i);
        let mut keep = Vec::new();
        for p in &grid {
            if point_to_region(p, target, space)?.get() <= eps {
                keep.push(p.clone());
            }
        }
        cuts.push(region_of_points(keep, space));
    }
    let w = StepFuzzySet::from_parts(v.space_arc().clone(), v.thresholds().to_vec(), cuts);
    let rep = w.validate();
    if !rep.is_valid() {
        return Err(Error::Postcondition(format!("projected set is invalid: {rep}")));
    }
    let d = metrics::sup_metric(v, &w)?;
    if !d.le_tol(Dist::of(eps), CHECK_TOL) {
        return Err(Error::Postcondition(format!("d_inf(v, w) = {d} > ε = {eps}")));
    }
    Ok(w)
}

/// The points of a finite region; on the real line, a union of degenerate
/// intervals.
pub fn finite_points(r: &Region) -> Result<Vec<Point>> {
    match r {
        Region::Line(u) => u
            .intervals()
            .iter()
            .map(|iv| {
                if iv.lo == iv.hi && iv.lo.is_finite() {
                    Ok(Point::Real(iv.lo))
                } else {
                    Err(Error::InvalidArgument(format!("grid must be finite, found {iv}")))
                }
            })
            .collect(),
        _ => Ok(r.points().expect("finite region")),
    }
}

/// Pairwise distances of a finite collection under one metric, with the
/// pairs at distance 0 that are nonetheless different elements.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosednessReport {
    pub metric: String,
    pub matrix: Vec<Vec<Dist>>,
    pub collisions: Vec<(usize, usize)>,
}

pub fn closedness_within(u: &[SendoElement], metric: Metric) -> Result<ClosednessReport> {
    same_spaces(u)?;
    let n = u.len();
    let mut matrix = vec![vec![Dist::ZERO; n]; n];
    let mut collisions = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = metric.eval(&u[i], &u[j])?;
            matrix[i][j] = d;
            matrix[j][i] = d;
            if d.get() <= CHECK_TOL && !equivalent(&u[i], &u[j]) {
                collisions.push((i, j));
            }
        }
    }
    Ok(ClosednessReport {
        metric: metric.name(),
        matrix,
        collisions,
    })
}

/// Interval union of finitely many reals, for building grids.
pub fn real_grid<I: IntoIterator<Item = f64>>(points: I) -> Region {
    Region::Line(IntervalUnion::from_points(points))
}

/// `ExtReal` helper for callers building real points.
pub fn real(x: f64) -> Point {
    Point::Real(ExtReal::of(x))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::interval::Interval;

    fn line() -> Arc<GroundSpace> {
        Arc::new(GroundSpace::RealLine)
    }

    fn iv(lo: f64, hi: f64) -> Region {
        Region::Line(IntervalUnion::from_interval(Interval::closed(lo, hi)))
    }

    #[test]
    fn net_of_unit_interval() {
        let c = greedy_eps_net(&iv(0.0, 1.0), 0.3, &GroundSpace::RealLine).unwrap();
        assert!(c.success());
        assert!(c.centers.len() <= 3, "{:?}", c.center_text);
        assert!(verify_cover(&iv(0.0, 1.0), &c.centers, 0.3, &GroundSpace::RealLine).unwrap());
        let ray = Region::Line(IntervalUnion::from_interval(Interval::new(f64::NEG_INFINITY, 0.0, true, false)));
        let bad = greedy_eps_net(&ray, 1.0, &GroundSpace::RealLine).unwrap();
        assert_eq!(bad.outcome, NetOutcome::Unbounded);
        let one = greedy_eps_net(&Region::reals([2.0]), 0.1, &GroundSpace::RealLine).unwrap();
        assert_eq!(one.centers.len(), 1);
        assert_eq!(one.coverage, Dist::ZERO);
    }

    #[test]
    fn union_of_crisp_intervals() {
        let u: Vec<SendoElement> = [0.4, 0.7, 1.0]
            .iter()
            .map(|&x| StepFuzzySet::crisp(line(), iv(0.0, x)).unwrap().into())
            .collect();
        assert_eq!(union_at_level(&u, 0.5).unwrap(), iv(0.0, 1.0));
    }

    #[test]
    fn flatten_ghost_element() {
        let base = StepFuzzySet::crisp(line(), Region::reals([0.0])).unwrap();
        let w = SendoElement::new(base, Region::reals([1.0])).unwrap();
        let u = flatten_below(&w, 0.2).unwrap();
        assert_eq!(u.thresholds(), &[0.2, 1.0]);
        assert_eq!(u.cut(0.1).unwrap(), Region::reals([0.0, 1.0]));
        assert_eq!(u.cut(0.5).unwrap(), Region::reals([0.0]));
        assert_eq!(metrics::send_metric(&w, &u).unwrap().value(), Dist::of(0.2));
    }

    #[test]
    fn truncate_reciprocal_cuts() {
        let ladder: Vec<f64> = (1..=20).map(|k| k as f64 / 20.0).collect();
        let u = StepFuzzySet::from_cut_rule(line(), ladder, |a| iv(0.0, 1.0 / a)).unwrap();
        let t = truncate_above(&u, 0.5).unwrap();
        assert_eq!(t.support(), iv(0.0, 2.0));
        let whole = StepFuzzySet::new(
            line(),
            vec![0.5, 1.0],
            vec![Region::Line(IntervalUnion::real_line()), iv(0.0, 1.0)],
        )
        .unwrap();
        assert!(matches!(truncate_above(&whole, 0.25), Err(Error::Domain(_))));
    }

    #[test]
    fn grid_projection_worked_example() {
        let v = StepFuzzySet::crisp(line(), iv(0.0, 1.0)).unwrap();
        let c0 = real_grid([0.0, 0.25, 0.5, 0.75, 1.0]);
        let w = project_to_grid(&v, &c0, 0.3).unwrap();
        assert_eq!(w.cut(1.0).unwrap(), c0);
        assert_eq!(metrics::sup_metric(&v, &w).unwrap(), Dist::of(0.125));
        let two = StepFuzzySet::new(line(), vec![0.5, 1.0], vec![iv(0.0, 1.0), iv(0.4, 0.6)]).unwrap();
        let w2 = project_to_grid(&two, &c0, 0.3).unwrap();
        assert_eq!(w2.cut(1.0).unwrap(), real_grid([0.25, 0.5, 0.75]));
        assert!(matches!(project_to_grid(&v, &real_grid([0.0]), 0.3), Err(Error::Precondition(_))));
    }

    #[test]
    fn end_metric_collision() {
        let x = StepFuzzySet::crisp(line(), Region::reals([0.0])).unwrap();
        let with_ghost = SendoElement::new(x.clone(), Region::reals([2.0])).unwrap();
        let set = vec![SendoElement::from(x), with_ghost];
        let r = closedness_within(&set, Metric::HEnd).unwrap();
        assert_eq!(r.collisions, vec![(0, 1)]);
        let s = closedness_within(&set, Metric::HSend).unwrap();
        assert!(s.collisions.is_empty());
    }
}
