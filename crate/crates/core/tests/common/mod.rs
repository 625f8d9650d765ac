//! Random instances and brute-force oracles shared by the test targets.
#![allow(dead_code)]

use std::sync::Arc;

use endograph::fuzzy::{SendoElement, StepFuzzySet};
use endograph::{GroundSpace, Interval, IntervalUnion, Region};
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Finite,
    Cloud,
    Line,
}

pub const BACKENDS: [Backend; 3] = [Backend::Finite, Backend::Cloud, Backend::Line];

/// Closed intervals `(lo, hi)`, `lo` may be `-inf` and `hi` `+inf`.
pub type Spans = Vec<(f64, f64)>;

/// A real-line instance kept as raw data so oracles need not trust the
/// library's cut queries.
#[derive(Clone, Debug)]
pub struct LineSpec {
    pub thresholds: Vec<f64>,
    /// `cuts[i]` is the cut on band `i`, lowest band first.
    pub cuts: Vec<Spans>,
    pub ghost: Spans,
}

fn spans_region(s: &Spans) -> Region {
    Region::Line(IntervalUnion::from_intervals(s.iter().map(|&(a, b)| {
        Interval::new(a, b, a == f64::NEG_INFINITY, b == f64::INFINITY)
    })))
}

impl LineSpec {
    pub fn element(&self) -> SendoElement {
        let space = Arc::new(GroundSpace::RealLine);
        let cuts = self.cuts.iter().map(spans_region).collect();
        let base = StepFuzzySet::new(space, self.thresholds.clone(), cuts).expect("valid random set");
        SendoElement::new(base, spans_region(&self.ghost)).expect("closed ghost")
    }

    fn inside(s: &Spans, x: f64) -> bool {
        s.iter().any(|&(a, b)| a <= x && x <= b)
    }

    /// Membership grade at `x`, computed from the raw cuts.
    pub fn grade(&self, x: f64) -> f64 {
        let mut g = 0.0;
        for (t, c) in self.thresholds.iter().zip(&self.cuts) {
            if Self::inside(c, x) {
                g = *t;
            }
        }
        g
    }

    /// `x` lies in the support closure or the ghost.
    pub fn in_zero_level(&self, x: f64) -> bool {
        Self::inside(&self.cuts[0], x) || Self::inside(&self.ghost, x)
    }

    pub fn endpoints(&self) -> Vec<f64> {
        self.cuts
            .iter()
            .chain(std::iter::once(&self.ghost))
            .flatten()
            .flat_map(|&(a, b)| [a, b])
            .filter(|x| x.is_finite())
            .collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.cuts[0].iter().all(|(a, b)| a.is_finite() && b.is_finite())
    }
}

pub fn thresholds(rng: &mut impl Rng) -> Vec<f64> {
    let k = rng.gen_range(1..=4);
    let mut t: Vec<f64> = Vec::new();
    while t.len() < k - 1 {
        let a = if rng.gen_bool(0.5) {
            rng.gen_range(1..8) as f64 / 8.0
        } else {
            rng.gen_range(0.02..0.98)
        };
        if !t.contains(&a) {
            t.push(a);
        }
    }
    t.sort_by(f64::total_cmp);
    t.push(1.0);
    t
}

fn coord(rng: &mut impl Rng, hi: f64, step: f64) -> f64 {
    if rng.gen_bool(0.5) {
        (rng.gen_range(0.0..hi) / step).round() * step
    } else {
        rng.gen_range(0.0..hi)
    }
}

/// Nested closed cuts from the top band down.
pub fn line_spec(rng: &mut impl Rng, bounded: bool) -> LineSpec {
    let t = thresholds(rng);
    let mut cur: Spans = (0..rng.gen_range(1..=2))
        .map(|_| {
            let a = coord(rng, 4.0, 0.25) - 2.0;
            let w = if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..1.0) };
            (a, a + w)
        })
        .collect();
    let mut cuts = vec![cur.clone()];
    for i in 1..t.len() {
        cur = cur
            .iter()
            .map(|&(a, b)| {
                let l = if rng.gen_bool(0.6) { rng.gen_range(0.0..0.5) } else { 0.0 };
                let r = if rng.gen_bool(0.6) { rng.gen_range(0.0..0.5) } else { 0.0 };
                (a - l, b + r)
            })
            .collect();
        if rng.gen_bool(0.25) {
            let a = coord(rng, 5.0, 0.25) - 2.5;
            cur.push((a, a + rng.gen_range(0.0..0.4)));
        }
        if !bounded && i == t.len() - 1 && rng.gen_bool(0.3) {
            let (a, b) = cur[0];
            cur[0] = if rng.gen_bool(0.5) { (f64::NEG_INFINITY, b) } else { (a, f64::INFINITY) };
        }
        cuts.push(cur.clone());
    }
    cuts.reverse();
    let ghost = if rng.gen_bool(0.3) {
        let a = coord(rng, 6.0, 0.5) - 3.0;
        vec![(a, a + if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..0.5) })]
    } else {
        Vec::new()
    };
    LineSpec {
        thresholds: t,
        cuts,
        ghost,
    }
}

pub fn finite_space(rng: &mut impl Rng) -> Arc<GroundSpace> {
    let k = rng.gen_range(3..=6);
    let mut pts: Vec<(f64, f64)> = Vec::new();
    while pts.len() < k {
        let p = (coord(rng, 4.0, 0.5), coord(rng, 4.0, 0.5));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    let labels = (0..k).map(|i| format!("p{i}")).collect();
    let table = pts
        .iter()
        .map(|a| pts.iter().map(|b| ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()).collect())
        .collect();
    Arc::new(GroundSpace::finite(labels, table).expect("planar distances form a metric"))
}

fn space_size(space: &GroundSpace) -> usize {
    match space {
        GroundSpace::Finite(fs) => fs.len(),
        _ => unreachable!(),
    }
}

/// Nested label cuts; each lower band adds points with probability 0.3.
pub fn finite_element(rng: &mut impl Rng, space: &Arc<GroundSpace>) -> SendoElement {
    let n = space_size(space);
    let t = thresholds(rng);
    let mut cur: Vec<usize> = vec![rng.gen_range(0..n)];
    for i in 0..n {
        if !cur.contains(&i) && rng.gen_bool(0.2) {
            cur.push(i);
        }
    }
    let mut cuts = vec![Region::labels(cur.clone())];
    for _ in 1..t.len() {
        for i in 0..n {
            if !cur.contains(&i) && rng.gen_bool(0.3) {
                cur.push(i);
            }
        }
        cuts.push(Region::labels(cur.clone()));
    }
    cuts.reverse();
    let base = StepFuzzySet::new(space.clone(), t, cuts).expect("valid random set");
    let ghost = if rng.gen_bool(0.3) {
        Region::labels([rng.gen_range(0..n)])
    } else {
        Region::labels([])
    };
    SendoElement::new(base, ghost).expect("finite ghost is closed")
}

fn cloud_point(rng: &mut impl Rng) -> Vec<f64> {
    vec![coord(rng, 3.0, 0.25), coord(rng, 3.0, 0.25)]
}

pub fn cloud_element(rng: &mut impl Rng) -> SendoElement {
    let space = Arc::new(GroundSpace::Euclidean { dim: 2 });
    let t = thresholds(rng);
    let mut cur: Vec<Vec<f64>> = (0..rng.gen_range(1..=3)).map(|_| cloud_point(rng)).collect();
    let mut cuts = vec![Region::cloud(cur.clone())];
    for _ in 1..t.len() {
        for _ in 0..rng.gen_range(0..=2) {
            cur.push(cloud_point(rng));
        }
        cuts.push(Region::cloud(cur.clone()));
    }
    cuts.reverse();
    let base = StepFuzzySet::new(space, t, cuts).expect("valid random set");
    let ghost = if rng.gen_bool(0.3) {
        Region::cloud([cloud_point(rng)])
    } else {
        Region::cloud(Vec::<Vec<f64>>::new())
    };
    SendoElement::new(base, ghost).expect("finite ghost is closed")
}

/// Two elements over one space of the given backend.
pub fn pair(rng: &mut impl Rng, b: Backend, bounded: bool) -> (SendoElement, SendoElement) {
    match b {
        Backend::Finite => {
            let s = finite_space(rng);
            (finite_element(rng, &s), finite_element(rng, &s))
        }
        Backend::Cloud => (cloud_element(rng), cloud_element(rng)),
        Backend::Line => (line_spec(rng, bounded).element(), line_spec(rng, bounded).element()),
    }
}

pub fn triple(rng: &mut impl Rng, b: Backend) -> [SendoElement; 3] {
    match b {
        Backend::Finite => {
            let s = finite_space(rng);
            [finite_element(rng, &s), finite_element(rng, &s), finite_element(rng, &s)]
        }
        Backend::Cloud => [cloud_element(rng), cloud_element(rng), cloud_element(rng)],
        Backend::Line => [
            line_spec(rng, false).element(),
            line_spec(rng, false).element(),
            line_spec(rng, false).element(),
        ],
    }
}

/// `min_y |x - y| + f(y)` on a sorted, non-uniform grid.
fn distance_transform(xs: &[f64], f: &[f64]) -> Vec<f64> {
    let mut g = f.to_vec();
    for i in 1..xs.len() {
        g[i] = g[i].min(g[i - 1] + (xs[i] - xs[i - 1]));
    }
    for i in (0..xs.len() - 1).rev() {
        g[i] = g[i].min(g[i + 1] + (xs[i + 1] - xs[i]));
    }
    g
}

/// Directed distances between the sendographs (`capped = false`) or
/// endographs (`capped = true`) of two bounded line instances, from a grid of
/// pitch `h` on the product space with the sum metric.
pub fn grid_directed(u: &LineSpec, v: &LineSpec, h: f64, capped: bool) -> f64 {
    let mut ends = u.endpoints();
    ends.extend(v.endpoints());
    let lo = ends.iter().copied().fold(f64::INFINITY, f64::min) - 0.5;
    let hi = ends.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 0.5;
    let steps = ((hi - lo) / h).ceil() as usize;
    let mut xs: Vec<f64> = (0..=steps).map(|k| lo + k as f64 * h).collect();
    xs.extend(ends);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let ug: Vec<Option<f64>> = xs.iter().map(|&x| u.in_zero_level(x).then(|| u.grade(x))).collect();
    let vg: Vec<Option<f64>> = xs.iter().map(|&x| v.in_zero_level(x).then(|| v.grade(x))).collect();
    let mut heights: Vec<f64> = ug.iter().flatten().copied().collect();
    heights.sort_by(f64::total_cmp);
    heights.dedup();
    let mut worst: f64 = 0.0;
    for a in heights {
        if capped && a == 0.0 {
            continue;
        }
        let f: Vec<f64> = vg
            .iter()
            .map(|g| match g {
                Some(b) => (a - b).max(0.0),
                None => f64::INFINITY,
            })
            .collect();
        let g = distance_transform(&xs, &f);
        for (i, ux) in ug.iter().enumerate() {
            if *ux == Some(a) {
                let d = if capped { g[i].min(a) } else { g[i] };
                worst = worst.max(d);
            }
        }
    }
    worst
}

pub fn grid_metric(u: &LineSpec, v: &LineSpec, h: f64, capped: bool) -> f64 {
    grid_directed(u, v, h, capped).max(grid_directed(v, u, h, capped))
}
