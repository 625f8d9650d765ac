//! Piecewise-linear functions on the extended real line and their lower
//! envelopes.
//!
//! The distance-to-hypograph computations on the real line reduce to
//! maximizing `x -> min_j (d(x, D_j) + c_j)` over an interval union. Each
//! `d(x, D_j)` is piecewise linear with slopes in {-1, 0, 1}, so the envelope
//! is too, and its supremum over an interval union is attained at a piece
//! boundary or at infinity.

use crate::extreal::Dist;
use crate::interval::IntervalUnion;

/// `y0 + slope * (x - x0)`. Anchoring at a breakpoint keeps values exact at
/// the points where suprema are read off.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Line {
    slope: f64,
    x0: f64,
    y0: f64,
}

impl Line {
    fn flat(c: f64) -> Self {
        Line { slope: 0.0, x0: 0.0, y0: c }
    }

    fn through(x0: f64, slope: f64) -> Self {
        Line { slope, x0, y0: 0.0 }
    }

    fn at(&self, x: f64) -> f64 {
        if self.slope == 0.0 {
            return self.y0;
        }
        self.y0 + self.slope * (x - self.x0)
    }
}

/// A continuous piecewise-linear function `R -> R`.
///
/// Piece `k` covers `[starts[k], starts[k+1])`; `starts[0]` is `-inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinear {
    starts: Vec<f64>,
    lines: Vec<Line>,
}

impl PiecewiseLinear {
    pub fn constant(c: f64) -> Self {
        PiecewiseLinear {
            starts: vec![f64::NEG_INFINITY],
            lines: vec![Line::flat(c)],
        }
    }

    /// `x -> d(x, D)` for a nonempty interval union `D`.
    pub fn distance_to(d: &IntervalUnion) -> Self {
        let parts = d.closure();
        let parts = parts.intervals();
        assert!(!parts.is_empty(), "distance to the empty set");
        let mut pieces: Vec<(f64, Line)> = Vec::new();
        let first_lo = parts[0].lo.get();
        if first_lo.is_finite() {
            pieces.push((f64::NEG_INFINITY, Line::through(first_lo, -1.0)));
        }
        for (k, iv) in parts.iter().enumerate() {
            let lo = iv.lo.get();
            let hi = iv.hi.get();
            pieces.push((lo, Line::flat(0.0)));
            if hi.is_finite() {
                pieces.push((hi, Line::through(hi, 1.0)));
                if let Some(next) = parts.get(k + 1) {
                    let nlo = next.lo.get();
                    pieces.push((0.5 * (hi + nlo), Line::through(nlo, -1.0)));
                }
            }
        }
        Self::from_pieces(pieces)
    }

    /// Normalizes: first start becomes `-inf`, equal starts keep the last
    /// piece, equal neighbouring lines merge.
    fn from_pieces(pieces: Vec<(f64, Line)>) -> Self {
        let mut starts: Vec<f64> = Vec::with_capacity(pieces.len());
        let mut lines: Vec<Line> = Vec::with_capacity(pieces.len());
        for (s, l) in pieces {
            if let Some(&last) = starts.last() {
                if s <= last {
                    *lines.last_mut().unwrap() = l;
                    continue;
                }
            }
            if lines.last() == Some(&l) {
                continue;
            }
            starts.push(s);
            lines.push(l);
        }
        starts[0] = f64::NEG_INFINITY;
        // A replaced piece can make neighbours equal; merge once more.
        let mut out_s = vec![starts[0]];
        let mut out_l = vec![lines[0]];
        for k in 1..lines.len() {
            if lines[k] != *out_l.last().unwrap() {
                out_s.push(starts[k]);
                out_l.push(lines[k]);
            }
        }
        PiecewiseLinear {
            starts: out_s,
            lines: out_l,
        }
    }

    pub fn num_pieces(&self) -> usize {
        self.lines.len()
    }

    fn end(&self, k: usize) -> f64 {
        self.starts.get(k + 1).copied().unwrap_or(f64::INFINITY)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.starts.partition_point(|&s| s <= x).saturating_sub(1);
        self.lines[k].at(x)
    }

    pub fn add_constant(&self, c: f64) -> Self {
        PiecewiseLinear {
            starts: self.starts.clone(),
            lines: self
                .lines
                .iter()
                .map(|l| Line { y0: l.y0 + c, ..*l })
                .collect(),
        }
    }

    /// Pointwise minimum.
    pub fn min(&self, other: &PiecewiseLinear) -> Self {
        let mut cuts: Vec<f64> = self.starts.iter().chain(&other.starts).copied().collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut pieces = Vec::with_capacity(cuts.len() * 2);
        let (mut i, mut j) = (0usize, 0usize);
        for (k, &s) in cuts.iter().enumerate() {
            while i + 1 < self.starts.len() && self.starts[i + 1] <= s {
                i += 1;
            }
            while j + 1 < other.starts.len() && other.starts[j + 1] <= s {
                j += 1;
            }
            let e = cuts.get(k + 1).copied().unwrap_or(f64::INFINITY);
            let (f, g) = (self.lines[i], other.lines[j]);
            if f.slope == g.slope {
                let t = if s.is_finite() { s } else { 0.0 };
                pieces.push((s, if f.at(t) <= g.at(t) { f } else { g }));
                continue;
            }
            let x = (g.y0 - f.y0 - g.slope * g.x0 + f.slope * f.x0) / (f.slope - g.slope);
            if x > s && x < e {
                // Left of the crossing the steeper line is lower.
                let (left, right) = if f.slope > g.slope { (f, g) } else { (g, f) };
                pieces.push((s, left));
                pieces.push((x, right));
            } else {
                let t = if s.is_finite() && e.is_finite() {
                    0.5 * (s + e)
                } else if s.is_finite() {
                    s + 1.0
                } else if e.is_finite() {
                    e - 1.0
                } else {
                    0.0
                };
                pieces.push((s, if f.at(t) <= g.at(t) { f } else { g }));
            }
        }
        Self::from_pieces(pieces)
    }

    /// `sup_{x in A} f(x)` over the closure of a nonempty union `A`.
    pub fn sup_over(&self, a: &IntervalUnion) -> Dist {
        let mut best = f64::NEG_INFINITY;
        for iv in a.closure().intervals() {
            let (lo, hi) = (iv.lo.get(), iv.hi.get());
            let first = self.starts.partition_point(|&s| s <= lo).saturating_sub(1);
            for k in first..self.lines.len() {
                let s = self.starts[k];
                if s > hi {
                    break;
                }
                let e = self.end(k);
                let l = self.lines[k];
                let left = lo.max(s);
                let right = hi.min(e);
                for x in [left, right] {
                    let v = if x == f64::INFINITY {
                        if l.slope > 0.0 {
                            f64::INFINITY
                        } else if l.slope == 0.0 {
                            l.y0
                        } else {
                            continue;
                        }
                    } else if x == f64::NEG_INFINITY {
                        if l.slope < 0.0 {
                            f64::INFINITY
                        } else if l.slope == 0.0 {
                            l.y0
                        } else {
                            continue;
                        }
                    } else {
                        l.at(x)
                    };
                    best = best.max(v);
                }
            }
        }
        Dist::of(best.max(0.0))
    }
}
