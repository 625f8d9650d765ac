//! Finite unions of extended-real intervals with open or closed endpoints.
//!
//! An [`IntervalUnion`] is kept canonical: intervals sorted, pairwise disjoint,
//! and no two neighbours mergeable. Equality of canonical unions is therefore
//! structural equality. Endpoint comparisons are exact.
//!
//! Openness of endpoints matters to the set predicates, never to distances:
//! the distance from a point to a set equals the distance to its closure.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extreal::{Dist, ExtReal};

/// A single interval. Infinite endpoints are always open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Interval {
    pub lo: ExtReal,
    pub hi: ExtReal,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    /// Builds an interval, forcing infinite endpoints open.
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        let lo = ExtReal::of(lo);
        let hi = ExtReal::of(hi);
        Interval {
            lo,
            hi,
            lo_open: lo_open || !lo.is_finite(),
            hi_open: hi_open || !hi.is_finite(),
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    pub fn point(x: f64) -> Self {
        Self::closed(x, x)
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => self.lo_open || self.hi_open || !self.lo.is_finite(),
            Ordering::Greater => true,
        }
    }

    pub fn contains(&self, x: ExtReal) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below && x.is_finite()
    }

    /// Infinite endpoints must be open; a well-formed interval satisfies this.
    fn has_valid_infinite_ends(&self) -> bool {
        (self.lo.is_finite() || self.lo_open) && (self.hi.is_finite() || self.hi_open)
    }

    fn closure(&self) -> Interval {
        Interval {
            lo_open: !self.lo.is_finite(),
            hi_open: !self.hi.is_finite(),
            ..*self
        }
    }

    fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo, other.lo_open),
            Ordering::Greater => (self.lo, self.lo_open),
            Ordering::Equal => (self.lo, self.lo_open || other.lo_open),
        };
        let (hi, hi_open) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi, self.hi_open),
            Ordering::Greater => (other.hi, other.hi_open),
            Ordering::Equal => (self.hi, self.hi_open || other.hi_open),
        };
        Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        }
    }

    /// Distance from a finite point to the closure of this interval.
    fn distance_to(&self, x: f64) -> f64 {
        let lo = self.lo.get();
        let hi = self.hi.get();
        if x < lo {
            lo - x
        } else if x > hi {
            x - hi
        } else {
            0.0
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && !self.lo_open && !self.hi_open {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

/// Orders intervals by lower endpoint, closed before open at a tie.
fn lo_order(a: &Interval, b: &Interval) -> Ordering {
    a.lo.cmp(&b.lo).then(a.lo_open.cmp(&b.lo_open))
}

/// Whether `next` (with `next.lo >= cur.lo`) overlaps or touches `cur` so
/// that their union is a single interval.
fn mergeable(cur: &Interval, next: &Interval) -> bool {
    match next.lo.cmp(&cur.hi) {
        Ordering::Less => true,
        Ordering::Equal => !(cur.hi_open && next.lo_open) && cur.hi.is_finite(),
        Ordering::Greater => false,
    }
}

/// A canonical finite union of intervals. May be empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn real_line() -> Self {
        Self::from_interval(Interval::open(f64::NEG_INFINITY, f64::INFINITY))
    }

    pub fn from_interval(i: Interval) -> Self {
        Self::from_intervals([i])
    }

    /// Finite set of points, each a degenerate closed interval.
    pub fn from_points<I: IntoIterator<Item = f64>>(points: I) -> Self {
        Self::from_intervals(points.into_iter().map(Interval::point))
    }

    /// Canonicalizes an arbitrary list: drops empties, sorts, merges.
    pub fn from_intervals<I: IntoIterator<Item = Interval>>(intervals: I) -> Self {
        let mut v: Vec<Interval> = intervals
            .into_iter()
            .map(|i| Interval {
                lo_open: i.lo_open || !i.lo.is_finite(),
                hi_open: i.hi_open || !i.hi.is_finite(),
                ..i
            })
            .filter(|i| !i.is_empty())
            .collect();
        v.sort_by(lo_order);
        let mut parts: Vec<Interval> = Vec::with_capacity(v.len());
        for next in v {
            match parts.last_mut() {
                Some(cur) if mergeable(cur, &next) => match next.hi.cmp(&cur.hi) {
                    Ordering::Greater => {
                        cur.hi = next.hi;
                        cur.hi_open = next.hi_open;
                    }
                    Ordering::Equal => cur.hi_open = cur.hi_open && next.hi_open,
                    Ordering::Less => {}
                },
                _ => parts.push(next),
            }
        }
        IntervalUnion { parts }
    }

    /// Whether `raw` is already in canonical form (used to report
    /// non-canonical input rather than silently repairing it).
    pub fn is_canonical_list(raw: &[Interval]) -> bool {
        raw.iter().all(|i| !i.is_empty() && i.has_valid_infinite_ends())
            && raw
                .windows(2)
                .all(|w| lo_order(&w[0], &w[1]) == Ordering::Less && !mergeable(&w[0], &w[1]))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn contains(&self, x: ExtReal) -> bool {
        self.parts.iter().any(|i| i.contains(x))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        Self::from_intervals(self.parts.iter().chain(other.parts.iter()).copied())
    }

    pub fn intersection(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                let c = a.intersect(b);
                if !c.is_empty() {
                    out.push(c);
                }
            }
        }
        Self::from_intervals(out)
    }

    pub fn complement(&self) -> IntervalUnion {
        let mut out = Vec::new();
        let mut lo = ExtReal::NEG_INF;
        let mut lo_open = true;
        for i in &self.parts {
            out.push(Interval {
                lo,
                hi: i.lo,
                lo_open,
                hi_open: !i.lo_open || !i.lo.is_finite(),
            });
            lo = i.hi;
            lo_open = !i.hi_open || !i.hi.is_finite();
        }
        out.push(Interval {
            lo,
            hi: ExtReal::POS_INF,
            lo_open,
            hi_open: true,
        });
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &IntervalUnion) -> IntervalUnion {
        self.intersection(&other.complement())
    }

    /// Closes every finite endpoint.
    pub fn closure(&self) -> IntervalUnion {
        Self::from_intervals(self.parts.iter().map(Interval::closure))
    }

    pub fn is_closed(&self) -> bool {
        self.parts
            .iter()
            .all(|i| (!i.lo.is_finite() || !i.lo_open) && (!i.hi.is_finite() || !i.hi_open))
    }

    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        match (self.parts.first(), self.parts.last()) {
            (Some(f), Some(l)) => f.lo.is_finite() && l.hi.is_finite(),
            _ => true,
        }
    }

    pub fn bounded_below(&self) -> bool {
        self.parts.first().is_none_or(|f| f.lo.is_finite())
    }

    pub fn bounded_above(&self) -> bool {
        self.parts.last().is_none_or(|l| l.hi.is_finite())
    }

    /// Infimum and supremum, `None` when empty.
    pub fn bounds(&self) -> Option<(ExtReal, ExtReal)> {
        Some((self.parts.first()?.lo, self.parts.last()?.hi))
    }

    /// All finite endpoints in increasing order, duplicates removed.
    pub fn finite_endpoints(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .parts
            .iter()
            .flat_map(|i| [i.lo, i.hi])
            .filter(|x| x.is_finite())
            .map(ExtReal::get)
            .collect();
        v.dedup();
        v
    }

    /// `inf_{y in self} |x - y|`. Errors on the empty union.
    ///
    /// An infinite `x` is read as a limit direction: the distance is `0` if the
    /// union is unbounded on that side and `+inf` otherwise.
    pub fn distance_from(&self, x: ExtReal) -> Result<Dist> {
        if self.is_empty() {
            return Err(Error::EmptySet("point-to-set distance"));
        }
        if x == ExtReal::NEG_INF {
            return Ok(if self.bounded_below() { Dist::INF } else { Dist::ZERO });
        }
        if x == ExtReal::POS_INF {
            return Ok(if self.bounded_above() { Dist::INF } else { Dist::ZERO });
        }
        Ok(Dist::of(self.finite_distance(x.get())))
    }

    /// Distance from a finite point, assuming the union is nonempty.
    pub(crate) fn finite_distance(&self, x: f64) -> f64 {
        // Index of the first interval whose lower end exceeds x.
        let k = self.parts.partition_point(|i| i.lo.get() <= x);
        let mut best = f64::INFINITY;
        if k > 0 {
            best = self.parts[k - 1].distance_to(x);
        }
        if k < self.parts.len() {
            best = best.min(self.parts[k].distance_to(x));
        }
        best
    }

    /// Directed Hausdorff distance `sup_{x in self} inf_{y in other} |x - y|`,
    /// with a point attaining it when finite (a point of the closure of
    /// `self`).
    ///
    /// Candidates: finite endpoints of `self` and midpoints of gaps of `other`
    /// lying in `self`. If `self` is unbounded on a side where `other` is
    /// bounded the value is `+inf`.
    pub fn directed_hausdorff_witness(&self, other: &IntervalUnion) -> Result<(Dist, Option<f64>)> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet("directed Hausdorff distance"));
        }
        if (!self.bounded_above() && other.bounded_above())
            || (!self.bounded_below() && other.bounded_below())
        {
            return Ok((Dist::INF, None));
        }
        let closed = self.closure();
        let mut candidates = closed.finite_endpoints();
        for w in other.parts.windows(2) {
            let mid = 0.5 * (w[0].hi.get() + w[1].lo.get());
            if closed.contains(ExtReal::of(mid)) {
                candidates.push(mid);
            }
        }
        if candidates.is_empty() {
            // self is the whole line and so is other.
            return Ok((Dist::ZERO, Some(0.0)));
        }
        let mut best = (Dist::ZERO, candidates[0]);
        for &x in &candidates {
            let d = Dist::of(other.finite_distance(x));
            if d > best.0 {
                best = (d, x);
            }
        }
        Ok((best.0, Some(best.1)))
    }

    pub fn directed_hausdorff(&self, other: &IntervalUnion) -> Result<Dist> {
        Ok(self.directed_hausdorff_witness(other)?.0)
    }

    pub fn hausdorff(&self, other: &IntervalUnion) -> Result<Dist> {
        Ok(self
            .directed_hausdorff(other)?
            .max(other.directed_hausdorff(self)?))
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (k, i) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Serialized as the list of its intervals.
impl Serialize for IntervalUnion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

/// Strict: a non-canonical list is rejected rather than repaired.
impl<'de> Deserialize<'de> for IntervalUnion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Interval>::deserialize(d)?;
        if !Self::is_canonical_list(&raw) {
            return Err(serde::de::Error::custom(
                "interval list is not canonical (sorted, disjoint, non-adjacent, nonempty, infinite ends open)",
            ));
        }
        Ok(IntervalUnion { parts: raw })
    }
}
