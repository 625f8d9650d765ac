use super::band::BandFuzzySet;
use super::sendo::SendoElement;
use super::step::StepFuzzySet;
use super::Leveled;
use crate::interval::{Interval, IntervalUnion};
use crate::region::Region;

/// Cut queries shared by every representation, USC or not.
pub trait CutQueries {
    /// Levels in `(0,1)` where the cuts may change.
    fn critical_levels(&self) -> Vec<f64>;
    fn cut_at(&self, alpha: f64) -> Region;
    fn strict_cut_at(&self, alpha: f64) -> Region;
}

impl CutQueries for StepFuzzySet {
    fn critical_levels(&self) -> Vec<f64> {
        self.thresholds().iter().copied().filter(|&a| a < 1.0).collect()
    }
    fn cut_at(&self, alpha: f64) -> Region {
        self.level(alpha)
    }
    fn strict_cut_at(&self, alpha: f64) -> Region {
        self.strict_cut(alpha).expect("level in range")
    }
}

impl CutQueries for SendoElement {
    fn critical_levels(&self) -> Vec<f64> {
        self.base().critical_levels()
    }
    fn cut_at(&self, alpha: f64) -> Region {
        self.level(alpha)
    }
    fn strict_cut_at(&self, alpha: f64) -> Region {
        self.base().strict_cut_at(alpha)
    }
}

impl CutQueries for BandFuzzySet {
    fn critical_levels(&self) -> Vec<f64> {
        self.values().into_iter().filter(|&a| a > 0.0 && a < 1.0).collect()
    }
    fn cut_at(&self, alpha: f64) -> Region {
        self.cut(alpha).expect("level in range")
    }
    fn strict_cut_at(&self, alpha: f64) -> Region {
        self.strict_cut(alpha).expect("level in range")
    }
}

/// Level sets of `(0,1)` where the cut structure is irregular.
///
/// * `d`: `[u]_α ⊄ cl{u > α}`
/// * `p`: `cl{u > α} ⊊ [u]_α` (platform levels)
/// * `f`: `cl{u > α} ≠ [u]_α`
/// * `p0`: levels where `H([u]_β, [u]_α)` does not tend to 0 as `β -> α`;
///   meaningful only for sets with closed cuts.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelSetReport {
    pub d: IntervalUnion,
    pub p: IntervalUnion,
    pub p0: IntervalUnion,
    pub f: IntervalUnion,
}

impl LevelSetReport {
    /// `P ⊆ D ⊆ F`.
    pub fn nested(&self) -> bool {
        self.p.is_subset(&self.d) && self.d.is_subset(&self.f)
    }
}

struct Flags {
    d: bool,
    p: bool,
    f: bool,
}

fn flags_at<U: CutQueries + ?Sized>(u: &U, alpha: f64) -> Flags {
    let cut = u.cut_at(alpha);
    let above = u.strict_cut_at(alpha).closure();
    let inside = cut.is_subset(&above).unwrap_or(false);
    let below = above.is_subset(&cut).unwrap_or(false);
    Flags {
        d: !inside,
        p: below && above != cut,
        f: above != cut,
    }
}

/// Classifies every level of `(0,1)`.
///
/// Cuts are constant between consecutive critical levels, so each open gap
/// is decided by its midpoint and each critical level on its own.
pub fn classify_levels<U: CutQueries + ?Sized>(u: &U) -> LevelSetReport {
    let mut crit = u.critical_levels();
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    let mut pieces: [Vec<Interval>; 4] = Default::default();
    let mut mark = |iv: Interval, fl: &Flags, p0: bool| {
        for (k, on) in [fl.d, fl.p, fl.f, p0].into_iter().enumerate() {
            if on {
                pieces[k].push(iv);
            }
        }
    };
    let mut edges = vec![0.0];
    edges.extend(crit.iter().copied());
    edges.push(1.0);
    for w in edges.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        mark(Interval::open(w[0], w[1]), &flags_at(u, mid), false);
    }
    for (k, &a) in crit.iter().enumerate() {
        let here = u.cut_at(a).closure();
        let left = u.cut_at(0.5 * (edges[k] + a)).closure();
        let right = u.cut_at(0.5 * (a + edges[k + 2])).closure();
        mark(Interval::point(a), &flags_at(u, a), left != here || right != here);
    }
    let [d, p, f, p0] = pieces.map(IntervalUnion::from_intervals);
    LevelSetReport { d, p, p0, f }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::space::GroundSpace;

    #[test]
    fn non_usc_example() {
        let u = BandFuzzySet::new(
            vec![
                (IntervalUnion::from_interval(Interval::open(0.0, 1.0)), 1.0),
                (IntervalUnion::from_interval(Interval::closed(1.0, 3.0)), 0.6),
            ],
            true,
        )
        .unwrap();
        let r = classify_levels(&u);
        assert!(r.p.is_empty());
        assert_eq!(r.d, IntervalUnion::from_points([0.6]));
        assert_eq!(r.f, IntervalUnion::from_interval(Interval::open(0.0, 1.0)));
        assert!(r.nested());
    }

    #[test]
    fn singleton_has_no_irregular_levels() {
        let x = StepFuzzySet::crisp(Arc::new(GroundSpace::RealLine), Region::reals([0.0])).unwrap();
        let r = classify_levels(&x);
        assert!(r.d.is_empty() && r.p.is_empty() && r.p0.is_empty() && r.f.is_empty());
    }

    #[test]
    fn platforms_of_step_set() {
        let u = StepFuzzySet::new(
            Arc::new(GroundSpace::RealLine),
            vec![0.3, 0.7, 1.0],
            vec![Region::reals([0.0, 1.0, 2.0]), Region::reals([0.0, 1.0]), Region::reals([0.0])],
        )
        .unwrap();
        let r = classify_levels(&u);
        let expect = IntervalUnion::from_points([0.3, 0.7]);
        assert_eq!(r.p, expect);
        assert_eq!(r.p0, expect);
        assert_eq!(r.d, expect);
        assert_eq!(r.f, expect);
    }
}
