use std::fmt;

use super::band::BandFuzzySet;
use super::sendo::SendoElement;
use super::step::StepFuzzySet;
use crate::region::Region;
use crate::space::GroundSpace;

/// The invariant a violation breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// Thresholds not strictly increasing in `(0,1]`, or not matching the cuts.
    Ladder,
    /// A region of the wrong kind for the ground space.
    Kind,
    /// A cut that is not closed.
    Closed,
    /// `C_{i+1} ⊄ C_i`.
    Nesting,
    /// Empty top cut, or no point of value 1 when normality is claimed.
    Normality,
    /// An interval list that is not in canonical form.
    Canonical,
    /// Band pieces that overlap.
    Disjoint,
    /// Repeated or out-of-range band values.
    Values,
    GhostClosed,
    /// A ghost or support that is not compact where compactness is required.
    Compact,
}

impl Clause {
    pub fn name(self) -> &'static str {
        match self {
            Clause::Ladder => "ladder",
            Clause::Kind => "kind",
            Clause::Closed => "closed",
            Clause::Nesting => "nesting",
            Clause::Normality => "normality",
            Clause::Canonical => "canonical",
            Clause::Disjoint => "disjoint",
            Clause::Values => "values",
            Clause::GhostClosed => "ghost-closed",
            Clause::Compact => "compact",
        }
    }

    /// Number of the representation condition this clause enforces:
    /// closed (or compact) cuts, cuts as intersections of the cuts below.
    pub fn condition(self) -> Option<&'static str> {
        match self {
            Clause::Closed | Clause::Compact => Some("i"),
            Clause::Nesting => Some("ii"),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.clause.name(), self.detail)
    }
}

/// Every violated invariant of an input. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Observations that do not invalidate the input (redundant thresholds,
    /// unbounded cuts).
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, clause: Clause, detail: impl Into<String>) {
        self.violations.push(Violation {
            clause,
            detail: detail.into(),
        });
    }

    pub fn has(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let v: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", v.join("; "))
    }
}

fn check_ladder(report: &mut ValidationReport, thresholds: &[f64], ncuts: usize) {
    if thresholds.is_empty() {
        report.push(Clause::Ladder, "no thresholds");
        return;
    }
    if thresholds.len() != ncuts {
        report.push(
            Clause::Ladder,
            format!("{} thresholds but {} cuts", thresholds.len(), ncuts),
        );
    }
    for (i, &a) in thresholds.iter().enumerate() {
        if !(a > 0.0 && a <= 1.0) {
            report.push(Clause::Ladder, format!("threshold {a} outside (0,1]"));
        }
        if i > 0 && thresholds[i - 1] >= a {
            report.push(
                Clause::Ladder,
                format!("thresholds not increasing at {} >= {a}", thresholds[i - 1]),
            );
        }
    }
    let last = *thresholds.last().unwrap();
    if last != 1.0 {
        report.push(Clause::Ladder, format!("last threshold is {last}, not 1"));
    }
}

pub(crate) fn validate_step(u: &StepFuzzySet) -> ValidationReport {
    let mut r = ValidationReport::default();
    let space: &GroundSpace = u.space_arc();
    let cuts = u.cuts();
    check_ladder(&mut r, super::Leveled::thresholds(u), cuts.len());
    let mut kinds_ok = true;
    for (i, c) in cuts.iter().enumerate() {
        if !c.fits(space) {
            r.push(Clause::Kind, format!("cut {} does not belong to the {} space", i + 1, space.kind_name()));
            kinds_ok = false;
        } else if !c.is_closed() {
            r.push(Clause::Closed, format!("cut {} = {c} is not closed", i + 1));
        }
    }
    if !kinds_ok {
        return r;
    }
    for i in 1..cuts.len() {
        if !cuts[i].is_subset(&cuts[i - 1]).unwrap_or(false) {
            r.push(
                Clause::Nesting,
                format!("cut {} = {} is not inside cut {} = {}", i + 1, cuts[i], i, cuts[i - 1]),
            );
        }
        if cuts[i] == cuts[i - 1] {
            r.notes.push(format!("cuts {} and {} coincide", i, i + 1));
        }
    }
    match cuts.last() {
        Some(c) if c.is_empty() => r.push(Clause::Normality, "the 1-cut is empty"),
        None => r.push(Clause::Normality, "no cuts"),
        _ => {}
    }
    if let Some(c) = cuts.first() {
        if !c.is_bounded() {
            r.notes.push("unbounded cuts: compactness-sensitive operations do not apply".into());
        }
    }
    r
}

pub(crate) fn validate_sendo(v: &SendoElement, need_compact: bool) -> ValidationReport {
    let mut r = validate_step(v.base());
    let g = v.ghost();
    let space: &GroundSpace = v.base().space_arc();
    if !g.fits(space) {
        r.push(Clause::Kind, format!("ghost does not belong to the {} space", space.kind_name()));
        return r;
    }
    if !g.is_closed() {
        r.push(Clause::GhostClosed, format!("ghost {g} is not closed"));
    }
    if need_compact {
        if !g.is_bounded() {
            r.push(Clause::Compact, format!("ghost {g} is not bounded"));
        }
        if !v.base().has_compact_support() {
            r.push(Clause::Compact, "support is not compact".to_string());
        }
    }
    r
}

pub(crate) fn validate_band(u: &BandFuzzySet) -> ValidationReport {
    let mut r = ValidationReport::default();
    let pieces = u.pieces();
    for (i, (p, a)) in pieces.iter().enumerate() {
        if p.is_empty() {
            r.push(Clause::Values, format!("piece {} is empty", i + 1));
        }
        if !(*a > 0.0 && *a <= 1.0) {
            r.push(Clause::Values, format!("piece value {a} outside (0,1]"));
        }
        for (q, b) in &pieces[..i] {
            if a == b {
                r.push(Clause::Values, format!("value {a} repeated"));
            }
            if !p.intersection(q).is_empty() {
                r.push(Clause::Disjoint, format!("pieces {p} and {q} overlap"));
            }
        }
    }
    if u.claims_normal() && !pieces.iter().any(|(p, a)| *a == 1.0 && !p.is_empty()) {
        r.push(Clause::Normality, "no piece attains value 1");
    }
    if pieces.is_empty() && u.claims_normal() {
        r.push(Clause::Normality, "no pieces");
    }
    r
}

/// Records non-canonical interval lists found while reading a document.
pub fn canonical_violation(what: &str, region: &Region) -> Violation {
    Violation {
        clause: Clause::Canonical,
        detail: format!("{what} is not in canonical form; canonical form is {region}"),
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::interval::{Interval, IntervalUnion};

    #[test]
    fn nesting_and_normality_failures() {
        let line = Arc::new(GroundSpace::RealLine);
        let u = StepFuzzySet::from_parts(
            line.clone(),
            vec![0.5, 1.0],
            vec![Region::reals([0.0]), Region::reals([1.0])],
        );
        let rep = u.validate();
        assert!(rep.has(Clause::Nesting));
        let e = StepFuzzySet::from_parts(line.clone(), vec![1.0], vec![Region::empty_in(&line)]);
        assert!(e.validate().has(Clause::Normality));
        let bad = StepFuzzySet::from_parts(line, vec![0.5], vec![Region::reals([0.0])]);
        assert!(bad.validate().has(Clause::Ladder));
    }

    #[test]
    fn kind_mismatch() {
        let sp = Arc::new(GroundSpace::finite_from_reals(&[0.0, 1.0]).unwrap());
        let u = StepFuzzySet::from_parts(sp, vec![1.0], vec![Region::reals([0.0])]);
        assert!(u.validate().has(Clause::Kind));
    }

    #[test]
    fn open_cut_rejected() {
        let line = Arc::new(GroundSpace::RealLine);
        let open = Region::Line(IntervalUnion::from_interval(Interval::open(0.0, 1.0)));
        let u = StepFuzzySet::from_parts(line, vec![1.0], vec![open]);
        assert!(u.validate().has(Clause::Closed));
    }
}
