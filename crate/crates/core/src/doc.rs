//! The versioned JSON document format.
//!
//! ```json
//! {
//!   "version": "endograph-doc/1",
//!   "space": {"kind": "real-line"},
//!   "sets": [
//!     {"kind": "steps", "name": "u", "thresholds": [0.5, 1],
//!      "cuts": [[{"lo": 0, "hi": 1, "lo_open": false, "hi_open": false}],
//!               [{"lo": 0, "hi": 0, "lo_open": false, "hi_open": false}]]}
//!   ]
//! }
//! ```
//!
//! Spaces are `real-line`, `finite` (`labels`, `table`) or `euclidean`
//! (`dim`). A cut is a list of intervals on the real line (infinite ends
//! written `"-inf"`/`"+inf"`), a list of labels on a finite space and a list
//! of coordinate arrays in Euclidean space. Set kinds:
//!
//! * `steps`: `thresholds` and `cuts`;
//! * `sendo`: as `steps` plus a `ghost` region;
//! * `bands`: real line only, `pieces` of `{"value", "set"}` and `normal`;
//! * `discrete`: `membership` as `{"point", "value"}` pairs, stored as steps.
//!
//! Optional `collections` group set names. Unknown fields are errors.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::extreal::ExtReal;
use crate::fuzzy::{BandFuzzySet, SendoElement, StepFuzzySet, ValidationReport};
use crate::interval::{Interval, IntervalUnion};
use crate::region::Region;
use crate::space::{Coord, GroundSpace, Point};

pub const VERSION: &str = "endograph-doc/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawSpace {
    RealLine,
    Finite { labels: Vec<String>, table: Vec<Vec<f64>> },
    Euclidean { dim: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    value: f64,
    set: Vec<Interval>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMember {
    point: Value,
    value: f64,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RawSet {
    Steps {
        name: String,
        thresholds: Vec<f64>,
        cuts: Vec<Value>,
    },
    Sendo {
        name: String,
        thresholds: Vec<f64>,
        cuts: Vec<Value>,
        ghost: Value,
    },
    Bands {
        name: String,
        #[serde(default = "yes")]
        normal: bool,
        pieces: Vec<RawPiece>,
    },
    Discrete {
        name: String,
        membership: Vec<RawMember>,
    },
}

impl RawSet {
    fn name(&self) -> &str {
        match self {
            RawSet::Steps { name, .. }
            | RawSet::Sendo { name, .. }
            | RawSet::Bands { name, .. }
            | RawSet::Discrete { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Collection {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    version: String,
    space: RawSpace,
    #[serde(default)]
    sets: Vec<RawSet>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    collections: Vec<Collection>,
}

/// A fuzzy object read from a document.
#[derive(Clone, Debug, PartialEq)]
pub enum FuzzyObject {
    Steps(StepFuzzySet),
    Sendo(SendoElement),
    Bands(BandFuzzySet),
}

impl FuzzyObject {
    pub fn kind(&self) -> &'static str {
        match self {
            FuzzyObject::Steps(_) => "steps",
            FuzzyObject::Sendo(_) => "sendo",
            FuzzyObject::Bands(_) => "bands",
        }
    }

    /// The object as a `P^1` element; band sets are not USC and have none.
    pub fn as_element(&self) -> Option<SendoElement> {
        match self {
            FuzzyObject::Steps(u) => Some(SendoElement::arrow_forward(u)),
            FuzzyObject::Sendo(v) => Some(v.clone()),
            FuzzyObject::Bands(_) => None,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        match self {
            FuzzyObject::Steps(u) => u.validate(),
            FuzzyObject::Sendo(v) => v.validate(),
            FuzzyObject::Bands(b) => b.validate(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedObject {
    pub name: String,
    pub object: FuzzyObject,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub space: Arc<GroundSpace>,
    pub sets: Vec<NamedObject>,
    pub collections: Vec<Collection>,
}

/// A problem found while reading, with the path of the offending field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Located {
    pub location: String,
    pub clause: String,
    /// Representation condition, `"i"` or `"ii"`, when the clause is one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<&'static str>,
    pub message: String,
}

impl fmt::Display for Located {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Some(c) => write!(f, "{}: [{}, condition ({c})] {}", self.location, self.clause, self.message),
            None => write!(f, "{}: [{}] {}", self.location, self.clause, self.message),
        }
    }
}

/// Everything learned from reading a document, valid or not.
#[derive(Clone, Debug, Default)]
pub struct DocCheck {
    pub document: Option<Document>,
    pub problems: Vec<Located>,
    pub notes: Vec<Located>,
}

impl DocCheck {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty() && self.document.is_some()
    }
}

/// Parse or validation failure of a whole document.
#[derive(Clone, Debug, PartialEq)]
pub struct DocError(pub Vec<Located>);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&v.join("\n"))
    }
}

impl std::error::Error for DocError {}

struct Ctx<'a> {
    space: &'a GroundSpace,
    problems: Vec<Located>,
    notes: Vec<Located>,
}

impl Ctx<'_> {
    fn problem(&mut self, location: &str, clause: &str, message: impl Into<String>) {
        self.problems.push(Located {
            location: location.to_string(),
            clause: clause.to_string(),
            condition: None,
            message: message.into(),
        });
    }

    fn region(&mut self, v: &Value, at: &str) -> Option<Region> {
        match self.space {
            GroundSpace::RealLine => {
                let raw: Vec<Interval> = match serde_json::from_value(v.clone()) {
                    Ok(r) => r,
                    Err(e) => {
                        self.problem(at, "syntax", format!("expected a list of intervals: {e}"));
                        return None;
                    }
                };
                if let Some(bad) = raw.iter().find(|i| !i.lo.is_finite() && !i.lo_open || !i.hi.is_finite() && !i.hi_open) {
                    self.problem(at, "canonical", format!("infinite endpoint of {bad} must be open"));
                }
                let u = IntervalUnion::from_intervals(raw.iter().copied());
                if !IntervalUnion::is_canonical_list(&raw) {
                    self.problem(
                        at,
                        "canonical",
                        format!("interval list is not in canonical form; canonical form is {u}"),
                    );
                }
                Some(Region::Line(u))
            }
            GroundSpace::Finite(fs) => {
                let raw: Vec<String> = match serde_json::from_value(v.clone()) {
                    Ok(r) => r,
                    Err(e) => {
                        self.problem(at, "syntax", format!("expected a list of labels: {e}"));
                        return None;
                    }
                };
                let mut set = BTreeSet::new();
                for l in &raw {
                    match fs.index_of(l) {
                        Some(i) => {
                            if !set.insert(i) {
                                self.problem(at, "canonical", format!("label {l:?} repeated"));
                            }
                        }
                        None => self.problem(at, "kind", format!("unknown label {l:?}")),
                    }
                }
                let sorted: Vec<usize> = set.iter().copied().collect();
                let given: Vec<usize> = raw.iter().filter_map(|l| fs.index_of(l)).collect();
                if given != sorted && given.len() == sorted.len() {
                    self.problem(at, "canonical", "labels must be listed in space order");
                }
                Some(Region::Labels(set))
            }
            GroundSpace::Euclidean { dim } => {
                let raw: Vec<Vec<f64>> = match serde_json::from_value(v.clone()) {
                    Ok(r) => r,
                    Err(e) => {
                        self.problem(at, "syntax", format!("expected a list of coordinate arrays: {e}"));
                        return None;
                    }
                };
                if let Some(p) = raw.iter().find(|p| p.len() != *dim) {
                    self.problem(at, "kind", format!("point {p:?} is not {dim}-dimensional"));
                }
                let set: BTreeSet<Coord> = raw.iter().cloned().map(Coord).collect();
                let sorted: Vec<Coord> = set.iter().cloned().collect();
                let given: Vec<Coord> = raw.into_iter().map(Coord).collect();
                if given != sorted {
                    self.problem(at, "canonical", "points must be distinct and in lexicographic order");
                }
                Some(Region::Cloud(set))
            }
        }
    }

    fn point(&mut self, v: &Value, at: &str) -> Option<Point> {
        match self.space {
            GroundSpace::RealLine => match serde_json::from_value::<ExtReal>(v.clone()) {
                Ok(x) if x.is_finite() => Some(Point::Real(x)),
                Ok(_) => {
                    self.problem(at, "kind", "points must be finite");
                    None
                }
                Err(e) => {
                    self.problem(at, "syntax", format!("expected a number: {e}"));
                    None
                }
            },
            GroundSpace::Finite(fs) => match v.as_str().and_then(|l| fs.index_of(l)) {
                Some(i) => Some(Point::Label(i)),
                None => {
                    self.problem(at, "kind", format!("unknown label {v}"));
                    None
                }
            },
            GroundSpace::Euclidean { dim } => match serde_json::from_value::<Vec<f64>>(v.clone()) {
                Ok(c) if c.len() == *dim => Some(Point::Coord(Coord(c))),
                _ => {
                    self.problem(at, "kind", format!("expected a {dim}-dimensional point"));
                    None
                }
            },
        }
    }

    fn report(&mut self, at: &str, r: ValidationReport) {
        for v in r.violations {
            self.problems.push(Located {
                location: at.to_string(),
                clause: v.clause.name().to_string(),
                condition: v.clause.condition(),
                message: v.detail,
            });
        }
        for n in r.notes {
            self.notes.push(Located {
                location: at.to_string(),
                clause: "note".into(),
                condition: None,
                message: n,
            });
        }
    }
}

fn build_space(raw: &RawSpace) -> Result<GroundSpace, String> {
    match raw {
        RawSpace::RealLine => Ok(GroundSpace::RealLine),
        RawSpace::Finite { labels, table } => {
            GroundSpace::finite(labels.clone(), table.clone()).map_err(|e| e.to_string())
        }
        RawSpace::Euclidean { dim } => GroundSpace::euclidean(*dim).map_err(|e| e.to_string()),
    }
}

fn build_set(ctx: &mut Ctx, space: &Arc<GroundSpace>, raw: &RawSet, at: &str) -> Option<FuzzyObject> {
    let steps = |ctx: &mut Ctx, thresholds: &[f64], cuts: &[Value]| -> Option<StepFuzzySet> {
        let mut out = Vec::with_capacity(cuts.len());
        let mut ok = true;
        for (k, c) in cuts.iter().enumerate() {
            match ctx.region(c, &format!("{at}.cuts[{k}]")) {
                Some(r) => out.push(r),
                None => ok = false,
            }
        }
        ok.then(|| StepFuzzySet::from_parts(space.clone(), thresholds.to_vec(), out))
    };
    match raw {
        RawSet::Steps { thresholds, cuts, .. } => {
            let u = steps(ctx, thresholds, cuts)?;
            ctx.report(at, u.validate());
            Some(FuzzyObject::Steps(u))
        }
        RawSet::Sendo {
            thresholds, cuts, ghost, ..
        } => {
            let u = steps(ctx, thresholds, cuts);
            let g = ctx.region(ghost, &format!("{at}.ghost"));
            let v = SendoElement::from_parts(u?, g?);
            ctx.report(at, v.validate());
            Some(FuzzyObject::Sendo(v))
        }
        RawSet::Bands { normal, pieces, .. } => {
            if !matches!(ctx.space, GroundSpace::RealLine) {
                ctx.problem(at, "kind", "band sets live on the real line");
                return None;
            }
            let mut ps = Vec::with_capacity(pieces.len());
            for (k, p) in pieces.iter().enumerate() {
                let loc = format!("{at}.pieces[{k}].set");
                if !IntervalUnion::is_canonical_list(&p.set) {
                    ctx.problem(&loc, "canonical", "interval list is not in canonical form");
                }
                ps.push((IntervalUnion::from_intervals(p.set.iter().copied()), p.value));
            }
            let b = BandFuzzySet::from_parts(ps, *normal);
            ctx.report(at, b.validate());
            Some(FuzzyObject::Bands(b))
        }
        RawSet::Discrete { membership, .. } => {
            let mut pts: Vec<(Point, f64)> = Vec::new();
            for (k, m) in membership.iter().enumerate() {
                let loc = format!("{at}.membership[{k}]");
                let p = ctx.point(&m.point, &loc)?;
                if !(m.value > 0.0 && m.value <= 1.0) {
                    ctx.problem(&loc, "values", format!("membership {} outside (0,1]", m.value));
                }
                if pts.iter().any(|(q, _)| *q == p) {
                    ctx.problem(&loc, "values", format!("point {p} listed twice"));
                }
                pts.push((p, m.value));
            }
            let mut levels: Vec<f64> = pts.iter().map(|(_, a)| *a).filter(|a| *a > 0.0).collect();
            levels.sort_by(f64::total_cmp);
            levels.dedup();
            if levels.last() != Some(&1.0) {
                ctx.problem(at, "normality", "no point has membership 1");
            }
            let cuts: Vec<Region> = levels
                .iter()
                .map(|&a| points_region(pts.iter().filter(|(_, b)| *b >= a).map(|(p, _)| p.clone()), space))
                .collect();
            Some(FuzzyObject::Steps(StepFuzzySet::from_parts(space.clone(), levels, cuts)))
        }
    }
}

fn points_region(points: impl Iterator<Item = Point>, space: &GroundSpace) -> Region {
    let mut r = Region::empty_in(space);
    for p in points {
        let one = match p {
            Point::Label(i) => Region::labels([i]),
            Point::Coord(c) => Region::Cloud([c].into_iter().collect()),
            Point::Real(x) => Region::reals([x.get()]),
        };
        r = r.union(&one).expect("same kind");
    }
    r
}

/// Reads a document and reports every problem found, with locations.
pub fn check_document(text: &str) -> DocCheck {
    let mut out = DocCheck::default();
    let raw: RawDoc = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => {
            out.problems.push(Located {
                location: format!("line {}, column {}", e.line(), e.column()),
                clause: "syntax".into(),
                condition: None,
                message: e.to_string(),
            });
            return out;
        }
    };
    if raw.version != VERSION {
        out.problems.push(Located {
            location: "version".into(),
            clause: "syntax".into(),
            condition: None,
            message: format!("unsupported version {:?}; expected {VERSION:?}", raw.version),
        });
        return out;
    }
    let space = match build_space(&raw.space) {
        Ok(s) => Arc::new(s),
        Err(e) => {
            out.problems.push(Located {
                location: "space".into(),
                clause: "space".into(),
                condition: None,
                message: e,
            });
            return out;
        }
    };
    let mut ctx = Ctx {
        space: &space,
        problems: Vec::new(),
        notes: Vec::new(),
    };
    let mut sets = Vec::new();
    for (k, s) in raw.sets.iter().enumerate() {
        let at = format!("sets[{k}] ({})", s.name());
        if raw.sets[..k].iter().any(|t| t.name() == s.name()) {
            ctx.problem(&at, "syntax", format!("duplicate set name {:?}", s.name()));
        }
        if let Some(object) = build_set(&mut ctx, &space, s, &at) {
            sets.push(NamedObject {
                name: s.name().to_string(),
                object,
            });
        }
    }
    for (k, c) in raw.collections.iter().enumerate() {
        for m in &c.members {
            if !raw.sets.iter().any(|s| s.name() == m) {
                ctx.problem(
                    &format!("collections[{k}] ({})", c.name),
                    "syntax",
                    format!("unknown member {m:?}"),
                );
            }
        }
    }
    out.problems = ctx.problems;
    out.notes = ctx.notes;
    out.document = Some(Document {
        space,
        sets,
        collections: raw.collections,
    });
    out
}

/// Strict read: any problem rejects the document.
pub fn parse_document(text: &str) -> Result<Document, DocError> {
    let c = check_document(text);
    if !c.problems.is_empty() {
        return Err(DocError(c.problems));
    }
    c.document.ok_or_else(|| DocError(Vec::new()))
}

fn region_value(r: &Region, space: &GroundSpace) -> Value {
    match (r, space) {
        (Region::Line(u), _) => serde_json::to_value(u).expect("intervals serialize"),
        (Region::Labels(s), GroundSpace::Finite(fs)) => {
            Value::from(s.iter().map(|&i| fs.labels()[i].clone()).collect::<Vec<_>>())
        }
        (Region::Cloud(s), _) => serde_json::to_value(s.iter().collect::<Vec<_>>()).expect("coords serialize"),
        (Region::Labels(s), _) => Value::from(s.iter().map(|i| i.to_string()).collect::<Vec<_>>()),
    }
}

fn raw_space(space: &GroundSpace) -> RawSpace {
    match space {
        GroundSpace::RealLine => RawSpace::RealLine,
        GroundSpace::Finite(fs) => RawSpace::Finite {
            labels: fs.labels().to_vec(),
            table: fs.table().to_vec(),
        },
        GroundSpace::Euclidean { dim } => RawSpace::Euclidean { dim: *dim },
    }
}

fn raw_set(o: &NamedObject, space: &GroundSpace) -> RawSet {
    use crate::fuzzy::Leveled;
    let cuts_of = |u: &StepFuzzySet| u.cuts().iter().map(|c| region_value(c, space)).collect();
    match &o.object {
        FuzzyObject::Steps(u) => RawSet::Steps {
            name: o.name.clone(),
            thresholds: u.thresholds().to_vec(),
            cuts: cuts_of(u),
        },
        FuzzyObject::Sendo(v) => RawSet::Sendo {
            name: o.name.clone(),
            thresholds: v.thresholds().to_vec(),
            cuts: cuts_of(v.base()),
            ghost: region_value(v.ghost(), space),
        },
        FuzzyObject::Bands(b) => RawSet::Bands {
            name: o.name.clone(),
            normal: b.claims_normal(),
            pieces: b
                .pieces()
                .iter()
                .map(|(p, a)| RawPiece {
                    value: *a,
                    set: p.intervals().to_vec(),
                })
                .collect(),
        },
    }
}

impl Document {
    pub fn new(space: Arc<GroundSpace>) -> Self {
        Document {
            space,
            sets: Vec::new(),
            collections: Vec::new(),
        }
    }

    pub fn with(mut self, name: &str, object: FuzzyObject) -> Self {
        self.sets.push(NamedObject {
            name: name.to_string(),
            object,
        });
        self
    }

    pub fn get(&self, name: &str) -> Option<&FuzzyObject> {
        self.sets.iter().find(|s| s.name == name).map(|s| &s.object)
    }

    pub fn collection(&self, name: &str) -> Option<Vec<&FuzzyObject>> {
        let c = self.collections.iter().find(|c| c.name == name)?;
        c.members.iter().map(|m| self.get(m)).collect()
    }

    /// Canonical serialization.
    pub fn to_json(&self) -> String {
        let raw = RawDoc {
            version: VERSION.to_string(),
            space: raw_space(&self.space),
            sets: self.sets.iter().map(|s| raw_set(s, &self.space)).collect(),
            collections: self.collections.clone(),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("document serializes");
        s.push('\n');
        s
    }
}
