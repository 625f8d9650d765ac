use std::sync::Arc;

use endograph::completion::{
    flatten_below, greedy_eps_net, project_to_grid, total_boundedness_report, truncate_above, verify_cover,
    BoundednessMode,
};
use endograph::convergence::{diagnostics_from_rows, Family, FamilyKind, TrajectoryRow, EXACT_TOL};
use endograph::doc::{Document, FuzzyObject};
use endograph::fuzzy::{classify_levels, is_arrow_image, CutQueries, LevelSetReport, SendoElement, StepFuzzySet};
use endograph::metrics::{Metric, MetricReport, CHECK_TOL};
use endograph::{GroundSpace, IntervalUnion, Region};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::Inputs;
use crate::{gallery, pool, CliError, CliResult, MetricName, NetMode, Output, TableFormat, TrajectoryFormat};

pub(crate) fn report(command: &str, mut body: Value) -> String {
    let map = body.as_object_mut().expect("report body is an object");
    map.insert("version".into(), Value::from(crate::REPORT_VERSION));
    map.insert("command".into(), Value::from(command));
    let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
    s.push('\n');
    s
}

fn element(o: &FuzzyObject, what: &str) -> CliResult<SendoElement> {
    o.as_element()
        .ok_or_else(|| CliError::failure(format!("{what}: band sets have no graph representation here")))
}

fn steps(o: &FuzzyObject, what: &str) -> CliResult<StepFuzzySet> {
    match o {
        FuzzyObject::Steps(u) => Ok(u.clone()),
        FuzzyObject::Sendo(v) => Ok(v.arrow_back()),
        FuzzyObject::Bands(_) => Err(CliError::failure(format!("{what}: expected a steps set"))),
    }
}

fn union_json(u: &IntervalUnion) -> Value {
    json!({ "intervals": u, "text": u.to_string() })
}

fn levels_json(r: &LevelSetReport) -> Value {
    json!({
        "d": union_json(&r.d),
        "p": union_json(&r.p),
        "p0": union_json(&r.p0),
        "f": union_json(&r.f),
        "nested": r.nested(),
    })
}

fn parse_list(s: &str, what: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("{what}: {t:?} is not a number")))
        })
        .collect()
}

/// `a..b`, `a..=b` or `a,b,c`.
pub(crate) fn parse_range(s: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::usage(format!("--n {s:?}: expected a..b, a..=b or a comma list"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let v: Vec<usize> = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?..=num(b)?).collect()
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?..num(b)?).collect()
    } else {
        s.split(',').map(num).collect::<CliResult<_>>()?
    };
    if v.is_empty() || v.contains(&0) || v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(bad());
    }
    Ok(v)
}

pub(crate) fn validate(input: &mut Inputs, file: &str) -> CliResult<Output> {
    let c = input.check(file)?;
    let mut notes: Vec<Value> = c.notes.iter().map(|n| json!(n)).collect();
    let mut sets = Vec::new();
    if let Some(d) = &c.document {
        for (k, s) in d.sets.iter().enumerate() {
            let mut entry = json!({ "name": s.name, "kind": s.object.kind() });
            if let FuzzyObject::Sendo(v) = &s.object {
                if c.problems.is_empty() {
                    let r = is_arrow_image(v)?;
                    entry["arrow_image"] = json!(r.is_image);
                    if !r.is_image {
                        notes.push(json!({
                            "location": format!("sets[{k}] ({})", s.name),
                            "clause": "note",
                            "message": "not an arrow image: the 0-level is strictly larger than the closure of the positive levels",
                        }));
                    }
                }
            }
            sets.push(entry);
        }
    }
    let valid = c.is_valid();
    let text = report(
        "validate",
        json!({ "file": file, "valid": valid, "problems": c.problems, "notes": notes, "sets": sets }),
    );
    Ok(Output {
        text,
        ok: valid,
        failure: (!valid).then(|| {
            c.problems
                .iter()
                .map(|p| format!("{file}: {p}"))
                .collect::<Vec<_>>()
                .join("\n")
        }),
    })
}

pub(crate) fn dist(input: &mut Inputs, metric: MetricName, p: Option<f64>, a: &str, b: &str) -> CliResult<Output> {
    let name = match metric {
        MetricName::Hend => "hend",
        MetricName::Hsend => "hsend",
        MetricName::Dinf => "dinf",
        MetricName::Dp => "dp",
    };
    if metric != MetricName::Dp && p.is_some() {
        return Err(CliError::usage("--p applies to --metric dp only"));
    }
    let m = Metric::parse(name, p)?;
    let la = input.object(a)?;
    let lb = input.object(b)?;
    if la.document.space != lb.document.space {
        return Err(CliError::failure(format!(
            "{a} and {b} live in different spaces ({} vs {})",
            la.document.space.kind_name(),
            lb.document.space.kind_name()
        )));
    }
    let u = element(&la.object, a)?;
    let v = element(&lb.object, b)?;
    let mut ps = vec![1.0, 2.0];
    if let Some(p) = p {
        if !ps.contains(&p) {
            ps.push(p);
        }
    }
    let value = m.eval(&u, &v)?;
    let rep = MetricReport::compute(&u, &v, &ps)?;
    let violations = rep.chain_violations(CHECK_TOL);
    let ok = violations.is_empty();
    let text = report(
        "dist",
        json!({
            "metric": m.name(),
            "a": a,
            "b": b,
            "value": value,
            "report": rep,
            "chain_violations": violations,
        }),
    );
    Ok(Output {
        text,
        ok,
        failure: (!ok).then(|| format!("inequality chain violated: {}", violations.join("; "))),
    })
}

pub(crate) fn classify(input: &mut Inputs, file: &str) -> CliResult<Output> {
    let l = input.object(file)?;
    let r = match &l.object {
        FuzzyObject::Steps(u) => classify_levels(u),
        FuzzyObject::Sendo(v) => classify_levels(v),
        FuzzyObject::Bands(b) => classify_levels(b),
    };
    let critical = match &l.object {
        FuzzyObject::Steps(u) => u.critical_levels(),
        FuzzyObject::Sendo(v) => v.critical_levels(),
        FuzzyObject::Bands(b) => b.critical_levels(),
    };
    Ok(Output::ok(report(
        "classify",
        json!({ "set": l.name, "critical_levels": critical, "levels": levels_json(&r) }),
    )))
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn seq(
    input: &mut Inputs,
    family: &str,
    n: &str,
    limit: Option<&str>,
    p: &str,
    levels: Option<usize>,
    format: TrajectoryFormat,
) -> CliResult<Output> {
    let kind: FamilyKind = family.parse()?;
    let indices = parse_range(n)?;
    let ps = parse_list(p, "--p")?;
    let mut fam = Family::new(kind, *indices.last().expect("non-empty"));
    if let Some(m) = levels {
        if m == 0 {
            return Err(CliError::usage("--levels must be positive"));
        }
        fam = fam.with_levels(m);
    }
    let (u, limit_source) = match limit {
        Some(spec) => {
            let l = input.object(spec)?;
            if *l.document.space != *fam.space() {
                return Err(CliError::failure(format!("{spec}: limit lives in another space than {kind}")));
            }
            (element(&l.object, spec)?, spec.to_string())
        }
        None => (fam.limit()?, "family".to_string()),
    };
    let rows: Vec<TrajectoryRow> = pool()?.install(|| {
        indices
            .par_iter()
            .map(|&i| {
                let m = fam.member(i)?;
                Ok(TrajectoryRow {
                    n: i,
                    report: MetricReport::compute(&m, &u, &ps)?,
                })
            })
            .collect::<endograph::Result<Vec<_>>>()
    })?;
    let diag = diagnostics_from_rows(rows, &ps, EXACT_TOL);
    let text = match format {
        TrajectoryFormat::Doc => report(
            "seq",
            json!({
                "family": kind.id(),
                "levels": kind.is_discretized().then_some(fam.levels),
                "limit": limit_source,
                "label": format!("diagnostic at N={}", indices.last().expect("non-empty")),
                "diagnostics": diag,
                "implication_failures": diag.implication_failures(),
            }),
        ),
        TrajectoryFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["n".to_string(), "d_inf".into(), "h_send".into(), "h_end".into(), "h_zero".into()];
            header.extend(ps.iter().map(|p| format!("d_{p}")));
            let csv_err = |e: csv::Error| CliError::failure(e.to_string());
            w.write_record(&header).map_err(csv_err)?;
            for r in &diag.rows {
                let mut rec = vec![
                    r.n.to_string(),
                    r.report.d_inf.to_string(),
                    r.report.h_send.value().to_string(),
                    r.report.h_end.value().to_string(),
                    r.report.h_zero.value().to_string(),
                ];
                rec.extend(r.report.d_p.iter().map(|(_, d)| d.to_string()));
                w.write_record(&rec).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::failure(e.to_string()))?).expect("utf-8")
        }
    };
    Ok(Output::ok(text))
}

pub(crate) fn net(
    input: &mut Inputs,
    file: &str,
    eps: f64,
    levels: &str,
    mode: NetMode,
    collection: Option<&str>,
) -> CliResult<Output> {
    let doc = input.document(file)?;
    let objects: Vec<&FuzzyObject> = match collection {
        Some(c) => doc
            .collection(c)
            .ok_or_else(|| CliError::failure(format!("{file}: no collection named {c:?}")))?,
        None => doc.sets.iter().map(|s| &s.object).collect(),
    };
    let members = objects
        .iter()
        .map(|o| element(o, file))
        .collect::<CliResult<Vec<_>>>()?;
    let levels = parse_list(levels, "--levels")?;
    let mode = match mode {
        NetMode::End => BoundednessMode::End,
        NetMode::Send => BoundednessMode::Send,
    };
    let rep = total_boundedness_report(&members, &levels, eps, mode)?;
    let mut audits = Vec::new();
    let mut ok = true;
    for c in &rep.certificates {
        let alpha = c.alpha.unwrap_or(0.0);
        let set = endograph::completion::union_at_level(&members, alpha)?;
        let audit = if c.success() {
            verify_cover(&set, &c.centers, eps, &doc.space)?
        } else {
            let again = greedy_eps_net(&set, eps, &doc.space)?;
            again.outcome == c.outcome
        };
        ok &= audit;
        audits.push(json!({ "alpha": alpha, "independent_check": audit }));
    }
    let text = report("net", json!({ "file": file, "report": rep, "audit": audits }));
    Ok(Output {
        text,
        ok,
        failure: (!ok).then(|| "a certificate failed its independent check".to_string()),
    })
}

fn parse_grid(s: &str, space: &GroundSpace) -> CliResult<Region> {
    let items: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = |t: &str| CliError::usage(format!("--grid: cannot read {t:?} as a point of the {} space", space.kind_name()));
    match space {
        GroundSpace::RealLine => {
            let v = items
                .iter()
                .map(|t| t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| bad(t)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Region::reals(v))
        }
        GroundSpace::Finite(fs) => {
            let v = items
                .iter()
                .map(|t| fs.index_of(t).ok_or_else(|| bad(t)))
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Region::labels(v))
        }
        GroundSpace::Euclidean { dim } => {
            let v = items
                .iter()
                .map(|t| {
                    let c: Vec<f64> = t.split(':').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad(t))?;
                    if c.len() == *dim {
                        Ok(c)
                    } else {
                        Err(bad(t))
                    }
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Region::cloud(v))
        }
    }
}

fn one_set_doc(space: Arc<GroundSpace>, name: &str, u: StepFuzzySet) -> String {
    Document::new(space).with(name, FuzzyObject::Steps(u)).to_json()
}

pub(crate) fn project(input: &mut Inputs, file: &str, grid: &str, eps: f64) -> CliResult<Output> {
    let l = input.object(file)?;
    let v = steps(&l.object, file)?;
    let c0 = parse_grid(grid, &l.document.space)?;
    let w = project_to_grid(&v, &c0, eps)?;
    Ok(Output::ok(one_set_doc(l.document.space.clone(), &format!("{}-projected", l.name), w)))
}

pub(crate) fn flatten(input: &mut Inputs, file: &str, eps: f64) -> CliResult<Output> {
    let l = input.object(file)?;
    let v = element(&l.object, file)?;
    let w = flatten_below(&v, eps)?;
    Ok(Output::ok(one_set_doc(l.document.space.clone(), &format!("{}-flattened", l.name), w)))
}

pub(crate) fn truncate(input: &mut Inputs, file: &str, eps: f64) -> CliResult<Output> {
    let l = input.object(file)?;
    let u = steps(&l.object, file)?;
    let w = truncate_above(&u, eps)?;
    Ok(Output::ok(one_set_doc(l.document.space.clone(), &format!("{}-truncated", l.name), w)))
}

pub(crate) fn gallery(name: &str, n: Option<usize>, p: Option<f64>, format: TableFormat) -> CliResult<Output> {
    let names: Vec<&str> = if name == "all" {
        gallery::NAMES.to_vec()
    } else if gallery::NAMES.contains(&name) {
        vec![name]
    } else {
        return Err(CliError::usage(format!(
            "unknown gallery entry {name:?}; known: {}, all",
            gallery::NAMES.join(", ")
        )));
    };
    let runs = names
        .iter()
        .map(|g| gallery::run(g, n, p))
        .collect::<CliResult<Vec<_>>>()?;
    let ok = runs.iter().all(|r| r.pass());
    let text = match format {
        TableFormat::Doc => report("gallery", json!({ "pass": ok, "entries": runs })),
        TableFormat::Table => {
            let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::failure(e.to_string());
            w.write_record(["entry", "quantity", "expected", "computed", "pass"]).map_err(csv_err)?;
            for r in &runs {
                for c in &r.checks {
                    w.write_record([
                        r.name.as_str(),
                        &c.quantity,
                        &c.expected,
                        &c.computed,
                        if c.pass { "pass" } else { "FAIL" },
                    ])
                    .map_err(csv_err)?;
                }
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::failure(e.to_string()))?).expect("utf-8")
        }
    };
    let failed: Vec<String> = runs
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| format!("{}: {}", r.name, c.quantity)))
        .collect();
    Ok(Output {
        text,
        ok,
        failure: (!ok).then(|| format!("expectation mismatch: {}", failed.join("; "))),
    })
}
