//! WebAssembly bindings for the demo page in `www/`.
//!
//! Every export takes and returns strings: the result is a JSON object with
//! either the answer or an `"error"` field, so nothing here needs a JS
//! runtime and the same functions run under native tests.

use endograph::convergence::{judge, Family, FamilyKind, EXACT_TOL};
use endograph::doc::{parse_document, FuzzyObject};
use endograph::fuzzy::classify_levels;
use endograph::metrics::{Metric, MetricReport, CHECK_TOL};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn reply(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn pick<'a>(doc: &'a endograph::doc::Document, name: &str) -> Result<&'a FuzzyObject, String> {
    doc.get(name).ok_or_else(|| format!("no set named {name:?}"))
}

/// Distance between sets `a` and `b` of one document, with the full report.
/// `p` is read only for `dp`.
#[wasm_bindgen]
pub fn distance(document: &str, a: &str, b: &str, metric: &str, p: f64) -> String {
    reply((|| {
        let doc = parse_document(document).map_err(|e| e.to_string())?;
        let m = Metric::parse(metric, (metric == "dp").then_some(p)).map_err(|e| e.to_string())?;
        let u = pick(&doc, a)?.as_element().ok_or("band sets have no distance here")?;
        let v = pick(&doc, b)?.as_element().ok_or("band sets have no distance here")?;
        let value = m.eval(&u, &v).map_err(|e| e.to_string())?;
        let rep = MetricReport::compute(&u, &v, &[1.0, 2.0]).map_err(|e| e.to_string())?;
        Ok(json!({
            "metric": m.name(),
            "value": value,
            "report": rep,
            "chain_violations": rep.chain_violations(CHECK_TOL),
        }))
    })())
}

/// Irregular level sets of one set, as interval text.
#[wasm_bindgen]
pub fn classify(document: &str, name: &str) -> String {
    reply((|| {
        let doc = parse_document(document).map_err(|e| e.to_string())?;
        let r = match pick(&doc, name)? {
            FuzzyObject::Steps(u) => classify_levels(u),
            FuzzyObject::Sendo(v) => classify_levels(v),
            FuzzyObject::Bands(b) => classify_levels(b),
        };
        Ok(json!({
            "d": r.d.to_string(),
            "p": r.p.to_string(),
            "p0": r.p0.to_string(),
            "f": r.f.to_string(),
        }))
    })())
}

/// `H_send`, `H_end` and `d_∞` of members `1..=n` of a family against its
/// limit, with a verdict per metric.
#[wasm_bindgen]
pub fn trajectory(family: &str, n: usize) -> String {
    reply((|| {
        if n == 0 || n > 200 {
            return Err("n must lie in 1..=200".into());
        }
        let kind: FamilyKind = family.parse().map_err(|e: endograph::Error| e.to_string())?;
        let fam = Family::new(kind, n);
        let u = fam.limit().map_err(|e| e.to_string())?;
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let m = fam.member(i).map_err(|e| e.to_string())?;
            rows.push((i, MetricReport::compute(&m, &u, &[]).map_err(|e| e.to_string())?));
        }
        let series = |f: fn(&MetricReport) -> endograph::Dist| rows.iter().map(|(i, r)| (*i, f(r))).collect::<Vec<_>>();
        let send = series(|r| r.h_send.value());
        let end = series(|r| r.h_end.value());
        let sup = series(|r| r.d_inf);
        let col = |s: &[(usize, endograph::Dist)]| s.iter().map(|(_, d)| json!(d)).collect::<Vec<_>>();
        Ok(json!({
            "n": (1..=n).collect::<Vec<_>>(),
            "h_send": col(&send),
            "h_end": col(&end),
            "d_inf": col(&sup),
            "verdicts": {
                "h_send": judge(&send, EXACT_TOL).to_string(),
                "h_end": judge(&end, EXACT_TOL).to_string(),
                "d_inf": judge(&sup, EXACT_TOL).to_string(),
            },
        }))
    })())
}
