//! Scripted reproductions of the worked examples, each compared with its
//! expected values.

use endograph::convergence::{judge, level_decomposition_test, Family, FamilyKind, Trend, EXACT_TOL};
use endograph::fuzzy::{classify_levels, is_arrow_image, BandFuzzySet};
use endograph::metrics::{cut_directed, dp_metric, end_metric, send_metric, sup_metric, CHECK_TOL};
use endograph::{Dist, Interval, IntervalUnion};
use serde::Serialize;

use crate::{CliError, CliResult};

pub const NAMES: [&str; 7] = ["pdr", "nce", "snp", "snc", "fnc", "remark45", "platform-fail"];

/// Levels used by the sampled `L_p` check of `snp`.
pub const SNP_DP_LEVELS: usize = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GalleryRun {
    pub name: String,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub checks: Vec<Check>,
    /// Verdicts of the trajectories the checks were read from.
    pub trajectories: Vec<(String, String)>,
}

impl GalleryRun {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn check(&mut self, quantity: impl Into<String>, expected: impl Into<String>, computed: impl ToString, pass: bool) {
        self.checks.push(Check {
            quantity: quantity.into(),
            expected: expected.into(),
            computed: computed.to_string(),
            pass,
        });
    }
}

fn new_run(name: &str, n: Option<usize>, p: Option<f64>) -> GalleryRun {
    GalleryRun {
        name: name.to_string(),
        n,
        p,
        checks: Vec::new(),
        trajectories: Vec::new(),
    }
}

/// Runs one gallery entry. `n` and `p` override the entry's defaults.
pub fn run(name: &str, n: Option<usize>, p: Option<f64>) -> CliResult<GalleryRun> {
    match name {
        "pdr" => pdr(),
        "nce" => nce(n.unwrap_or(10)),
        "snp" => snp(n.unwrap_or(4), p.unwrap_or(2.0)),
        "snc" => snc(n.unwrap_or(50)),
        "fnc" => fnc(n.unwrap_or(50)),
        "remark45" => remark45(n.unwrap_or(50)),
        "platform-fail" => platform_fail(n.unwrap_or(50)),
        _ => Err(CliError::usage(format!("unknown gallery entry {name:?}"))),
    }
}

fn positive(n: usize) -> CliResult<usize> {
    if n == 0 {
        Err(CliError::usage("--n must be positive"))
    } else {
        Ok(n)
    }
}

/// 1 on `(0,1)`, 0.6 on `[1,3]`.
fn pdr() -> CliResult<GalleryRun> {
    let mut r = new_run("pdr", None, None);
    let u = BandFuzzySet::new(
        vec![
            (IntervalUnion::from_interval(Interval::open(0.0, 1.0)), 1.0),
            (IntervalUnion::from_interval(Interval::closed(1.0, 3.0)), 0.6),
        ],
        true,
    )?;
    let l = classify_levels(&u);
    let d = IntervalUnion::from_points([0.6]);
    let f = IntervalUnion::from_interval(Interval::open(0.0, 1.0));
    r.check("D(u)", d.to_string(), &l.d, l.d == d);
    r.check("P(u)", IntervalUnion::empty().to_string(), &l.p, l.p.is_empty());
    r.check("F(u)", f.to_string(), &l.f, l.f == f);
    r.check("P(u) ⊆ D(u) ⊆ F(u)", "true", l.nested(), l.nested());
    Ok(r)
}

fn nce(n: usize) -> CliResult<GalleryRun> {
    let n = positive(n)?;
    let mut r = new_run("nce", Some(n), None);
    let fam = Family::new(FamilyKind::Nce, n);
    let w = fam.limit()?;
    let members = fam.members(&(1..=n).collect::<Vec<_>>())?;
    for (i, u) in &members {
        let h = send_metric(u, &w)?.value();
        let want = 1.0 / *i as f64;
        r.check(format!("H_send(→u_{i}, w)"), Dist::of(want).to_string(), h, h == Dist::of(want));
    }
    let mut off = Dist::of(1.0);
    let mut all_one = true;
    for (i, a) in &members {
        for (j, b) in &members {
            if i < j {
                let d = sup_metric(a, b)?;
                all_one &= d == Dist::of(1.0);
                if d != Dist::of(1.0) {
                    off = d;
                }
            }
        }
    }
    r.check("d_∞(u_n, u_m), n ≠ m", "1", if all_one { Dist::of(1.0) } else { off }, all_one);
    let wr = is_arrow_image(&w)?;
    r.check("w is an arrow image", "false", wr.is_image, !wr.is_image);
    r.check("w report consistent", "true", wr.consistent(), wr.consistent());
    let images = members
        .iter()
        .map(|(_, u)| Ok(is_arrow_image(u)?.is_image))
        .collect::<endograph::Result<Vec<_>>>()?;
    let all = images.iter().all(|&b| b);
    r.check("every →u_n is an arrow image", "true", all, all);
    Ok(r)
}

fn snp(n: usize, p: f64) -> CliResult<GalleryRun> {
    let n = positive(n)?;
    if !(p.is_finite() && p >= 1.0) {
        return Err(CliError::usage(format!("--p {p}: expected a finite p >= 1")));
    }
    let mut r = new_run("snp", Some(n), Some(p));
    let fine = Family::new(FamilyKind::Snp, n).with_levels(SNP_DP_LEVELS);
    let u = fine.limit()?;
    let un = fine.member(n)?;
    let dp = dp_metric(&un, &u, p)?.get();
    let want = (n as f64).powf(2.0 - 1.0 / p);
    let rel = (dp - want).abs() / want;
    r.check(
        format!("d_{p}(u_{n}, u) at {SNP_DP_LEVELS} levels"),
        format!("{want} within 1%"),
        dp,
        rel <= 0.01,
    );
    let coarse = Family::new(FamilyKind::Snp, n);
    let m = coarse.levels;
    let h = send_metric(&coarse.member(n)?, &coarse.limit()?)?.value().get();
    let slack = 2.0 / m as f64;
    r.check(
        format!("H_send(u_{n}, u) + 2/{m}"),
        format!("<= {}", 1.0 / n as f64),
        h + slack,
        h + slack <= 1.0 / n as f64 + CHECK_TOL,
    );
    Ok(r)
}

/// `H_end(u_n, u)` must tail-vanish while a chosen cut distance stays `+∞`.
fn end_with_infinite_cut(
    name: &str,
    kind: FamilyKind,
    n: usize,
    alpha: f64,
    cut_label: &str,
    limit_first: bool,
) -> CliResult<GalleryRun> {
    let n = positive(n)?;
    let mut r = new_run(name, Some(n), None);
    let fam = Family::new(kind, n);
    let u = fam.limit()?;
    let mut end = Vec::with_capacity(n);
    let mut finite_at = Vec::new();
    for i in 1..=n {
        let ui = fam.member(i)?;
        end.push((i, end_metric(&ui, &u)?.value()));
        let h = if limit_first {
            cut_directed(&u, alpha, &ui, alpha)?
        } else {
            cut_directed(&ui, alpha, &u, alpha)?
        };
        if h.is_finite() {
            finite_at.push(i);
        }
    }
    let v = judge(&end, EXACT_TOL);
    r.trajectories.push(("H_end(u_n, u)".into(), v.to_string()));
    r.check("H_end(u_n, u) → 0", "tail vanishes", v.trend.name(), v.tail_vanishes());
    r.check(
        cut_label.to_string(),
        "+inf for every n",
        if finite_at.is_empty() { "+inf".to_string() } else { format!("finite at n = {finite_at:?}") },
        finite_at.is_empty(),
    );
    Ok(r)
}

fn snc(n: usize) -> CliResult<GalleryRun> {
    end_with_infinite_cut("snc", FamilyKind::Snc, n, 1.0 / 3.0, "H*([u]_{1/3}, [u_n]_{1/3})", true)
}

fn fnc(n: usize) -> CliResult<GalleryRun> {
    end_with_infinite_cut("fnc", FamilyKind::Fnc, n, 1.0, "H*([u_n]_1, [u]_1)", false)
}

fn remark45(n: usize) -> CliResult<GalleryRun> {
    let n = positive(n)?;
    let mut r = new_run("remark45", Some(n), None);
    let fam = Family::new(FamilyKind::Remark45, n);
    let u = fam.limit()?;
    let mut end = Vec::with_capacity(n);
    let mut send = Vec::with_capacity(n);
    let mut bound = true;
    for i in 1..=n {
        let ui = fam.member(i)?;
        let e = end_metric(&ui, &u)?.value();
        bound &= e.le_tol(Dist::of(1.0 / i as f64), CHECK_TOL);
        end.push((i, e));
        send.push((i, send_metric(&ui, &u)?.value()));
    }
    let ve = judge(&end, EXACT_TOL);
    let vs = judge(&send, EXACT_TOL);
    r.trajectories.push(("H_end(u_n, u)".into(), ve.to_string()));
    r.trajectories.push(("H_send(u_n, u)".into(), vs.to_string()));
    r.check("H_end(u_n, u) → 0", "tail vanishes", ve.trend.name(), ve.tail_vanishes());
    r.check("H_end(u_n, u) <= 1/n", "true", bound, bound);
    Ok(r)
}

fn platform_fail(n: usize) -> CliResult<GalleryRun> {
    let n = positive(n)?;
    let mut r = new_run("platform-fail", Some(n), None);
    let fam = Family::new(FamilyKind::PlatformFail, n);
    let u = fam.limit()?;
    let members = fam.members(&(1..=n).collect::<Vec<_>>())?;
    let grid: Vec<f64> = (1..=20).map(|k| k as f64 / 20.0).collect();
    let dec = level_decomposition_test(&members, &u, &grid, EXACT_TOL)?;
    for lt in &dec.levels {
        if lt.alpha == 0.5 {
            let all_one = lt.values.iter().all(|(_, d)| *d == Dist::of(1.0));
            r.check("H([u_n]_{1/2}, [u]_{1/2})", "1 for all n", lt.verdict.tail_max, all_one);
            r.check("1/2 ∈ P_0(u)", "true", lt.in_p0, lt.in_p0);
        }
    }
    let others: Vec<f64> = dec
        .levels
        .iter()
        .filter(|l| l.alpha != 0.5 && l.verdict.trend != Trend::Vanishing)
        .map(|l| l.alpha)
        .collect();
    r.check(
        "per-level distances off 1/2 vanish",
        "all grid levels",
        if others.is_empty() { "all".into() } else { format!("fail at {others:?}") },
        others.is_empty(),
    );
    let mut bound = true;
    for (i, m) in &members {
        bound &= end_metric(m, &u)?.value().le_tol(Dist::of(1.0 / *i as f64), CHECK_TOL);
    }
    r.check("H_end(u_n, u) <= 1/n", "true", bound, bound);
    Ok(r)
}
