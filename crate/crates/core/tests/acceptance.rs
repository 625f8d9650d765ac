//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every verdict is printed; exits nonzero when any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use common::{Backend, BACKENDS};
use endograph::completion::{
    flatten_below, greedy_eps_net, project_to_grid, real_grid, truncate_above, union_at_level, verify_cover,
    NetOutcome,
};
use endograph::convergence::{judge, level_decomposition_test, Family, FamilyKind, Trend, Verdict, EXACT_TOL};
use endograph::fuzzy::{classify_levels, is_arrow_image, BandFuzzySet, Leveled, SendoElement, StepFuzzySet};
use endograph::metrics::{
    cut_directed, dp_metric, end_directed, end_metric, send_metric, sup_metric, MetricReport,
};
use endograph::space::Coord;
use endograph::{Dist, GroundSpace, Interval, IntervalUnion, Point, Region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(start: Instant, limit: Duration) -> (bool, String) {
    let t = start.elapsed();
    (t < limit, format!("{:.2}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

fn le(a: Dist, b: Dist) -> bool {
    a.le_tol(b, TOL)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn inequality_chain() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut bad = Vec::new();
    for b in BACKENDS {
        for k in 0..1000 {
            let (u, v) = common::pair(&mut r, b, false);
            let m = MetricReport::compute(&u, &v, &[1.0, 2.0]).expect("metrics");
            let (s, e, z) = (m.h_send.value(), m.h_end.value(), m.h_zero.value());
            let mut ok = le(s, m.d_inf) && le(e, s) && le(z, s);
            ok &= m.d_p.iter().all(|&(_, d)| le(d, m.d_inf));
            if e.get() < 1.0 {
                ok &= le(s, e + z);
            }
            if !ok {
                bad.push(format!("{b:?}#{k}"));
            }
        }
    }
    let (fast, t) = within(start, Duration::from_secs(10));
    outcome(bad.is_empty() && fast, format!("3000 pairs, {} violations {:?}, {t}", bad.len(), &bad[..bad.len().min(5)]))
}

fn closed_form_vs_grid() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut worst: f64 = 0.0;
    let mut bad = 0;
    for _ in 0..500 {
        let a = common::line_spec(&mut r, true);
        let b = common::line_spec(&mut r, true);
        let (u, v) = (a.element(), b.element());
        let send = send_metric(&u, &v).expect("send").value().get();
        let end = end_metric(&u, &v).expect("end").value().get();
        let gs = common::grid_metric(&a, &b, 1e-3, false);
        let ge = common::grid_metric(&a, &b, 1e-3, true);
        let err = (send - gs).abs().max((end - ge).abs());
        worst = worst.max(err);
        if !(err <= 2e-3) {
            bad += 1;
        }
    }
    let (fast, t) = within(start, Duration::from_secs(60));
    outcome(bad == 0 && fast, format!("500 instances, max gap {worst:.2e}, {bad} over 2e-3, {t}"))
}

fn singleton(space: &Arc<GroundSpace>, p: Point) -> SendoElement {
    StepFuzzySet::singleton(space.clone(), p).expect("singleton").into()
}

fn singleton_identities() -> Outcome {
    let mut r = rng(3);
    let mut bad = Vec::new();
    for b in BACKENDS {
        for k in 0..100 {
            let (space, p, q, d) = match b {
                Backend::Finite => {
                    let s = common::finite_space(&mut r);
                    let GroundSpace::Finite(fs) = &*s else { unreachable!() };
                    let (i, j) = (r.gen_range(0..fs.len()), r.gen_range(0..fs.len()));
                    let d = fs.table()[i][j];
                    (s.clone(), Point::Label(i), Point::Label(j), d)
                }
                Backend::Cloud => {
                    let x: Vec<f64> = vec![r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)];
                    let y: Vec<f64> = vec![r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0)];
                    let d = ((x[0] - y[0]).powi(2) + (x[1] - y[1]).powi(2)).sqrt();
                    (Arc::new(GroundSpace::Euclidean { dim: 2 }), Point::Coord(Coord(x)), Point::Coord(Coord(y)), d)
                }
                Backend::Line => {
                    let (x, y): (f64, f64) = (r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0));
                    let real = |t: f64| Point::Real(endograph::ExtReal::of(t));
                    (Arc::new(GroundSpace::RealLine), real(x), real(y), (x - y).abs())
                }
            };
            let (u, v) = (singleton(&space, p), singleton(&space, q));
            let m = MetricReport::compute(&u, &v, &[1.0, 2.0]).expect("metrics");
            let d = Dist::of(d);
            let ok = m.h_send.value() == d
                && m.d_inf == d
                && m.d_p.iter().all(|&(_, x)| x == d)
                && m.h_end.value() == d.min(Dist::of(1.0));
            if !ok {
                bad.push(format!("{b:?}#{k}: d={d} {m:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("300 pairs, {} mismatches {:?}", bad.len(), bad.first()))
}

fn snp_lp_growth() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    let fam = Family::new(FamilyKind::Snp, 8).with_levels(10_000);
    let u = fam.limit().expect("limit");
    let coarse = Family::new(FamilyKind::Snp, 8);
    let cu = coarse.limit().expect("limit");
    let m = coarse.levels as f64;
    for n in [1usize, 2, 4, 8] {
        let un = fam.member(n).expect("member");
        for p in [1.0, 2.0] {
            let d = dp_metric(&un, &u, p).expect("dp").get();
            let want = (n as f64).powf(2.0 - 1.0 / p);
            let rel = (d - want).abs() / want;
            ok &= rel <= 0.01;
            lines.push(format!("d_{p}(u_{n})={d}"));
        }
        // Sampled sets sit within 1/m of the true ones in H_send.
        let h = send_metric(&coarse.member(n).expect("member"), &cu).expect("send").value().get();
        ok &= h + 2.0 / m <= 1.0 / n as f64;
        lines.push(format!("H_send(u_{n})<={:.4}", h + 2.0 / m));
    }
    let (fast, t) = within(start, Duration::from_secs(30));
    outcome(ok && fast, format!("{}, {t}", lines.join(" ")))
}

fn nce_cauchy_without_limit() -> Outcome {
    let fam = Family::new(FamilyKind::Nce, 100);
    let w = fam.limit().expect("limit");
    let us = fam.members(&(1..=100).collect::<Vec<_>>()).expect("members");
    let mut exact = true;
    let mut images = true;
    for (n, u) in &us {
        exact &= send_metric(u, &w).expect("send").value() == Dist::of(1.0 / *n as f64);
        images &= is_arrow_image(u).expect("report").is_image;
    }
    let mut apart = true;
    for (i, a) in &us {
        for (j, b) in &us {
            if i < j {
                apart &= sup_metric(a, b).expect("sup") == Dist::of(1.0);
            }
        }
    }
    let w_image = is_arrow_image(&w).expect("report").is_image;
    outcome(
        exact && apart && images && !w_image,
        format!("H_send=1/n exact: {exact}, d_inf=1 off-diagonal: {apart}, u_n images: {images}, w image: {w_image}"),
    )
}

fn non_increasing(v: &[(usize, Dist)]) -> bool {
    v.windows(2).all(|w| w[1].1.le_tol(w[0].1, TOL))
}

fn end_vs_cut(kind: FamilyKind, alpha: f64, limit_first: bool) -> (bool, String) {
    let fam = Family::new(kind, 50);
    let u = fam.limit().expect("limit");
    let mut end = Vec::new();
    let mut infinite = true;
    for n in 1..=50 {
        let un = fam.member(n).expect("member");
        end.push((n, end_metric(&un, &u).expect("end").value()));
        let h = if limit_first {
            cut_directed(&u, alpha, &un, alpha)
        } else {
            cut_directed(&un, alpha, &u, alpha)
        }
        .expect("cut");
        infinite &= h.is_infinite();
    }
    let last = end[49].1;
    let ok = last.get() < 0.02 && non_increasing(&end) && infinite;
    (
        ok,
        format!("{kind}: H_end(u_50,u)={last} (<0.02: {}), non-increasing: {}, cut +inf: {infinite}", last.get() < 0.02, non_increasing(&end)),
    )
}

fn end_converges_cuts_do_not() -> Outcome {
    let (a, da) = end_vs_cut(FamilyKind::Snc, 1.0 / 3.0, true);
    let (b, db) = end_vs_cut(FamilyKind::Fnc, 1.0, false);
    outcome(a && b, format!("{da}; {db}"))
}

fn band_level_sets() -> Outcome {
    let u = BandFuzzySet::new(
        vec![
            (IntervalUnion::from_interval(Interval::open(0.0, 1.0)), 1.0),
            (IntervalUnion::from_interval(Interval::closed(1.0, 3.0)), 0.6),
        ],
        true,
    )
    .expect("band set");
    let r = classify_levels(&u);
    let ok = r.d == IntervalUnion::from_points([0.6])
        && r.p.is_empty()
        && r.f == IntervalUnion::from_interval(Interval::open(0.0, 1.0));
    outcome(ok, format!("D={} P={} F={}", r.d, r.p, r.f))
}

fn platform_levels() -> Outcome {
    let fam = Family::new(FamilyKind::PlatformFail, 50);
    let u = fam.limit().expect("limit");
    let members = fam.members(&(1..=50).collect::<Vec<_>>()).expect("members");
    let grid: Vec<f64> = (1..=20).map(|k| k as f64 / 20.0).collect();
    let dec = level_decomposition_test(&members, &u, &grid, EXACT_TOL).expect("levels");
    let mut ok = true;
    let mut odd = Vec::new();
    for l in &dec.levels {
        if l.alpha == 0.5 {
            ok &= l.in_p0 && l.values.iter().all(|(_, d)| *d == Dist::of(1.0));
        } else if !(l.verdict.tail_max.get() < 1e-9) {
            ok = false;
            odd.push(l.alpha);
        }
    }
    let mut bound = true;
    for (n, m) in &members {
        bound &= le(end_metric(m, &u).expect("end").value(), Dist::of(1.0 / *n as f64));
    }
    outcome(ok && bound, format!("flagged {:?}, non-vanishing off 1/2: {odd:?}, H_end<=1/n: {bound}", dec.flagged()))
}

fn shift_region(r: &Region, dx: f64) -> Region {
    match r {
        Region::Line(u) => Region::Line(IntervalUnion::from_intervals(u.intervals().iter().map(|i| {
            Interval::new(i.lo.get() + dx, i.hi.get() + dx, i.lo_open, i.hi_open)
        }))),
        Region::Cloud(s) => Region::cloud(s.iter().map(|c| c.0.iter().map(|x| x + dx).collect::<Vec<_>>())),
        Region::Labels(_) => r.clone(),
    }
}

/// A nearby element: thresholds moved a little, everything translated a little.
fn perturb(r: &mut ChaCha8Rng, u: &SendoElement) -> SendoElement {
    let dx = if r.gen_bool(0.7) { r.gen_range(-0.05..0.05) } else { 0.0 };
    let mut t: Vec<f64> = u.thresholds().to_vec();
    let k = t.len();
    for i in 0..k - 1 {
        let lo = if i == 0 { 0.0 } else { t[i - 1] };
        let hi = t[i + 1];
        let cand = t[i] + r.gen_range(-0.04..0.04);
        if cand > lo + 1e-3 && cand < hi - 1e-3 {
            t[i] = cand;
        }
    }
    let cuts = u.base().cuts().iter().map(|c| shift_region(c, dx)).collect();
    let base = StepFuzzySet::new(u.base().space_arc().clone(), t, cuts).expect("perturbed set");
    SendoElement::new(base, shift_region(u.ghost(), dx)).expect("perturbed ghost")
}

fn cut_bound_from_end() -> Outcome {
    let mut r = rng(9);
    let mut tested = 0;
    let mut bad = 0;
    for k in 0..1000 {
        let b = BACKENDS[k % 3];
        let (u, other) = common::pair(&mut r, b, false);
        let v = if r.gen_bool(0.8) { perturb(&mut r, &u) } else { other };
        let eps = r.gen_range(0.01..0.5);
        let beta = r.gen_range(0.0..(1.0 - eps));
        let alpha: f64 = r.gen_range((beta + eps)..=1.0);
        let e = end_directed(&u, &v).expect("end");
        if e.get() < eps {
            tested += 1;
            let beta = beta.max(0.0);
            let c = cut_directed(&u, alpha, &v, beta).expect("cut");
            if !le(c, e) {
                bad += 1;
            }
        }
    }
    outcome(bad == 0 && tested > 0, format!("1000 draws, {tested} met the hypothesis, {bad} violations"))
}

fn grid_around(v: &SendoElement, pitch: f64) -> Region {
    match v.zero_level() {
        Region::Line(s) => real_grid(s.intervals().iter().flat_map(|iv| {
            let (lo, hi) = (iv.lo.get(), iv.hi.get());
            let k = ((hi - lo) / pitch).ceil() as usize;
            (0..=k).map(move |i| (lo + i as f64 * pitch).min(hi))
        })),
        Region::Cloud(s) => Region::cloud(s.iter().map(|c| c.0.iter().map(|x| (x / pitch).round() * pitch).collect::<Vec<_>>())),
        Region::Labels(s) => Region::Labels(s),
    }
}

fn random_bounded(r: &mut ChaCha8Rng, k: usize) -> SendoElement {
    let (u, _) = common::pair(r, BACKENDS[k % 3], true);
    u
}

fn completion_constructions() -> Outcome {
    let mut r = rng(10);
    let mut fails = [0usize; 3];
    for k in 0..200 {
        let v = random_bounded(&mut r, k);
        let eps = r.gen_range(0.05..0.9);
        match flatten_below(&v, eps) {
            Ok(u) => {
                let d = send_metric(&v, &SendoElement::arrow_forward(&u)).expect("send").value();
                if !le(d, Dist::of(eps)) || !u.validate().is_valid() {
                    fails[0] += 1;
                }
            }
            Err(_) => fails[0] += 1,
        }
        let u = random_bounded(&mut r, k).arrow_back();
        match truncate_above(&u, eps) {
            Ok(w) => {
                if !le(end_metric(&u, &w).expect("end").value(), Dist::of(eps)) || !w.validate().is_valid() {
                    fails[1] += 1;
                }
            }
            Err(_) => fails[1] += 1,
        }
        let s = random_bounded(&mut r, k).arrow_back();
        let c0 = grid_around(&SendoElement::arrow_forward(&s), eps / 2.0);
        match project_to_grid(&s, &c0, eps) {
            Ok(w) => {
                if !w.validate().is_valid() || !le(sup_metric(&s, &w).expect("sup"), Dist::of(eps)) {
                    fails[2] += 1;
                }
            }
            Err(_) => fails[2] += 1,
        }
    }
    let line = Arc::new(GroundSpace::RealLine);
    let v = StepFuzzySet::crisp(line, Region::Line(IntervalUnion::from_interval(Interval::closed(0.0, 1.0)))).expect("crisp");
    let c0 = real_grid([0.0, 0.25, 0.5, 0.75, 1.0]);
    let w = project_to_grid(&v, &c0, 0.3).expect("projection");
    let worked = sup_metric(&v, &w).expect("sup");
    let ok = fails == [0, 0, 0] && worked == Dist::of(0.125);
    outcome(ok, format!("failures flatten/truncate/project {fails:?} of 200 each, worked example d_inf={worked}"))
}

/// `[a, b]` lies in the union of `[c - eps, c + eps]`.
fn line_covered(a: f64, b: f64, centers: &[f64], eps: f64) -> bool {
    let mut reach = a;
    let mut cs: Vec<(f64, f64)> = centers.iter().map(|c| (c - eps, c + eps)).collect();
    cs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for (lo, hi) in cs {
        if lo <= reach + 1e-12 && hi > reach {
            reach = hi;
        }
    }
    reach + 1e-12 >= b
}

fn own_cover_check(s: &Region, centers: &[Point], eps: f64, space: &GroundSpace) -> bool {
    match s {
        Region::Line(u) => {
            let cs: Vec<f64> = centers
                .iter()
                .map(|p| match p {
                    Point::Real(x) => x.get(),
                    _ => f64::NAN,
                })
                .collect();
            u.intervals().iter().all(|i| line_covered(i.lo.get(), i.hi.get(), &cs, eps))
        }
        _ => s.points().expect("finite").iter().all(|p| {
            centers
                .iter()
                .any(|c| space.distance(p, c).expect("distance").get() <= eps + 1e-12)
        }),
    }
}

fn net_certificates() -> Outcome {
    let mut r = rng(11);
    let mut bad = 0;
    for k in 0..200 {
        let v = random_bounded(&mut r, k);
        let s = v.zero_level();
        let eps = r.gen_range(0.05..1.0);
        let c = greedy_eps_net(&s, eps, v.space()).expect("net");
        let ok = c.success()
            && verify_cover(&s, &c.centers, eps, v.space()).expect("verify")
            && own_cover_check(&s, &c.centers, eps, v.space());
        if !ok {
            bad += 1;
        }
    }
    let fam = Family::new(FamilyKind::Snc, 10);
    let members: Vec<SendoElement> = (1..=10).map(|n| fam.member(n).expect("member")).collect();
    let quarter = union_at_level(&members, 0.25).expect("union");
    let neg = greedy_eps_net(&quarter, 0.5, &GroundSpace::RealLine).expect("net");
    let negative = neg.outcome == NetOutcome::Unbounded && !neg.success();
    outcome(
        bad == 0 && negative,
        format!("200 nets, {bad} not re-verified; snc union at 1/4 = {} certified unbounded: {negative}", neg.set_text),
    )
}

struct Trajectories {
    send: Verdict,
    end: Verdict,
    zero: Verdict,
    dp: Vec<Verdict>,
}

fn trajectories(kind: FamilyKind, n: usize) -> Trajectories {
    let fam = Family::new(kind, n);
    let u = fam.limit().expect("limit");
    let mut rows = Vec::new();
    for i in 1..=n {
        rows.push((i, MetricReport::compute(&fam.member(i).expect("member"), &u, &[1.0, 2.0]).expect("metrics")));
    }
    let series = |f: &dyn Fn(&MetricReport) -> Dist| rows.iter().map(|(i, m)| (*i, f(m))).collect::<Vec<_>>();
    Trajectories {
        send: judge(&series(&|m| m.h_send.value()), EXACT_TOL),
        end: judge(&series(&|m| m.h_end.value()), EXACT_TOL),
        zero: judge(&series(&|m| m.h_zero.value()), EXACT_TOL),
        dp: (0..2).map(|k| judge(&series(&|m| m.d_p[k].1), EXACT_TOL)).collect(),
    }
}

fn sequence_implications() -> Outcome {
    let mut bad = Vec::new();
    let mut notes = Vec::new();
    for kind in FamilyKind::ALL {
        let n = if kind == FamilyKind::Snp { 32 } else { 50 };
        let t = trajectories(kind, n);
        if t.send.tail_vanishes() && !(t.end.tail_vanishes() && t.zero.tail_vanishes()) {
            bad.push(format!("{kind}: H_send vanishes but H_end/H_0 do not"));
        }
        for d in &t.dp {
            if d.tail_vanishes() && !t.end.tail_vanishes() {
                bad.push(format!("{kind}: d_p vanishes but H_end does not"));
            }
        }
        notes.push(format!("{kind}:{}/{}", t.send.trend.name(), t.dp[0].trend.name()));
        if kind == FamilyKind::Snp {
            let dp_grows = t.dp.iter().all(|d| d.trend == Trend::Divergent);
            if !(t.send.tail_vanishes() && dp_grows) {
                bad.push(format!("snp: H_send {} with d_p {} {}", t.send.trend.name(), t.dp[0].trend.name(), t.dp[1].trend.name()));
            }
        }
    }
    outcome(bad.is_empty(), format!("H_send/d_1 verdicts {}; {bad:?}", notes.join(" ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("inequality chain", inequality_chain),
        ("closed forms vs product-grid oracle", closed_form_vs_grid),
        ("singleton identities", singleton_identities),
        ("snp L_p growth and H_send bound", snp_lp_growth),
        ("nce Cauchy without limit", nce_cauchy_without_limit),
        ("snc/fnc endograph convergence with infinite cut distance", end_converges_cuts_do_not),
        ("band set level classification", band_level_sets),
        ("platform-level decomposition", platform_levels),
        ("cut bound from endograph distance", cut_bound_from_end),
        ("completion constructions", completion_constructions),
        ("net certificates", net_certificates),
        ("sequence implications", sequence_implications),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s]",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.pass {
            failed.push(k + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
