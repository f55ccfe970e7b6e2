//! Acceptance criteria, one test each. Every test prints a single
//! `PASS`/`FAIL` line with the measured numbers before asserting.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use parityprobe::analytic::{self, detector_report, report};
use parityprobe::fock;
use parityprobe::optimize::{
    self, landmark_phase, precision_vs_photons, table_row_at, SearchBounds,
};
use parityprobe::ProbeConfig;
use rayon::prelude::*;

use common::{equivalence_grid, random_config, rel_dev, rng, total_probability};

fn verdict(id: u32, title: &str, ok: bool, detail: &str) {
    println!(
        "{} criterion {id:>2} ({title}): {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {detail}");
}

fn within_rel(got: f64, want: f64, tol: f64) -> bool {
    ((got - want) / want).abs() <= tol
}

#[test]
fn criterion_01_table_k1_replay() {
    let t = Instant::now();
    let row = table_row_at(1, 0.305, 0.3, 3.527).unwrap();
    let elapsed = t.elapsed();
    let checks = [
        ("qcr", row.qcr_min, 0.0188896),
        ("errprop", row.errprop_min, 0.0603017),
        ("mean_n", row.mean_n_max, 2.512252),
    ];
    let ok =
        checks.iter().all(|&(_, g, w)| within_rel(g, w, 1e-3)) && elapsed < Duration::from_secs(1);
    let detail = checks
        .iter()
        .map(|(n, g, w)| format!("{n}={g:.7} (want {w})"))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(1, "k=1 replay", ok, &format!("{detail}, {elapsed:.2?}"));
}

#[test]
fn criterion_02_table_k2_to_k4_optimized() {
    let t = Instant::now();
    let bounds = SearchBounds::default();
    let want = [
        (2, 0.0230061, 0.0230182, 1.017737),
        (3, 0.0030162, 0.0038579, 2.975774),
        (4, 0.0242411, 0.0242413, 1.317033),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (k, qcr, errprop, mean_n) in want {
        let opt = optimize::minimize_qcr(k, 0.3, landmark_phase(k), &bounds).unwrap();
        let row = table_row_at(k, opt.best_s_db, 0.3, opt.best_big_b).unwrap();
        let good = within_rel(row.qcr_min, qcr, 0.01)
            && within_rel(row.errprop_min, errprop, 0.01)
            && within_rel(row.mean_n_max, mean_n, 0.01);
        ok &= good;
        detail.push(format!(
            "k={k} at S={:.4} dB B={:.4}: qcr={:.7} (want {qcr}) errprop={:.7} (want {errprop}) mean_n={:.6} (want {mean_n})",
            row.s_db, row.big_b, row.qcr_min, row.errprop_min, row.mean_n_max
        ));
    }
    let elapsed = t.elapsed();
    ok &= elapsed < Duration::from_secs(300);
    verdict(
        2,
        "k=2..4 optimized",
        ok,
        &format!("{}; {elapsed:.2?}", detail.join("; ")),
    );
}

#[test]
fn criterion_03_detector_efficiency() {
    let t = Instant::now();
    let cfg = ProbeConfig::from_db(0.305, 0.3, 3.527, 1, 2.0 * PI).unwrap();
    let d = detector_report(&cfg, 0.95).unwrap();
    let elapsed = t.elapsed();
    let ok = (d.qcr_eta - 0.051836).abs() <= 1e-3 && elapsed < Duration::from_secs(1);
    verdict(
        3,
        "detector eta=0.95",
        ok,
        &format!(
            "qcr_eta={:.6} (want 0.051836 +- 1e-3), lambda2={:.3e}, {elapsed:.2?}",
            d.qcr_eta, d.lambda2
        ),
    );
}

#[test]
fn criterion_04_oracle_equivalence() {
    let t = Instant::now();
    let devs: Vec<[f64; 5]> = equivalence_grid()
        .par_iter()
        .map(|cfg| {
            let a = report(cfg).unwrap();
            let o = fock::numeric_report(cfg, fock::adaptive_cutoff(cfg)).unwrap();
            [
                rel_dev(a.probability, o.probability),
                rel_dev(a.mean_n, o.mean_n),
                rel_dev(a.mean_n2, o.mean_n2),
                rel_dev(a.g02, o.g02),
                rel_dev(a.qfi, o.qfi),
            ]
        })
        .collect();
    let elapsed = t.elapsed();
    let max = |i: usize| devs.iter().map(|d| d[i]).fold(0.0, f64::max);
    let names = ["probability", "mean_n", "mean_n2", "g02", "qfi"];
    let limits = [1e-9, 1e-9, 1e-9, 1e-9, 1e-8];
    let ok = (0..5).all(|i| max(i) < limits[i]) && elapsed < Duration::from_secs(120);
    let detail = (0..5)
        .map(|i| format!("{}={:.2e}", names[i], max(i)))
        .collect::<Vec<_>>()
        .join(", ");
    verdict(
        4,
        "oracle equivalence",
        ok,
        &format!("{} points, max rel dev {detail}, {elapsed:.2?}", devs.len()),
    );
}

#[test]
fn criterion_05_completeness() {
    let mut r = rng(5);
    let worst = (0..50)
        .map(|_| (total_probability(&random_config(&mut r, 0)) - 1.0).abs())
        .fold(0.0, f64::max);
    verdict(
        5,
        "completeness",
        worst <= 1e-10,
        &format!("max |sum P_k - 1| = {worst:.2e} over 50 points"),
    );
}

#[test]
fn criterion_06_cramer_rao_ordering() {
    let mut r = rng(6);
    let cfgs: Vec<ProbeConfig> = (0..10_000).map(|_| random_config(&mut r, 6)).collect();
    let (checked, worst) = cfgs
        .par_iter()
        .filter_map(|c| {
            let rep = report(c).unwrap();
            (rep.dmean_dphi != 0.0).then_some(rep.qcr - rep.errprop)
        })
        .fold(
            || (0usize, f64::NEG_INFINITY),
            |(n, w), v| (n + 1, w.max(v)),
        )
        .reduce(|| (0, f64::NEG_INFINITY), |a, b| (a.0 + b.0, a.1.max(b.1)));
    verdict(
        6,
        "Cramer-Rao ordering",
        worst <= 1e-12,
        &format!("{checked} points, max(qcr - errprop) = {worst:.3e}"),
    );
}

#[test]
fn criterion_07_periodicity() {
    let mut r = rng(7);
    let worst = (0..1000)
        .map(|_| {
            let c = random_config(&mut r, 6);
            let (a, b) = (
                report(&c).unwrap(),
                report(&c.with_phi(c.phi + 2.0 * PI)).unwrap(),
            );
            [
                (a.probability, b.probability),
                (a.mean_n, b.mean_n),
                (a.mean_n2, b.mean_n2),
                (a.std_n, b.std_n),
                (a.dmean_dphi, b.dmean_dphi),
                (a.visibility, b.visibility),
                (a.qfi, b.qfi),
                (a.qcr, b.qcr),
                (a.errprop, b.errprop),
                (a.hl, b.hl),
                (a.g02, b.g02),
            ]
            .iter()
            .map(|&(x, y)| rel_dev(x, y))
            .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    verdict(
        7,
        "2 pi periodicity",
        worst <= 1e-12,
        &format!("max rel dev over 1000 points = {worst:.2e}"),
    );
}

#[test]
fn criterion_08_parity() {
    let worst = equivalence_grid()
        .par_iter()
        .map(|cfg| {
            let st = fock::protocol_state(cfg, fock::adaptive_cutoff(cfg)).unwrap();
            fock::condition_on_k(&st, cfg.k)
                .vector
                .parity_leak(cfg.k % 2)
        })
        .reduce(|| 0.0, f64::max);
    verdict(
        8,
        "parity",
        worst < 1e-12,
        &format!("max opposite-parity amplitude = {worst:.2e}"),
    );
}

#[test]
fn criterion_09_sub_heisenberg() {
    let bounds = SearchBounds::default();
    let deltas = [0.1, 0.03, 0.01, 0.003, 0.001];
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 1..=4 {
        let rows = precision_vs_photons(k, 0.3, landmark_phase(k), &deltas, &bounds).unwrap();
        let bad = rows
            .iter()
            .filter(|r| !(r.report.qcr < r.report.hl && r.report.errprop < r.report.hl))
            .count();
        ok &= bad == 0;
        let worst = rows
            .iter()
            .map(|r| r.report.errprop.max(r.report.qcr) / r.report.hl)
            .fold(0.0, f64::max);
        detail.push(format!(
            "k={k}: {bad}/{} rows violate, max ratio to 1/<n> = {worst:.3}",
            rows.len()
        ));
    }
    verdict(9, "sub-Heisenberg", ok, &detail.join("; "));
}

#[test]
fn criterion_10_derivative_check() {
    let mut r = rng(10);
    let h = 1e-5;
    let worst = (0..1000)
        .map(|_| {
            let c = random_config(&mut r, 6);
            let fd = (analytic::mean_photons(&c.with_phi(c.phi + h)).unwrap()
                - analytic::mean_photons(&c.with_phi(c.phi - h)).unwrap())
                / (2.0 * h);
            rel_dev(analytic::dmean_dphi(&c).unwrap(), fd)
        })
        .fold(0.0, f64::max);
    verdict(
        10,
        "derivative check",
        worst <= 1e-6,
        &format!("max rel dev over 1000 points = {worst:.2e}"),
    );
}

#[test]
fn criterion_11_povm_consistency() {
    let mut r = rng(11);
    let etas = [0.99, 0.995, 0.999];
    let mut ok = true;
    let mut detail = Vec::new();
    for _ in 0..5 {
        let cfg = random_config(&mut r, 4);
        let st = fock::protocol_state(&cfg, fock::adaptive_cutoff(&cfg)).unwrap();
        let cs: Vec<f64> = etas
            .iter()
            .map(|&eta| {
                let model = detector_report(&cfg, eta).unwrap().probability_eta;
                let exact = fock::povm_condition(&st, cfg.k, eta).unwrap().probability;
                (model - exact).abs() / (1.0 - eta).powi(2)
            })
            .collect();
        let (lo, hi) = cs
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(l, h), &c| (l.min(c), h.max(c)));
        ok &= hi <= 2.0 * lo;
        detail.push(format!("k={} C in [{lo:.3e}, {hi:.3e}]", cfg.k));
    }
    verdict(11, "POVM consistency", ok, &detail.join("; "));
}
