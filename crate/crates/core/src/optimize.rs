//! Parameter search and curve generation.
//!
//! [`minimize_qcr`] scans a coarse `(S, B)` grid (linear in dB, logarithmic
//! in `B`) and refines the best cell with a bounded Nelder–Mead simplex.
//! Grid points are evaluated with rayon; results are collected in grid order
//! so the outcome does not depend on scheduling.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::{self, MetrologyReport};
use crate::error::{Error, Result};
use crate::params::ProbeConfig;

/// Relative objective spread at which the simplex stops.
pub const SIMPLEX_TOLERANCE: f64 = 1e-10;
const SIMPLEX_MAX_ITER: usize = 4000;
const TIE_TOLERANCE: f64 = 1e-12;

/// Default half-width of the window used around the `sin(phi) = 0` landmarks.
pub const WINDOW_HALFWIDTH: f64 = 0.1;
const WINDOW_POINTS: usize = 2001;

/// Rectangular search region in `(S [dB], B)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchBounds {
    pub s_db_range: (f64, f64),
    pub big_b_range: (f64, f64),
    pub grid: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            s_db_range: (0.05, 2.0),
            big_b_range: (0.1, 20.0),
            grid: 48,
        }
    }
}

impl SearchBounds {
    /// Both ranges must be positive with `lo <= hi`; `lo == hi` pins that axis.
    pub fn new(s_db_range: (f64, f64), big_b_range: (f64, f64), grid: usize) -> Result<Self> {
        for (name, (lo, hi)) in [("S", s_db_range), ("B", big_b_range)] {
            if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
                return Err(Error::domain(format!(
                    "{name} range must satisfy 0 < lo <= hi, got [{lo}, {hi}]"
                )));
            }
        }
        if grid < 8 {
            return Err(Error::domain(format!(
                "grid needs at least 8 points per axis, got {grid}"
            )));
        }
        Ok(SearchBounds {
            s_db_range,
            big_b_range,
            grid,
        })
    }

    fn s_axis(&self) -> Vec<f64> {
        axis(self.s_db_range, self.grid, |v| v, |v| v)
    }

    fn b_axis(&self) -> Vec<f64> {
        axis(self.big_b_range, self.grid, f64::ln, f64::exp)
    }

    fn clamp(&self, x: [f64; 2]) -> [f64; 2] {
        let (slo, shi) = self.s_db_range;
        let (blo, bhi) = self.big_b_range;
        [x[0].clamp(slo, shi), x[1].clamp(blo.ln(), bhi.ln())]
    }

    /// `B` from its logarithm; the edges map back to the exact endpoints.
    fn b_from_ln(&self, l: f64) -> f64 {
        let (lo, hi) = self.big_b_range;
        if l <= lo.ln() {
            lo
        } else if l >= hi.ln() {
            hi
        } else {
            l.exp().clamp(lo, hi)
        }
    }
}

fn axis(range: (f64, f64), n: usize, fwd: fn(f64) -> f64, back: fn(f64) -> f64) -> Vec<f64> {
    let (lo, hi) = range;
    if lo == hi {
        return vec![lo];
    }
    let (a, b) = (fwd(lo), fwd(hi));
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                back(a + (b - a) * i as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub best_s_db: f64,
    pub best_big_b: f64,
    /// Minimized `1/sqrt(F)`.
    pub objective: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// One point of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub phi: f64,
    pub k: usize,
    pub s_db: f64,
    pub big_b: f64,
    /// `true` when `(s_db, big_b)` was chosen by [`minimize_qcr`] for this row.
    pub optimized: bool,
    pub report: MetrologyReport,
}

/// Objective of the search. Configurations whose report cannot be evaluated,
/// including those where the variance is lost to cancellation, count as
/// infeasible.
fn qcr_at(k: usize, s_db: f64, s2_db: f64, big_b: f64, phi: f64) -> f64 {
    ProbeConfig::from_db(s_db, s2_db, big_b, k, phi)
        .and_then(|c| analytic::report(&c))
        .map(|r| r.qcr)
        .ok()
        .filter(|v| v.is_finite())
        .unwrap_or(f64::INFINITY)
}

/// `a` is better than `b`: lower objective, ties to smaller `B` then smaller `S`.
fn better(a: (f64, f64, f64), b: (f64, f64, f64)) -> bool {
    let (fa, sa, ba) = a;
    let (fb, sb, bb) = b;
    let scale = fa.abs().max(fb.abs()).max(f64::MIN_POSITIVE);
    if (fa - fb).abs() > TIE_TOLERANCE * scale {
        return fa < fb;
    }
    if ba != bb {
        return ba < bb;
    }
    sa < sb
}

/// Minimizes the Cramér–Rao bound `1/sqrt(F)` over `(S, B)` at fixed `k`,
/// auxiliary squeezing and phase.
pub fn minimize_qcr(
    k: usize,
    s2_db: f64,
    phi_target: f64,
    bounds: &SearchBounds,
) -> Result<OptimizationResult> {
    if !phi_target.is_finite() {
        return Err(Error::domain(format!(
            "phase must be finite, got {phi_target}"
        )));
    }
    SearchBounds::new(bounds.s_db_range, bounds.big_b_range, bounds.grid)?;
    // surface configuration errors (k, s2) instead of a silent infinite objective
    ProbeConfig::from_db(
        bounds.s_db_range.0,
        s2_db,
        bounds.big_b_range.0,
        k,
        phi_target,
    )?;

    let (s_axis, b_axis) = (bounds.s_axis(), bounds.b_axis());
    let points: Vec<(f64, f64)> = b_axis
        .iter()
        .flat_map(|&b| s_axis.iter().map(move |&s| (s, b)))
        .collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(s, b)| qcr_at(k, s, s2_db, b, phi_target))
        .collect();
    let mut evaluations = points.len();

    let mut best = (f64::INFINITY, f64::INFINITY, f64::INFINITY);
    for (&(s, b), &f) in points.iter().zip(&values) {
        if better((f, s, b), best) {
            best = (f, s, b);
        }
    }
    if !best.0.is_finite() {
        return Err(Error::singular(format!(
            "Fisher information vanishes on the whole search grid for k = {k}"
        )));
    }
    if s_axis.len() == 1 && b_axis.len() == 1 {
        return Ok(OptimizationResult {
            best_s_db: best.1,
            best_big_b: best.2,
            objective: best.0,
            evaluations,
            converged: true,
        });
    }

    let step = |ax: &[f64], f: fn(f64) -> f64| {
        if ax.len() > 1 {
            f(ax[1]) - f(ax[0])
        } else {
            0.0
        }
    };
    let steps = [step(&s_axis, |v| v), step(&b_axis, f64::ln)];
    let objective = |x: [f64; 2]| {
        let x = bounds.clamp(x);
        qcr_at(k, x[0], s2_db, bounds.b_from_ln(x[1]), phi_target)
    };
    let nm = nelder_mead(objective, [best.1, best.2.ln()], steps, |x| bounds.clamp(x));
    evaluations += nm.evaluations;
    let x = bounds.clamp(nm.x);
    let b = bounds.b_from_ln(x[1]);
    let refined = (qcr_at(k, x[0], s2_db, b, phi_target), x[0], b);
    if better(refined, best) {
        best = refined;
    }
    Ok(OptimizationResult {
        best_s_db: best.1,
        best_big_b: best.2,
        objective: best.0,
        evaluations,
        converged: nm.converged,
    })
}

struct SimplexOutcome {
    x: [f64; 2],
    evaluations: usize,
    converged: bool,
}

/// Two-dimensional Nelder–Mead with standard coefficients; trial points are
/// projected into the box by `project`.
fn nelder_mead(
    f: impl Fn([f64; 2]) -> f64,
    start: [f64; 2],
    steps: [f64; 2],
    project: impl Fn([f64; 2]) -> [f64; 2],
) -> SimplexOutcome {
    let lerp =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    let mut simplex: Vec<([f64; 2], f64)> = Vec::with_capacity(3);
    let mut evaluations = 0;
    let mut eval = |x: [f64; 2]| {
        evaluations += 1;
        let x = project(x);
        (x, f(x))
    };
    simplex.push(eval(start));
    for d in 0..2 {
        let mut x = start;
        x[d] += if steps[d] == 0.0 { 0.0 } else { steps[d] };
        let mut v = eval(x);
        if v.0 == simplex[0].0 {
            // pinned at the upper edge; step inwards
            x[d] = start[d] - steps[d];
            v = eval(x);
        }
        simplex.push(v);
    }
    let mut converged = false;
    for _ in 0..SIMPLEX_MAX_ITER {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[2].1);
        let spread = (hi - lo).abs();
        let size = (0..2)
            .map(|d| {
                (simplex[1].0[d] - simplex[0].0[d])
                    .abs()
                    .max((simplex[2].0[d] - simplex[0].0[d]).abs())
            })
            .fold(0.0, f64::max);
        if (lo.is_finite() && spread <= SIMPLEX_TOLERANCE * lo.abs().max(1e-300)) || size < 1e-14 {
            converged = true;
            break;
        }
        let centroid = lerp(simplex[0].0, simplex[1].0, 0.5);
        let worst = simplex[2];
        let reflected = eval(lerp(worst.0, centroid, 2.0));
        if reflected.1 < simplex[0].1 {
            let expanded = eval(lerp(worst.0, centroid, 3.0));
            simplex[2] = if expanded.1 < reflected.1 {
                expanded
            } else {
                reflected
            };
            continue;
        }
        if reflected.1 < simplex[1].1 {
            simplex[2] = reflected;
            continue;
        }
        let contracted = if reflected.1 < worst.1 {
            eval(lerp(worst.0, centroid, 1.5))
        } else {
            eval(lerp(worst.0, centroid, 0.5))
        };
        if contracted.1 < worst.1.min(reflected.1) {
            simplex[2] = contracted;
            continue;
        }
        let best = simplex[0].0;
        for v in simplex.iter_mut().skip(1) {
            *v = eval(lerp(best, v.0, 0.5));
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    SimplexOutcome {
        x: simplex[0].0,
        evaluations,
        converged,
    }
}

/// Minima of the error-propagation uncertainty and of the Cramér–Rao bound
/// over a phase window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowMinimum {
    /// Location of the `errprop` minimum.
    pub phi_min: f64,
    pub errprop_min: f64,
    /// Location of the `qcr` minimum.
    pub phi_qcr: f64,
    pub qcr_min: f64,
}

/// Golden-section refinement of `f` on `[a, b]`.
fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Dense-grid minimum of `f` over `phis`, refined by golden section between
/// the neighbouring grid points.
fn window_min(f: &(impl Fn(f64) -> f64 + Sync), phis: &[f64]) -> (f64, f64) {
    let vals: Vec<f64> = phis.par_iter().map(|&p| f(p)).collect();
    let (i, _) =
        vals.iter().enumerate().fold(
            (0, f64::INFINITY),
            |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
        );
    let (lo, hi) = (phis[i.saturating_sub(1)], phis[(i + 1).min(phis.len() - 1)]);
    let (x, v) = golden_section(f, lo, hi);
    if v <= vals[i] {
        (x, v)
    } else {
        (phis[i], vals[i])
    }
}

/// Minima of `errprop` and `qcr` over `[center - halfwidth, center + halfwidth]`,
/// excluding points where `sin(phi)` is exactly zero.
pub fn min_over_phi_window(
    k: usize,
    s_db: f64,
    s2_db: f64,
    big_b: f64,
    phi_center: f64,
    halfwidth: f64,
) -> Result<WindowMinimum> {
    if !(halfwidth > 0.0 && halfwidth.is_finite()) {
        return Err(Error::domain(format!(
            "window half-width must be positive, got {halfwidth}"
        )));
    }
    let base = ProbeConfig::from_db(s_db, s2_db, big_b, k, phi_center)?;
    analytic::probability(&base)?;
    let eval = |phi: f64, pick: fn(&MetrologyReport) -> f64| -> f64 {
        if phi.sin() == 0.0 {
            return f64::INFINITY;
        }
        analytic::report(&base.with_phi(phi))
            .map(|r| pick(&r))
            .unwrap_or(f64::INFINITY)
    };
    let errprop = |phi: f64| eval(phi, |r| r.errprop);
    let qcr = |phi: f64| eval(phi, |r| r.qcr);
    let phis: Vec<f64> = (0..WINDOW_POINTS)
        .map(|i| phi_center - halfwidth + 2.0 * halfwidth * i as f64 / (WINDOW_POINTS - 1) as f64)
        .collect();
    let (phi_min, errprop_min) = window_min(&errprop, &phis);
    let (phi_qcr, qcr_min) = window_min(&qcr, &phis);
    Ok(WindowMinimum {
        phi_min,
        errprop_min,
        phi_qcr,
        qcr_min,
    })
}

fn check_ascending(name: &str, xs: &[f64]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::domain(format!("{name} grid is empty")));
    }
    if xs.iter().any(|x| !x.is_finite()) || xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(format!(
            "{name} grid must be finite and strictly ascending"
        )));
    }
    Ok(())
}

/// Analytic report at every phase of a fixed configuration.
pub fn scan_phi(
    k: usize,
    s_db: f64,
    s2_db: f64,
    big_b: f64,
    phi_grid: &[f64],
) -> Result<Vec<CurveRow>> {
    check_ascending("phase", phi_grid)?;
    let base = ProbeConfig::from_db(s_db, s2_db, big_b, k, phi_grid[0])?;
    phi_grid
        .par_iter()
        .map(|&phi| {
            let report = analytic::report(&base.with_phi(phi))?;
            Ok(CurveRow {
                phi,
                k,
                s_db,
                big_b,
                optimized: false,
                report,
            })
        })
        .collect()
}

fn optimized_row(
    k: usize,
    s2_db: f64,
    phi: f64,
    bounds: &SearchBounds,
) -> Result<(OptimizationResult, CurveRow)> {
    let opt = minimize_qcr(k, s2_db, phi, bounds)?;
    let cfg = ProbeConfig::from_db(opt.best_s_db, s2_db, opt.best_big_b, k, phi)?;
    let report = analytic::report(&cfg)?;
    Ok((
        opt,
        CurveRow {
            phi,
            k,
            s_db: opt.best_s_db,
            big_b: opt.best_big_b,
            optimized: true,
            report,
        },
    ))
}

/// Per-phase optimized `(S, B)` followed by the report at the optimum.
pub fn optimized_scan_phi(
    k: usize,
    s2_db: f64,
    phi_grid: &[f64],
    bounds: &SearchBounds,
) -> Result<Vec<CurveRow>> {
    check_ascending("phase", phi_grid)?;
    phi_grid
        .iter()
        .map(|&phi| optimized_row(k, s2_db, phi, bounds).map(|(_, r)| r))
        .collect()
}

/// Optimized rows at `phi = phi_star - delta` for each `delta`.
///
/// `delta_grid` must be positive and strictly descending, so the rows come
/// out in ascending phase.
pub fn precision_vs_photons(
    k: usize,
    s2_db: f64,
    phi_star: f64,
    delta_grid: &[f64],
    bounds: &SearchBounds,
) -> Result<Vec<CurveRow>> {
    if delta_grid
        .iter()
        .any(|d| d.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::domain("phase offsets must be positive"));
    }
    let phis: Vec<f64> = delta_grid.iter().map(|d| phi_star - d).collect();
    check_ascending("phase (phi_star - delta)", &phis)?;
    optimized_scan_phi(k, s2_db, &phis, bounds)
}

/// One line of the optimal-precision table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub k: usize,
    pub phi_target: f64,
    pub s_db: f64,
    pub big_b: f64,
    pub qcr_min: f64,
    pub errprop_min: f64,
    pub mean_n_max: f64,
}

/// The landmark phase used for `k`: `2 pi` for odd `k`, `pi` for even `k`.
pub fn landmark_phase(k: usize) -> f64 {
    if k % 2 == 1 {
        2.0 * PI
    } else {
        PI
    }
}

/// Table line at fixed `(S, B)`: window minima around the landmark phase and
/// the mean photon number at the landmark.
pub fn table_row_at(k: usize, s_db: f64, s2_db: f64, big_b: f64) -> Result<Table1Row> {
    let phi_target = landmark_phase(k);
    let w = min_over_phi_window(k, s_db, s2_db, big_b, phi_target, WINDOW_HALFWIDTH)?;
    let mean_n_max =
        analytic::mean_photons(&ProbeConfig::from_db(s_db, s2_db, big_b, k, phi_target)?)?;
    Ok(Table1Row {
        k,
        phi_target,
        s_db,
        big_b,
        qcr_min: w.qcr_min,
        errprop_min: w.errprop_min,
        mean_n_max,
    })
}

/// Optimized table for `k = 1..=4`.
pub fn table1(s2_db: f64, bounds: &SearchBounds) -> Result<Vec<Table1Row>> {
    (1..=4)
        .map(|k| {
            let opt = minimize_qcr(k, s2_db, landmark_phase(k), bounds)?;
            table_row_at(k, opt.best_s_db, s2_db, opt.best_big_b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_bounds() -> SearchBounds {
        SearchBounds::new((0.2, 1.5), (0.5, 6.0), 12).unwrap()
    }

    #[test]
    fn bounds_validation() {
        assert!(SearchBounds::new((0.0, 1.0), (0.1, 1.0), 10).is_err());
        assert!(SearchBounds::new((1.0, 0.5), (0.1, 1.0), 10).is_err());
        assert!(SearchBounds::new((0.5, 1.0), (0.1, f64::NAN), 10).is_err());
        assert!(SearchBounds::new((0.5, 1.0), (0.1, 1.0), 4).is_err());
        assert!(SearchBounds::new((0.5, 0.5), (2.0, 2.0), 8).is_ok());
    }

    #[test]
    fn axes_hit_endpoints() {
        let b = SearchBounds::default();
        let (s, bb) = (b.s_axis(), b.b_axis());
        assert_eq!(s.len(), 48);
        assert_eq!((s[0], s[47]), (0.05, 2.0));
        assert_eq!((bb[0], bb[47]), (0.1, 20.0));
        assert!(bb.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn single_point_bounds_return_that_point() {
        let b = SearchBounds::new((0.7, 0.7), (2.5, 2.5), 8).unwrap();
        let r = minimize_qcr(1, 0.3, 1.0, &b).unwrap();
        assert_eq!((r.best_s_db, r.best_big_b), (0.7, 2.5));
        let direct = qcr_at(1, 0.7, 0.3, 2.5, 1.0);
        assert_eq!(r.objective, direct);
    }

    #[test]
    fn optimum_dominates_grid_and_reproduces() {
        let b = small_bounds();
        let r = minimize_qcr(2, 0.3, 2.0, &b).unwrap();
        let again = qcr_at(2, r.best_s_db, 0.3, r.best_big_b, 2.0);
        assert_relative_eq!(r.objective, again, max_relative = 1e-12);
        for s in b.s_axis() {
            for bb in b.b_axis() {
                assert!(r.objective <= qcr_at(2, s, 0.3, bb, 2.0));
            }
        }
        assert!(r.best_s_db >= 0.2 && r.best_s_db <= 1.5);
        assert!(r.best_big_b >= 0.5 && r.best_big_b <= 6.0);
    }

    #[test]
    fn optimizer_is_deterministic() {
        let b = small_bounds();
        let x = minimize_qcr(1, 0.3, 5.0, &b).unwrap();
        let y = minimize_qcr(1, 0.3, 5.0, &b).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn nelder_mead_finds_quadratic_minimum() {
        let f = |x: [f64; 2]| 1.0 + (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 0.1).powi(2);
        let out = nelder_mead(f, [1.0, 1.0], [0.2, 0.2], |x| x);
        assert!(out.converged);
        assert!((out.x[0] - 0.3).abs() < 1e-4 && (out.x[1] + 0.1).abs() < 1e-4);
    }

    #[test]
    fn golden_section_on_cosine_lands_at_center() {
        let phis: Vec<f64> = (0..101).map(|i| PI - 0.1 + 0.002 * i as f64).collect();
        let (x, v) = window_min(&|p: f64| -(p - PI).cos(), &phis);
        assert!((x - PI).abs() < 1e-7);
        assert_relative_eq!(v, -1.0, epsilon = 1e-14);
    }

    #[test]
    fn window_skips_exact_zero_of_sine() {
        let w = min_over_phi_window(1, 0.5, 0.3, 2.0, 2.0 * PI, 0.1).unwrap();
        assert!(w.errprop_min.is_finite());
        assert!(w.errprop_min >= w.qcr_min - 1e-12);
        assert!(min_over_phi_window(1, 0.5, 0.3, 2.0, 2.0 * PI, 0.0).is_err());
    }

    #[test]
    fn scan_rows_match_direct_reports() {
        let grid = [0.0, 1.0, 2.0 * PI];
        let rows = scan_phi(1, 0.5, 0.3, 2.0, &grid).unwrap();
        for row in &rows {
            let cfg = ProbeConfig::from_db(0.5, 0.3, 2.0, 1, row.phi).unwrap();
            assert_eq!(row.report, analytic::report(&cfg).unwrap());
        }
        let (a, b) = (rows[0].report, rows[2].report);
        assert_relative_eq!(a.mean_n, b.mean_n, max_relative = 1e-12);
        assert_relative_eq!(a.qfi, b.qfi, max_relative = 1e-12);
        assert!(scan_phi(1, 0.5, 0.3, 2.0, &[1.0, 0.5]).is_err());
        assert!(scan_phi(1, 0.5, 0.3, 2.0, &[]).is_err());
    }

    #[test]
    fn optimized_scan_dominates_fixed_point() {
        let b = small_bounds();
        let grid = [0.5, 2.0, 4.0];
        let opt = optimized_scan_phi(1, 0.3, &grid, &b).unwrap();
        let fixed = scan_phi(1, 0.8, 0.3, 2.0, &grid).unwrap();
        for (o, f) in opt.iter().zip(&fixed) {
            assert!(o.optimized);
            assert!(o.report.qcr <= f.report.qcr * (1.0 + 1e-12));
        }
    }

    #[test]
    fn precision_rows_validate_offsets() {
        let b = small_bounds();
        assert!(precision_vs_photons(1, 0.3, 2.0 * PI, &[0.01, 0.1], &b).is_err());
        assert!(precision_vs_photons(1, 0.3, 2.0 * PI, &[0.1, 0.0], &b).is_err());
        let rows = precision_vs_photons(1, 0.3, 2.0 * PI, &[0.1, 0.01], &b).unwrap();
        assert!(rows[0].phi < rows[1].phi);
    }

    #[test]
    fn landmarks() {
        assert_eq!(landmark_phase(1), 2.0 * PI);
        assert_eq!(landmark_phase(2), PI);
    }
}
