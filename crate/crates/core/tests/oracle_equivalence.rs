//! The Fock-space simulation against the closed forms, run from the
//! simulation side.

mod common;

use parityprobe::analytic;
use parityprobe::crosscheck::{compare, MOMENT_TOLERANCE, QFI_TOLERANCE};
use parityprobe::fock::{adaptive_cutoff, condition_on_k, numeric_report, protocol_state};
use rayon::prelude::*;

use common::{equivalence_grid, rel_dev};

#[test]
fn full_grid_agrees() {
    let d = compare(&equivalence_grid()).unwrap();
    assert_eq!(d.points, 180);
    assert!(d.max_moment() < MOMENT_TOLERANCE, "{d:?}");
    assert!(d.qfi < QFI_TOLERANCE, "{d:?}");
}

#[test]
fn doubling_the_cutoff_changes_nothing() {
    equivalence_grid().par_iter().for_each(|cfg| {
        let n = adaptive_cutoff(cfg);
        let a = numeric_report(cfg, n).unwrap();
        let b = numeric_report(cfg, 2 * n).unwrap();
        for (x, y) in [
            (a.probability, b.probability),
            (a.mean_n, b.mean_n),
            (a.mean_n2, b.mean_n2),
            (a.qfi, b.qfi),
            (a.g02, b.g02),
        ] {
            assert!(
                (x - y).abs() <= 1e-11 * y.abs().max(1.0),
                "{cfg:?}: {x} vs {y}"
            );
        }
    });
}

#[test]
fn conditioned_probability_matches_closed_form() {
    for cfg in equivalence_grid() {
        let st = protocol_state(&cfg, adaptive_cutoff(&cfg)).unwrap();
        let p = condition_on_k(&st, cfg.k).probability;
        assert!(
            rel_dev(p, analytic::probability(&cfg).unwrap()) <= 1e-9,
            "{cfg:?}"
        );
    }
}
