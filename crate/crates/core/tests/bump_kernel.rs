// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use cantorlab_core::bump::{make_bump, partial_sum_error, sandwich_check, BumpFunction, BumpSpec};

mod common;

use common::quadrature_coeff;

fn family(n: u64, center: f64) -> BumpFunction {
    make_bump(BumpSpec::new(n, center, 0.2, 0.3, 0.01)).unwrap()
}

#[test]
fn closed_form_matches_quadrature() {
    for n in [1, 10, 1000] {
        let f = family(n, 0.37);
        for l in [0, 1, -1, 7, -7, 100, -100] {
            let exact = f.fourier_coeff(l).value;
            let quad = quadrature_coeff(&f, l);
            assert!((exact - quad).norm() < 1e-12, "n = {n}, l = {l}: {exact} vs {quad}");
        }
    }
}

#[test]
fn closed_form_matches_quadrature_across_series_switch() {
    // κ = 2πl·w crosses the series/parts boundary near l = 64 for this width
    let f = make_bump(BumpSpec::new(1, 0.8, 0.09, 0.1, 0.0)).unwrap();
    for l in [60, 63, 64, 65, 70] {
        let exact = f.fourier_coeff(l).value;
        let quad = quadrature_coeff(&f, l);
        assert!((exact - quad).norm() < 1e-12, "l = {l}");
    }
}

#[test]
fn range_and_periodicity() {
    let f = family(7, 0.95);
    // dyadic grid, so x + 1 is exact
    for i in 0..(1 << 17) {
        let x = i as f64 / (1 << 17) as f64;
        let v = f.eval(x);
        assert!((0.0..=1.0).contains(&v));
        assert_eq!(v, f.eval(x + 1.0));
    }
}

#[test]
fn c2_gluing_at_junctions() {
    let f = family(10, 0.5);
    let h = 1e-15;
    for j in [0.5 - f.outer(), 0.5 - f.inner(), 0.5 + f.inner(), 0.5 + f.outer()] {
        for g in [
            BumpFunction::eval,
            BumpFunction::derivative,
            BumpFunction::second_derivative,
        ] {
            let (left, right) = (g(&f, j - h), g(&f, j + h));
            assert!((left - right).abs() < 1e-10, "junction {j}: {left} vs {right}");
        }
    }
}

#[test]
fn parseval_gap_closes() {
    let f = family(100, 0.2);
    let mut gaps = Vec::new();
    let mut sum = f.mass().powi(2);
    let mut l = 0;
    // ∫f² = 2A + 2w ∫S², ∫₀¹S² = 181/462
    let l2 = 2.0 * f.inner() + 2.0 * f.width() * 181.0 / 462.0;
    assert!(l2 <= f.mass());
    for target in [4, 16, 64, 256] {
        while l < target {
            l += 1;
            sum += 2.0 * f.fourier_coeff(l).value.norm_sqr();
        }
        assert!(sum <= l2 + 1e-15);
        gaps.push(l2 - sum);
    }
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert!(gaps[3] < 1e-8);
}

#[test]
fn truncation_error_decays() {
    let f = family(10, 0.3);
    let errs: Vec<f64> = (6..=12)
        .map(|k| partial_sum_error(&f, 1 << k, 1 << 15).unwrap())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(partial_sum_error(&f, 0, 10).is_err());
}

#[test]
fn sandwich_with_unit_scale() {
    for n in [100, 1000, 100_000] {
        let r = sandwich_check(n, 0.5, 1.0, 0.3, 0.6, 50_000).unwrap();
        assert!(r.holds, "{r:?}");
        assert!((r.upper_mass - 2.3 * (n as f64).powf(-0.5)).abs() < 1e-14);
    }
}
