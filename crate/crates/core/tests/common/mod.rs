// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! Oracles shared by the integration tests.

use std::f64::consts::PI;

use cantorlab_core::BumpFunction;
use num_complex::Complex64;

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_k.
pub fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// `∫₀¹ f(x) e^{-2πilx} dx`, split at the four junctions so every panel is
/// polynomial, with panels short against the oscillation.
pub fn quadrature_coeff(f: &BumpFunction, l: i64) -> Complex64 {
    let rule = gauss_legendre(20);
    let c = f.center();
    let mut breaks = [
        c - f.outer(),
        c - f.inner(),
        c + f.inner(),
        c + f.outer(),
        c - f.outer() + 1.0,
    ];
    breaks.sort_by(f64::total_cmp);
    let mut sum = Complex64::new(0.0, 0.0);
    for win in breaks.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        let panels = ((hi - lo) * (l.unsigned_abs() as f64) * 4.0).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + p as f64 * h;
            for &(node, weight) in &rule {
                let x = a + h * (node + 1.0) / 2.0;
                let phase = Complex64::from_polar(1.0, -2.0 * PI * l as f64 * x);
                sum += phase * (f.eval(x) * weight * h / 2.0);
            }
        }
    }
    sum
}
