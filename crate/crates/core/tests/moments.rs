// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

use cantorlab_core::harness::TargetSequence;
use cantorlab_core::moments::{expectation_fourier, expectation_mc, variance_mc, BumpFamily};

/// `∫ g dμ` by the self-similarity `∫ g dμ = ½[∫ g(x/3) dμ + ∫ g((x+2)/3) dμ]`,
/// unrolled over ternary cylinders to `depth` levels. A cylinder of length
/// `h` on which `g` is constant is integrated exactly; otherwise the leaf
/// uses the cylinder's center, which the symmetric measure makes exact for
/// affine `g`, leaving `sup|g''| h² / 8` per unit mass.
fn self_similar_integral(g: &dyn Fn(f64) -> f64, constant_on: &dyn Fn(f64, f64) -> bool, depth: u32) -> f64 {
    fn rec(g: &dyn Fn(f64) -> f64, c: &dyn Fn(f64, f64) -> bool, lo: f64, h: f64, level: u32, depth: u32) -> f64 {
        if c(lo, lo + h) {
            return g(lo);
        }
        if level == depth {
            return g(lo + h / 2.0);
        }
        let t = h / 3.0;
        0.5 * (rec(g, c, lo, t, level + 1, depth) + rec(g, c, lo + 2.0 * t, t, level + 1, depth))
    }
    rec(g, constant_on, 0.0, 1.0, 0, depth)
}

#[test]
fn fourier_matches_self_similar_oracle_at_n_one() {
    let fam = BumpFamily::new(0.1, 0.2, 0.3).unwrap();
    for targets in [TargetSequence::Zero, TargetSequence::constant(0.3).unwrap()] {
        let f = fam.bump(1, targets.get(1).unwrap()).unwrap();
        let g = |x: f64| f.eval(2.0 * x);
        // constant where [2lo, 2hi] crosses no junction and sits on the plateau or off the support
        let (c, a, b) = (f.center(), f.inner(), f.outer());
        let edges: Vec<f64> = [c - b, c - a, c + a, c + b]
            .iter()
            .flat_map(|e| (-2..=3).map(move |k| e + k as f64))
            .collect();
        let constant_on =
            |lo: f64, hi: f64| !edges.iter().any(|&e| 2.0 * lo <= e && e <= 2.0 * hi) && (g(lo) == 0.0 || g(lo) == 1.0);
        let depth = 20;
        let oracle = self_similar_integral(&g, &constant_on, depth);
        let oracle_err = 4.0 * f.sup_second_derivative() * 3f64.powi(-(depth as i32)).powi(2) / 8.0;

        let est = expectation_fourier(1, 4096, &fam, &targets).unwrap();
        assert!(
            (est.value - oracle).abs() <= est.error_bar + oracle_err + 1e-12,
            "{targets}: {} vs {oracle} (bar {})",
            est.value,
            est.error_bar
        );
        assert!(est.error_bar < 1e-6);
    }
}

#[test]
fn doubling_order_stays_within_error_bar() {
    let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
    let t = TargetSequence::IidUniform { seed: 4 };
    let mut prev = expectation_fourier(200, 16, &fam, &t).unwrap();
    for order in [32, 64, 128, 256] {
        let next = expectation_fourier(200, order, &fam, &t).unwrap();
        assert!((next.value - prev.value).abs() <= prev.error_bar, "L = {order}");
        assert!(next.error_bar < prev.error_bar);
        prev = next;
    }
}

#[test]
fn leading_term_is_shift_invariant() {
    let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
    let base = TargetSequence::IidUniform { seed: 9 };
    let shifted = base.shifted(300, 0.123).unwrap();
    let c0 = |t: &TargetSequence| -> f64 { fam.bumps(300, t).unwrap().iter().map(|f| f.mass()).sum() };
    assert_eq!(c0(&base), c0(&shifted));
    assert_eq!(
        c0(&base),
        fam.bumps(300, &TargetSequence::Zero)
            .unwrap()
            .iter()
            .map(|f| f.mass())
            .sum::<f64>()
    );
}

#[test]
fn fourier_and_monte_carlo_agree_small() {
    let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
    for targets in [TargetSequence::Zero, TargetSequence::IidUniform { seed: 1 }] {
        let f = expectation_fourier(300, 512, &fam, &targets).unwrap();
        let m = expectation_mc(300, 1000, 17, &fam, &targets, 64, 2).unwrap();
        let combined = f.error_bar + m.error_bar;
        assert!((f.value - m.value).abs() <= 3.0 * combined, "{targets}: {f:?} vs {m:?}");
    }
}

#[test]
fn standard_error_halves_with_four_times_samples() {
    let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
    let t = TargetSequence::Zero;
    let small = expectation_mc(500, 500, 3, &fam, &t, 64, 2).unwrap();
    let large = expectation_mc(500, 2000, 3, &fam, &t, 64, 2).unwrap();
    let ratio = large.error_bar / small.error_bar;
    assert!((ratio - 0.5).abs() <= 0.15, "{ratio}");
}

#[test]
fn variance_respects_trivial_bounds() {
    let fam = BumpFamily::new(0.05, 0.15, 0.3).unwrap();
    let v = variance_mc(&[100, 300, 1000], 60, 5, &fam, &TargetSequence::Zero, 64, 2).unwrap();
    assert!(v.points.iter().all(|p| p.within_bounds));
    assert!(v.growth_exponent < 2.0);
}
