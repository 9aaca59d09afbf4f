// Copyright 2026 The cantorlab Authors
// SPDX-License-Identifier: Apache-2.0

//! C² periodic bump functions and their Fourier coefficients.
//!
//! `f_n` equals 1 within `a n^{-θ}` of its center, vanishes beyond
//! `b n^{-θ}`, and interpolates with the quintic smoothstep
//! `S(t) = 6t⁵ - 15t⁴ + 10t³` over the transition width `w = (b - a) n^{-θ}`.
//! Since `S', S''` vanish at both ends, `f_n` is C² and
//!
//! ```text
//! ‖f'‖∞ = (15/8) / w,   ‖f''‖∞ = (10/√3) / w².
//! ```
//!
//! Coefficients are computed in closed form. The profile is even about the
//! center, so `c_l = e(-l x_n) G(l)` with `G` real.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exact_orbit::{circle_distance, CircleValue};

/// `sup |S'| = S'(1/2)`.
pub const SMOOTHSTEP_SUP_D1: f64 = 15.0 / 8.0;
/// `sup |S''|`, attained at `t = (1 ± 1/√3)/2`.
pub const SMOOTHSTEP_SUP_D2: f64 = 5.773_502_691_896_258; // 10/√3

/// Total variation of `S''` on `[0, 1]`: it rises to `10/√3`, falls to
/// `-10/√3` and returns to 0.
const SMOOTHSTEP_TV_D2: f64 = 4.0 * SMOOTHSTEP_SUP_D2;
/// `|S'''(0)| = |S'''(1)|`.
const SMOOTHSTEP_D3_END: f64 = 60.0;
/// `∫₀¹ |S''''|`.
const SMOOTHSTEP_L1_D4: f64 = 180.0;

#[inline]
fn smoothstep(t: f64) -> f64 {
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

#[inline]
fn smoothstep_d1(t: f64) -> f64 {
    30.0 * t * t * (1.0 - t) * (1.0 - t)
}

#[inline]
fn smoothstep_d2(t: f64) -> f64 {
    60.0 * t * (1.0 - t) * (1.0 - 2.0 * t)
}

/// Parameters of one bump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpSpec {
    pub n: u64,
    pub center: f64,
    pub a: f64,
    pub b: f64,
    pub theta: f64,
}

impl BumpSpec {
    pub fn new(n: u64, center: f64, a: f64, b: f64, theta: f64) -> Self {
        BumpSpec { n, center, a, b, theta }
    }

    /// `n^{-θ}`.
    pub fn scale(&self) -> f64 {
        (self.n as f64).powf(-self.theta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    n: u64,
    center: f64,
    inner: f64,
    outer: f64,
    width: f64,
}

/// One Fourier coefficient `c_{l,n} = ∫₀¹ f_n(x) e^{-2πilx} dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierCoefficient {
    pub l: i64,
    pub n: u64,
    pub value: Complex64,
}

pub fn make_bump(spec: BumpSpec) -> Result<BumpFunction> {
    if spec.n == 0 {
        return Err(Error::invalid("bump index n starts at 1"));
    }
    if !(spec.a > 0.0 && spec.a < spec.b && spec.b.is_finite()) {
        return Err(Error::invalid(format!(
            "need 0 < a < b, got a = {}, b = {}",
            spec.a, spec.b
        )));
    }
    if !(spec.theta >= 0.0 && spec.theta.is_finite()) {
        return Err(Error::invalid(format!(
            "theta must be non-negative, got {}",
            spec.theta
        )));
    }
    let s = spec.scale();
    let inner = spec.a * s;
    let outer = spec.b * s;
    if 2.0 * outer >= 1.0 {
        return Err(Error::DegenerateBump { outer });
    }
    Ok(BumpFunction {
        n: spec.n,
        center: spec.center.rem_euclid(1.0),
        inner,
        outer,
        width: outer - inner,
    })
}

impl BumpFunction {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Half-width of the plateau, `a n^{-θ}`.
    pub fn inner(&self) -> f64 {
        self.inner
    }

    /// Half-width of the support, `b n^{-θ}`.
    pub fn outer(&self) -> f64 {
        self.outer
    }

    /// Transition width `w = (b - a) n^{-θ}`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Signed offset `x - center` reduced to `[-1/2, 1/2)`.
    #[inline]
    fn offset(&self, x: f64) -> f64 {
        (x.rem_euclid(1.0) - self.center + 0.5).rem_euclid(1.0) - 0.5
    }

    /// Position inside the transition, 0 at the outer edge and 1 at the
    /// plateau, or `None` off the transition.
    #[inline]
    fn transition(&self, u: f64) -> Option<f64> {
        let au = u.abs();
        (au > self.inner && au < self.outer).then(|| (self.outer - au) / self.width)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_offset(self.offset(x))
    }

    #[inline]
    fn eval_offset(&self, u: f64) -> f64 {
        let au = u.abs();
        if au <= self.inner {
            1.0
        } else if au >= self.outer {
            0.0
        } else {
            smoothstep((self.outer - au) / self.width)
        }
    }

    /// Value at a certified circle point: the bump is evaluated at the
    /// point's center value.
    pub fn eval_circle(&self, x: CircleValue) -> f64 {
        let d = circle_distance(x, CircleValue::exact(self.center));
        self.eval_offset(d.value())
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let u = self.offset(x);
        match self.transition(u) {
            Some(t) => -u.signum() * smoothstep_d1(t) / self.width,
            None => 0.0,
        }
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let u = self.offset(x);
        match self.transition(u) {
            Some(t) => smoothstep_d2(t) / (self.width * self.width),
            None => 0.0,
        }
    }

    /// `‖f'‖∞ = (15/8)/w`.
    pub fn sup_derivative(&self) -> f64 {
        SMOOTHSTEP_SUP_D1 / self.width
    }

    /// `‖f''‖∞ = (10/√3)/w²`.
    pub fn sup_second_derivative(&self) -> f64 {
        SMOOTHSTEP_SUP_D2 / (self.width * self.width)
    }

    /// `c_0 = ∫ f = (a + b) n^{-θ}`: each transition contributes `w/2`.
    pub fn mass(&self) -> f64 {
        self.inner + self.outer
    }

    /// Real profile coefficient `G(l) = ∫_{-1/2}^{1/2} f(center + u) e^{-2πilu} du`.
    pub fn profile_coeff(&self, l: i64) -> f64 {
        if l == 0 {
            return self.mass();
        }
        let k = 2.0 * PI * l as f64;
        // plateau, then the transition in t = (B - u)/w
        let plateau = (k * self.inner).sin() / k;
        let ramp = Complex64::from_polar(1.0, k * self.outer) * smoothstep_transform(k * self.width);
        2.0 * (plateau + self.width * ramp.re)
    }

    pub fn fourier_coeff(&self, l: i64) -> FourierCoefficient {
        let phase = Complex64::from_polar(1.0, -2.0 * PI * (l as f64) * self.center);
        FourierCoefficient {
            l,
            n: self.n,
            value: phase * self.profile_coeff(l),
        }
    }

    /// `min(c_0, ‖f''‖∞ / (2πl)²)`, the two elementary bounds on `|c_l|`.
    pub fn coefficient_bound(&self, l: i64) -> f64 {
        if l == 0 {
            return self.mass();
        }
        let k = 2.0 * PI * l as f64;
        self.mass().min(self.sup_second_derivative() / (k * k))
    }

    /// Upper bound on `Σ_{|l| > L} |c_l|`, hence on the sup-norm error of the
    /// order-`L` partial sum.
    ///
    /// Three integrations by parts give `|c_l| ≤ ∫|f'''| / (2π|l|)³`; a fourth,
    /// with the jumps of `f'''` at the four junctions, gives
    /// `(Σ|jumps| + ∫|f''''|) / (2π|l|)⁴`. Summing the tails with
    /// `Σ_{l>L} l^{-p} ≤ L^{1-p}/(p-1)` and taking the smaller.
    pub fn tail_bound(&self, order: u64) -> f64 {
        let w = self.width;
        let lf = order.max(1) as f64;
        let v3 = 2.0 * SMOOTHSTEP_TV_D2 / (w * w);
        let v4 = (4.0 * SMOOTHSTEP_D3_END + 2.0 * SMOOTHSTEP_L1_D4) / (w * w * w);
        let tail3 = 2.0 * v3 / (2.0 * PI).powi(3) / (2.0 * lf * lf);
        let tail4 = 2.0 * v4 / (2.0 * PI).powi(4) / (3.0 * lf * lf * lf);
        tail3.min(tail4)
    }
}

/// `∫₀¹ S(t) e^{-iκt} dt`.
fn smoothstep_transform(kappa: f64) -> Complex64 {
    if kappa.abs() < 4.0 {
        // Σ_m (-iκ)^m / m! · ∫ S t^m, with ∫₀¹ S(t) t^m dt = (m² + 14m + 60) / ((m+4)(m+5)(m+6))
        let mut sum = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        let step = Complex64::new(0.0, -kappa);
        for m in 0..80u32 {
            let mf = m as f64;
            let moment = (mf * mf + 14.0 * mf + 60.0) / ((mf + 4.0) * (mf + 5.0) * (mf + 6.0));
            let term = power * moment;
            sum += term;
            if term.norm() < 1e-20 * sum.norm().max(1e-300) && m > 4 {
                break;
            }
            power = power * step / (mf + 1.0);
        }
        sum
    } else {
        // ∫ P e^{st} = e^{st} Σ_j (-1)^j P^{(j)}(t) / s^{j+1}, s = -iκ
        const AT_ONE: [f64; 6] = [1.0, 0.0, 0.0, 60.0, 360.0, 720.0];
        const AT_ZERO: [f64; 6] = [0.0, 0.0, 0.0, 60.0, -360.0, 720.0];
        let s = Complex64::new(0.0, -kappa);
        let mut inv = s.inv();
        let mut at_one = Complex64::new(0.0, 0.0);
        let mut at_zero = Complex64::new(0.0, 0.0);
        for j in 0..6 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            at_one += inv * (sign * AT_ONE[j]);
            at_zero += inv * (sign * AT_ZERO[j]);
            inv /= s;
        }
        Complex64::from_polar(1.0, -kappa) * at_one - at_zero
    }
}

/// `sup_x |f(x) - Σ_{|l|≤L} c_l e(lx)|` over `grid_size` equally spaced
/// points.
pub fn partial_sum_error(f: &BumpFunction, order: u64, grid_size: usize) -> Result<f64> {
    if order < 1 {
        return Err(Error::invalid("truncation order must be at least 1"));
    }
    if grid_size == 0 {
        return Err(Error::invalid("grid must be nonempty"));
    }
    let coeffs: Vec<f64> = (1..=order as i64).map(|l| f.profile_coeff(l)).collect();
    let c0 = f.mass();
    let mut worst = 0.0f64;
    for i in 0..grid_size {
        let x = i as f64 / grid_size as f64;
        let u = f.offset(x);
        let phi = 2.0 * PI * u;
        // cos(lφ) by the Chebyshev recurrence
        let two_cos = 2.0 * phi.cos();
        let (mut prev, mut cur) = (1.0f64, phi.cos());
        let mut s = c0;
        for &g in &coeffs {
            s += 2.0 * g * cur;
            let next = two_cos * cur - prev;
            prev = cur;
            cur = next;
        }
        worst = worst.max((f.eval_offset(u) - s).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SandwichReport {
    pub n: u64,
    pub epsilon: f64,
    /// `1[d(x, x_n) ≤ r] ≤ f_upper(x)` at every grid point.
    pub upper_dominates: bool,
    /// `f_lower(x) ≤ 1[d(x, x_n) ≤ r]` at every grid point.
    pub lower_dominated: bool,
    /// `c_0` of the upper bump, `(2 + ε) r`.
    pub upper_mass: f64,
    /// `2 (1 + ε) r`.
    pub mass_bound: f64,
    pub holds: bool,
}

/// Checks the indicator sandwich for the ball of radius `r = c n^{-θ}`
/// around `center`, with upper bump `(a, b) = (c, c(1+ε))` and lower bump
/// `(c(1-ε), c)`.
pub fn sandwich_check(
    n: u64,
    theta: f64,
    radius_scale: f64,
    epsilon: f64,
    center: f64,
    grid_size: usize,
) -> Result<SandwichReport> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let upper = make_bump(BumpSpec::new(
        n,
        center,
        radius_scale,
        radius_scale * (1.0 + epsilon),
        theta,
    ))?;
    let lower = make_bump(BumpSpec::new(
        n,
        center,
        radius_scale * (1.0 - epsilon),
        radius_scale,
        theta,
    ))?;
    let radius = upper.inner();
    debug_assert_eq!(radius, lower.outer());
    // the bumps' own offset, so a boundary point is classified the same way
    let ball = |x: f64| {
        if upper.offset(x).abs() <= radius {
            1.0
        } else {
            0.0
        }
    };
    let edges = [
        center - radius,
        center + radius,
        center - radius - 1e-12,
        center + radius + 1e-12,
    ];
    let points = (0..grid_size).map(|i| i as f64 / grid_size as f64).chain(edges);
    let (mut up_ok, mut low_ok) = (true, true);
    for x in points {
        let ind = ball(x);
        up_ok &= ind <= upper.eval(x);
        low_ok &= lower.eval(x) <= ind;
    }
    let upper_mass = upper.mass();
    let mass_bound = 2.0 * (1.0 + epsilon) * radius;
    Ok(SandwichReport {
        n,
        epsilon,
        upper_dominates: up_ok,
        lower_dominated: low_ok,
        upper_mass,
        mass_bound,
        holds: up_ok && low_ok && upper_mass <= mass_bound,
    })
}

/// One line of a bump audit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub property: &'static str,
    pub n: u64,
    pub order: Option<u64>,
    pub value: f64,
    pub reference: f64,
    pub holds: bool,
}

/// Settings for [`audit`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditConfig {
    pub a: f64,
    pub b: f64,
    pub theta: f64,
    pub center: f64,
    pub ns: Vec<u64>,
    pub orders: Vec<u64>,
    pub grid_size: usize,
    /// Ball radius scale `c` for the indicator sandwich, radius `c n^{-θ}`.
    pub sandwich_scale: f64,
    pub sandwich_epsilon: f64,
}

/// Checks range, periodicity, plateau, support, derivative norms, the mean,
/// coefficient decay, truncation error and its scaling in `L` and `n`, and
/// the indicator sandwich.
pub fn audit(cfg: &AuditConfig) -> Result<Vec<AuditRow>> {
    if cfg.ns.is_empty() || cfg.orders.len() < 2 || cfg.grid_size == 0 {
        return Err(Error::invalid("audit needs some n, two or more orders and a grid"));
    }
    let mut rows = Vec::new();
    let mut row = |property, n, order, value: f64, reference: f64, holds| {
        rows.push(AuditRow {
            property,
            n,
            order,
            value,
            reference,
            holds,
        });
    };
    let mut errors: Vec<Vec<f64>> = Vec::new();
    for &n in &cfg.ns {
        let f = make_bump(BumpSpec::new(n, cfg.center, cfg.a, cfg.b, cfg.theta))?;
        let scale = (n as f64).powf(-cfg.theta);
        let c = f.center();

        let edge = f.inner() * (1.0 - 1e-12);
        let flat = f.eval(c) == 1.0 && f.eval(c + edge) == 1.0 && f.eval(c - edge) == 1.0;
        row("plateau", n, None, f.eval(c), 1.0, flat);
        let off = f.eval(c + f.outer() + 1e-9);
        row("support", n, None, off, 0.0, off == 0.0);

        // dyadic grid, so x + 1 is exact
        let grid = cfg.grid_size.next_power_of_two();
        let (mut lo, mut hi, mut drift) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        let (mut d1, mut d2) = (0.0f64, 0.0f64);
        for i in 0..grid {
            let x = i as f64 / grid as f64;
            let v = f.eval(x);
            lo = lo.min(v);
            hi = hi.max(v);
            drift = drift.max((v - f.eval(x + 1.0)).abs());
            d1 = d1.max(f.derivative(x).abs());
            d2 = d2.max(f.second_derivative(x).abs());
        }
        row("range", n, None, hi, 1.0, lo >= 0.0 && hi <= 1.0);
        row("periodicity", n, None, drift, 0.0, drift == 0.0);

        let w = f.width();
        let peak1 = f.derivative(c + f.inner() + w / 2.0).abs();
        let sup1 = f.sup_derivative();
        row(
            "sup_derivative",
            n,
            None,
            peak1,
            (15.0 / 8.0) / w,
            (peak1 - sup1).abs() <= 1e-9 * sup1 && d1 <= sup1 * (1.0 + 1e-12),
        );
        let t2 = (1.0 - 1.0 / 3f64.sqrt()) / 2.0;
        let peak2 = f.second_derivative(c + f.outer() - t2 * w).abs();
        let sup2 = f.sup_second_derivative();
        row(
            "sup_second_derivative",
            n,
            None,
            peak2,
            (10.0 / 3f64.sqrt()) / (w * w),
            (peak2 - sup2).abs() <= 1e-9 * sup2 && d2 <= sup2 * (1.0 + 1e-12),
        );

        let c0 = f.fourier_coeff(0).value;
        let mass = (cfg.a + cfg.b) * scale;
        row(
            "mean",
            n,
            None,
            c0.re,
            mass,
            (c0.re - mass).abs() <= 1e-12 && c0.im == 0.0,
        );

        let worst = (1..=256)
            .map(|l| f.fourier_coeff(l).value.norm() / f.coefficient_bound(l))
            .fold(0.0f64, f64::max);
        row("coefficient_decay", n, None, worst, 1.0, worst <= 1.0 + 1e-12);

        let mut errs = Vec::with_capacity(cfg.orders.len());
        for &order in &cfg.orders {
            let e = partial_sum_error(&f, order, cfg.grid_size)?;
            row(
                "partial_sum_error",
                n,
                Some(order),
                e,
                f.tail_bound(order),
                e <= f.tail_bound(order),
            );
            errs.push(e);
        }
        let ls: Vec<f64> = cfg.orders.iter().map(|&l| l as f64).collect();
        let slope = crate::stats::log_log_slope(&ls, &errs)?;
        let monotone = errs.windows(2).all(|p| p[1] < p[0]);
        row("error_slope_in_order", n, None, slope, -1.8, slope <= -1.8 && monotone);
        errors.push(errs);

        let s = sandwich_check(
            n,
            cfg.theta,
            cfg.sandwich_scale,
            cfg.sandwich_epsilon,
            cfg.center,
            cfg.grid_size,
        )?;
        row("sandwich", n, None, s.upper_mass, s.mass_bound, s.holds);
    }
    // error ∝ n^{2θ} at fixed L, relative to the first n
    let n0 = cfg.ns[0];
    for (j, &n) in cfg.ns.iter().enumerate().skip(1) {
        for (k, &order) in cfg.orders.iter().enumerate() {
            let predicted = (n as f64 / n0 as f64).powf(2.0 * cfg.theta);
            let ratio = errors[j][k] / errors[0][k] / predicted;
            row(
                "error_scaling_in_n",
                n,
                Some(order),
                ratio,
                1.0,
                (1.0 / 3.0..=3.0).contains(&ratio),
            );
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(n: u64, center: f64) -> BumpFunction {
        make_bump(BumpSpec::new(n, center, 0.2, 0.3, 0.01)).unwrap()
    }

    #[test]
    fn plateau_and_support() {
        let f = bump(10, 0.9);
        assert_eq!(f.eval(0.9), 1.0);
        assert_eq!(f.eval(0.9 + f.inner()), 1.0);
        assert_eq!(f.eval(0.9 + f.outer() + 1e-9), 0.0);
        assert_eq!(f.eval(0.9 - f.outer() - 1e-9), 0.0);
        // wraps through 0
        assert!(f.eval(0.9 + 0.15) > 0.0 || f.outer() < 0.15);
        assert_eq!(f.eval(1.9), f.eval(0.9));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(
            make_bump(BumpSpec::new(1, 0.0, 0.3, 0.6, 0.01)),
            Err(Error::DegenerateBump { .. })
        ));
        assert!(make_bump(BumpSpec::new(1, 0.0, 0.3, 0.2, 0.01)).is_err());
        assert!(make_bump(BumpSpec::new(1, 0.0, 0.0, 0.2, 0.01)).is_err());
        assert!(make_bump(BumpSpec::new(0, 0.0, 0.1, 0.2, 0.01)).is_err());
    }

    #[test]
    fn derivative_sups() {
        let f = bump(100, 0.3);
        let w = f.width();
        let right_mid = 0.3 + f.inner() + w / 2.0;
        assert!((f.derivative(right_mid).abs() - 15.0 / 8.0 / w).abs() < 1e-9 / w);
        let t = (1.0 - 1.0 / 3f64.sqrt()) / 2.0;
        let x = 0.3 + f.outer() - t * w;
        assert!((f.second_derivative(x).abs() - SMOOTHSTEP_SUP_D2 / (w * w)).abs() < 1e-9 / (w * w));
        assert!((SMOOTHSTEP_SUP_D2 - 10.0 / 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn series_and_parts_agree_at_switch() {
        for kappa in [3.999, -3.999] {
            let a = smoothstep_transform(kappa);
            let b = smoothstep_transform(kappa.signum() * 4.0);
            assert!((a - b).norm() < 1e-3);
        }
        assert!((smoothstep_transform(0.0).re - 0.5).abs() < 1e-16);
    }

    #[test]
    fn mass_is_zeroth_coefficient() {
        let f = bump(1000, 0.42);
        let c0 = f.fourier_coeff(0).value;
        assert_eq!(c0.im, 0.0);
        assert!((c0.re - (0.5 * 1000f64.powf(-0.01))).abs() < 1e-15);
    }

    #[test]
    fn coefficient_bounds() {
        let f = bump(10, 0.1);
        for l in 1..400 {
            let c = f.fourier_coeff(l).value.norm();
            assert!(c <= f.coefficient_bound(l) + 1e-15, "l = {l}");
            assert_eq!(f.fourier_coeff(-l).value.norm(), c);
        }
    }

    #[test]
    fn tail_bound_dominates_partial_sum_error() {
        let f = bump(10, 0.1);
        for order in [16, 64, 256] {
            let err = partial_sum_error(&f, order, 4096).unwrap();
            assert!(
                err <= f.tail_bound(order),
                "L = {order}: {err} vs {}",
                f.tail_bound(order)
            );
        }
    }

    #[test]
    fn audit_passes_default_family() {
        let cfg = AuditConfig {
            a: 0.2,
            b: 0.3,
            theta: 0.01,
            center: 0.3,
            ns: vec![10, 1000],
            orders: vec![64, 128, 256],
            grid_size: 4096,
            sandwich_scale: 0.2,
            sandwich_epsilon: 0.25,
        };
        let rows = audit(&cfg).unwrap();
        assert!(rows.iter().all(|r| r.holds), "{:?}", rows.iter().find(|r| !r.holds));
        assert_eq!(rows.iter().filter(|r| r.property == "error_scaling_in_n").count(), 3);
    }

    #[test]
    fn sandwich_small_case() {
        let r = sandwich_check(50, 0.3, 0.1, 0.25, 0.3, 20_000).unwrap();
        assert!(r.holds, "{r:?}");
        assert!((r.upper_mass - 2.25 * 0.1 * 50f64.powf(-0.3)).abs() < 1e-15);
        assert!(sandwich_check(50, 0.3, 0.1, 1.5, 0.3, 10).is_err());
    }
}
