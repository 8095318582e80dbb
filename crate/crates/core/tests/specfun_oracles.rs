//! Special functions checked against independent quadrature and bisection oracles.

use microcavity::specfun::{bessel_j, bessel_j_deriv, bessel_j_zero, hankel1, hankel1_deriv};
use microcavity::C64;

const PI: f64 = std::f64::consts::PI;

/// `J_m(z) = (1/π) ∫_0^π cos(mτ - z sin τ) dτ` by the trapezoid rule, which is
/// spectrally accurate for this periodic integrand.
fn j_oracle(m: u32, z: C64) -> C64 {
    let steps = 4000;
    let h = PI / steps as f64;
    let f = |t: f64| (C64::new(0.0, m as f64 * t) - C64::new(0.0, 1.0) * z * t.sin()).exp();
    // averaging τ and -τ turns the exponential into cos(mτ - z sin τ), also for complex z
    let mut sum = C64::new(0.0, 0.0);
    for i in 0..=steps {
        let t = i as f64 * h;
        let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
        let g = f(t);
        let g_neg = f(-t);
        sum += (g + g_neg) * 0.5 * w;
    }
    sum * h / PI
}

/// `Y_m(x)` for real `x > 0` from the Schläfli integral
/// `(1/π) ∫_0^π sin(x sin τ - mτ) dτ - (1/π) ∫_0^∞ (e^{mt} + (-1)^m e^{-mt}) e^{-x sinh t} dt`.
fn y_oracle(m: u32, x: f64) -> f64 {
    let mf = m as f64;
    // neither integrand is periodic, so use Simpson's rule for both
    let simpson = |f: &dyn Fn(f64) -> f64, upper: f64, steps: usize| {
        let h = upper / steps as f64;
        let mut s = f(0.0) + f(upper);
        for i in 1..steps {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        s * h / 3.0
    };
    let a = simpson(&|t: f64| (x * t.sin() - mf * t).sin(), PI, 20_000);
    // the second integrand decays like exp(-x e^t / 2); cut where it is negligible
    let upper = (2.0 * (745.0 + mf * 10.0) / x).ln().max(1.0) + 1.0;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let b = simpson(&|t: f64| (mf * t - x * t.sinh()).exp() + sign * (-mf * t - x * t.sinh()).exp(), upper, 200_000);
    (a - b) / PI
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn j_matches_quadrature() {
    let points = [
        (0, C64::new(0.3, 0.0)),
        (2, C64::new(1.4622902, -0.0463827)),
        (2, C64::new(4.8255578, -0.1530629)),
        (3, C64::new(2.0, 0.5)),
        (5, C64::new(7.0, -1.5)),
        (10, C64::new(14.0, -3.0)),
        (4, C64::new(20.0, 0.0)),
        (7, C64::new(1.0, -0.2)),
    ];
    for (m, z) in points {
        let got = bessel_j(m, z).unwrap();
        let want = j_oracle(m, z);
        assert!(rel(got, want) < 1e-10, "J_{m}({z}): {got} vs {want}");
    }
}

#[test]
fn hankel_matches_quadrature_on_real_axis() {
    for (m, x) in [(0, 0.5), (1, 1.3), (2, 1.4622902), (3, 2.5), (5, 6.0), (8, 3.0), (2, 30.0)] {
        let z = C64::new(x, 0.0);
        let want = C64::new(j_oracle(m, z).re, y_oracle(m, x));
        let got = hankel1(m, z).unwrap();
        assert!(rel(got, want) < 1e-9, "H_{m}({x}): {got} vs {want}");
    }
}

#[test]
fn derivatives_match_finite_differences() {
    let h = 1e-5;
    for (m, z) in [(3, C64::new(2.0, 0.5)), (0, C64::new(1.1, -0.3)), (6, C64::new(9.0, -2.0))] {
        let fd = (bessel_j(m, z + h).unwrap() - bessel_j(m, z - h).unwrap()) / (2.0 * h);
        assert!((fd - bessel_j_deriv(m, z).unwrap()).norm() < 1e-8);
        let fd = (hankel1(m, z + h).unwrap() - hankel1(m, z - h).unwrap()) / (2.0 * h);
        let d = hankel1_deriv(m, z).unwrap();
        assert!((fd - d).norm() < 1e-8 * d.norm().max(1.0));
    }
}

#[test]
fn zeros_match_bisection_on_quadrature() {
    for m in 0..=10u32 {
        let f = |x: f64| j_oracle(m, C64::new(x, 0.0)).re;
        // scan the oracle for sign changes, then bisect each to 1e-12
        let mut brackets = Vec::new();
        let mut x = (m as f64).max(0.5);
        while brackets.len() < 5 {
            let y = x + 0.1;
            if f(x) * f(y) < 0.0 {
                brackets.push((x, y));
            }
            x = y;
        }
        for (ell, (mut a, mut b)) in brackets.into_iter().enumerate() {
            let fa = f(a);
            while b - a > 1e-12 {
                let c = 0.5 * (a + b);
                if f(c) * fa > 0.0 {
                    a = c;
                } else {
                    b = c;
                }
            }
            let got: f64 = bessel_j_zero(m, ell as u32 + 1).unwrap();
            assert!((got - 0.5 * (a + b)).abs() < 1e-8, "j({m},{}) = {got}, oracle {}", ell + 1, 0.5 * (a + b));
        }
    }
}

#[test]
fn known_first_zero_values() {
    let j21: f64 = bessel_j_zero(2, 1).unwrap();
    assert!((j21 - 5.13562).abs() < 1e-5);
    assert!(bessel_j(2, C64::new(5.1356223, 0.0)).unwrap().norm() < 1e-6);
}
