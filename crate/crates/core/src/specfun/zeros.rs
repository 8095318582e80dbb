use num_complex::Complex;

use super::{bessel::j_seq, check_order, MAX_ZERO_INDEX};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `(J_m(x), J_m'(x))` on the real axis. Zeros up to `j_{60,40} ≈ 210.5` sit
/// slightly past the complex-domain bound, so this path is unchecked.
fn j_real<T: Real>(m: usize, x: T) -> (T, T) {
    let seq = j_seq(m + 1, Complex::new(x, T::zero()));
    let below = if m == 0 { -seq[1].re } else { seq[m - 1].re };
    (seq[m].re, (below - seq[m + 1].re) * T::lit(0.5))
}

/// McMahon's large-zero expansion.
fn mcmahon(m: u32, ell: u32) -> f64 {
    let beta = (ell as f64 + 0.5 * m as f64 - 0.25) * std::f64::consts::PI;
    let mu = 4.0 * (m as f64).powi(2);
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
}

/// The `ell`-th positive zero `j_{m,ell}` of `J_m`.
///
/// Zeros are bracketed by a unit-step scan from `x = max(m, 1)` (consecutive
/// zeros are more than π apart for integer order, and `J_m > 0` on `(0, m]`),
/// then polished by Newton steps safeguarded by bisection.
pub fn bessel_j_zero<T: Real>(m: u32, ell: u32) -> Result<T> {
    check_order(m)?;
    if ell == 0 || ell > MAX_ZERO_INDEX {
        return Err(Error::DomainExceeded(format!("zero index ell = {ell} outside 1..={MAX_ZERO_INDEX}")));
    }
    let mu = m as usize;
    let step = T::one();
    let mut a = T::lit((m as f64).max(1.0));
    let (mut fa, _) = j_real(mu, a);
    let mut found = 0;
    let (lo, hi, flo) = loop {
        let b = a + step;
        let (fb, _) = j_real(mu, b);
        if fb == T::zero() {
            found += 1;
            if found == ell {
                return Ok(b);
            }
            // step past the exact zero so the next bracket starts cleanly
            a = b + step * T::lit(1e-3);
            fa = j_real(mu, a).0;
            continue;
        }
        if (fa < T::zero()) != (fb < T::zero()) {
            found += 1;
            if found == ell {
                break (a, b, fa);
            }
        }
        a = b;
        fa = fb;
    };
    Ok(polish(mu, lo, hi, flo, T::lit(mcmahon(m, ell))))
}

fn polish<T: Real>(m: usize, mut lo: T, mut hi: T, flo: T, guess: T) -> T {
    let lo_negative = flo < T::zero();
    let mut x = if guess > lo && guess < hi { guess } else { (lo + hi) * T::lit(0.5) };
    for _ in 0..200 {
        let (f, df) = j_real(m, x);
        if f == T::zero() {
            return x;
        }
        if (f < T::zero()) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if df != T::zero() && newton > lo && newton < hi { newton } else { (lo + hi) * T::lit(0.5) };
        let moved = (next - x).abs();
        x = next;
        if moved <= T::epsilon() * T::lit(4.0) * x.abs() || hi - lo <= T::epsilon() * T::lit(4.0) * x.abs() {
            break;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_zeros() {
        let cases = [
            (0, 1, 2.404_825_557_695_773),
            (2, 1, 5.135_622_301_840_683),
            (3, 1, 6.380_161_895_923_983),
            (10, 5, 28.887375063530457),
            (60, 1, 67.528_785_765_029_45),
            (0, 40, 124.87930891323295),
            (60, 40, 210.517_078_673_578_2),
        ];
        for (m, ell, want) in cases {
            let got: f64 = bessel_j_zero(m, ell).unwrap();
            assert!((got - want).abs() < 1e-11 * want, "j({m},{ell}) = {got}, want {want}");
            assert!(j_real(m as usize, got).0.abs() < 1e-12);
        }
    }

    #[test]
    fn strictly_increasing() {
        for m in [0u32, 7, 33, 60] {
            let zs: Vec<f64> = (1..=MAX_ZERO_INDEX).map(|l| bessel_j_zero(m, l).unwrap()).collect();
            assert!(zs.windows(2).all(|w| w[0] < w[1]));
        }
        for ell in [1u32, 9, 40] {
            let zs: Vec<f64> = (0..=60).map(|m| bessel_j_zero(m, ell).unwrap()).collect();
            assert!(zs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn bracketing_certificate() {
        for m in 0..=12u32 {
            for ell in 1..=8 {
                let z: f64 = bessel_j_zero(m, ell).unwrap();
                let d = 1e-7 * z;
                let (a, _) = j_real(m as usize, z - d);
                let (b, _) = j_real(m as usize, z + d);
                assert!(a * b < 0.0, "no sign change at j({m},{ell})");
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(bessel_j_zero::<f64>(61, 1).is_err());
        assert!(bessel_j_zero::<f64>(2, 0).is_err());
        assert!(bessel_j_zero::<f64>(2, 41).is_err());
    }
}
