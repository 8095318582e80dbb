use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{bessel_j_pair, hankel1_pair};

/// Value of the TE matching determinant together with the quantities needed
/// by the root finders.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Eval<T> {
    pub f: Complex<T>,
    /// `dF/dkR`.
    pub df: Complex<T>,
    /// `n |J_m'(n kR) H_m(kR)| + n² |J_m(n kR) H_m'(kR)|`; the magnitude `F` is measured against.
    pub scale: T,
}

impl<T: Real> Eval<T> {
    pub fn relative(&self) -> T {
        self.f.norm() / self.scale
    }
}

/// `C''(x) = -C'(x)/x - (1 - m²/x²) C(x)` for any cylinder function `C`.
fn second_derivative<T: Real>(m: u32, x: Complex<T>, c: Complex<T>, dc: Complex<T>) -> Complex<T> {
    let m2 = T::int(i64::from(m) * i64::from(m));
    -dc / x - c * (Complex::new(T::one(), T::zero()) - (x * x).inv() * m2)
}

pub(crate) fn evaluate<T: Real>(m: u32, n: T, kr: Complex<T>) -> Result<Eval<T>> {
    if kr.re == T::zero() && kr.im == T::zero() {
        return Err(Error::Singularity);
    }
    let nk = kr * n;
    let (j, dj) = bessel_j_pair(m, nk)?;
    let (h, dh) = hankel1_pair(m, kr)?;
    let ddj = second_derivative(m, nk, j, dj);
    let ddh = second_derivative(m, kr, h, dh);
    let n2 = n * n;
    let a = dj * h * n;
    let b = j * dh * n2;
    let df = ddj * h * n2 + dj * dh * n - dj * dh * (n2 * n) - j * ddh * n2;
    Ok(Eval { f: a - b, df, scale: a.norm() + b.norm() })
}

/// `F(kR) = n J_m'(n kR) H_m^(1)(kR) - n² J_m(n kR) H_m^(1)'(kR)`.
///
/// Zeros of `F` are the TE resonances of a disk of radius 1 and index `n`.
pub fn resonance_determinant<T: Real>(m: u32, n: T, kr: Complex<T>) -> Result<Complex<T>> {
    Ok(evaluate(m, n, kr)?.f)
}

/// `|F(kR)|` divided by the magnitude of its two terms, in `[0, 1]`.
pub fn relative_residual<T: Real>(m: u32, n: T, kr: Complex<T>) -> Result<T> {
    Ok(evaluate(m, n, kr)?.relative())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn derivative_matches_finite_difference() {
        for (m, n, k) in [(2, 3.3, C::new(1.46, -0.05)), (7, 1.8, C::new(5.2, -0.4)), (0, 2.5, C::new(0.9, -0.2))] {
            let e = evaluate(m, n, k).unwrap();
            let h = 1e-6;
            let fd =
                (resonance_determinant(m, n, k + h).unwrap() - resonance_determinant(m, n, k - h).unwrap()) / (2.0 * h);
            assert!((fd - e.df).norm() < 1e-7 * e.df.norm(), "m={m}: {fd} vs {}", e.df);
            // analyticity: the derivative along the imaginary direction agrees
            let ih = C::new(0.0, h);
            let fdi = (resonance_determinant(m, n, k + ih).unwrap() - resonance_determinant(m, n, k - ih).unwrap())
                / (2.0 * ih);
            assert!((fdi - e.df).norm() < 1e-7 * e.df.norm());
        }
    }

    #[test]
    fn uniform_space_reduces_to_wronskian() {
        for m in [0u32, 2, 5] {
            for k in [C::new(5.135_622_301_840_683, 0.0), C::new(2.0, -0.3), C::new(11.0, 0.5)] {
                let f = resonance_determinant(m, 1.0, k).unwrap();
                let w = C::new(0.0, -2.0 / std::f64::consts::PI) / k;
                assert!((f - w).norm() < 1e-12 * w.norm());
            }
        }
    }

    #[test]
    fn mirror_symmetry() {
        // Continued counterclockwise past the negative real axis, H^(1) picks up
        // -4 J (from Y(z e^{2πi}) = Y(z) + 4i J(z)); on that sheet F(-conj k) = conj F(k).
        let continued = |m: u32, n: f64, w: C| {
            let (j, dj) = bessel_j_pair(m, w * n).unwrap();
            let (h, dh) = hankel1_pair(m, w).unwrap();
            let (jw, djw) = bessel_j_pair(m, w).unwrap();
            let (h, dh) = (h - jw * 4.0, dh - djw * 4.0);
            dj * h * n - j * dh * (n * n)
        };
        for (m, k) in [(2u32, C::new(1.46229, -0.04638)), (3, C::new(0.8, -0.3)), (0, C::new(2.2, -0.6))] {
            let f = resonance_determinant(m, 3.3, k).unwrap();
            let g = continued(m, 3.3, -k.conj());
            assert!((g - f.conj()).norm() < 1e-10 * f.norm().max(1.0), "m={m}: {g} vs {}", f.conj());
        }
    }

    #[test]
    fn zero_argument_is_singular() {
        assert_eq!(resonance_determinant(2, 3.3, C::new(0.0, 0.0)), Err(Error::Singularity));
    }
}
