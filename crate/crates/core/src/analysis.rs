//! Lamb shift, decay width, quality factor and effective-potential classification.

use serde::Serialize;

use crate::billiard::billiard_eigenvalue;
use crate::cavity::{find_resonance, Resonance};
use crate::error::{Error, Result};
use crate::mode::{check_refractive_index, ModeIndex};
use crate::scalar::Real;

/// Spectral shift between the closed billiard and the open cavity, in `kR` units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambShiftRecord<T> {
    pub mode: ModeIndex,
    pub n: T,
    pub closed_kr: T,
    pub open_kr_re: T,
    /// `closed_kr - open_kr_re`.
    pub shift: T,
}

/// Lamb shift of `(m, ell)` at index `n`.
pub fn lamb_shift<T: Real>(mode: ModeIndex, n: T) -> Result<LambShiftRecord<T>> {
    let res = find_resonance(mode, n, None)?;
    lamb_shift_of(&res)
}

/// Lamb shift of an already computed resonance.
pub fn lamb_shift_of<T: Real>(res: &Resonance<T>) -> Result<LambShiftRecord<T>> {
    let closed_kr = billiard_eigenvalue(res.mode, res.n)?.kr;
    Ok(LambShiftRecord { mode: res.mode, n: res.n, closed_kr, open_kr_re: res.kr.re, shift: closed_kr - res.kr.re })
}

/// `(Γ, Q)` with `Γ = -2 Im kR` and `Q = Re kR / (2 Γ)`.
pub fn decay_width_and_q<T: Real>(res: &Resonance<T>) -> Result<(T, T)> {
    let im = res.kr.im;
    if im == T::zero() {
        return Err(Error::ZeroWidth);
    }
    if !(im < T::zero()) {
        return Err(Error::NotDecaying { re: res.kr.re.as_f64(), im: im.as_f64() });
    }
    let gamma = -T::lit(2.0) * im;
    Ok((gamma, res.kr.re / (T::lit(2.0) * gamma)))
}

/// `V_eff(r) = k² (1 - n(r)²) + m² / r²` with `n(r) = n` for `r < 1` and 1 outside.
pub fn effective_potential<T: Real>(r: T, m: u32, n: T, k2: T) -> Result<T> {
    if !r.is_finite() || r < T::zero() {
        return Err(Error::InvalidRadius(r.as_f64()));
    }
    let m2 = T::int(i64::from(m) * i64::from(m));
    if r == T::zero() {
        if m > 0 {
            return Err(Error::SingularRadius);
        }
        return Ok(k2 * (T::one() - n * n));
    }
    let barrier = m2 / (r * r);
    if r < T::one() {
        Ok(k2 * (T::one() - n * n) + barrier)
    } else {
        Ok(barrier)
    }
}

/// Turning-point bounds of the trapped region: top `k_T = m`, bottom `k_B = m / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierBounds<T> {
    pub k_t: T,
    pub k_b: T,
}

pub fn barrier_bounds<T: Real>(m: u32, n: T) -> Result<BarrierBounds<T>> {
    check_refractive_index(n)?;
    if m == 0 {
        return Err(Error::NoBarrier);
    }
    let k_t = T::int(i64::from(m));
    Ok(BarrierBounds { k_t, k_b: k_t / n })
}

/// Position of `Re kR` relative to the barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BarrierClass {
    /// `m/n < Re kR < m`: trapped by the centrifugal barrier.
    BelowBarrier,
    /// `Re kR >= m`.
    AboveBarrier,
    /// `Re kR <= m/n`: below the bottom of the well.
    SubBottom,
}

impl BarrierClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BarrierClass::BelowBarrier => "below_barrier",
            BarrierClass::AboveBarrier => "above_barrier",
            BarrierClass::SubBottom => "sub_bottom",
        }
    }
}

impl std::fmt::Display for BarrierClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BarrierClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "below_barrier" => Ok(BarrierClass::BelowBarrier),
            "above_barrier" => Ok(BarrierClass::AboveBarrier),
            "sub_bottom" => Ok(BarrierClass::SubBottom),
            other => Err(Error::InvalidSweep(format!("unknown barrier class {other:?}"))),
        }
    }
}

/// Classification of `re_kr` against the bounds `(k_t, k_b)`. A tie with `k_t` counts as above.
pub fn classify<T: Real>(re_kr: T, k_t: T, k_b: T) -> BarrierClass {
    if re_kr >= k_t {
        BarrierClass::AboveBarrier
    } else if re_kr > k_b {
        BarrierClass::BelowBarrier
    } else {
        BarrierClass::SubBottom
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierData<T> {
    pub k_t: T,
    pub k_b: T,
    /// `V_eff(1⁻)` at energy `(Re kR)²`.
    pub v_bottom: T,
    pub class: BarrierClass,
}

/// Barrier data for a resonance. `m = 0` has `k_T = k_B = 0`, so every resonance is above.
pub fn classify_resonance<T: Real>(res: &Resonance<T>) -> Result<BarrierData<T>> {
    let (k_t, k_b) = match barrier_bounds(res.mode.m, res.n) {
        Ok(b) => (b.k_t, b.k_b),
        Err(Error::NoBarrier) => (T::zero(), T::zero()),
        Err(e) => return Err(e),
    };
    let re = res.kr.re;
    let below_one = T::one() - T::epsilon();
    let v_bottom = effective_potential(below_one, res.mode.m, res.n, re * re)?;
    Ok(BarrierData { k_t, k_b, v_bottom, class: classify(re, k_t, k_b) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use proptest::prelude::*;

    fn fake(m: u32, n: f64, re: f64, im: f64) -> Resonance<f64> {
        Resonance { mode: ModeIndex::new(m, 1).unwrap(), n, kr: Complex::new(re, im), residual: 0.0 }
    }

    #[test]
    fn width_and_quality() {
        let (g, q) = decay_width_and_q(&fake(2, 3.3, 1.4623, -0.0464)).unwrap();
        assert!((g - 0.0928).abs() < 1e-12);
        assert!((q - 1.4623 / 0.1856).abs() < 1e-12);
        assert_eq!(decay_width_and_q(&fake(2, 3.3, 1.0, 0.0)), Err(Error::ZeroWidth));
        assert!(decay_width_and_q(&fake(2, 3.3, 1.0, 0.1)).is_err());
    }

    #[test]
    fn potential_values() {
        let v = effective_potential(1.0 - 1e-12, 3, 3.3, 3.42_f64).unwrap();
        assert!((v + 24.8238).abs() < 1e-3);
        assert_eq!(effective_potential(2.0, 3, 3.3, 3.42).unwrap(), 9.0 / 4.0);
        assert_eq!(effective_potential(1.0, 3, 3.3, 3.42).unwrap(), 9.0);
        assert_eq!(effective_potential(0.0, 3, 3.3, 3.42), Err(Error::SingularRadius));
        assert!(matches!(effective_potential(-0.5, 3, 3.3, 3.42), Err(Error::InvalidRadius(_))));
        assert_eq!(effective_potential(0.0, 0, 2.0, 1.0).unwrap(), -3.0);
    }

    #[test]
    fn bounds() {
        let b = barrier_bounds(3, 3.3_f64).unwrap();
        assert_eq!(b.k_t * b.k_t, 9.0);
        assert!((b.k_b * b.k_b - 0.826).abs() < 1e-3);
        assert_eq!(b.k_b * 3.3, b.k_t);
        assert_eq!(barrier_bounds(0, 3.3), Err(Error::NoBarrier));
        assert_eq!(barrier_bounds(4, 5.1).unwrap().k_t, 4.0);
    }

    #[test]
    fn classification_edges() {
        assert_eq!(classify_resonance(&fake(3, 3.3, 1.849, -0.014)).unwrap().class, BarrierClass::BelowBarrier);
        assert_eq!(classify_resonance(&fake(4, 3.3, 4.0, -0.1)).unwrap().class, BarrierClass::AboveBarrier);
        assert_eq!(classify_resonance(&fake(4, 3.3, 0.5, -0.1)).unwrap().class, BarrierClass::SubBottom);
        assert_eq!(classify_resonance(&fake(0, 3.3, 0.7, -0.1)).unwrap().class, BarrierClass::AboveBarrier);
        for c in [BarrierClass::BelowBarrier, BarrierClass::AboveBarrier, BarrierClass::SubBottom] {
            assert_eq!(c.as_str().parse::<BarrierClass>().unwrap(), c);
        }
    }

    proptest! {
        #[test]
        fn potential_decays_outside(m in 1u32..=60, r in 1.0f64..1e3, n in 1.01f64..10.0, k2 in 0.0f64..100.0) {
            let a = effective_potential(r, m, n, k2).unwrap();
            let b = effective_potential(r * 1.5, m, n, k2).unwrap();
            prop_assert!(b < a && b > 0.0);
            prop_assert_eq!(a, f64::from(m * m) / (r * r));
        }

        #[test]
        fn well_deepens_with_index(m in 0u32..=60, n in 1.01f64..10.0, dn in 0.01f64..2.0, k2 in 0.01f64..100.0) {
            let r = 1.0 - 1e-9;
            let a = effective_potential(r, m, n, k2).unwrap();
            let b = effective_potential(r, m, n + dn, k2).unwrap();
            prop_assert!(b < a);
        }
    }
}
