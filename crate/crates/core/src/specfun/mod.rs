//! Bessel and Hankel functions of integer order for complex argument,
//! and real zeros of `J_m`.
//!
//! Supported domain: `m <= 60`, `|z| <= 200`, `|Im z| <= 20`.

mod bessel;
pub mod diagnostics;
mod zeros;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

pub(crate) use bessel::{h1_value_deriv, j_value_deriv};
pub use zeros::bessel_j_zero;

/// Largest supported angular order.
pub const MAX_ORDER: u32 = 60;
/// Largest supported `|z|`.
pub const MAX_MODULUS: f64 = 200.0;
/// Largest supported `|Im z|`.
pub const MAX_IMAG: f64 = 20.0;
/// Largest supported radial index for [`bessel_j_zero`].
pub const MAX_ZERO_INDEX: u32 = 40;

pub(crate) fn check_order(m: u32) -> Result<()> {
    if m > MAX_ORDER {
        return Err(Error::DomainExceeded(format!("order m = {m} > {MAX_ORDER}")));
    }
    Ok(())
}

pub(crate) fn check_domain<T: Real>(m: u32, z: Complex<T>) -> Result<()> {
    check_order(m)?;
    if !is_finite(z) {
        return Err(Error::DomainExceeded(format!("non-finite argument {z}")));
    }
    let modulus = z.norm().as_f64();
    if modulus > MAX_MODULUS {
        return Err(Error::DomainExceeded(format!("|z| = {modulus} > {MAX_MODULUS}")));
    }
    let im = z.im.abs().as_f64();
    if im > MAX_IMAG {
        return Err(Error::DomainExceeded(format!("|Im z| = {im} > {MAX_IMAG}")));
    }
    Ok(())
}

fn check_nonzero<T: Real>(z: Complex<T>) -> Result<()> {
    if z.re == T::zero() && z.im == T::zero() {
        return Err(Error::Singularity);
    }
    Ok(())
}

/// Bessel function of the first kind `J_m(z)`.
pub fn bessel_j<T: Real>(m: u32, z: Complex<T>) -> Result<Complex<T>> {
    check_domain(m, z)?;
    Ok(bessel::j_seq(m as usize, z)[m as usize])
}

/// Derivative `J_m'(z) = (J_{m-1}(z) - J_{m+1}(z)) / 2`.
pub fn bessel_j_deriv<T: Real>(m: u32, z: Complex<T>) -> Result<Complex<T>> {
    check_domain(m, z)?;
    Ok(j_value_deriv(m as usize, z).1)
}

/// Hankel function of the first kind `H_m^(1)(z) = J_m(z) + i Y_m(z)`, principal branch.
pub fn hankel1<T: Real>(m: u32, z: Complex<T>) -> Result<Complex<T>> {
    check_domain(m, z)?;
    check_nonzero(z)?;
    Ok(h1_value_deriv(m as usize, z).0)
}

/// Derivative `H_m^(1)'(z) = (H_{m-1}^(1)(z) - H_{m+1}^(1)(z)) / 2`.
pub fn hankel1_deriv<T: Real>(m: u32, z: Complex<T>) -> Result<Complex<T>> {
    check_domain(m, z)?;
    check_nonzero(z)?;
    Ok(h1_value_deriv(m as usize, z).1)
}

/// `(J_m(z), J_m'(z))` from a single recurrence pass.
pub fn bessel_j_pair<T: Real>(m: u32, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    check_domain(m, z)?;
    Ok(j_value_deriv(m as usize, z))
}

/// `(H_m^(1)(z), H_m^(1)'(z))` from a single recurrence pass.
pub fn hankel1_pair<T: Real>(m: u32, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    check_domain(m, z)?;
    check_nonzero(z)?;
    Ok(h1_value_deriv(m as usize, z))
}
