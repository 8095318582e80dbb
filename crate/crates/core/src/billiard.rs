//! Dirichlet spectrum of the dielectric-filled circular billiard.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldgrid::{sample_radial_mode, FieldGrid, GridSpec, ProfileKind};
use crate::mode::ModeIndex;
use crate::scalar::Real;
use crate::specfun::bessel_j_zero;

/// Real eigenvalue `kR = j_{m,ell} / n` of the closed billiard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BilliardEigenvalue<T> {
    pub mode: ModeIndex,
    pub n: T,
    pub kr: T,
}

/// The billiard is also defined for `n = 1` (empty disk), so only `n >= 1` is required here.
fn check_billiard_index<T: Real>(n: T) -> Result<()> {
    if !n.is_finite() || n < T::one() {
        return Err(Error::InvalidRefractiveIndex(n.as_f64()));
    }
    Ok(())
}

/// Eigenvalue of `J_m(n kR) = 0` with radial index `ell`.
pub fn billiard_eigenvalue<T: Real>(mode: ModeIndex, n: T) -> Result<BilliardEigenvalue<T>> {
    check_billiard_index(n)?;
    let zero: T = bessel_j_zero(mode.m, mode.ell)?;
    Ok(BilliardEigenvalue { mode, n, kr: zero / n })
}

/// Intensity `|J_m(n kR r)|²` inside the unit disk, zero outside, peak 1.
pub fn normal_mode_field<T: Real>(mode: ModeIndex, n: T, window: &GridSpec<T>) -> Result<FieldGrid<T>> {
    let ev = billiard_eigenvalue(mode, n)?;
    let mut grid = sample_radial_mode(ProfileKind::InteriorJ, mode, n, Complex::new(ev.kr, T::zero()), window)?;
    grid.label = format!("billiard {mode} n={n} kR={}", ev.kr);
    Ok(grid)
}
