use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{MAX_ORDER, MAX_ZERO_INDEX};

/// Angular quantum number `m` and radial quantum number `ell` of a mode family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeIndex {
    pub m: u32,
    pub ell: u32,
}

impl ModeIndex {
    pub fn new(m: u32, ell: u32) -> Result<Self> {
        if m > MAX_ORDER || ell == 0 || ell > MAX_ZERO_INDEX {
            return Err(Error::InvalidMode { m, ell });
        }
        Ok(Self { m, ell })
    }
}

impl std::fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(m={}, ell={})", self.m, self.ell)
    }
}

/// Checks that `n` is a finite refractive index above vacuum.
pub fn check_refractive_index<T: Real>(n: T) -> Result<()> {
    if !n.is_finite() || n <= T::one() {
        return Err(Error::InvalidRefractiveIndex(n.as_f64()));
    }
    Ok(())
}
