//! TE resonances (quasi-normal modes) of the open dielectric disk.

mod determinant;
mod roots;

use num_complex::Complex;

use crate::billiard::billiard_eigenvalue;
use crate::error::{Error, Result};
use crate::fieldgrid::{sample_profile, FieldGrid, GridSpec, ProfileKind, RadialProfile};
use crate::mode::{check_refractive_index, ModeIndex};
use crate::scalar::Real;

pub use determinant::{relative_residual, resonance_determinant};
pub use roots::{
    count_roots_in_region, enumerate_roots, interior_family, radial_rank, rank_depth, refine_root, SearchRegion,
    DEDUP_TOLERANCE, MAX_NEWTON_ITERATIONS,
};

/// Offset from the billiard eigenvalue used as the default Newton seed.
pub const SEED_SHIFT: (f64, f64) = (-0.1, -0.05);

/// A converged decaying resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance<T> {
    pub mode: ModeIndex,
    pub n: T,
    pub kr: Complex<T>,
    /// `|F(kR)|` relative to the magnitude of its two terms.
    pub residual: T,
}

impl<T: Real> Resonance<T> {
    /// Checks the decaying-resonance invariants at a root of `F` and records its residual.
    /// The radial index is taken on trust; see [`find_resonance`] for a checked search.
    pub fn at_root(mode: ModeIndex, n: T, kr: Complex<T>) -> Result<Self> {
        if !(kr.im < T::zero() && kr.re > T::zero()) {
            return Err(Error::NotDecaying { re: kr.re.as_f64(), im: kr.im.as_f64() });
        }
        let residual = relative_residual(mode.m, n, kr)?;
        if !(residual < T::tol(1e-10)) {
            return Err(Error::NoConvergence {
                iterations: MAX_NEWTON_ITERATIONS,
                re: kr.re.as_f64(),
                im: kr.im.as_f64(),
            });
        }
        Ok(Self { mode, n, kr, residual })
    }
}

/// Default seed: the billiard eigenvalue shifted by [`SEED_SHIFT`].
pub fn default_seed<T: Real>(mode: ModeIndex, n: T) -> Result<Complex<T>> {
    let closed = billiard_eigenvalue(mode, n)?.kr;
    Ok(Complex::new(closed + T::lit(SEED_SHIFT.0), T::lit(SEED_SHIFT.1)))
}

/// Newton refinement from `seed` without the radial-rank check. Used for
/// continuation, where the previous root is already on the right branch.
pub fn refine_resonance<T: Real>(mode: ModeIndex, n: T, seed: Complex<T>) -> Result<Resonance<T>> {
    check_refractive_index(n)?;
    let kr = refine_root(mode.m, n, seed)?;
    Resonance::at_root(mode, n, kr)
}

/// Finds the resonance `(m, ell)` for index `n`.
///
/// The root is labeled by its rank in `Re kR` among the roots of the same `m`
/// (see [`radial_rank`]). Without an explicit `guess`, a seed that lands on a
/// neighbouring family falls back to enumerating the family directly; with a
/// guess, a rank mismatch is reported as [`Error::WrongRadialOrder`].
pub fn find_resonance<T: Real>(mode: ModeIndex, n: T, guess: Option<Complex<T>>) -> Result<Resonance<T>> {
    check_refractive_index(n)?;
    let seed = match guess {
        Some(g) => g,
        None => default_seed(mode, n)?,
    };
    let first = refine_root(mode.m, n, seed).and_then(|kr| Resonance::at_root(mode, n, kr));
    let mismatch = match first {
        Ok(res) => {
            let found = radial_rank(mode.m, n, res.kr)?;
            if found == mode.ell {
                return Ok(res);
            }
            Error::WrongRadialOrder { expected: mode.ell, found, re: res.kr.re.as_f64(), im: res.kr.im.as_f64() }
        }
        Err(e) => e,
    };
    if guess.is_some() {
        return Err(mismatch);
    }
    // interior roots sit below their billiard counterparts
    let re_max = billiard_eigenvalue(mode, n)?.kr + T::lit(0.5);
    let family = interior_family(mode.m, n, re_max)?;
    match family.get(mode.ell as usize - 1) {
        Some(&kr) => Resonance::at_root(mode, n, kr),
        None => Err(mismatch),
    }
}

/// Interior, tail and full intensity of a resonance on a common scale: the
/// interior amplitude is 1 at unit peak and the tail amplitude follows from
/// continuity at `r = 1`, so the tail can exceed 1 for strongly leaky modes.
pub fn qnm_fields<T: Real>(
    res: &Resonance<T>,
    window: &GridSpec<T>,
) -> Result<(FieldGrid<T>, FieldGrid<T>, FieldGrid<T>)> {
    let sample = |kind| -> Result<FieldGrid<T>> {
        let profile = RadialProfile::new(kind, res.mode.m, res.n, res.kr)?;
        Ok(FieldGrid {
            spec: *window,
            values: sample_profile(&profile, window)?,
            label: format!("{kind:?} {} n={} kR={}", res.mode, res.n, res.kr),
        })
    };
    let mut interior = sample(ProfileKind::InteriorJ)?;
    let mut tail = sample(ProfileKind::TailH)?;
    let peak = interior.max();
    if peak > T::zero() {
        interior.scale(peak.recip());
        tail.scale(peak.recip());
    }
    let full = FieldGrid {
        spec: *window,
        values: interior.values.iter().zip(&tail.values).map(|(a, b)| *a + *b).collect(),
        label: format!("Full {} n={} kR={}", res.mode, res.n, res.kr),
    };
    Ok((interior, tail, full))
}
