//! Boundary phase-space (Husimi) distribution over arc length `s` and
//! tangential momentum `p = sin χ`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::c_exp;
use crate::scalar::Real;
use crate::specfun::bessel_j;

pub const DEFAULT_RESOLUTION: (usize, usize) = (256, 256);

/// Critical momentum `1/n` of total internal reflection.
pub fn critical_momentum<T: Real>(n: T) -> T {
    n.recip()
}

/// A wave function sampled on the unit circle at `s_i = 2π i / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTrace<T> {
    pub values: Vec<Complex<T>>,
    /// Largest angular order present; the trace needs at least `8 * bandwidth` samples.
    pub bandwidth: u32,
}

impl<T: Real> BoundaryTrace<T> {
    /// Interior trace `J_m(n kR) e^{i m s}` of a traveling mode.
    pub fn of_mode(m: u32, n: T, kr: Complex<T>, samples: usize) -> Result<Self> {
        let amplitude = bessel_j(m, kr * n)?;
        let step = (T::PI() + T::PI()) / T::int(samples as i64);
        let m = T::int(i64::from(m));
        let values =
            (0..samples).map(|i| amplitude * Complex::from_polar(T::one(), m * step * T::int(i as i64))).collect();
        Ok(Self { values, bandwidth: m.to_u32().unwrap_or(0) })
    }

    /// Default sampling for a mode of order `m` rendered at `ns` arc-length points.
    pub fn default_samples(m: u32, ns: usize) -> usize {
        ns.max(8 * m as usize).max(64)
    }
}

/// Husimi intensity on an `(s, p)` grid, max-normalized.
///
/// `values` is row-major with one row per momentum: `values[j * s_grid.len() + i]`
/// is the intensity at `(s_grid[i], p_grid[j])`, rows in ascending `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct HusimiMap<T> {
    pub s_grid: Vec<T>,
    pub p_grid: Vec<T>,
    pub values: Vec<T>,
    pub p_crit: T,
}

impl<T: Real> HusimiMap<T> {
    pub fn get(&self, is: usize, jp: usize) -> T {
        self.values[jp * self.s_grid.len() + is]
    }

    /// Sum over `s` for every momentum.
    pub fn p_marginal(&self) -> Vec<T> {
        self.values.chunks(self.s_grid.len()).map(|row| row.iter().copied().fold(T::zero(), |a, b| a + b)).collect()
    }

    /// Momentum at the maximum of the `p` marginal.
    pub fn peak_p(&self) -> T {
        let marginal = self.p_marginal();
        let best = (0..marginal.len()).fold(0, |b, j| if marginal[j] > marginal[b] { j } else { b });
        self.p_grid[best]
    }

    /// Momentum of the maximum in each arc-length column.
    pub fn column_peaks(&self) -> Vec<T> {
        (0..self.s_grid.len())
            .map(|i| {
                let best = (0..self.p_grid.len()).fold(0, |b, j| if self.get(i, j) > self.get(i, b) { j } else { b });
                self.p_grid[best]
            })
            .collect()
    }

    /// Comma-separated matrix, one momentum row per line (ascending `p`), `%.9e` values.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.values.chunks(self.s_grid.len()) {
            let line: Vec<String> = row.iter().map(|v| c_exp(v.as_f64(), 9)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Arc-length grid `s_i = 2π i / ns`.
pub fn s_grid<T: Real>(ns: usize) -> Vec<T> {
    let two_pi = T::PI() + T::PI();
    (0..ns).map(|i| two_pi * T::int(i as i64) / T::int(ns as i64)).collect()
}

/// Momentum grid `p_j = -1 + 2 j / (np - 1)`; `(ns, np)` and `(2 ns, 2 np - 1)` grids nest.
pub fn p_grid<T: Real>(np: usize) -> Vec<T> {
    let last = np as i64 - 1;
    (0..np).map(|j| T::int(2 * j as i64 - last) / T::int(last)).collect()
}

/// Overlap of the trace with coherent states of width `σ = (n kR)^{-1/2}` and
/// wavenumber `k = n kR`, periodized over one extra period on each side.
pub fn boundary_husimi<T: Real>(
    trace: &BoundaryTrace<T>,
    n: T,
    kr_re: T,
    resolution: (usize, usize),
) -> Result<HusimiMap<T>> {
    let nb = trace.values.len();
    let need = (8 * trace.bandwidth as usize).max(2);
    if nb < need {
        return Err(Error::UndersampledBoundary { got: nb, need });
    }
    if !(kr_re > T::zero()) || !n.is_finite() || !(n > T::zero()) {
        return Err(Error::InvalidSweep(format!("Husimi map needs Re kR > 0 and n > 0, got {kr_re}, {n}")));
    }
    let (ns, np) = resolution;
    if ns < 1 || np < 2 {
        return Err(Error::DegenerateGrid(format!("Husimi resolution {ns}x{np}")));
    }
    let k = n * kr_re;
    let sigma2 = k.recip();
    let two_pi = T::PI() + T::PI();
    let ds = two_pi / T::int(nb as i64);
    let s_b: Vec<T> = s_grid(nb);
    let s_out: Vec<T> = s_grid(ns);
    let p_out: Vec<T> = p_grid(np);
    let dp = T::lit(2.0) / T::int(np as i64 - 1);
    let cutoff = T::lit(-40.0);

    let columns: Vec<Vec<T>> = s_out
        .par_iter()
        .map(|&s0| {
            // terms of the overlap sum at p = -1, and their per-step phase factor in p
            let mut terms = Vec::with_capacity(3 * nb);
            let mut steps = Vec::with_capacity(3 * nb);
            for (i, &s) in s_b.iter().enumerate() {
                for j in -1..=1 {
                    let d = s - s0 + two_pi * T::int(j);
                    let expo = -d * d / (T::lit(2.0) * sigma2);
                    if expo < cutoff {
                        continue;
                    }
                    let weight = expo.exp();
                    // conj(ξ) carries exp(-i k p d)
                    terms.push(trace.values[i] * Complex::from_polar(weight, k * d));
                    steps.push(Complex::from_polar(T::one(), -k * dp * d));
                }
            }
            let mut column = Vec::with_capacity(np);
            for _ in &p_out {
                let sum = terms.iter().fold(Complex::new(T::zero(), T::zero()), |acc, t| acc + *t);
                column.push((sum * ds).norm_sqr());
                for (t, r) in terms.iter_mut().zip(&steps) {
                    *t = *t * *r;
                }
            }
            column
        })
        .collect();

    let mut values = vec![T::zero(); ns * np];
    for (i, column) in columns.iter().enumerate() {
        for (j, v) in column.iter().enumerate() {
            values[j * ns + i] = *v;
        }
    }
    let peak = values.iter().copied().fold(T::zero(), T::max);
    if peak > T::zero() {
        for v in &mut values {
            *v = *v / peak;
        }
    }
    Ok(HusimiMap { s_grid: s_out, p_grid: p_out, values, p_crit: critical_momentum(n) })
}
