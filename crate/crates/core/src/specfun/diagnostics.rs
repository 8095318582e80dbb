//! Invariant residuals of the special-function kernel over a fixed test grid.

use num_complex::Complex;

use super::{bessel, MAX_IMAG};

/// One grid point of the invariant suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantResidual {
    pub m: u32,
    pub z: Complex<f64>,
    /// `|J Y' - J' Y - 2/(πz)|`, scaled by `max(|2/(πz)|, |J Y'| + |J' Y|)`.
    pub wronskian: f64,
    /// `|J_{m-1} + J_{m+1} - (2m/z) J_m|` relative to the sum of the term moduli; 0 for `m = 0`.
    pub recurrence: f64,
    /// Mirror residual: `J_m(z̄)` against `conj J_m(z)`, and `H1_m(z̄)`, `H1_m'(z̄)`
    /// against `conj H2_m(z)`, `conj H2_m'(z)`; relative.
    pub conjugate: f64,
}

pub const GRID_MODULI: [f64; 10] = [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0, 100.0];
pub const GRID_PHASES: [f64; 5] = [-0.3, -0.15, 0.0, 0.15, 0.3];
pub const GRID_ORDERS: [u32; 9] = [0, 1, 2, 3, 5, 10, 20, 40, 60];

/// Grid covering `|z| ∈ [0.1, 100]`, `|arg z| <= 0.3`, restricted to `|Im z| <= 20`.
pub fn grid() -> Vec<(u32, Complex<f64>)> {
    let mut out = Vec::new();
    for &m in &GRID_ORDERS {
        for &r in &GRID_MODULI {
            for &phi in &GRID_PHASES {
                let z = Complex::from_polar(r, phi);
                if z.im.abs() <= MAX_IMAG {
                    out.push((m, z));
                }
            }
        }
    }
    out
}

pub fn residual_at(m: u32, z: Complex<f64>) -> InvariantResidual {
    let mu = m as usize;
    let (j, jp) = bessel::j_value_deriv(mu, z);
    let (y, yp) = bessel::y_value_deriv(mu, z);
    let target = Complex::new(2.0 / std::f64::consts::PI, 0.0) / z;
    let wr = j * yp - jp * y - target;
    let wscale = target.norm().max((j * yp).norm() + (jp * y).norm());

    let recurrence = if m == 0 {
        0.0
    } else {
        let seq = bessel::j_seq(mu + 1, z);
        let lhs = seq[mu - 1] + seq[mu + 1];
        let rhs = seq[mu] * (2.0 * m as f64) / z;
        (lhs - rhs).norm() / (seq[mu - 1].norm() + seq[mu + 1].norm() + rhs.norm()).max(f64::MIN_POSITIVE)
    };

    let (jc, _) = bessel::j_value_deriv(mu, z.conj());
    let (hc, hpc) = bessel::h1_value_deriv(mu, z.conj());
    // H1(conj z) = conj(H2(z)) = conj(2 J - H1)
    let (h, hp) = bessel::h1_value_deriv(mu, z);
    let h2 = j * 2.0 - h;
    let h2p = jp * 2.0 - hp;
    let conjugate = ((jc - j.conj()).norm() / j.norm().max(f64::MIN_POSITIVE))
        .max((hc - h2.conj()).norm() / hc.norm().max(h.norm()))
        .max((hpc - h2p.conj()).norm() / hpc.norm().max(hp.norm()));

    InvariantResidual { m, z, wronskian: wr.norm() / wscale, recurrence, conjugate }
}

/// Residuals at every grid point.
pub fn invariant_residuals() -> Vec<InvariantResidual> {
    grid().into_iter().map(|(m, z)| residual_at(m, z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals_below_threshold() {
        let rows = invariant_residuals();
        assert!(rows.len() > 300);
        let worst = |f: fn(&InvariantResidual) -> f64| rows.iter().map(f).fold(0.0, f64::max);
        let (w, r, c) = (worst(|r| r.wronskian), worst(|r| r.recurrence), worst(|r| r.conjugate));
        eprintln!("worst wronskian {w:e} recurrence {r:e} conjugate {c:e}");
        assert!(w < 1e-10 && r < 1e-10 && c < 1e-10);
    }
}
