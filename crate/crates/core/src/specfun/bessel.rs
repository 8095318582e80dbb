//! Cylinder functions of integer order for complex argument.
//!
//! Three evaluation regions:
//!
//! * `|z| <= 2`: ascending power series (J) and the logarithmic series with
//!   digamma coefficients (Y0, Y1), followed by forward recurrence for Y.
//! * `|z| >= 25 + m^2/2`: Hankel asymptotic expansions of H1 and H2.
//! * otherwise: Miller backward recurrence for J normalized against
//!   `exp(±iz) = J0 + 2 Σ (±i)^k J_k`, with Neumann series for Y0 and Y1.
//!
//! The normalization sum is chosen so its magnitude tracks `exp(|Im z|)`,
//! which keeps it free of cancellation for strongly complex arguments.

use num_complex::Complex;

use crate::scalar::{cplx, Real};

/// Ascending-series radius.
const SERIES_RADIUS: f64 = 2.0;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Whether order `m` at `z` is evaluated with the Hankel asymptotic expansion.
pub(crate) fn in_asymptotic_region<T: Real>(m: usize, z: Complex<T>) -> bool {
    let m = m as f64;
    z.norm().as_f64() >= 25.0 + 0.5 * m * m
}

/// `(z/2)^m / m!` computed by a running product so neither factor overflows.
fn leading_power<T: Real>(m: usize, z: Complex<T>) -> Complex<T> {
    let half = z * T::lit(0.5);
    let mut p = cone();
    for j in 1..=m {
        p = p * half / T::int(j as i64);
    }
    p
}

/// Ascending series `J_m(z) = (z/2)^m/m! Σ (-z²/4)^k / (k! (m+1)_k)`.
pub(crate) fn j_series<T: Real>(m: usize, z: Complex<T>) -> Complex<T> {
    let q = -(z * z) * T::lit(0.25);
    let mut term = cone::<T>();
    let mut sum = cone::<T>();
    for k in 1..200 {
        term = term * q / (T::int(k) * T::int(m as i64 + k));
        sum = sum + term;
        if term.norm() <= T::epsilon() * sum.norm() {
            break;
        }
    }
    leading_power(m, z) * sum
}

/// Y0 and Y1 from their logarithmic ascending series.
fn y01_series<T: Real>(z: Complex<T>, j0: Complex<T>, j1: Complex<T>) -> (Complex<T>, Complex<T>) {
    let pi = T::PI();
    let two_over_pi = T::lit(2.0) / pi;
    let gamma = T::lit(EULER_GAMMA);
    let half = z * T::lit(0.5);
    let log_half = half.ln();
    let q = half * half;

    // Y0 = (2/π)[(ln(z/2)+γ) J0 + Σ_{k≥1} (-1)^{k+1} H_k (z²/4)^k / (k!)²]
    let mut sum0 = czero::<T>();
    let mut pow = cone::<T>();
    let mut harmonic = T::zero();
    for k in 1..200 {
        let kf = T::int(k);
        pow = -pow * q / (kf * kf);
        harmonic = harmonic + T::one() / kf;
        let term = -pow * harmonic;
        sum0 = sum0 + term;
        if term.norm() <= T::epsilon() * sum0.norm() {
            break;
        }
    }
    let y0 = (j0 * (log_half + gamma) + sum0) * two_over_pi;

    // Y1 = (2/π) ln(z/2) J1 - 2/(πz) - (1/π) Σ_{k≥0} (-1)^k (ψ(k+1)+ψ(k+2)) (z/2)^{2k+1} / (k!(k+1)!)
    let mut sum1 = czero::<T>();
    let mut pow = half;
    let mut psi_k1 = -gamma;
    for k in 0..200 {
        let kf = T::int(k);
        if k > 0 {
            pow = -pow * q / (kf * (kf + T::one()));
            psi_k1 = psi_k1 + T::one() / kf;
        }
        let psi_k2 = psi_k1 + T::one() / (kf + T::one());
        let term = pow * (psi_k1 + psi_k2);
        sum1 = sum1 + term;
        if k > 0 && term.norm() <= T::epsilon() * sum1.norm() {
            break;
        }
    }
    let y1 = j1 * log_half * two_over_pi - cone::<T>() * two_over_pi / z - sum1 / pi;
    (y0, y1)
}

/// Hankel asymptotic expansions `(H1_m(z), H2_m(z))` for large `|z|`.
pub(crate) fn hankel_asymptotic<T: Real>(m: usize, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mu = T::lit(4.0 * (m as f64) * (m as f64));
    let i = cplx(T::zero(), T::one());
    let mut p1 = cone::<T>(); // Σ i^k a_k / z^k
    let mut p2 = cone::<T>(); // Σ (-i)^k a_k / z^k
    let mut a = cone::<T>();
    let mut last = T::infinity();
    for k in 1..80 {
        let odd = T::int(2 * k - 1);
        a = a * (mu - odd * odd) / (z * (T::int(k) * T::lit(8.0)));
        let mag = a.norm();
        if mag > last {
            break;
        }
        last = mag;
        let ik = i.powi(k as i32);
        p1 = p1 + ik * a;
        p2 = p2 + ik.conj() * a;
        if mag <= T::epsilon() * T::lit(0.5) {
            break;
        }
    }
    let omega = z - T::lit(m as f64 * 0.5 + 0.25) * T::PI();
    let amp = (cone::<T>() * (T::lit(2.0) / T::PI()) / z).sqrt();
    let e1 = (i * omega).exp();
    let e2 = (-i * omega).exp();
    (amp * e1 * p1, amp * e2 * p2)
}

/// Estimate of `-log10 |J_n(x)|` for `n > x` (Zhang & Jin's envelope).
fn envelope(n: f64, x: f64) -> f64 {
    let x = x.max(1e-300);
    0.5 * (std::f64::consts::TAU * n).log10() - n * (1.36 * x / n).log10()
}

/// Starting order for Miller's recurrence so that `J_top` keeps full precision.
fn miller_start(top: usize, a: f64, digits: f64) -> usize {
    let top_f = top as f64;
    let base = top_f.max(a).ceil() + 1.0;
    let need = digits + if top_f > a { envelope(top_f.max(1.0), a).max(0.0) } else { 0.0 };
    let mut n = base;
    while envelope(n, a) < need && n < base + 2000.0 {
        n += 1.0;
    }
    n as usize + 10
}

/// `J_0 ..= J_start` by Miller's algorithm; `start >= top + 1`.
fn miller<T: Real>(top: usize, z: Complex<T>) -> Vec<Complex<T>> {
    let digits = -T::epsilon().as_f64().log10() + 3.0;
    let start = miller_start(top, z.norm().as_f64(), digits);
    let big = T::max_value().sqrt();
    let shrink = T::one() / big;

    let mut f = vec![czero::<T>(); start + 2];
    f[start] = cone();
    let two = T::lit(2.0);
    for k in (1..=start).rev() {
        let next = f[k] * (two * T::int(k as i64)) / z - f[k + 1];
        f[k - 1] = next;
        if next.norm() > big {
            for v in f[k - 1..].iter_mut() {
                *v = *v * shrink;
            }
        }
    }

    // exp(iz) = J0 + 2 Σ i^k J_k for Im z <= 0, exp(-iz) = J0 + 2 Σ (-i)^k J_k otherwise.
    let upper = z.im > T::zero();
    let mut sum = czero::<T>();
    for k in (1..=start).rev() {
        let phase = match k % 4 {
            0 => cone(),
            1 => cplx(T::zero(), if upper { -T::one() } else { T::one() }),
            2 => -cone::<T>(),
            _ => cplx(T::zero(), if upper { T::one() } else { -T::one() }),
        };
        sum = sum + phase * f[k];
    }
    sum = sum * two + f[0];
    let i = cplx(T::zero(), T::one());
    let target = if upper { (-i * z).exp() } else { (i * z).exp() };
    let scale = target / sum;
    f.truncate(start + 1);
    for v in f.iter_mut() {
        *v = *v * scale;
    }
    f
}

/// Y0, Y1 from Neumann series in the J sequence.
fn y01_neumann<T: Real>(z: Complex<T>, j: &[Complex<T>]) -> (Complex<T>, Complex<T>) {
    let two_over_pi = T::lit(2.0) / T::PI();
    let log_term = (z * T::lit(0.5)).ln() + T::lit(EULER_GAMMA);

    let mut s0 = czero::<T>();
    let mut s1 = czero::<T>();
    let mut k = 1usize;
    while 2 * k < j.len() {
        let kf = T::int(k as i64);
        let sign = if k.is_multiple_of(2) { T::one() } else { -T::one() };
        s0 = s0 + j[2 * k] * (sign / kf);
        if 2 * k + 1 < j.len() {
            let w = T::int(2 * k as i64 + 1) / (kf * (kf + T::one()));
            s1 = s1 + j[2 * k + 1] * (sign * w);
        }
        k += 1;
    }
    let y0 = (j[0] * log_term) * two_over_pi - s0 * (T::lit(2.0) * two_over_pi);
    let y1 = (j[1] * (log_term - T::one()) - j[0] / z - s1) * two_over_pi;
    (y0, y1)
}

fn y_forward<T: Real>(top: usize, z: Complex<T>, y0: Complex<T>, y1: Complex<T>) -> Vec<Complex<T>> {
    let mut y = Vec::with_capacity(top + 1);
    y.push(y0);
    if top >= 1 {
        y.push(y1);
    }
    for k in 1..top {
        let next = y[k] * (T::lit(2.0) * T::int(k as i64)) / z - y[k - 1];
        y.push(next);
    }
    y
}

/// `J_0 ..= J_top` at `z`. No domain checks.
pub(crate) fn j_seq<T: Real>(top: usize, z: Complex<T>) -> Vec<Complex<T>> {
    if z.re == T::zero() && z.im == T::zero() {
        let mut out = vec![czero(); top + 1];
        out[0] = cone();
        return out;
    }
    if z.norm().as_f64() <= SERIES_RADIUS {
        return (0..=top).map(|k| j_series(k, z)).collect();
    }
    if in_asymptotic_region(top, z) {
        return (0..=top)
            .map(|k| {
                let (h1, h2) = hankel_asymptotic(k, z);
                (h1 + h2) * T::lit(0.5)
            })
            .collect();
    }
    let mut j = miller(top, z);
    j.truncate(top + 1);
    j
}

/// `(J_0 ..= J_top, Y_0 ..= Y_top)` at `z != 0`. No domain checks.
pub(crate) fn jy_seq<T: Real>(top: usize, z: Complex<T>) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
    let top1 = top.max(1);
    if z.norm().as_f64() <= SERIES_RADIUS {
        let j: Vec<_> = (0..=top1).map(|k| j_series(k, z)).collect();
        let (y0, y1) = y01_series(z, j[0], j[1]);
        let mut y = y_forward(top1, z, y0, y1);
        let mut j = j;
        j.truncate(top + 1);
        y.truncate(top + 1);
        return (j, y);
    }
    if in_asymptotic_region(top, z) {
        let i = cplx(T::zero(), T::one());
        let (j, y): (Vec<_>, Vec<_>) = (0..=top)
            .map(|k| {
                let (h1, h2) = hankel_asymptotic(k, z);
                ((h1 + h2) * T::lit(0.5), (h1 - h2) / (i * T::lit(2.0)))
            })
            .unzip();
        return (j, y);
    }
    let mut j = miller(top1, z);
    let mut y = if z.im != T::zero() && in_asymptotic_region(1, z) {
        y_from_subdominant_hankel(top1, z, &j)
    } else {
        let (y0, y1) = y01_neumann(z, &j);
        y_forward(top1, z, y0, y1)
    };
    j.truncate(top + 1);
    y.truncate(top + 1);
    (j, y)
}

/// Y by forward recurrence of the Hankel function that is exponentially small
/// at low order (H2 below the real axis, H1 above), seeded from the asymptotic
/// expansion. Recurring Y itself would lose that component once it stops
/// being negligible at high order.
fn y_from_subdominant_hankel<T: Real>(top: usize, z: Complex<T>, j: &[Complex<T>]) -> Vec<Complex<T>> {
    let i = cplx(T::zero(), T::one());
    let lower = z.im < T::zero();
    // H = J + s Y with s = -i (H2) or +i (H1)
    let s = if lower { -i } else { i };
    let pick = |k: usize| {
        let (h1, h2) = hankel_asymptotic(k, z);
        if lower {
            h2
        } else {
            h1
        }
    };
    let h = y_forward(top, z, pick(0), pick(1));
    h.iter().zip(j).map(|(&hk, &jk)| (hk - jk) / s).collect()
}

/// Values at orders `m-1, m, m+1` using `C_{-1} = -C_1`.
pub(crate) fn triplet<T: Real>(seq: &[Complex<T>], m: usize) -> [Complex<T>; 3] {
    let below = if m == 0 { -seq[1] } else { seq[m - 1] };
    [below, seq[m], seq[m + 1]]
}

/// `(J_m(z), J_m'(z))`, unchecked.
pub(crate) fn j_value_deriv<T: Real>(m: usize, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let seq = j_seq(m + 1, z);
    let [lo, mid, hi] = triplet(&seq, m);
    (mid, (lo - hi) * T::lit(0.5))
}

/// `(H1_m(z), H1_m'(z))`, unchecked; `z != 0`.
pub(crate) fn h1_value_deriv<T: Real>(m: usize, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let i = cplx(T::zero(), T::one());
    if in_asymptotic_region(m + 1, z) {
        let lo = if m == 0 { -hankel_asymptotic(1, z).0 } else { hankel_asymptotic(m - 1, z).0 };
        let mid = hankel_asymptotic(m, z).0;
        let hi = hankel_asymptotic(m + 1, z).0;
        return (mid, (lo - hi) * T::lit(0.5));
    }
    let (j, y) = jy_seq(m + 1, z);
    let [jl, jm, jh] = triplet(&j, m);
    let [yl, ym, yh] = triplet(&y, m);
    let h = jm + i * ym;
    let hp = ((jl + i * yl) - (jh + i * yh)) * T::lit(0.5);
    (h, hp)
}

/// `(Y_m(z), Y_m'(z))`, unchecked; `z != 0`.
pub(crate) fn y_value_deriv<T: Real>(m: usize, z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let (_, y) = jy_seq(m + 1, z);
    let [lo, mid, hi] = triplet(&y, m);
    (mid, (lo - hi) * T::lit(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    // Reference values from an independent arbitrary-precision evaluation.
    #[rustfmt::skip]
    const REFERENCE: &[(usize, C, C, C)] = &[
        (0, C::new(0.5, 0.2), C::new(0.947_570_932_840_737_9, -0.048695507396165068), C::new(-0.39815469980813656, 0.28290587904949226)),
        (1, C::new(2.0, 0.5), C::new(0.627_604_139_696_450_3, -0.034096823134403173), C::new(-0.082_626_234_436_759_65, 0.28550814908228664)),
        (3, C::new(2.0, 0.5), C::new(0.11840835185112601, 0.081_640_449_379_048_35), C::new(-0.919_145_628_107_648_9, 0.442_450_942_487_491_5)),
        (2, C::new(1.462, -0.046), C::new(0.22263225578362864, -0.011400039971126558), C::new(-0.963_194_060_957_928_8, -0.040_509_922_337_555_47)),
        (2, C::new(4.8254, -0.1528), C::new(0.10743019604820198, 0.053_237_741_399_666_15), C::new(0.36643601257329131, -0.008_423_202_845_786_98)),
        (5, C::new(10.0, -3.0), C::new(-1.6525793247337574, 0.792_571_227_384_351_9), C::new(0.805_987_421_996_178_2, 1.639994077151921)),
        (0, C::new(30.0, 1.0), C::new(-0.130_934_905_038_925_1, 0.1400335416651824), C::new(-0.18263149122685387, -0.098_461_331_147_945_56)),
        (7, C::new(45.5, -0.3), C::new(-0.11867450475993468, 0.010_241_330_396_121_24), C::new(0.036_827_802_229_939_56, 0.034_299_772_514_104_16)),
        (10, C::new(19.5, -6.0), C::new(13.220126444749411, -11.611511266836236), C::new(-11.612388447186976, -13.219681860370072)),
        (60, C::new(70.0, -1.0), C::new(-0.14119977823011902, 0.021968422961977842), C::new(0.052133755410804434, 0.068_309_331_425_335_57)),
        (0, C::new(150.0, 10.0), C::new(15.340171284916329, 716.5575977045304), C::new(-716.557_600_655_738_7, 15.340171418291118)),
        (25, C::new(3.0, 0.1), C::new(1.0246960359811134e-21, 1.1142390174455486e-21), C::new(-5.738_006_899_001_72e18, 6.233_316_234_828_49e18)),
        (4, C::new(0.01, 0.001), C::new(2.4481659961264914e-11, 1.0312424471556142e-11), C::new(-2_760_665_613.277_563, 1162874683.3706095)),
    ];

    fn rel(a: C, b: C) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn matches_reference_values() {
        for &(m, z, j_ref, y_ref) in REFERENCE {
            let (j, y) = jy_seq(m + 1, z);
            assert!(rel(j[m], j_ref) < 1e-12, "J_{m}({z}) = {} vs {j_ref}", j[m]);
            assert!(rel(y[m], y_ref) < 1e-12, "Y_{m}({z}) = {} vs {y_ref}", y[m]);
            assert!(rel(j_seq(m, z)[m], j_ref) < 1e-12);
        }
    }

    #[test]
    fn regions_agree_at_their_borders() {
        // Miller vs series just outside the series disc.
        for m in [0usize, 1, 4, 12] {
            let z = c(1.98, 0.3);
            let series = j_series(m, z);
            let miller = miller(m, z)[m];
            assert!(rel(miller, series) < 1e-13, "m={m}");
        }
        // Miller + Neumann vs asymptotic at the asymptotic threshold.
        for m in [0usize, 1, 3, 5] {
            let z = c(26.0 + 0.5 * (m * m) as f64, -0.7);
            let (h1, h2) = hankel_asymptotic(m, z);
            let j = miller(m + 1, z);
            let (y0, y1) = y01_neumann(z, &j);
            let y = y_forward(m.max(1), z, y0, y1);
            assert!(rel(j[m], (h1 + h2) * 0.5) < 1e-12, "J m={m}");
            assert!(rel(y[m], (h1 - h2) / c(0.0, 2.0)) < 1e-12, "Y m={m}");
        }
    }

    #[test]
    fn origin() {
        let j = j_seq::<f64>(3, c(0.0, 0.0));
        assert_eq!(j[0], c(1.0, 0.0));
        assert_eq!(j[1], c(0.0, 0.0));
        assert_eq!(j[3], c(0.0, 0.0));
    }
}
