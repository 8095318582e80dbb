use num_complex::Complex;

use super::determinant::evaluate;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_NEWTON_ITERATIONS: usize = 100;
/// Distinct roots closer than this are merged.
pub const DEDUP_TOLERANCE: f64 = 1e-8;
/// `|F| / scale` below this on a contour aborts the winding count.
pub const BOUNDARY_TOLERANCE: f64 = 1e-13;
/// Left edge of the strip used for radial ranking.
pub const RANK_RE_FLOOR: f64 = 0.02;
/// Top edge of the ranking strip. `F` is analytic across the positive real
/// axis, so the strip reaches slightly above it to enclose near-real roots.
pub const RANK_IM_TOP: f64 = 0.1;

/// Axis-aligned rectangle in the complex `kR` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchRegion<T> {
    pub re_min: T,
    pub re_max: T,
    pub im_min: T,
    pub im_max: T,
}

impl<T: Real> SearchRegion<T> {
    /// `re_min > 0` keeps the rectangle clear of the branch point of `H_m^(1)` at the origin.
    pub fn new(re_min: T, re_max: T, im_min: T, im_max: T) -> Result<Self> {
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min <= T::zero() || re_min >= re_max || im_min >= im_max {
            return Err(Error::InvalidRegion(format!(
                "[{re_min}, {re_max}] x [{im_min}, {im_max}] must be a nonempty rectangle with re_min > 0"
            )));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    pub fn contains(&self, z: Complex<T>) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    fn corners(&self) -> [Complex<T>; 4] {
        [
            Complex::new(self.re_min, self.im_min),
            Complex::new(self.re_max, self.im_min),
            Complex::new(self.re_max, self.im_max),
            Complex::new(self.re_min, self.im_max),
        ]
    }

    fn center(&self) -> Complex<T> {
        let half = T::lit(0.5);
        Complex::new((self.re_min + self.re_max) * half, (self.im_min + self.im_max) * half)
    }

    /// Splits across the longer side at `fraction` of its length.
    fn split(&self, fraction: T) -> (Self, Self) {
        let (w, h) = (self.re_max - self.re_min, self.im_max - self.im_min);
        if w >= h {
            let cut = self.re_min + w * fraction;
            (Self { re_max: cut, ..*self }, Self { re_min: cut, ..*self })
        } else {
            let cut = self.im_min + h * fraction;
            (Self { im_max: cut, ..*self }, Self { im_min: cut, ..*self })
        }
    }

    fn diameter(&self) -> T {
        (self.re_max - self.re_min).max(self.im_max - self.im_min)
    }
}

fn no_convergence<T: Real>(iterations: usize, k: Complex<T>) -> Error {
    Error::NoConvergence { iterations, re: k.re.as_f64(), im: k.im.as_f64() }
}

/// Newton iteration on `F` from `seed`, with a secant step when `F'` is
/// numerically zero. Steps are capped at 0.5 so a poor seed cannot leap
/// across several roots at once.
pub fn refine_root<T: Real>(m: u32, n: T, seed: Complex<T>) -> Result<Complex<T>> {
    let step_tol = T::tol(1e-12);
    let max_step = T::lit(0.5);
    let mut k = seed;
    let mut previous: Option<(Complex<T>, Complex<T>)> = None;
    for it in 0..MAX_NEWTON_ITERATIONS {
        let e = evaluate(m, n, k).map_err(|_| no_convergence(it, k))?;
        if e.f.norm() == T::zero() {
            return Ok(k);
        }
        let flat = e.df.norm() * k.norm().max(T::one()) < T::lit(1e-14) * e.scale;
        let mut step = match previous {
            Some((kp, fp)) if flat && e.f != fp => e.f * (k - kp) / (e.f - fp),
            _ if flat => return Err(no_convergence(it, k)),
            _ => e.f / e.df,
        };
        let size = step.norm();
        if !size.is_finite() {
            return Err(no_convergence(it, k));
        }
        if size > max_step {
            step = step * (max_step / size);
        }
        previous = Some((k, e.f));
        k = k - step;
        if size <= step_tol.max(T::epsilon() * T::lit(8.0) * k.norm()) {
            let e = evaluate(m, n, k).map_err(|_| no_convergence(it, k))?;
            if e.relative() <= T::tol(1e-10) {
                if k.im.abs() < T::lit(NEAR_REAL) * k.re.abs() {
                    return polish_near_real(m, n, k).map_err(|_| no_convergence(it, k));
                }
                return Ok(k);
            }
        }
    }
    Err(no_convergence(MAX_NEWTON_ITERATIONS, k))
}

/// Roots with `|Im kR| < NEAR_REAL * Re kR` get their imaginary part from
/// [`polish_near_real`] instead of complex Newton.
pub const NEAR_REAL: f64 = 1e-8;

/// Recomputes a root whose imaginary part is too small for complex arithmetic
/// to resolve next to its real part.
///
/// `G(k) = F(k) H_m^(2)(k)` has on the real axis `Re G = A(x)` and, by the
/// Wronskian, `Im G = B(x) = -n² J_m(n x) 2/(π x)` exactly. `A` is solved by
/// real Newton steps, then `Im kR = -B(x0) / A'(x0)` to first order.
fn polish_near_real<T: Real>(m: u32, n: T, k: Complex<T>) -> Result<Complex<T>> {
    let real_g = |x: T| -> Result<(T, T)> {
        let z = Complex::new(x, T::zero());
        let e = evaluate(m, n, z)?;
        let (h, dh) = crate::specfun::hankel1_pair(m, z)?;
        let (h2, dh2) = (h.conj(), dh.conj());
        Ok(((e.f * h2).re, (e.df * h2 + e.f * dh2).re))
    };
    let mut x = k.re;
    let mut slope = T::zero();
    for _ in 0..30 {
        let (a, da) = real_g(x)?;
        slope = da;
        let step = a / da;
        if !step.is_finite() {
            return Err(no_convergence(0, k));
        }
        x = x - step;
        if step.abs() <= T::epsilon() * T::lit(4.0) * x.abs() {
            break;
        }
    }
    let j = crate::specfun::bessel_j(m, Complex::new(n * x, T::zero()))?.re;
    let b = -n * n * j * T::lit(2.0) / (T::PI() * x);
    Ok(Complex::new(x, -b / slope))
}

/// Wraps a phase difference into `(-π, π]`.
fn wrap<T: Real>(d: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    let mut d = d % two_pi;
    if d > pi {
        d = d - two_pi;
    } else if d <= -pi {
        d = d + two_pi;
    }
    d
}

struct Tracker<T> {
    m: u32,
    n: T,
}

impl<T: Real> Tracker<T> {
    fn phase(&self, z: Complex<T>) -> Result<T> {
        let e = evaluate(self.m, self.n, z)?;
        if !(e.relative() >= T::lit(BOUNDARY_TOLERANCE)) {
            return Err(Error::BoundaryTooClose { re: z.re.as_f64(), im: z.im.as_f64() });
        }
        Ok(e.f.arg())
    }

    /// Accumulated change of `arg F` along the straight segment `a -> b`.
    ///
    /// Sub-segments are bisected until every phase increment is below π/4 and
    /// the midpoint agrees with the endpoints, so no full turn can hide between samples.
    fn edge(&self, a: Complex<T>, b: Complex<T>) -> Result<T> {
        let length = (b - a).norm();
        let pieces = (length.as_f64() / 0.05).ceil().max(8.0) as usize;
        let limit = T::PI() / T::lit(4.0);
        let min_len = length * T::lit(1e-12);
        let at = |t: T| a + (b - a) * t;

        let mut total = T::zero();
        let mut t0 = T::zero();
        let mut p0 = self.phase(a)?;
        for i in 1..=pieces {
            let t1 = T::int(i as i64) / T::int(pieces as i64);
            let p1 = self.phase(at(t1))?;
            // depth-first over sub-segments; stack holds (t_end, phase_end) still to process
            let mut stack = vec![(t1, p1)];
            while let Some(&(te, pe)) = stack.last() {
                let d = wrap(pe - p0);
                let tm = (t0 + te) * T::lit(0.5);
                let pm = self.phase(at(tm))?;
                let (d1, d2) = (wrap(pm - p0), wrap(pe - pm));
                let consistent = (d1 + d2 - d).abs() < T::lit(1e-6);
                if d.abs() < limit && d1.abs() < limit && d2.abs() < limit && consistent {
                    total = total + d;
                    t0 = te;
                    p0 = pe;
                    stack.pop();
                } else if length * (te - t0) < min_len {
                    let z = at(tm);
                    return Err(Error::BoundaryTooClose { re: z.re.as_f64(), im: z.im.as_f64() });
                } else {
                    stack.push((tm, pm));
                }
            }
        }
        Ok(total)
    }
}

/// Number of zeros of `F` inside `region`, from the winding number of `F`
/// around its boundary.
pub fn count_roots_in_region<T: Real>(m: u32, n: T, region: &SearchRegion<T>) -> Result<usize> {
    let tracker = Tracker { m, n };
    let c = region.corners();
    let mut total = T::zero();
    for i in 0..4 {
        total = total + tracker.edge(c[i], c[(i + 1) % 4])?;
    }
    let turns = (total / (T::PI() + T::PI())).round();
    turns.to_usize().ok_or_else(|| Error::InvalidRegion(format!("negative winding number {turns}")))
}

/// Retries the count with slightly perturbed edges when a root sits on the contour.
fn count_nudged<T: Real>(m: u32, n: T, region: &SearchRegion<T>) -> Result<(usize, SearchRegion<T>)> {
    let mut last = None;
    for shift in [0.0, 1.7e-3, -2.9e-3, 4.3e-3, -6.1e-3] {
        let s = T::lit(shift);
        let r = SearchRegion { re_max: region.re_max + s, im_min: region.im_min - s, ..*region };
        match count_roots_in_region(m, n, &r) {
            Ok(count) => return Ok((count, r)),
            Err(e @ Error::BoundaryTooClose { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

/// All distinct roots of `F` inside `region`, ascending in `Re kR`.
///
/// The rectangle is bisected until each piece holds one root by the argument
/// principle, and Newton's method is started from the piece's center.
pub fn enumerate_roots<T: Real>(m: u32, n: T, region: &SearchRegion<T>) -> Result<Vec<Complex<T>>> {
    let (count, region) = count_nudged(m, n, region)?;
    let mut roots = Vec::new();
    isolate(m, n, &region, count, 0, &mut roots)?;
    roots.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal));
    let tol = T::lit(DEDUP_TOLERANCE);
    let mut distinct: Vec<Complex<T>> = Vec::with_capacity(roots.len());
    for z in roots {
        if distinct.iter().all(|d| (*d - z).norm() > tol) {
            distinct.push(z);
        }
    }
    Ok(distinct)
}

fn isolate<T: Real>(
    m: u32,
    n: T,
    region: &SearchRegion<T>,
    count: usize,
    depth: usize,
    out: &mut Vec<Complex<T>>,
) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if count == 1 || region.diameter() < T::lit(1e-9) {
        if let Ok(z) = refine_root(m, n, region.center()) {
            if region.contains(z) {
                out.push(z);
                return Ok(());
            }
        }
    }
    if depth > 60 {
        return Err(no_convergence(depth, region.center()));
    }
    let mut last = None;
    for fraction in [0.5173, 0.4791, 0.5537, 0.4419] {
        let (a, b) = region.split(T::lit(fraction));
        match count_roots_in_region(m, n, &a) {
            Ok(ca) if ca <= count => {
                isolate(m, n, &a, ca, depth + 1, out)?;
                return isolate(m, n, &b, count - ca, depth + 1, out);
            }
            Ok(ca) => last = Some(Error::InvalidRegion(format!("sub-rectangle count {ca} exceeds {count}"))),
            Err(e @ Error::BoundaryTooClose { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one split attempted"))
}

/// Depth of the strip `Im kR > -c(n)` that holds the interior resonance families.
///
/// Above-barrier interior resonances approach `Im kR = -ln((n+1)/(n-1)) / (2n)`;
/// the strip allows three times that, but at least 0.5 and at most 2. Deeper
/// roots of `F` belong to exterior families and are not given a radial index.
pub fn rank_depth<T: Real>(n: T) -> T {
    let one = T::one();
    let c = T::lit(1.5) * ((n + one) / (n - one)).ln() / n;
    c.max(T::lit(0.5)).min(T::lit(2.0))
}

/// Radial index of a root: one plus the number of roots of the same `m` in
/// the ranking strip with smaller real part. Returns 0 for roots below the strip.
pub fn radial_rank<T: Real>(m: u32, n: T, kr: Complex<T>) -> Result<u32> {
    let depth = rank_depth(n);
    if kr.im <= -depth {
        return Ok(0);
    }
    let floor = T::lit(RANK_RE_FLOOR);
    let right = kr.re - T::lit(0.02);
    if right <= floor {
        return Ok(1);
    }
    let strip = SearchRegion::new(floor, right, -depth, T::lit(RANK_IM_TOP))?;
    let (below, _) = count_nudged(m, n, &strip)?;
    Ok(below as u32 + 1)
}

/// Roots in the ranking strip with `Re kR <= re_max`, ascending in `Re kR`.
pub fn interior_family<T: Real>(m: u32, n: T, re_max: T) -> Result<Vec<Complex<T>>> {
    let strip = SearchRegion::new(T::lit(RANK_RE_FLOOR), re_max, -rank_depth(n), T::lit(RANK_IM_TOP))?;
    enumerate_roots(m, n, &strip)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn newton_reaches_ground_whispering_gallery_root() {
        let k = refine_root(2, 3.3, C::new(1.456, -0.05)).unwrap();
        assert!((k - C::new(1.4622902, -0.04638272)).norm() < 1e-6);
    }

    #[test]
    fn region_validation() {
        assert!(SearchRegion::new(0.0, 1.0, -1.0, 0.0).is_err());
        assert!(SearchRegion::new(1.0, 1.0, -1.0, 0.0).is_err());
        assert!(SearchRegion::new(0.1, 1.0, 0.0, -1.0).is_err());
        assert!(SearchRegion::new(0.1, 1.0, 0.5, 1.0).is_ok());
    }

    #[test]
    fn wrap_range() {
        for d in [-7.0, -3.2, 0.0, 3.2, 7.0, std::f64::consts::PI] {
            let w = wrap(d);
            assert!(w > -std::f64::consts::PI && w <= std::f64::consts::PI);
            assert!(((d - w) / (2.0 * std::f64::consts::PI)).fract().abs() < 1e-12);
        }
    }
}
