//! Parameter sweeps over `m` and `n`, and location of Lamb-shift thresholds.
//!
//! Sweeps run in double precision. Rows for different modes are computed in
//! parallel; along `n` each `(m, ell)` branch is followed by continuation.

use rayon::prelude::*;

use crate::analysis::{classify_resonance, decay_width_and_q, lamb_shift_of, BarrierClass};
use crate::billiard::billiard_eigenvalue;
use crate::cavity::{find_resonance, radial_rank, refine_resonance, Resonance};
use crate::error::{Error, Result};
use crate::mode::{check_refractive_index, ModeIndex};
use crate::specfun::MAX_ORDER;
use crate::C64;

pub const DEFAULT_N_STEP: f64 = 0.02;
/// Continuation steps between radial-rank checks.
pub const RANK_CHECK_INTERVAL: usize = 10;
/// Bisection stops once the threshold bracket is narrower than this.
pub const THRESHOLD_BRACKET: f64 = 0.005;

/// One table row. Numeric fields of a failed row are NaN and `error` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub m: u32,
    pub ell: u32,
    pub n: f64,
    pub closed_kr: f64,
    pub open_kr_re: f64,
    pub open_kr_im: f64,
    pub lamb: f64,
    pub gamma: f64,
    pub q: f64,
    pub k_t: f64,
    pub k_b: f64,
    pub class: Option<BarrierClass>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn from_resonance(res: &Resonance<f64>) -> Result<Self> {
        let lamb = lamb_shift_of(res)?;
        let (gamma, q) = decay_width_and_q(res)?;
        let barrier = classify_resonance(res)?;
        Ok(Self {
            m: res.mode.m,
            ell: res.mode.ell,
            n: res.n,
            closed_kr: lamb.closed_kr,
            open_kr_re: res.kr.re,
            open_kr_im: res.kr.im,
            lamb: lamb.shift,
            gamma,
            q,
            k_t: barrier.k_t,
            k_b: barrier.k_b,
            class: Some(barrier.class),
            error: None,
        })
    }

    pub fn failed(mode: ModeIndex, n: f64, error: &Error) -> Self {
        let nan = f64::NAN;
        Self {
            m: mode.m,
            ell: mode.ell,
            n,
            closed_kr: nan,
            open_kr_re: nan,
            open_kr_im: nan,
            lamb: nan,
            gamma: nan,
            q: nan,
            k_t: nan,
            k_b: nan,
            class: None,
            error: Some(error.to_string()),
        }
    }

    fn from_result(mode: ModeIndex, n: f64, res: Result<Resonance<f64>>) -> Self {
        match res.and_then(|r| Self::from_resonance(&r)) {
            Ok(row) => row,
            Err(e) => Self::failed(mode, n, &e),
        }
    }

    /// Re-checks the resonance and classification invariants of a successful row.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.error.is_some() {
            return Ok(());
        }
        let numbers = [self.n, self.closed_kr, self.open_kr_re, self.open_kr_im, self.lamb, self.gamma, self.q];
        if numbers.iter().any(|v| !v.is_finite()) {
            return Err("non-finite value".into());
        }
        if !(self.open_kr_im < 0.0 && self.open_kr_re > 0.0) {
            return Err(format!("kR = {} {:+}i is not a decaying resonance", self.open_kr_re, self.open_kr_im));
        }
        if self.gamma != -2.0 * self.open_kr_im || self.q <= 0.0 {
            return Err("decay width or Q inconsistent with kR".into());
        }
        let expected = crate::analysis::classify(self.open_kr_re, self.k_t, self.k_b);
        if self.class != Some(expected) {
            return Err(format!("class {:?} disagrees with bounds ({expected})", self.class));
        }
        Ok(())
    }
}

/// Replaces rows that fail [`SweepRow::validate`] by error rows. Returns the number of error rows.
pub fn revalidate(rows: &mut [SweepRow]) -> usize {
    for row in rows.iter_mut() {
        if let Err(reason) = row.validate() {
            let mode = ModeIndex { m: row.m, ell: row.ell };
            *row = SweepRow::failed(mode, row.n, &Error::InvalidSweep(format!("validation failed: {reason}")));
        }
    }
    rows.iter().filter(|r| r.error.is_some()).count()
}

/// Evenly spaced refractive indices `lo, lo + step, ...` up to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl NRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        check_refractive_index(lo)?;
        if !hi.is_finite() || hi < lo || !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidSweep(format!("n range {lo}:{hi}:{step} needs lo <= hi and step > 0")));
        }
        if (hi - lo) / step > 1e6 {
            return Err(Error::InvalidSweep(format!("n range {lo}:{hi}:{step} has too many points")));
        }
        Ok(Self { lo, hi, step })
    }

    /// `lo + i * step` (multiplied, not accumulated), including `hi` up to a 1e-9 slack.
    pub fn values(&self) -> Vec<f64> {
        (0..).map(|i| self.lo + i as f64 * self.step).take_while(|n| *n <= self.hi + 1e-9).collect()
    }
}

/// `ell` fixed, one row per `m` in `m_lo..=m_hi`, each freshly seeded.
pub fn run_sweep_m(ell: u32, m_lo: u32, m_hi: u32, n: f64) -> Result<Vec<SweepRow>> {
    check_refractive_index(n)?;
    if m_lo > m_hi || m_hi > MAX_ORDER {
        return Err(Error::InvalidSweep(format!("m range {m_lo}:{m_hi} must be ordered and <= {MAX_ORDER}")));
    }
    ModeIndex::new(m_lo, ell)?;
    Ok((m_lo..=m_hi)
        .into_par_iter()
        .map(|m| {
            let mode = ModeIndex { m, ell };
            SweepRow::from_result(mode, n, find_resonance(mode, n, None))
        })
        .collect())
}

/// Continuation along `n` for one `(m, ell)` branch.
///
/// Each root seeds the next by linear extrapolation from the previous two.
/// Every [`RANK_CHECK_INTERVAL`] steps the radial rank is re-checked; a
/// mismatch is recorded as [`Error::BranchLoss`] and the branch is re-acquired
/// from scratch at the next point, as is any point after a failure.
pub fn follow_branch(mode: ModeIndex, ns: &[f64]) -> Vec<Result<Resonance<f64>>> {
    let mut out: Vec<Result<Resonance<f64>>> = Vec::with_capacity(ns.len());
    let mut history: Vec<(f64, C64)> = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let res = match history.as_slice() {
            [] => find_resonance(mode, n, None),
            [(_, k1)] => refine_resonance(mode, n, *k1),
            [.., (n0, k0), (n1, k1)] => {
                let seed = *k1 + (*k1 - *k0) * ((n - n1) / (n1 - n0));
                refine_resonance(mode, n, seed)
            }
        };
        let res = res.and_then(|r| {
            if i % RANK_CHECK_INTERVAL == 0 {
                let found = radial_rank(mode.m, n, r.kr)?;
                if found != mode.ell {
                    return Err(Error::BranchLoss { expected: mode.ell, found, n });
                }
            }
            Ok(r)
        });
        match &res {
            Ok(r) => {
                history.push((n, r.kr));
                if history.len() > 2 {
                    history.remove(0);
                }
            }
            Err(_) => history.clear(),
        }
        out.push(res);
    }
    out
}

/// `m` fixed, rows grouped by `ell` (ascending, duplicates dropped) and sorted by `n`.
pub fn run_sweep_n(m: u32, ells: &[u32], range: &NRange) -> Result<Vec<SweepRow>> {
    let mut ells = ells.to_vec();
    ells.sort_unstable();
    ells.dedup();
    if ells.is_empty() {
        return Err(Error::InvalidSweep("empty ell set".into()));
    }
    let modes = ells.iter().map(|&ell| ModeIndex::new(m, ell)).collect::<Result<Vec<_>>>()?;
    let ns = range.values();
    let branches: Vec<Vec<SweepRow>> = modes
        .par_iter()
        .map(|&mode| {
            follow_branch(mode, &ns).into_iter().zip(&ns).map(|(res, &n)| SweepRow::from_result(mode, n, res)).collect()
        })
        .collect();
    Ok(branches.concat())
}

/// Lamb-shift maximum along `n` of one branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub mode: ModeIndex,
    /// Index where `dL/dn` changes sign from positive to negative.
    pub n: f64,
    /// Index where `Re kR` crosses `k_T = m`, if it does within the range.
    pub crossing_n: Option<f64>,
}

/// Locates the first `+ -> -` sign change of `dL/dn` along the branch and refines it by bisection.
///
/// `dL/dn` is a centered difference with step equal to the sweep step.
pub fn find_threshold(mode: ModeIndex, range: &NRange) -> Result<Threshold> {
    let ns = range.values();
    if ns.len() < 4 {
        return Err(Error::InvalidSweep("threshold search needs at least 4 sweep points".into()));
    }
    let roots = follow_branch(mode, &ns).into_iter().collect::<Result<Vec<_>>>()?;
    let h = range.step;
    let lamb = |r: &Resonance<f64>| -> Result<f64> { Ok(lamb_shift_of(r)?.shift) };
    let shifts = roots.iter().map(lamb).collect::<Result<Vec<_>>>()?;
    let slope: Vec<f64> = (1..ns.len() - 1).map(|i| (shifts[i + 1] - shifts[i - 1]) / (2.0 * h)).collect();
    // slope[j] belongs to ns[j + 1]
    let j = (0..slope.len() - 1)
        .find(|&j| slope[j] > 0.0 && slope[j + 1] <= 0.0)
        .ok_or(Error::NoThreshold { lo: range.lo, hi: range.hi })?;

    let (mut lo, mut hi) = (ns[j + 1], ns[j + 2]);
    let (k_lo, k_hi) = (roots[j + 1].kr, roots[j + 2].kr);
    let seed_at = |n: f64| k_lo + (k_hi - k_lo) * ((n - ns[j + 1]) / (ns[j + 2] - ns[j + 1]));
    let lamb_at = |n: f64| -> Result<f64> {
        let r = refine_resonance(mode, n, seed_at(n))?;
        Ok(billiard_eigenvalue(mode, n)?.kr - r.kr.re)
    };
    while hi - lo > THRESHOLD_BRACKET {
        let mid = 0.5 * (lo + hi);
        let d = (lamb_at(mid + h)? - lamb_at(mid - h)?) / (2.0 * h);
        if d > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let m = f64::from(mode.m);
    let crossing_n = (0..ns.len() - 1).find_map(|i| {
        let (a, b) = (roots[i].kr.re - m, roots[i + 1].kr.re - m);
        (a >= 0.0 && b < 0.0 || a < 0.0 && b >= 0.0).then(|| ns[i] + (ns[i + 1] - ns[i]) * a / (a - b))
    });
    Ok(Threshold { mode, n: 0.5 * (lo + hi), crossing_n })
}
