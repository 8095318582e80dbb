//! Lamb shifts, widths and barrier classification along the `m` and `n` sweeps.

use microcavity::analysis::{
    barrier_bounds, classify_resonance, decay_width_and_q, effective_potential, lamb_shift, BarrierClass,
};
use microcavity::cavity::find_resonance;
use microcavity::husimi::{boundary_husimi, BoundaryTrace};
use microcavity::mode::ModeIndex;
use microcavity::sweep::{find_threshold, run_sweep_m, run_sweep_n, NRange, SweepRow};
use microcavity::Error;

fn mode(m: u32, ell: u32) -> ModeIndex {
    ModeIndex::new(m, ell).unwrap()
}

fn range() -> NRange {
    NRange::new(3.3, 6.0, 0.02).unwrap()
}

fn column(rows: &[SweepRow], ell: u32, f: fn(&SweepRow) -> f64) -> Vec<f64> {
    rows.iter().filter(|r| r.ell == ell).map(f).collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

#[test]
fn lamb_shift_values() {
    for (m, want, tol) in [(2, 0.094, 0.003), (3, 0.085, 0.005), (4, 0.07, 0.005), (5, 0.06, 0.005)] {
        let rec = lamb_shift(mode(m, 1), 3.3_f64).unwrap();
        assert!((rec.shift - want).abs() < tol, "m={m}: L = {}", rec.shift);
        assert_eq!(rec.shift, rec.closed_kr - rec.open_kr_re);
    }
}

#[test]
fn width_of_ground_mode() {
    let (gamma, q) = decay_width_and_q(&find_resonance(mode(2, 1), 3.3_f64, None).unwrap()).unwrap();
    assert!((gamma - 0.0928).abs() < 5e-4);
    assert!(q > 0.0 && q.is_finite());
}

#[test]
fn trapped_mode_potential() {
    let res = find_resonance(mode(3, 1), 3.3_f64, None).unwrap();
    let data = classify_resonance(&res).unwrap();
    assert_eq!(data.class, BarrierClass::BelowBarrier);
    let e = res.kr.re * res.kr.re;
    assert!((data.v_bottom - effective_potential(1.0 - 1e-15, 3, 3.3, e).unwrap()).abs() < 1e-9);
    let b = barrier_bounds(3, 3.3).unwrap();
    assert!(b.k_b < res.kr.re && res.kr.re < b.k_t);
}

#[test]
fn above_barrier_family() {
    let res = find_resonance(mode(4, 5), 3.3, None).unwrap();
    assert!(res.kr.re > 4.0);
    assert_eq!(classify_resonance(&res).unwrap().class, BarrierClass::AboveBarrier);
}

#[test]
fn sweep_over_angular_order() {
    let rows = run_sweep_m(1, 2, 10, 3.3).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.error.is_none() && r.validate().is_ok()));
    assert!(rows.windows(2).all(|w| w[0].m < w[1].m));
    assert!(strictly_decreasing(&column(&rows, 1, |r| r.lamb)));
    assert!(strictly_decreasing(&column(&rows, 1, |r| -r.open_kr_im)));
    assert!(rows.iter().all(|r| r.q > 0.0 && r.q.is_finite()));
    let first = &rows[0];
    assert!((first.closed_kr - 1.556).abs() < 1e-3);
    assert!((first.open_kr_re - 1.462).abs() < 5e-3);
    assert!((first.open_kr_im + 0.046).abs() < 2e-3);
}

#[test]
fn sweep_over_index_for_low_families() {
    let rows = run_sweep_n(4, &[2, 1, 2], &range()).unwrap();
    assert_eq!(rows.len(), 2 * 136);
    assert!(rows[..136].iter().all(|r| r.ell == 1) && rows[136..].iter().all(|r| r.ell == 2));
    for ell in [1, 2] {
        assert!(strictly_decreasing(&column(&rows, ell, |r| r.lamb)), "L(n), ell={ell}");
        // 1/Q = 2Γ / Re kR
        assert!(strictly_decreasing(&column(&rows, ell, |r| 1.0 / r.q)), "1/Q(n), ell={ell}");
    }
}

#[test]
fn whispering_gallery_modes_stay_trapped() {
    for m in [3, 4, 5] {
        let rows = run_sweep_n(m, &[1], &range()).unwrap();
        for r in &rows {
            assert_eq!(r.class, Some(BarrierClass::BelowBarrier), "m={m} n={}", r.n);
            assert!(r.k_b < r.open_kr_re && r.open_kr_re < r.k_t);
        }
    }
}

#[test]
fn higher_families_peak_inside_the_range() {
    let rows = run_sweep_n(4, &[3, 4, 5], &range()).unwrap();
    let mut peaks = Vec::new();
    for ell in [3, 4, 5] {
        let l = column(&rows, ell, |r| r.lamb);
        let top = (0..l.len()).fold(0, |b, i| if l[i] > l[b] { i } else { b });
        assert!(top > 0 && top < l.len() - 1);
        assert!(l[..=top].windows(2).all(|w| w[1] > w[0]), "ell={ell} rises to the peak");
        assert!(l[top..].windows(2).all(|w| w[1] < w[0]), "ell={ell} falls after the peak");
        let t = find_threshold(mode(4, ell), &range()).unwrap();
        assert!((t.n - rows[0].n - 0.02 * top as f64).abs() <= 0.03, "ell={ell}: T={} grid peak index {top}", t.n);
        // the family drops below the barrier top before the Lamb shift turns over
        let crossing = t.crossing_n.unwrap();
        assert!(crossing > 3.3 && crossing < t.n);
        peaks.push(t.n);
    }
    assert!(peaks[0] < peaks[1] && peaks[1] < peaks[2], "{peaks:?}");
}

#[test]
fn no_threshold_for_monotone_branch() {
    let err = find_threshold(mode(4, 1), &range()).unwrap_err();
    assert_eq!(err, Error::NoThreshold { lo: 3.3, hi: 6.0 });
}

#[test]
fn husimi_ridges_lie_above_the_critical_line() {
    for m in 2..=10 {
        let res = find_resonance(mode(m, 1), 3.3, None).unwrap();
        let trace = BoundaryTrace::of_mode(m, 3.3, res.kr, BoundaryTrace::<f64>::default_samples(m, 96)).unwrap();
        let map = boundary_husimi(&trace, 3.3, res.kr.re, (96, 161)).unwrap();
        let expected = m as f64 / (3.3 * res.kr.re);
        assert!((map.peak_p() - expected).abs() < 0.02, "m={m}");
        assert!(map.peak_p() > map.p_crit);
        assert!(map.column_peaks().iter().all(|p| *p > map.p_crit));
        // single-peaked marginal
        let marginal = map.p_marginal();
        let top = (0..marginal.len()).fold(0, |b, j| if marginal[j] > marginal[b] { j } else { b });
        assert!(marginal[..=top].windows(2).all(|w| w[1] >= w[0]));
        assert!(marginal[top..].windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn husimi_map_is_stable_under_resolution_doubling() {
    let res = find_resonance(mode(2, 1), 3.3_f64, None).unwrap();
    let map_at = |ns: usize, np: usize| {
        let trace = BoundaryTrace::of_mode(2, 3.3, res.kr, BoundaryTrace::<f64>::default_samples(2, ns)).unwrap();
        boundary_husimi(&trace, 3.3, res.kr.re, (ns, np)).unwrap()
    };
    let coarse = map_at(64, 129);
    let fine = map_at(128, 257);
    let mut worst = 0.0_f64;
    for i in 0..64 {
        for j in 0..129 {
            worst = worst.max((coarse.get(i, j) - fine.get(2 * i, 2 * j)).abs());
        }
    }
    assert!(worst <= 1e-3, "max nested difference {worst}");
    assert!((coarse.peak_p() - 0.414).abs() < 0.02 && coarse.column_peaks().iter().all(|p| *p > 0.303));
}
