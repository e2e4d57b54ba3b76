//! Memory-effect diagnostics for dephasing pairs.
//!
//! Two inequivalent detectors are implemented side by side:
//!
//! * **Capacity-based** ([`bcm_scan`]): a channel with memory lets the
//!   two-qubit capacity `q_ab(t)` partially recover after a collapse.  The
//!   detector totals every rise of the sampled capacity series; any total
//!   above the ripple threshold flags memory.  Because `q_ab = q_a + q_b`,
//!   a rise on one side can be masked by a steeper fall on the other — the
//!   global verdict is genuinely different information from the local ones.
//!
//! * **Distinguishability-based** ([`blp_product_bound`], [`blp_search`]):
//!   memory lets the trace distance of two evolved states revive.
//!   [`blp_product_bound`] evaluates the canonical product probe pair per
//!   side, whose trace distance is `|κ(t)|/2` in closed form;
//!   [`blp_search`] additionally climbs over orthogonal pure-state pairs
//!   looking for larger revivals.  Reported values are lower bounds — no
//!   optimality claim is made.
//!
//! [`classify_combination`] bundles the verdicts for one pair of
//! environments, and [`critical_amplitude`] bisects for the secondary-peak
//! amplitude at which the single-side magnitude first turns non-monotone.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{
    apply_dephasing, capacity_trace, CapacityTrace, ChannelError, DephasingPair,
};
use crate::numerics::{
    positive_increase_sum, trace_distance_unchecked, HermitianMatrix, NumericsError,
    DEFAULT_INCREASE_THRESHOLD,
};
use crate::rng::{derive_seed, CounterRng};
use crate::spectra::{DoublePeakSpectrum, SpectraError, TimeGrid};

/// Bisection stops once the amplitude bracket is narrower than this.
const AMPLITUDE_BISECTION_TOL: f64 = 1e-4;

/// Coordinate-ascent sweep cap per search restart.
const ASCENT_MAX_SWEEPS: usize = 200;

/// Initial and final coordinate step of the ascent.
const ASCENT_INITIAL_STEP: f64 = 0.25;
const ASCENT_MIN_STEP: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum MeasuresError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error("no transition on grid: the magnitude stays monotone up to amp_ratio = 1")]
    NoTransitionOnGrid,
    #[error("amplitude bracket invalid: magnitude is already non-monotone at amp_ratio = 0")]
    BadBracket,
}

/// Verdict for one channel (or channel combination).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Markovianity {
    Markovian,
    NonMarkovian,
}

impl Markovianity {
    fn from_detected(detected: bool) -> Self {
        if detected {
            Self::NonMarkovian
        } else {
            Self::Markovian
        }
    }
}

/// Memory diagnostics of one dephasing pair on one grid.
///
/// `bcm_*` fields describe the joint capacity series; `blp_*` the product
/// probe pairs per side.  `increase_intervals` lists the maximal time
/// windows over which the joint capacity rose.
#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub bcm_detected: bool,
    pub bcm_increase_sum: f64,
    pub bcm_literal_integral: f64,
    pub blp_bound_a: f64,
    pub blp_bound_b: f64,
    pub blp_detected: bool,
    pub increase_intervals: Vec<(f64, f64)>,
}

/// Per-side and joint verdicts for one combination of environments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationVerdict {
    pub local_a: Markovianity,
    pub local_b: Markovianity,
    pub global_bcm: Markovianity,
    pub blp_detected: bool,
}

/// Scan a sampled capacity trace for recoveries of the joint capacity.
///
/// `bcm_increase_sum` totals the qualifying rises of `q_ab` (threshold
/// [`DEFAULT_INCREASE_THRESHOLD`] per increment); `bcm_literal_integral` is
/// the trapezoid integral `∫ q_ab dt` over the same rising steps.  The
/// `blp_*` fields of the returned report are zeroed — fill them from
/// [`blp_product_bound`] when both detectors are wanted.
pub fn bcm_scan(trace: &CapacityTrace) -> Result<MeasureReport, MeasuresError> {
    let times = trace.grid.times();
    let scan = positive_increase_sum(&times, &trace.q_ab, DEFAULT_INCREASE_THRESHOLD)?;

    let mut literal = 0.0;
    for i in 0..trace.q_ab.len() - 1 {
        let step = trace.q_ab[i + 1] - trace.q_ab[i];
        if step > DEFAULT_INCREASE_THRESHOLD {
            literal += 0.5 * (trace.q_ab[i] + trace.q_ab[i + 1]) * (times[i + 1] - times[i]);
        }
    }

    Ok(MeasureReport {
        bcm_detected: scan.total > 0.0,
        bcm_increase_sum: scan.total,
        bcm_literal_integral: literal,
        blp_bound_a: 0.0,
        blp_bound_b: 0.0,
        blp_detected: false,
        increase_intervals: scan.intervals,
    })
}

/// Which qubit's environment a probe pair targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// Canonical product probe pair for one side: the equatorial pure state on
/// that qubit tensored with the maximally mixed partner, against the fully
/// mixed two-qubit state.  Its evolved trace distance is `|κ_side(t)| / 2`
/// in closed form.
pub fn coherence_probe_pair(side: Side) -> (HermitianMatrix, HermitianMatrix) {
    let mut rho1 = HermitianMatrix::maximally_mixed(4).expect("dim 4");
    let quarter = Complex64::new(0.25, 0.0);
    match side {
        Side::A => {
            rho1.set_pair(0, 2, quarter);
            rho1.set_pair(1, 3, quarter);
        }
        Side::B => {
            rho1.set_pair(0, 1, quarter);
            rho1.set_pair(2, 3, quarter);
        }
    }
    let rho2 = HermitianMatrix::maximally_mixed(4).expect("dim 4");
    (rho1, rho2)
}

/// Antipodal equatorial product pair for one side (`|+⟩` vs `|-⟩` on the
/// probed qubit, maximally mixed partner).  Evolved trace distance
/// `|κ_side(t)|` — twice the coherence probe's.
pub fn antipodal_probe_pair(side: Side) -> (HermitianMatrix, HermitianMatrix) {
    let (mut rho1, mut rho2) = (
        HermitianMatrix::maximally_mixed(4).expect("dim 4"),
        HermitianMatrix::maximally_mixed(4).expect("dim 4"),
    );
    let quarter = Complex64::new(0.25, 0.0);
    let pairs: &[(usize, usize)] = match side {
        Side::A => &[(0, 2), (1, 3)],
        Side::B => &[(0, 1), (2, 3)],
    };
    for &(i, j) in pairs {
        rho1.set_pair(i, j, quarter);
        rho2.set_pair(i, j, -quarter);
    }
    (rho1, rho2)
}

/// Trace distance of two fixed initial states under the evolved pair, one
/// value per grid time.
///
/// Both states are validated once; each grid point then applies the
/// dephasing map with `κ_j(t_i)` to the *initial* states (the map at time
/// `t` is the total evolution, not a step) and eigensolves the difference.
pub fn trace_distance_dynamics(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
    pair: &DephasingPair,
    grid: &TimeGrid,
) -> Result<Vec<f64>, MeasuresError> {
    rho1.validate_density()?;
    rho2.validate_density()?;
    let mut series = Vec::with_capacity(grid.n_points());
    for i in 0..grid.n_points() {
        let t = grid.time_at(i);
        let kappa1 = pair.spec_a.characteristic_fn(t)?;
        let kappa2 = pair.spec_b.characteristic_fn(t)?;
        let evolved1 = apply_dephasing(rho1, kappa1, kappa2)?;
        let evolved2 = apply_dephasing(rho2, kappa1, kappa2)?;
        series.push(trace_distance_unchecked(&evolved1, &evolved2)?);
    }
    Ok(series)
}

/// Distinguishability revival bound per side from the canonical product
/// probe pairs: the summed rises of `|κ_side(t)| / 2`.
///
/// Returns `(bound_a, bound_b)`.  A monotone side yields exactly `0.0`.
pub fn blp_product_bound(
    pair: &DephasingPair,
    grid: &TimeGrid,
) -> Result<(f64, f64), MeasuresError> {
    let times = grid.times();
    let mut bounds = [0.0; 2];
    for (slot, spec) in [&pair.spec_a, &pair.spec_b].into_iter().enumerate() {
        let half_mag: Vec<f64> = spec
            .magnitude_series(grid)
            .into_iter()
            .map(|m| 0.5 * m)
            .collect();
        bounds[slot] =
            positive_increase_sum(&times, &half_mag, DEFAULT_INCREASE_THRESHOLD)?.total;
    }
    Ok((bounds[0], bounds[1]))
}

/// Outcome of the pure-state-pair search: the largest revival total found
/// and a description of the initial pair achieving it.
#[derive(Debug, Clone, Serialize)]
pub struct BlpSearchOutcome {
    pub best_value: f64,
    pub best_pair: String,
}

/// Search initial state pairs for the largest trace-distance revival total.
///
/// The candidate set always contains the four closed-form product pairs
/// (coherence and antipodal probes, each side), so the result is never
/// below [`blp_product_bound`].  On top, `n_restarts` seeded draws of
/// orthogonal pure-state pairs are refined by coordinate ascent over their
/// 16-parameter complex-vector parametrization (step-halving from 0.25 down
/// to 1e-3, at most 200 sweeps).  Restart `i` derives its own sub-seed from
/// `(seed, i)`, so a fixed `(pair, grid, n_restarts, seed)` is fully
/// reproducible and growing `n_restarts` can only improve the result.
pub fn blp_search(
    pair: &DephasingPair,
    grid: &TimeGrid,
    n_restarts: u32,
    seed: u64,
) -> Result<BlpSearchOutcome, MeasuresError> {
    let times = grid.times();
    let objective = |rho1: &HermitianMatrix, rho2: &HermitianMatrix| -> Result<f64, MeasuresError> {
        let series = trace_distance_dynamics(rho1, rho2, pair, grid)?;
        Ok(positive_increase_sum(&times, &series, DEFAULT_INCREASE_THRESHOLD)?.total)
    };

    let mut best_value = f64::NEG_INFINITY;
    let mut best_pair = String::new();

    let fixed: [(&str, (HermitianMatrix, HermitianMatrix)); 4] = [
        ("coherence probe pair, side a", coherence_probe_pair(Side::A)),
        ("coherence probe pair, side b", coherence_probe_pair(Side::B)),
        ("antipodal probe pair, side a", antipodal_probe_pair(Side::A)),
        ("antipodal probe pair, side b", antipodal_probe_pair(Side::B)),
    ];
    for (name, (rho1, rho2)) in fixed {
        let value = objective(&rho1, &rho2)?;
        if value > best_value {
            best_value = value;
            best_pair = name.to_string();
        }
    }

    for restart in 0..n_restarts {
        let mut rng = CounterRng::new(derive_seed(seed, u64::from(restart)));
        let mut params = [0.0f64; 16];
        for p in params.iter_mut() {
            *p = rng.next_normal();
        }
        if let Some((value, _)) = ascend(&params, &objective)? {
            if value > best_value {
                best_value = value;
                best_pair = format!("refined orthogonal pure pair, restart {restart}");
            }
        }
    }

    Ok(BlpSearchOutcome {
        best_value,
        best_pair,
    })
}

/// Orthonormal pure pair from 16 raw parameters (two complex 4-vectors,
/// Gram–Schmidt).  `None` when the vectors are numerically degenerate.
fn orthogonal_pure_pair(params: &[f64; 16]) -> Option<(HermitianMatrix, HermitianMatrix)> {
    let mut v1 = [Complex64::new(0.0, 0.0); 4];
    let mut v2 = [Complex64::new(0.0, 0.0); 4];
    for j in 0..4 {
        v1[j] = Complex64::new(params[2 * j], params[2 * j + 1]);
        v2[j] = Complex64::new(params[8 + 2 * j], params[9 + 2 * j]);
    }
    let n1: f64 = v1.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n1 < 1e-9 {
        return None;
    }
    for z in v1.iter_mut() {
        *z /= n1;
    }
    let overlap: Complex64 = v1.iter().zip(&v2).map(|(a, b)| a.conj() * b).sum();
    for (a, b) in v2.iter_mut().zip(&v1) {
        *a -= overlap * b;
    }
    let n2: f64 = v2.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if n2 < 1e-9 {
        return None;
    }
    for z in v2.iter_mut() {
        *z /= n2;
    }

    let project = |v: &[Complex64; 4]| {
        let mut rho = HermitianMatrix::zero(4).expect("dim 4");
        for i in 0..4 {
            for j in i..4 {
                rho.set_pair(i, j, v[i] * v[j].conj());
            }
        }
        rho
    };
    Some((project(&v1), project(&v2)))
}

/// Greedy coordinate ascent with step halving; returns the best objective
/// value and parameters, or `None` if even the start was degenerate.
fn ascend<F>(
    start: &[f64; 16],
    objective: &F,
) -> Result<Option<(f64, [f64; 16])>, MeasuresError>
where
    F: Fn(&HermitianMatrix, &HermitianMatrix) -> Result<f64, MeasuresError>,
{
    let eval = |params: &[f64; 16]| -> Result<Option<f64>, MeasuresError> {
        match orthogonal_pure_pair(params) {
            Some((rho1, rho2)) => Ok(Some(objective(&rho1, &rho2)?)),
            None => Ok(None),
        }
    };

    let mut params = *start;
    let mut best = match eval(&params)? {
        Some(v) => v,
        None => return Ok(None),
    };
    let mut step = ASCENT_INITIAL_STEP;
    for _ in 0..ASCENT_MAX_SWEEPS {
        if step < ASCENT_MIN_STEP {
            break;
        }
        let mut improved = false;
        for coord in 0..16 {
            for direction in [1.0, -1.0] {
                let mut trial = params;
                trial[coord] += direction * step;
                if let Some(value) = eval(&trial)? {
                    if value > best {
                        best = value;
                        params = trial;
                        improved = true;
                        break;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok(Some((best, params)))
}

/// Classify one combination of environments: per-side capacity
/// monotonicity, joint-capacity monotonicity, and the product-probe
/// distinguishability detector.
pub fn classify_combination(
    pair: &DephasingPair,
    grid: &TimeGrid,
) -> Result<CombinationVerdict, MeasuresError> {
    let trace = capacity_trace(pair, grid)?;
    let times = grid.times();
    let local_a = positive_increase_sum(&times, &trace.q_a, DEFAULT_INCREASE_THRESHOLD)?;
    let local_b = positive_increase_sum(&times, &trace.q_b, DEFAULT_INCREASE_THRESHOLD)?;
    let global = positive_increase_sum(&times, &trace.q_ab, DEFAULT_INCREASE_THRESHOLD)?;
    let (bound_a, bound_b) = blp_product_bound(pair, grid)?;

    Ok(CombinationVerdict {
        local_a: Markovianity::from_detected(local_a.total > 0.0),
        local_b: Markovianity::from_detected(local_b.total > 0.0),
        global_bcm: Markovianity::from_detected(global.total > 0.0),
        blp_detected: bound_a > 0.0 || bound_b > 0.0,
    })
}

/// Bisect for the secondary-peak amplitude at which the single-side damping
/// magnitude first turns non-monotone on the given grid.
///
/// The template's own `amp_ratio` is ignored; the scan runs over
/// `amp_ratio ∈ [0, 1]`.  Returns the bracket midpoint once the bracket is
/// narrower than `1e-4`.  Errors with [`MeasuresError::NoTransitionOnGrid`]
/// when even `amp_ratio = 1` stays monotone (peaks too close to beat
/// visibly on this grid).
pub fn critical_amplitude(
    template: &DoublePeakSpectrum,
    grid: &TimeGrid,
) -> Result<f64, MeasuresError> {
    let times = grid.times();
    let monotone = |amp: f64| -> Result<bool, MeasuresError> {
        let spec = template.with_amp_ratio(amp)?;
        let series = spec.magnitude_series(grid);
        let scan = positive_increase_sum(&times, &series, DEFAULT_INCREASE_THRESHOLD)?;
        Ok(scan.total == 0.0)
    };

    if !monotone(0.0)? {
        return Err(MeasuresError::BadBracket);
    }
    if monotone(1.0)? {
        return Err(MeasuresError::NoTransitionOnGrid);
    }

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > AMPLITUDE_BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if monotone(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn calibrated_spec(amp: f64) -> DoublePeakSpectrum {
        DoublePeakSpectrum::new(0.0, 1.5e13, 1.8e12, amp, 1, 1.0).unwrap()
    }

    fn synthetic_trace(times: &[f64], q_ab: Vec<f64>) -> CapacityTrace {
        let n = times.len();
        CapacityTrace {
            grid: TimeGrid::new(*times.last().unwrap(), n).unwrap(),
            q_a: vec![1.0; n],
            q_b: vec![1.0; n],
            q_ab,
        }
    }

    /// One rise of 0.05 spread over t ∈ [2e-13, 3e-13]: the scan totals it,
    /// reports the window, and the literal integral matches an independent
    /// trapezoid loop.
    #[test]
    fn bcm_scan_totals_a_synthetic_recovery() {
        let n = 51;
        let times: Vec<f64> = (0..n).map(|i| i as f64 * 1e-14).collect();
        let mut q_ab = Vec::with_capacity(n);
        for i in 0..n {
            let v = if i <= 20 {
                2.0 - i as f64 * 0.05 // fall to 1.0 at i = 20 (t = 2e-13)
            } else if i <= 30 {
                1.0 + (i - 20) as f64 * 0.005 // rise to 1.05 at t = 3e-13
            } else {
                1.05 - (i - 30) as f64 * 0.01
            };
            q_ab.push(v);
        }
        let trace = synthetic_trace(&times, q_ab.clone());
        let report = bcm_scan(&trace).unwrap();

        assert!(report.bcm_detected);
        assert_abs_diff_eq!(report.bcm_increase_sum, 0.05, epsilon = 1e-14);
        assert_eq!(report.increase_intervals.len(), 1);
        let (start, end) = report.increase_intervals[0];
        assert_abs_diff_eq!(start, 2e-13, epsilon = 1e-20);
        assert_abs_diff_eq!(end, 3e-13, epsilon = 1e-20);

        let mut oracle = 0.0;
        for i in 0..n - 1 {
            if q_ab[i + 1] - q_ab[i] > 1e-9 {
                oracle += 0.5 * (q_ab[i] + q_ab[i + 1]) * (times[i + 1] - times[i]);
            }
        }
        assert_abs_diff_eq!(report.bcm_literal_integral, oracle, epsilon = 1e-18);
        assert!(!report.blp_detected);
    }

    #[test]
    fn bcm_scan_of_monotone_trace_reports_nothing() {
        let n = 100;
        let times: Vec<f64> = (0..n).map(|i| i as f64 * 1e-14).collect();
        let q_ab: Vec<f64> = (0..n).map(|i| 2.0 * (-(i as f64) / 30.0).exp()).collect();
        let report = bcm_scan(&synthetic_trace(&times, q_ab)).unwrap();
        assert!(!report.bcm_detected);
        assert_eq!(report.bcm_increase_sum, 0.0);
        assert_eq!(report.bcm_literal_integral, 0.0);
        assert!(report.increase_intervals.is_empty());
    }

    #[test]
    fn probe_pairs_are_valid_states() {
        for side in [Side::A, Side::B] {
            let (r1, r2) = coherence_probe_pair(side);
            r1.validate_density().unwrap();
            r2.validate_density().unwrap();
            let (r1, r2) = antipodal_probe_pair(side);
            r1.validate_density().unwrap();
            r2.validate_density().unwrap();
        }
    }

    #[test]
    fn dynamics_of_coherence_probe_follows_half_magnitude() {
        let pair = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.004));
        let grid = TimeGrid::new(2.5e-12, 512).unwrap();
        let (rho1, rho2) = coherence_probe_pair(Side::A);
        let series = trace_distance_dynamics(&rho1, &rho2, &pair, &grid).unwrap();
        for (i, d) in series.iter().enumerate() {
            let expected = 0.5 * pair.spec_a.magnitude(grid.time_at(i)).unwrap();
            assert!((d - expected).abs() < 1e-10, "mismatch at index {i}");
        }
        // Side B probe follows side B's magnitude instead.
        let (rho1, rho2) = coherence_probe_pair(Side::B);
        let series = trace_distance_dynamics(&rho1, &rho2, &pair, &grid).unwrap();
        for (i, d) in series.iter().enumerate() {
            let expected = 0.5 * pair.spec_b.magnitude(grid.time_at(i)).unwrap();
            assert!((d - expected).abs() < 1e-10, "side b mismatch at index {i}");
        }
    }

    #[test]
    fn antipodal_probe_starts_fully_distinguishable() {
        let pair = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.004));
        let grid = TimeGrid::new(1.0e-12, 8).unwrap();
        let (rho1, rho2) = antipodal_probe_pair(Side::A);
        let series = trace_distance_dynamics(&rho1, &rho2, &pair, &grid).unwrap();
        assert_abs_diff_eq!(series[0], 1.0, epsilon = 1e-12);
        for (i, d) in series.iter().enumerate() {
            let expected = pair.spec_a.magnitude(grid.time_at(i)).unwrap();
            assert!((d - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn product_bound_is_zero_for_single_peak_sides() {
        let pair = DephasingPair::new(calibrated_spec(0.0), calibrated_spec(0.0));
        let grid = TimeGrid::new(3.0e-12, 4096).unwrap();
        let (a, b) = blp_product_bound(&pair, &grid).unwrap();
        assert_eq!(a, 0.0);
        assert_eq!(b, 0.0);
    }

    #[test]
    fn product_bound_matches_direct_scan() {
        let pair = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.091));
        let grid = TimeGrid::new(3.3e-12, 8192).unwrap();
        let (bound_a, bound_b) = blp_product_bound(&pair, &grid).unwrap();
        assert!(bound_a > 0.0 && bound_b > 0.0);

        let times = grid.times();
        for (spec, bound) in [(&pair.spec_a, bound_a), (&pair.spec_b, bound_b)] {
            let half: Vec<f64> = spec
                .magnitude_series(&grid)
                .into_iter()
                .map(|m| 0.5 * m)
                .collect();
            let oracle = positive_increase_sum(&times, &half, 1e-9).unwrap().total;
            assert_abs_diff_eq!(bound, oracle, epsilon = 1e-15);
        }
    }

    #[test]
    fn search_never_falls_below_the_product_bounds() {
        let pair = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.004));
        let grid = TimeGrid::new(3.3e-12, 257).unwrap();
        let (bound_a, bound_b) = blp_product_bound(&pair, &grid).unwrap();
        let outcome = blp_search(&pair, &grid, 2, 11).unwrap();
        assert!(outcome.best_value >= bound_a.max(bound_b) - 1e-10);
        assert!(!outcome.best_pair.is_empty());
    }

    #[test]
    fn search_reports_zero_for_memoryless_pairs() {
        let pair = DephasingPair::new(calibrated_spec(0.0), calibrated_spec(0.004));
        let grid = TimeGrid::new(3.3e-12, 129).unwrap();
        let outcome = blp_search(&pair, &grid, 3, 5).unwrap();
        assert!(
            outcome.best_value.abs() < 1e-9,
            "memoryless pair should have no revivals, got {}",
            outcome.best_value
        );
    }

    #[test]
    fn search_is_deterministic() {
        let pair = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.004));
        let grid = TimeGrid::new(3.3e-12, 129).unwrap();
        let a = blp_search(&pair, &grid, 2, 77).unwrap();
        let b = blp_search(&pair, &grid, 2, 77).unwrap();
        assert_eq!(a.best_value.to_bits(), b.best_value.to_bits());
        assert_eq!(a.best_pair, b.best_pair);
    }

    #[test]
    fn classification_separates_memory_from_no_memory() {
        let grid = TimeGrid::new(3.3e-12, 8192).unwrap();

        let memoryless = DephasingPair::new(calibrated_spec(0.004), calibrated_spec(0.0));
        let verdict = classify_combination(&memoryless, &grid).unwrap();
        assert_eq!(verdict.local_a, Markovianity::Markovian);
        assert_eq!(verdict.local_b, Markovianity::Markovian);
        assert_eq!(verdict.global_bcm, Markovianity::Markovian);
        assert!(!verdict.blp_detected);

        let strong = DephasingPair::new(calibrated_spec(0.39), calibrated_spec(0.39));
        let verdict = classify_combination(&strong, &grid).unwrap();
        assert_eq!(verdict.local_a, Markovianity::NonMarkovian);
        assert_eq!(verdict.local_b, Markovianity::NonMarkovian);
        assert_eq!(verdict.global_bcm, Markovianity::NonMarkovian);
        assert!(verdict.blp_detected);
    }

    #[test]
    fn critical_amplitude_brackets_the_monotonicity_flip() {
        let template = calibrated_spec(0.5);
        let grid = TimeGrid::new(3.3e-12, 16384).unwrap();
        let a_crit = critical_amplitude(&template, &grid).unwrap();
        assert!(a_crit > 0.0 && a_crit < 1.0);

        let times = grid.times();
        let monotone = |amp: f64| {
            let series = template.with_amp_ratio(amp).unwrap().magnitude_series(&grid);
            positive_increase_sum(&times, &series, 1e-9).unwrap().total == 0.0
        };
        assert!(monotone(a_crit - 5e-3));
        assert!(!monotone(a_crit + 5e-3));
    }

    #[test]
    fn critical_amplitude_reports_missing_transition() {
        // Peaks 20 envelope widths apart in the wrong direction: beating is
        // invisible, |Φ| stays monotone even at equal amplitudes.
        let template = DoublePeakSpectrum::new(0.0, 9.0e10, 1.8e12, 0.5, 1, 1.0).unwrap();
        let grid = TimeGrid::default_for_pair(&template, &template).unwrap();
        assert!(matches!(
            critical_amplitude(&template, &grid),
            Err(MeasuresError::NoTransitionOnGrid)
        ));
    }
}
