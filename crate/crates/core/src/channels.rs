//! Dephasing channels on one and two qubits and their classical capacities.
//!
//! A pure dephasing channel leaves populations untouched and damps each
//! coherence by the characteristic-function value of the qubit's
//! environment.  On the two-qubit computational basis
//! `(HH, HV, VH, VV)` the density-matrix entry `(i, j)` picks up one damping
//! factor per qubit whose basis letter differs between `i` and `j`:
//! `κ₁` for the first qubit (conjugated when the letters are ordered V→H),
//! `κ₂` for the second, and 1 when the letters agree.
//!
//! The quantum channel capacity of the dephased qubit-pair channel is
//! additive over the two qubits and depends only on the damping magnitudes:
//! each qubit contributes `1 - H2((1 + |κ|) / 2)` transmittable qubits.

use num_complex::Complex64;
use thiserror::Error;

use crate::numerics::{binary_entropy, HermitianMatrix, NumericsError};
use crate::spectra::{DoublePeakSpectrum, SpectraError, TimeGrid};

/// Damping factors may overshoot unit modulus by at most this before the
/// channel rejects them.
const KAPPA_MODULUS_SLACK: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ChannelError {
    #[error("damping factor has modulus {0} > 1")]
    KappaOutOfRange(f64),
    #[error("damping magnitude {0} lies outside [0, 1]")]
    MagnitudeOutOfRange(f64),
    #[error("expected a {expected}x{expected} state, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
}

/// The two independent environments of a qubit pair: side A dephases the
/// first qubit, side B the second.
#[derive(Debug, Clone, PartialEq)]
pub struct DephasingPair {
    pub spec_a: DoublePeakSpectrum,
    pub spec_b: DoublePeakSpectrum,
}

impl DephasingPair {
    pub fn new(spec_a: DoublePeakSpectrum, spec_b: DoublePeakSpectrum) -> Self {
        Self { spec_a, spec_b }
    }
}

/// Capacity of the dephased channels sampled over a time grid: per-qubit
/// capacities `q_a`, `q_b` and the two-qubit capacity `q_ab = q_a + q_b`.
#[derive(Debug, Clone)]
pub struct CapacityTrace {
    pub grid: TimeGrid,
    pub q_a: Vec<f64>,
    pub q_b: Vec<f64>,
    pub q_ab: Vec<f64>,
}

fn check_kappa(kappa: Complex64) -> Result<(), ChannelError> {
    let modulus = kappa.norm();
    if modulus > 1.0 + KAPPA_MODULUS_SLACK {
        return Err(ChannelError::KappaOutOfRange(modulus));
    }
    Ok(())
}

/// Damping factor for one qubit's basis letters in row position `row_bit`
/// and column position `col_bit` (0 = H, 1 = V).
fn letter_factor(row_bit: usize, col_bit: usize, kappa: Complex64) -> Complex64 {
    match (row_bit, col_bit) {
        (0, 1) => kappa,
        (1, 0) => kappa.conj(),
        _ => Complex64::new(1.0, 0.0),
    }
}

/// Apply the two-qubit dephasing map with damping factors `κ₁` (first
/// qubit) and `κ₂` (second qubit) to a 4×4 state.
///
/// Entry-wise: `ρ'_{ij} = f₁(i,j) · f₂(i,j) · ρ_{ij}` with the letter rule
/// above.  Populations are untouched, so the trace is preserved exactly;
/// Hermiticity and positivity survive because the map is a convex mixture
/// of phase flips.
pub fn apply_dephasing(
    rho: &HermitianMatrix,
    kappa1: Complex64,
    kappa2: Complex64,
) -> Result<HermitianMatrix, ChannelError> {
    if rho.dim() != 4 {
        return Err(ChannelError::WrongDimension {
            expected: 4,
            got: rho.dim(),
        });
    }
    check_kappa(kappa1)?;
    check_kappa(kappa2)?;

    let mut out = HermitianMatrix::zero(4)?;
    for i in 0..4 {
        for j in i..4 {
            let f1 = letter_factor(i >> 1, j >> 1, kappa1);
            let f2 = letter_factor(i & 1, j & 1, kappa2);
            out.set_pair(i, j, rho.entry(i, j) * f1 * f2);
        }
    }
    Ok(out)
}

/// Single-qubit version: damp the one coherence of a 2×2 state by `κ`.
pub fn apply_local_dephasing(
    rho: &HermitianMatrix,
    kappa: Complex64,
) -> Result<HermitianMatrix, ChannelError> {
    if rho.dim() != 2 {
        return Err(ChannelError::WrongDimension {
            expected: 2,
            got: rho.dim(),
        });
    }
    check_kappa(kappa)?;
    let mut out = HermitianMatrix::zero(2)?;
    out.set_pair(0, 0, rho.entry(0, 0));
    out.set_pair(1, 1, rho.entry(1, 1));
    out.set_pair(0, 1, rho.entry(0, 1) * kappa);
    Ok(out)
}

/// Quantum channel capacity of a single dephased qubit with damping
/// magnitude `m = |κ|`: `q = 1 - H2((1 + m) / 2)` qubits.
///
/// `q(0) = 0` (coherence fully gone) and `q(1) = 1` (noise-free), both
/// exact; strictly increasing in between.
pub fn capacity_single(magnitude: f64) -> Result<f64, ChannelError> {
    if !magnitude.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&magnitude) {
        return Err(ChannelError::MagnitudeOutOfRange(magnitude));
    }
    let m = magnitude.clamp(0.0, 1.0);
    Ok(1.0 - binary_entropy((1.0 + m) / 2.0)?)
}

/// Two-qubit capacity with independent side dampings: additive,
/// `q_ab = q_a + q_b = 2 - H2((1+m₁)/2) - H2((1+m₂)/2)`.
pub fn capacity_two_qubit(magnitude1: f64, magnitude2: f64) -> Result<f64, ChannelError> {
    for m in [magnitude1, magnitude2] {
        if !m.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&m) {
            return Err(ChannelError::MagnitudeOutOfRange(m));
        }
    }
    let m1 = magnitude1.clamp(0.0, 1.0);
    let m2 = magnitude2.clamp(0.0, 1.0);
    Ok(2.0 - binary_entropy((1.0 + m1) / 2.0)? - binary_entropy((1.0 + m2) / 2.0)?)
}

/// Sample the per-side and joint capacities of a dephasing pair over a
/// time grid.  `q_ab` starts at exactly 2 (no damping at `t = 0`) and
/// equals `q_a + q_b` at every point.
pub fn capacity_trace(
    pair: &DephasingPair,
    grid: &TimeGrid,
) -> Result<CapacityTrace, ChannelError> {
    let mags_a = pair.spec_a.magnitude_series(grid);
    let mags_b = pair.spec_b.magnitude_series(grid);
    let mut q_a = Vec::with_capacity(grid.n_points());
    let mut q_b = Vec::with_capacity(grid.n_points());
    let mut q_ab = Vec::with_capacity(grid.n_points());
    for (&ma, &mb) in mags_a.iter().zip(&mags_b) {
        q_a.push(capacity_single(ma)?);
        q_b.push(capacity_single(mb)?);
        q_ab.push(capacity_two_qubit(ma, mb)?);
    }
    Ok(CapacityTrace {
        grid: grid.clone(),
        q_a,
        q_b,
        q_ab,
    })
}
