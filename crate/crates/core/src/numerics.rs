//! Scalar entropy functions and small dense Hermitian linear algebra.
//!
//! Everything downstream — channel capacities, trace-distance dynamics,
//! state tomography of the encoded messages — reduces to a handful of
//! primitives on 2×2 and 4×4 complex Hermitian matrices: the binary entropy,
//! an eigensolver, the trace distance, and a scan that totals the rises of a
//! sampled time series.  They live here with no dependencies on the physics
//! modules so they can be validated in isolation.
//!
//! The eigensolver is a cyclic Jacobi iteration specialised to complex
//! Hermitian input.  At dimension ≤ 4 it is exactly as fast as anything
//! fancier, has no convergence surprises (off-diagonal mass is strictly
//! non-increasing), and keeps this crate free of a large linear-algebra
//! dependency for what is ultimately a 4×4 problem.

use num_complex::Complex64;
use thiserror::Error;

/// Largest tolerated deviation `|a_ij - conj(a_ji)|` when accepting a matrix
/// as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Tolerated deviation of a density matrix trace from one.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by this much before
/// the matrix is rejected as non-positive.
pub const PSD_EIGENVALUE_SLACK: f64 = 1e-10;

/// Default threshold ε separating a genuine rise of a sampled series from
/// floating-point ripple: increments are counted only when they exceed it.
pub const DEFAULT_INCREASE_THRESHOLD: f64 = 1e-9;

/// Jacobi sweep termination: stop once the off-diagonal Frobenius norm drops
/// below this (relative to the matrix scale).
const JACOBI_OFFDIAG_TOL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps; dimensions ≤ 4 converge in a handful.
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    UnsupportedDimension(usize),
    #[error("entry count {got} does not match a {dim}x{dim} matrix")]
    EntryCountMismatch { dim: usize, got: usize },
    #[error("matrix is not Hermitian (largest asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("trace {0} is not 1 within {DENSITY_TRACE_TOL:.0e}")]
    NotUnitTrace(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),
    #[error("series scan needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("series scan got {times} time samples but {values} values")]
    LengthMismatch { times: usize, values: usize },
    #[error("time samples must be strictly increasing")]
    NonIncreasingTimes,
}

/// Binary (Shannon) entropy `H2(p) = -p log2 p - (1-p) log2 (1-p)`.
///
/// Accepts `p` within `1e-12` of `[0, 1]` and clamps before evaluating; the
/// endpoints return exactly zero.  The result is clamped to `[0, 1]` so the
/// analytic range survives rounding near the maximum at `p = 1/2`.
pub fn binary_entropy(p: f64) -> Result<f64, NumericsError> {
    if !p.is_finite() || !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(NumericsError::ProbabilityOutOfRange(p));
    }
    let p = p.clamp(0.0, 1.0);
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    let q = 1.0 - p;
    Ok((-p * p.log2() - q * q.log2()).clamp(0.0, 1.0))
}

/// Dense complex Hermitian matrix of dimension 2 or 4, row-major storage.
///
/// Construction validates Hermiticity to [`HERMITICITY_TOL`]; mutation goes
/// through [`HermitianMatrix::set_pair`], which writes an entry and its
/// conjugate mirror together, so a value of this type is Hermitian by
/// construction for its whole lifetime.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validate and wrap a row-major entry buffer.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self, NumericsError> {
        if dim != 2 && dim != 4 {
            return Err(NumericsError::UnsupportedDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(NumericsError::EntryCountMismatch {
                dim,
                got: entries.len(),
            });
        }
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let dev = (entries[i * dim + j] - entries[j * dim + i].conj()).norm();
                worst = worst.max(dev);
            }
        }
        if worst > HERMITICITY_TOL {
            return Err(NumericsError::NotHermitian(worst));
        }
        Ok(Self { dim, entries })
    }

    /// All-zero matrix (trivially Hermitian).
    pub fn zero(dim: usize) -> Result<Self, NumericsError> {
        if dim != 2 && dim != 4 {
            return Err(NumericsError::UnsupportedDimension(dim));
        }
        Ok(Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self, NumericsError> {
        let mut m = Self::zero(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// Maximally mixed state `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Result<Self, NumericsError> {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// Row-major view of the raw entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Write entry `(i, j)` and mirror `conj` into `(j, i)`.
    ///
    /// On the diagonal the imaginary part is discarded (a Hermitian diagonal
    /// is real by definition).
    pub fn set_pair(&mut self, i: usize, j: usize, value: Complex64) {
        if i == j {
            self.entries[i * self.dim + i] = Complex64::new(value.re, 0.0);
        } else {
            self.entries[i * self.dim + j] = value;
            self.entries[j * self.dim + i] = value.conj();
        }
    }

    /// Trace; real because the diagonal of a Hermitian matrix is.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    /// Entry-wise difference.
    pub fn sub(&self, other: &Self) -> Result<Self, NumericsError> {
        if self.dim != other.dim {
            return Err(NumericsError::DimensionMismatch(self.dim, other.dim));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            dim: self.dim,
            entries,
        })
    }

    /// Check the density-matrix contract: unit trace within
    /// [`DENSITY_TRACE_TOL`] and eigenvalues above `-`[`PSD_EIGENVALUE_SLACK`].
    pub fn validate_density(&self) -> Result<(), NumericsError> {
        let tr = self.trace();
        if (tr - 1.0).abs() > DENSITY_TRACE_TOL {
            return Err(NumericsError::NotUnitTrace(tr));
        }
        let eigs = hermitian_eigenvalues(self);
        let min = *eigs.last().expect("dim >= 2");
        if min < -PSD_EIGENVALUE_SLACK {
            return Err(NumericsError::NotPositiveSemidefinite(min));
        }
        Ok(())
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
///
/// Cyclic complex Jacobi iteration: each sweep annihilates every
/// off-diagonal pivot once with a unitary plane rotation; sweeps repeat
/// until the off-diagonal Frobenius norm falls below `1e-14` relative to
/// the matrix scale (hard cap 100 sweeps — never reached at these sizes).
/// The eigenvalue sum matches the trace to working precision.
pub fn hermitian_eigenvalues(m: &HermitianMatrix) -> Vec<f64> {
    let n = m.dim;
    let mut a = m.entries.clone();
    let scale = m.frobenius_norm().max(1.0);
    let stop = JACOBI_OFFDIAG_TOL * scale;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    s += 2.0 * a[p * n + q].norm_sqr();
                }
            }
            s.sqrt()
        };
        if off <= stop {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut a, n, p, q);
            }
        }
    }

    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigs.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    eigs
}

/// One unitary plane rotation zeroing the pivot `a[p][q]` of a Hermitian
/// matrix in place (`A ← U† A U`).
///
/// With `a_pq = r e^{iφ}` the rotation mixes rows/columns `p, q` through
/// `U[pp] = c`, `U[pq] = -s e^{iφ}`, `U[qp] = s e^{-iφ}`, `U[qq] = c`,
/// where `t = tan θ` is the stable root of `t² - 2τt - 1 = 0`,
/// `τ = (a_qq - a_pp) / 2r`.
fn jacobi_rotate(a: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * r);
    // Smaller-magnitude root of t² - 2τt - 1 = 0, in the cancellation-free
    // form: t = τ - sign(τ)·√(1+τ²) = -sign(τ) / (|τ| + √(1+τ²)).
    let t = if tau >= 0.0 {
        -1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp + s * phase.conj() * akq;
        let new_kq = -s * phase * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp.conj();
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq.conj();
    }

    let shift = 2.0 * r * s * c;
    a[p * n + p] = Complex64::new(c * c * app + shift + s * s * aqq, 0.0);
    a[q * n + q] = Complex64::new(s * s * app - shift + c * c * aqq, 0.0);
    a[p * n + q] = Complex64::new(0.0, 0.0);
    a[q * n + p] = Complex64::new(0.0, 0.0);
}

/// Eigensolve of the difference without density validation; shared by the
/// public distance and the per-grid-point dynamics loop (whose inputs stay
/// valid under the dephasing map once the initial states are checked).
pub(crate) fn trace_distance_unchecked(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
) -> Result<f64, NumericsError> {
    let diff = rho1.sub(rho2)?;
    let eigs = hermitian_eigenvalues(&diff);
    Ok(0.5 * eigs.iter().map(|e| e.abs()).sum::<f64>())
}

/// Trace distance `D(ρ1, ρ2) = ½ Σ |eig(ρ1 - ρ2)|` between two density
/// matrices of equal dimension.
///
/// Both inputs are validated as density matrices (unit trace, positive
/// semidefinite within slack).  The result lies in `[0, 1]`: 0 for equal
/// states, 1 for orthogonal ones.
pub fn trace_distance(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
) -> Result<f64, NumericsError> {
    rho1.validate_density()?;
    rho2.validate_density()?;
    trace_distance_unchecked(rho1, rho2)
}

/// Optimal single-shot discrimination probability `½ (1 + D(ρ1, ρ2))` for
/// two equiprobable states.  Ranges from ½ (indistinguishable) to 1
/// (orthogonal).
pub fn distinguish_probability(
    rho1: &HermitianMatrix,
    rho2: &HermitianMatrix,
) -> Result<f64, NumericsError> {
    Ok(0.5 * (1.0 + trace_distance(rho1, rho2)?))
}

/// Result of scanning a sampled series for rises: the summed increments and
/// the maximal contiguous time intervals over which they occurred.
#[derive(Debug, Clone, PartialEq)]
pub struct IncreaseScan {
    /// Sum of all increments `f(t_{i+1}) - f(t_i)` exceeding the threshold.
    pub total: f64,
    /// `(t_start, t_end)` of each maximal run of qualifying increments.
    pub intervals: Vec<(f64, f64)>,
}

/// Total the rises of a sampled series.
///
/// An increment counts when it exceeds `threshold` (use
/// [`DEFAULT_INCREASE_THRESHOLD`] to ignore floating-point ripple);
/// consecutive qualifying increments merge into one reported interval.
/// A monotone non-increasing series yields a total of exactly `0.0` and no
/// intervals.
pub fn positive_increase_sum(
    times: &[f64],
    values: &[f64],
    threshold: f64,
) -> Result<IncreaseScan, NumericsError> {
    if times.len() != values.len() {
        return Err(NumericsError::LengthMismatch {
            times: times.len(),
            values: values.len(),
        });
    }
    if values.len() < 2 {
        return Err(NumericsError::TooFewSamples(values.len()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(NumericsError::NonIncreasingTimes);
    }

    let mut total = 0.0;
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut run_start: Option<f64> = None;
    for i in 0..values.len() - 1 {
        let step = values[i + 1] - values[i];
        if step > threshold {
            total += step;
            if run_start.is_none() {
                run_start = Some(times[i]);
            }
        } else if let Some(start) = run_start.take() {
            intervals.push((start, times[i]));
        }
    }
    if let Some(start) = run_start {
        intervals.push((start, *times.last().expect("len >= 2")));
    }
    Ok(IncreaseScan { total, intervals })
}
