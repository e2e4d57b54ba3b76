//! Shared helpers for the integration suites: seeded random states and
//! unitaries, matrix conjugation, and the Bell projectors.

#![allow(dead_code)]
// Index-symmetric loops read better than iterator chains in matrix code.
#![allow(clippy::needless_range_loop)]

use dephasim::numerics::HermitianMatrix;
use dephasim::rng::CounterRng;
use num_complex::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Random full-rank density matrix: `ρ = G G† / tr(G G†)` with Gaussian
/// complex entries in `G`.
pub fn random_density(rng: &mut CounterRng) -> HermitianMatrix {
    let mut g = [[Complex64::new(0.0, 0.0); 4]; 4];
    for row in g.iter_mut() {
        for entry in row.iter_mut() {
            *entry = Complex64::new(rng.next_normal(), rng.next_normal());
        }
    }
    let mut product = [[Complex64::new(0.0, 0.0); 4]; 4];
    let mut trace = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let mut sum = Complex64::new(0.0, 0.0);
            for (gi, gj) in g[i].iter().zip(&g[j]) {
                sum += gi * gj.conj();
            }
            product[i][j] = sum;
        }
        trace += product[i][i].re;
    }
    let mut rho = HermitianMatrix::zero(4).expect("dim 4");
    for i in 0..4 {
        for j in i..4 {
            rho.set_pair(i, j, product[i][j] / trace);
        }
    }
    rho
}

/// Random 4×4 unitary: a product of complex plane rotations over every
/// index pair, with random angles and phases, times a random diagonal
/// phase.
pub fn random_unitary(rng: &mut CounterRng) -> [[Complex64; 4]; 4] {
    let mut u = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (i, row) in u.iter_mut().enumerate() {
        row[i] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * rng.next_f64());
    }
    for p in 0..4 {
        for q in (p + 1)..4 {
            let theta = std::f64::consts::PI * rng.next_f64();
            let phase = 2.0 * std::f64::consts::PI * rng.next_f64();
            let (s, cth) = theta.sin_cos();
            let e = Complex64::from_polar(1.0, phase);
            // Left-multiply by the rotation acting on rows p and q.
            for col in 0..4 {
                let up = u[p][col];
                let uq = u[q][col];
                u[p][col] = cth * up - s * e * uq;
                u[q][col] = s * e.conj() * up + cth * uq;
            }
        }
    }
    u
}

/// `U ρ U†`.
pub fn conjugate(rho: &HermitianMatrix, u: &[[Complex64; 4]; 4]) -> HermitianMatrix {
    let mut rotated = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..4 {
                for l in 0..4 {
                    sum += u[i][k] * rho.entry(k, l) * u[j][l].conj();
                }
            }
            rotated[i][j] = sum;
        }
    }
    let mut out = HermitianMatrix::zero(4).expect("dim 4");
    for i in 0..4 {
        for j in i..4 {
            out.set_pair(i, j, rotated[i][j]);
        }
    }
    out
}

/// The four Bell projectors in decoding order `Φ⁺, Ψ⁺, Ψ⁻, Φ⁻`.
pub fn bell_projectors() -> [HermitianMatrix; 4] {
    let build = |p: usize, q: usize, sign: f64| {
        let mut m = HermitianMatrix::zero(4).expect("dim 4");
        m.set_pair(p, p, c(0.5, 0.0));
        m.set_pair(q, q, c(0.5, 0.0));
        m.set_pair(p, q, c(sign * 0.5, 0.0));
        m
    };
    [
        build(0, 3, 1.0),
        build(1, 2, 1.0),
        build(1, 2, -1.0),
        build(0, 3, -1.0),
    ]
}

/// `tr(A B)` for Hermitian `A`, `B` (real by symmetry).
pub fn trace_product(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            sum += (a.entry(i, j) * b.entry(j, i)).re;
        }
    }
    sum
}
