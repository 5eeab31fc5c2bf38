//! Seeded random matrices and states.

use alloc::vec::Vec;

use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{re, CMatrix, CVector, C64};

pub type DetRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DetRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Complex Ginibre matrix.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = random_matrix(rng, n);
    (&g + &g.adjoint()).scale_re(0.5)
}

/// Haar-distributed pure state.
pub fn random_pure<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CVector {
    CVector::from_vec((0..d).map(|_| gaussian(rng)).collect()).normalized()
}

/// Full-rank density matrix G G† / tr(G G†).
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = random_matrix(rng, d);
    let p = &g * &g.adjoint();
    let t = p.trace().re;
    p.scale_re(1.0 / t)
}

/// Haar unitary via Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let mut cols: Vec<CVector> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = CVector::from_vec((0..n).map(|_| gaussian(rng)).collect());
        for q in &cols {
            let p = q.inner(&v);
            v.axpy(-p, q);
        }
        let nv = v.norm();
        if nv > 1e-8 {
            cols.push(v.scale(re(1.0 / nv)));
        }
    }
    CMatrix::from_columns(&cols)
}

/// Uniform probability vector on the simplex.
pub fn random_probabilities<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -Float::ln(1.0 - rng.gen::<f64>())).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
