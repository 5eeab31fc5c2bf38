//! Orthonormal Hermitian operator bases and coherence vectors.
//!
//! The basis ordering is fixed and is part of the affine-representation
//! layout: Γ_0 = I/√d, then symmetric pairs (i<j) in lexicographic order,
//! then antisymmetric pairs in the same order, then the d−1 diagonal
//! generators.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use crate::linalg::{c, hermitian_eig, re, CMatrix, HERM_TOL};
use crate::{Error, Result};

/// Γ_0 … Γ_{d²−1}, orthonormal under tr(Γ_μ† Γ_ν).
#[derive(Clone, Debug)]
pub struct HermitianBasis {
    d: usize,
    gammas: Vec<CMatrix>,
}

impl HermitianBasis {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn gammas(&self) -> &[CMatrix] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Expansion coefficients ρ_μ = tr(Γ_μ† ρ).
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceVector {
    pub d: usize,
    pub components: Vec<f64>,
}

impl CoherenceVector {
    /// Σ_{i≥1} ρ_i², the squared length of the traceless part.
    pub fn polarization_norm_sqr(&self) -> f64 {
        self.components.iter().skip(1).map(|x| x * x).sum()
    }
}

/// Generalized Gell-Mann basis normalized to tr(Γ_μ Γ_ν) = δ_μν.
pub fn gell_mann_basis(d: usize) -> Result<HermitianBasis> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let s = 1.0 / 2.0_f64.sqrt();
    let mut gammas = Vec::with_capacity(d * d);
    gammas.push(CMatrix::identity(d).scale_re(1.0 / (d as f64).sqrt()));
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = CMatrix::zeros(d, d);
            m[(i, j)] = re(s);
            m[(j, i)] = re(s);
            gammas.push(m);
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            let mut m = CMatrix::zeros(d, d);
            m[(i, j)] = c(0.0, -s);
            m[(j, i)] = c(0.0, s);
            gammas.push(m);
        }
    }
    for l in 1..d {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(d, d);
        for k in 0..l {
            m[(k, k)] = re(norm);
        }
        m[(l, l)] = re(-(l as f64) * norm);
        gammas.push(m);
    }
    Ok(HermitianBasis { d, gammas })
}

pub fn coherence_vector(rho: &CMatrix, basis: &HermitianBasis) -> Result<CoherenceVector> {
    let d = rho.square_dim()?;
    if d != basis.d {
        return Err(Error::DimensionMismatch { expected: basis.d, found: d });
    }
    if !rho.is_hermitian(HERM_TOL) {
        return Err(Error::NotHermitian(rho.hermiticity_error()));
    }
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnitTrace(tr));
    }
    Ok(CoherenceVector { d, components: coefficients(rho, basis) })
}

/// Coefficients of an arbitrary Hermitian operator (no trace requirement).
pub(crate) fn coefficients(op: &CMatrix, basis: &HermitianBasis) -> Vec<f64> {
    basis.gammas.iter().map(|g| g.hs_inner(op).re).collect()
}

/// Result of rebuilding an operator from a coherence vector.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub matrix: CMatrix,
    pub min_eigenvalue: f64,
    /// Set when the operator is not positive semidefinite (below −1e-10);
    /// the ball of coherence vectors is larger than the state space.
    pub negative_eigenvalue_warning: bool,
}

pub fn density_from_coherence(v: &CoherenceVector, basis: &HermitianBasis) -> Result<Reconstruction> {
    if v.d != basis.d || v.components.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: v.components.len() });
    }
    let mut m = CMatrix::zeros(v.d, v.d);
    for (x, g) in v.components.iter().zip(&basis.gammas) {
        m = &m + &g.scale_re(*x);
    }
    let min_eigenvalue = hermitian_eig(&m)?.min();
    Ok(Reconstruction { matrix: m, min_eigenvalue, negative_eigenvalue_warning: min_eigenvalue < -1e-10 })
}
