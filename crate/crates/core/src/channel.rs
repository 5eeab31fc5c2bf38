//! Channels in Kraus form, their Choi matrices, classification and affine
//! representation on coherence vectors.
//!
//! A [`Channel`] normally carries Kraus operators only. To represent the
//! non-completely-positive endpoints of some parametrized families it may
//! also carry "anti-Kraus" operators B_b, giving the Hermiticity-preserving
//! map ρ ↦ Σ A_a ρ A_a† − Σ B_b ρ B_b†. Every CP channel built by this crate
//! has no anti-Kraus terms.

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use crate::basis::{coefficients, CoherenceVector, HermitianBasis};
use crate::linalg::{devectorize, hermitian_eig, kron, CMatrix};
use crate::{Error, Result};

/// Default absolute tolerance for classification.
pub const CLASSIFY_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Channel {
    d: usize,
    kraus: Vec<CMatrix>,
    anti_kraus: Vec<CMatrix>,
    label: String,
}

impl Channel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        Self::signed(kraus, Vec::new())
    }

    /// Map Σ A ρ A† − Σ B ρ B†.
    pub fn signed(kraus: Vec<CMatrix>, anti_kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus.first().or(anti_kraus.first()).ok_or(Error::EmptyKraus)?;
        let d = first.square_dim()?;
        for a in kraus.iter().chain(&anti_kraus) {
            let n = a.square_dim()?;
            if n != d {
                return Err(Error::DimensionMismatch { expected: d, found: n });
            }
        }
        Ok(Self { d, kraus, anti_kraus, label: String::new() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn anti_kraus(&self) -> &[CMatrix] {
        &self.anti_kraus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// E_I(ρ) = ρ.
    pub fn identity(d: usize) -> Self {
        Self { d, kraus: alloc::vec![CMatrix::identity(d)], anti_kraus: Vec::new(), label: "identity".into() }
    }

    /// E_0(ρ) = tr(ρ) I / d, Kraus operators |i⟩⟨j|/√d.
    pub fn completely_mixing(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let kraus =
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| CMatrix::unit(d, i, j).scale_re(s)).collect();
        Self { d, kraus, anti_kraus: Vec::new(), label: "mixing".into() }
    }

    /// E_T(ρ) = (tr(ρ) I + ρᵀ)/(d+1) with Kraus operators
    /// (|i⟩⟨j| + |j⟩⟨i|)/√(2(d+1)) over all ordered pairs (i, j).
    pub fn transpose_channel(d: usize) -> Self {
        let s = 1.0 / (2.0 * (d as f64 + 1.0)).sqrt();
        let kraus = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| (&CMatrix::unit(d, i, j) + &CMatrix::unit(d, j, i)).scale_re(s))
            .collect();
        Self { d, kraus, anti_kraus: Vec::new(), label: "transpose".into() }
    }

    /// Splits a Hermitian Choi matrix into Kraus and anti-Kraus parts;
    /// eigenvalues with |λ| ≤ tol are dropped.
    pub fn from_choi_signed(j: &ChoiMatrix, tol: f64) -> Result<Self> {
        let eig = hermitian_eig(&j.matrix)?;
        let mut kraus = Vec::new();
        let mut anti = Vec::new();
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            if lambda.abs() <= tol {
                continue;
            }
            let a = devectorize(v, j.d)?.scale_re(lambda.abs().sqrt());
            if *lambda > 0.0 {
                kraus.push(a);
            } else {
                anti.push(a);
            }
        }
        if kraus.is_empty() && anti.is_empty() {
            kraus.push(CMatrix::zeros(j.d, j.d));
        }
        Self::signed(kraus, anti)
    }

    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let n = rho.square_dim()?;
        if n != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: n });
        }
        let mut out = CMatrix::zeros(self.d, self.d);
        for a in &self.kraus {
            out = &out + &(&(a * rho) * &a.adjoint());
        }
        for b in &self.anti_kraus {
            out = &out - &(&(b * rho) * &b.adjoint());
        }
        Ok(out)
    }

    /// Σ A†A − Σ B†B.
    pub fn kraus_gram(&self) -> CMatrix {
        let mut s = CMatrix::zeros(self.d, self.d);
        for a in &self.kraus {
            s = &s + &(&a.adjoint() * a);
        }
        for b in &self.anti_kraus {
            s = &s - &(&b.adjoint() * b);
        }
        s
    }

    /// Σ AA† − Σ BB†.
    pub fn kraus_cogram(&self) -> CMatrix {
        let mut s = CMatrix::zeros(self.d, self.d);
        for a in &self.kraus {
            s = &s + &(a * &a.adjoint());
        }
        for b in &self.anti_kraus {
            s = &s - &(b * &b.adjoint());
        }
        s
    }

    /// ‖Σ A†A − I‖ in operator norm.
    pub fn tp_deviation(&self) -> f64 {
        (&self.kraus_gram() - &CMatrix::identity(self.d)).operator_norm()
    }

    /// ‖Σ AA† − I‖ in operator norm.
    pub fn unital_deviation(&self) -> f64 {
        (&self.kraus_cogram() - &CMatrix::identity(self.d)).operator_norm()
    }
}

/// Unnormalized Choi matrix J = Σ_ij E(|i⟩⟨j|) ⊗ |i⟩⟨j|, tr J = d for TP maps.
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    pub d: usize,
    pub matrix: CMatrix,
}

impl ChoiMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let n = matrix.square_dim()?;
        let d = (n as f64).sqrt().round() as usize;
        if d * d != n {
            return Err(Error::DimensionMismatch { expected: d * d, found: n });
        }
        if !matrix.is_hermitian(crate::linalg::HERM_TOL) {
            return Err(Error::NotHermitian(matrix.hermiticity_error()));
        }
        Ok(Self { d, matrix })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eig(&self.matrix).map(|e| e.min()).unwrap_or(f64::NEG_INFINITY)
    }
}

pub fn choi(ch: &Channel) -> ChoiMatrix {
    let d = ch.d;
    let mut j = CMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for k in 0..d {
            let e = CMatrix::unit(d, i, k);
            let out = ch.apply(&e).expect("dimension checked");
            j = &j + &kron(&out, &e);
        }
    }
    ChoiMatrix { d, matrix: j }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub cp: bool,
    pub tp: bool,
    pub unital: bool,
    pub min_choi_eigenvalue: f64,
    pub tp_deviation: f64,
    pub unital_deviation: f64,
}

pub fn classify(ch: &Channel, tol: f64) -> Classification {
    let min_choi_eigenvalue = choi(ch).min_eigenvalue();
    let tp_deviation = ch.tp_deviation();
    let unital_deviation = ch.unital_deviation();
    Classification {
        cp: min_choi_eigenvalue >= -tol,
        tp: tp_deviation <= tol,
        unital: unital_deviation <= tol,
        min_choi_eigenvalue,
        tp_deviation,
        unital_deviation,
    }
}

/// Matrix Λ_μν = tr(Γ_μ† E(Γ_ν)) and its block form
/// [[Λ_00, row], [T, Λ̂]].
#[derive(Clone, Debug)]
pub struct AffineRep {
    pub d: usize,
    /// Row-major, (d²)×(d²).
    pub lambda_full: Vec<Vec<f64>>,
    /// Column block Λ_{i0}, i ≥ 1.
    pub t_vec: Vec<f64>,
    /// Λ_{ij}, i, j ≥ 1.
    pub lambda_block: Vec<Vec<f64>>,
}

impl AffineRep {
    pub fn lambda00(&self) -> f64 {
        self.lambda_full[0][0]
    }

    /// Euclidean norm of Λ_{0i}, i ≥ 1 (zero for trace-preserving maps).
    pub fn row0_norm(&self) -> f64 {
        self.lambda_full[0][1..].iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Euclidean norm of Λ_{i0}, i ≥ 1 (zero for unital maps).
    pub fn col0_norm(&self) -> f64 {
        self.t_vec.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub fn affine_rep(ch: &Channel, basis: &HermitianBasis) -> Result<AffineRep> {
    if basis.dim() != ch.d {
        return Err(Error::DimensionMismatch { expected: ch.d, found: basis.dim() });
    }
    let n = basis.len();
    let mut lambda_full = alloc::vec![alloc::vec![0.0; n]; n];
    for (nu, g) in basis.gammas().iter().enumerate() {
        let out = ch.apply(g)?;
        for (mu, x) in coefficients(&out, basis).into_iter().enumerate() {
            lambda_full[mu][nu] = x;
        }
    }
    let t_vec = (1..n).map(|i| lambda_full[i][0]).collect();
    let lambda_block = (1..n).map(|i| lambda_full[i][1..].to_vec()).collect();
    Ok(AffineRep { d: ch.d, lambda_full, t_vec, lambda_block })
}

pub fn apply_affine(ar: &AffineRep, v: &CoherenceVector) -> Result<CoherenceVector> {
    let n = ar.lambda_full.len();
    if v.components.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.components.len() });
    }
    let components = ar.lambda_full.iter().map(|row| row.iter().zip(&v.components).map(|(a, b)| a * b).sum()).collect();
    Ok(CoherenceVector { d: ar.d, components })
}

/// Equality as maps: ‖J_1 − J_2‖_F ≤ tol.
pub fn channels_equal(a: &Channel, b: &Channel, tol: f64) -> Result<bool> {
    Ok(choi_distance(a, b)? <= tol)
}

pub fn choi_distance(a: &Channel, b: &Channel) -> Result<f64> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch { expected: a.d, found: b.d });
    }
    Ok((&choi(a).matrix - &choi(b).matrix).frobenius_norm())
}

/// Canonical Kraus operators √λ_k · devec(v_k) from the eigenpairs of J.
pub fn kraus_from_choi(j: &ChoiMatrix, tol: f64) -> Result<Channel> {
    let eig = hermitian_eig(&j.matrix)?;
    if eig.min() < -tol {
        return Err(Error::NotCompletelyPositive(eig.min()));
    }
    let mut kraus = Vec::new();
    for (lambda, v) in eig.values.iter().zip(&eig.vectors).rev() {
        if *lambda > tol {
            kraus.push(devectorize(v, j.d)?.scale_re(lambda.sqrt()));
        }
    }
    if kraus.is_empty() {
        kraus.push(CMatrix::zeros(j.d, j.d));
    }
    Channel::new(kraus)
}

/// Σ_i w_i E_i realized by concatenating √w_i-scaled Kraus lists.
pub fn convex_combine(channels: &[Channel], weights: &[f64]) -> Result<Channel> {
    if channels.is_empty() || channels.len() != weights.len() {
        return Err(Error::InvalidWeights(alloc::format!("{} channels and {} weights", channels.len(), weights.len())));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidWeights("weights must be nonnegative".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidWeights(alloc::format!("weights sum to {total}")));
    }
    let d = channels[0].d;
    let mut kraus = Vec::new();
    let mut anti = Vec::new();
    for (ch, w) in channels.iter().zip(weights) {
        if ch.d != d {
            return Err(Error::DimensionMismatch { expected: d, found: ch.d });
        }
        let s = w.sqrt();
        kraus.extend(ch.kraus.iter().map(|a| a.scale_re(s)));
        anti.extend(ch.anti_kraus.iter().map(|a| a.scale_re(s)));
    }
    Channel::signed(kraus, anti)
}

/// B_a = Σ_b Ω_ab A_b. For unitary Ω the resulting list defines the same map.
pub fn remix_kraus(kraus: &[CMatrix], omega: &CMatrix) -> Result<Vec<CMatrix>> {
    if omega.cols() != kraus.len() {
        return Err(Error::DimensionMismatch { expected: kraus.len(), found: omega.cols() });
    }
    let d = kraus.first().map_or(0, CMatrix::rows);
    Ok((0..omega.rows())
        .map(|a| kraus.iter().enumerate().fold(CMatrix::zeros(d, d), |acc, (b, k)| &acc + &k.scale(omega[(a, b)])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{coherence_vector, gell_mann_basis};
    use crate::linalg::{re, vectorize};
    use crate::random::{random_density, random_matrix, random_unitary, rng};

    /// Choi matrix as Σ |A⟩⟩⟨⟨A| − Σ |B⟩⟩⟨⟨B| over vectorized Kraus operators.
    fn choi_from_vectorized(ch: &Channel) -> CMatrix {
        let n = ch.d * ch.d;
        let mut j = CMatrix::zeros(n, n);
        for (sign, ops) in [(1.0, &ch.kraus), (-1.0, &ch.anti_kraus)] {
            for a in ops.iter() {
                let v = vectorize(a).expect("square");
                j = &j + &CMatrix::outer(&v, &v).scale(re(sign));
            }
        }
        j
    }

    fn random_tp_channel(seed: u64, d: usize, n: usize) -> Channel {
        let mut r = rng(seed);
        let raw: Vec<CMatrix> = (0..n).map(|_| random_matrix(&mut r, d)).collect();
        let ch = Channel::new(raw.clone()).unwrap();
        // Normalize with S^{-1/2}, S = Σ A†A.
        let eig = hermitian_eig(&ch.kraus_gram()).unwrap();
        let inv_sqrt = eig.map_values(|l| re(1.0 / l.sqrt()));
        Channel::new(raw.iter().map(|a| a * &inv_sqrt).collect()).unwrap()
    }

    #[test]
    fn identity_and_mixing_apply() {
        let mut r = rng(1);
        let rho = random_density(&mut r, 3);
        assert!(Channel::identity(3).apply(&rho).unwrap().approx_eq(&rho, 1e-15));
        let out = Channel::completely_mixing(3).apply(&rho).unwrap();
        assert!(out.approx_eq(&CMatrix::identity(3).scale_re(1.0 / 3.0), 1e-14));
    }

    #[test]
    fn transpose_channel_on_coherence() {
        let out = Channel::transpose_channel(3).apply(&CMatrix::unit(3, 0, 1)).unwrap();
        assert!(out.approx_eq(&CMatrix::unit(3, 1, 0).scale_re(0.25), 1e-15));
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        assert!(Channel::identity(3).apply(&CMatrix::identity(2)).is_err());
        assert_eq!(Channel::new(Vec::new()).unwrap_err(), Error::EmptyKraus);
        assert!(Channel::new(alloc::vec![CMatrix::identity(2), CMatrix::identity(3)]).is_err());
    }

    #[test]
    fn choi_examples() {
        let j = choi(&Channel::identity(3));
        let e = hermitian_eig(&j.matrix).unwrap();
        assert!((e.max() - 3.0).abs() < 1e-12);
        assert!(e.values[..8].iter().all(|x| x.abs() < 1e-12));
        let j0 = choi(&Channel::completely_mixing(3));
        assert!(j0.matrix.approx_eq(&CMatrix::identity(9).scale_re(1.0 / 3.0), 1e-14));
    }

    #[test]
    fn choi_definition_matches_vectorized_form() {
        let ch = random_tp_channel(3, 3, 4);
        assert!(choi(&ch).matrix.approx_eq(&choi_from_vectorized(&ch), 1e-12));
        assert!((choi(&ch).matrix.trace().re - 3.0).abs() < 1e-12);
    }

    #[test]
    fn classify_identity() {
        let c = classify(&Channel::identity(3), CLASSIFY_TOL);
        assert!(c.cp && c.tp && c.unital);
    }

    #[test]
    fn classify_amplitude_damping_is_not_unital() {
        let g: f64 = 0.3;
        let a0 = CMatrix::from_real(2, &[1.0, 0.0, 0.0, (1.0 - g).sqrt()]);
        let a1 = CMatrix::from_real(2, &[0.0, g.sqrt(), 0.0, 0.0]);
        let c = classify(&Channel::new(alloc::vec![a0, a1]).unwrap(), CLASSIFY_TOL);
        assert!(c.cp && c.tp && !c.unital);
    }

    #[test]
    fn affine_of_identity_and_mixing() {
        let b = gell_mann_basis(3).unwrap();
        let ar = affine_rep(&Channel::identity(3), &b).unwrap();
        for (i, row) in ar.lambda_full.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!((x - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        let ar0 = affine_rep(&Channel::completely_mixing(3), &b).unwrap();
        assert!(ar0.t_vec.iter().all(|x| x.abs() < 1e-14));
        assert!(ar0.lambda_block.iter().flatten().all(|x| x.abs() < 1e-14));
        let v = coherence_vector(&random_density(&mut rng(4), 3), &b).unwrap();
        let out = apply_affine(&ar0, &v).unwrap();
        assert!((out.components[0] - 1.0 / 3.0_f64.sqrt()).abs() < 1e-14);
        assert!(out.components[1..].iter().all(|x| x.abs() < 1e-14));
        let same = apply_affine(&ar, &v).unwrap();
        assert!(same.components.iter().zip(&v.components).all(|(a, b)| (a - b).abs() < 1e-14));
    }

    #[test]
    fn affine_path_matches_kraus_path() {
        let b = gell_mann_basis(3).unwrap();
        let ch = random_tp_channel(9, 3, 3);
        let ar = affine_rep(&ch, &b).unwrap();
        assert!((ar.lambda00() - 1.0).abs() < 1e-12);
        assert!(ar.row0_norm() < 1e-12);
        assert!(ar.col0_norm() > 1e-3, "random channel is not unital");
        let mut r = rng(10);
        for _ in 0..20 {
            let rho = random_density(&mut r, 3);
            let kraus_path = coherence_vector(&ch.apply(&rho).unwrap(), &b).unwrap();
            let affine_path = apply_affine(&ar, &coherence_vector(&rho, &b).unwrap()).unwrap();
            for (x, y) in kraus_path.components.iter().zip(&affine_path.components) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn equality_under_unitary_mixing() {
        let ch = random_tp_channel(12, 3, 4);
        let u = random_unitary(&mut rng(13), 4);
        let mixed = Channel::new(remix_kraus(ch.kraus(), &u).unwrap()).unwrap();
        assert!(channels_equal(&ch, &mixed, 1e-10).unwrap());
        assert!(!channels_equal(&Channel::identity(3), &Channel::completely_mixing(3), 1e-6).unwrap());
    }

    #[test]
    fn kraus_from_choi_examples() {
        let id = kraus_from_choi(&choi(&Channel::identity(3)), 1e-10).unwrap();
        assert_eq!(id.kraus().len(), 1);
        let k = &id.kraus()[0];
        // Single Kraus operator equal to I up to the eigenvector phase convention.
        assert!(k.approx_eq(&CMatrix::identity(3), 1e-10));

        let mix = kraus_from_choi(&choi(&Channel::completely_mixing(3)), 1e-10).unwrap();
        assert_eq!(mix.kraus().len(), 9);
        assert!(channels_equal(&mix, &Channel::completely_mixing(3), 1e-10).unwrap());

        // The transpose map has Choi matrix SWAP with eigenvalue −1.
        let swap = CMatrix::from_fn(9, 9, |r, c| {
            let (i, j) = (r / 3, r % 3);
            let (k, l) = (c / 3, c % 3);
            re(if i == l && j == k { 1.0 } else { 0.0 })
        });
        let jt = ChoiMatrix::new(swap).unwrap();
        assert!((jt.min_eigenvalue() + 1.0).abs() < 1e-12);
        assert!(matches!(kraus_from_choi(&jt, 1e-10), Err(Error::NotCompletelyPositive(_))));
        let signed = Channel::from_choi_signed(&jt, 1e-10).unwrap();
        let rho = random_density(&mut rng(2), 3);
        assert!(signed.apply(&rho).unwrap().approx_eq(&rho.transpose(), 1e-12));
    }

    #[test]
    fn convex_combinations() {
        let ch = random_tp_channel(20, 3, 2);
        let twice = convex_combine(&[ch.clone(), ch.clone()], &[0.5, 0.5]).unwrap();
        assert!(channels_equal(&twice, &ch, 1e-12).unwrap());

        let w = 0.4;
        let dep = convex_combine(&[Channel::identity(3), Channel::completely_mixing(3)], &[1.0 - w, w]).unwrap();
        let ar = affine_rep(&dep, &gell_mann_basis(3).unwrap()).unwrap();
        for (i, row) in ar.lambda_block.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert!((x - if i == j { 1.0 - w } else { 0.0 }).abs() < 1e-12);
            }
        }

        assert!(convex_combine(&[ch.clone()], &[0.9]).is_err());
        assert!(convex_combine(&[ch.clone(), ch], &[1.5, -0.5]).is_err());
    }

    #[test]
    fn rotation_covariant_family_is_tp() {
        // α tr(ρ) I + β ρ + γ ρᵀ with αd + β + γ = 1 as a combination of
        // E_0, E_I and E_T: weights d(α−γ), β, γ(d+1).
        let d = 3.0;
        let (alpha, gamma) = (0.2, 0.1);
        let beta = 1.0 - alpha * d - gamma;
        let w = [d * (alpha - gamma), beta, gamma * (d + 1.0)];
        let ch =
            convex_combine(&[Channel::completely_mixing(3), Channel::identity(3), Channel::transpose_channel(3)], &w)
                .unwrap();
        let c = classify(&ch, CLASSIFY_TOL);
        assert!(c.cp && c.tp && c.unital);
        let rho = random_density(&mut rng(6), 3);
        let expected =
            &(&CMatrix::identity(3).scale_re(alpha) + &rho.scale_re(beta)) + &rho.transpose().scale_re(gamma);
        assert!(ch.apply(&rho).unwrap().approx_eq(&expected, 1e-12));
    }
}
