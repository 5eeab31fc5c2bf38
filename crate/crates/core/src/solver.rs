//! Kraus multiplets from the covariance and symmetry equations.
//!
//! For a multiplet A_1 … A_k transforming under an irrep Ω the finite-group
//! covariance equation D2(g)⁻¹ A_a D1(g) = Σ_b Ω_ab(g) A_b is linear in the
//! stacked vector (vec A_1, …, vec A_k). Stacking it over the generators and
//! taking the null space gives one vector per copy of Ω in D1 ⊗ conj(D2),
//! so every null vector is a whole multiplet. The Lie-algebra form
//! A_a D1(T) − D2(T) A_a = Σ_b Ω(T)_ab A_b and the symmetry equation
//! A_a D(g) = Σ_b Ω_ab(g) A_b are handled the same way.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use crate::channel::Channel;
use crate::group::{multiplicity, FiniteGroupRep, IrrepLabel, LieAlgebraRep, Rep};
use crate::linalg::{devectorize, expm_i_hermitian, kron, null_space, re, CMatrix, CVector, C64, NULL_TOL};
use crate::random::{random_density, rng};
use crate::{Error, Result};

/// All copies of one irrep Ω among the Kraus operators.
#[derive(Clone, Debug)]
pub struct IntertwinerSolution {
    pub omega: IrrepLabel,
    pub omega_dim: usize,
    pub multiplicity: usize,
    /// `multiplets[i][a]` is A_a of the i-th copy. Each multiplet has
    /// Σ_a ‖A_a‖² = 1 and distinct multiplets are orthogonal.
    pub multiplets: Vec<Vec<CMatrix>>,
    /// Largest entry of the stacked equation applied to any solution.
    pub residual: f64,
}

impl IntertwinerSolution {
    pub fn is_empty(&self) -> bool {
        self.multiplicity == 0
    }

    /// Kraus list Σ_i c_i · multiplet_i, again a solution of the equation.
    pub fn combine(&self, coeffs: &[C64]) -> Result<Vec<CMatrix>> {
        if coeffs.len() != self.multiplicity || self.multiplicity == 0 {
            return Err(Error::DimensionMismatch { expected: self.multiplicity, found: coeffs.len() });
        }
        let d = self.multiplets[0][0].rows();
        Ok((0..self.omega_dim)
            .map(|a| {
                self.multiplets.iter().zip(coeffs).fold(CMatrix::zeros(d, d), |acc, (m, c)| &acc + &m[a].scale(*c))
            })
            .collect())
    }

    /// The i-th multiplet scaled to a trace-preserving channel.
    pub fn channel(&self, i: usize) -> Result<Channel> {
        let m = self.multiplets.get(i).ok_or(Error::IndexOutOfRange { index: i, dim: self.multiplicity })?;
        normalize_tp(m)
    }
}

/// Solves the stacked system with one d²×d² block operator per generator:
/// block (a, b) = δ_ab·ops[g] − Ω_ab(g)·I.
fn solve_stacked(d: usize, ops: &[CMatrix], omegas: &[CMatrix], omega: IrrepLabel) -> Result<IntertwinerSolution> {
    let k = omegas.first().map_or(1, CMatrix::rows);
    let n = d * d;
    let mut m = CMatrix::zeros(ops.len() * k * n, k * n);
    for (g, (op, om)) in ops.iter().zip(omegas).enumerate() {
        let base = g * k * n;
        for a in 0..k {
            for b in 0..k {
                let w = om[(a, b)];
                for r in 0..n {
                    for c in 0..n {
                        let mut v = if a == b { op[(r, c)] } else { re(0.0) };
                        if r == c {
                            v -= w;
                        }
                        m[(base + a * n + r, b * n + c)] = v;
                    }
                }
            }
        }
    }
    let null = null_space(&m, NULL_TOL);
    let mut residual: f64 = 0.0;
    let mut multiplets = Vec::with_capacity(null.len());
    for v in &null {
        residual = residual.max(m.mul_vec(v).as_slice().iter().map(|x| x.norm()).fold(0.0, f64::max));
        let mut multiplet = Vec::with_capacity(k);
        for a in 0..k {
            let part = CVector::from_vec(v.as_slice()[a * n..(a + 1) * n].to_vec());
            multiplet.push(devectorize(&part, d)?);
        }
        multiplets.push(multiplet);
    }
    Ok(IntertwinerSolution { omega, omega_dim: k, multiplicity: multiplets.len(), multiplets, residual })
}

fn endo_dim(d1: usize, d2: usize) -> Result<usize> {
    if d1 != d2 {
        return Err(Error::DimensionMismatch { expected: d1, found: d2 });
    }
    Ok(d1)
}

/// D2(g)⁻¹ A_a D1(g) = Σ_b Ω_ab(g) A_b for all g.
pub fn solve_intertwiners_finite(
    d1: &FiniteGroupRep,
    d2: &FiniteGroupRep,
    omega: &FiniteGroupRep,
) -> Result<IntertwinerSolution> {
    d1.check_same_group(d2)?;
    d1.check_same_group(omega)?;
    let d = endo_dim(d1.dim(), d2.dim())?;
    let ops: Vec<CMatrix> =
        d1.generators().iter().zip(d2.generators()).map(|(g1, g2)| kron(&g2.adjoint(), &g1.transpose())).collect();
    solve_stacked(d, &ops, omega.generators(), omega.label())
}

/// A_a D1(T) − D2(T) A_a = Σ_b Ω(T)_ab A_b for all generators T.
pub fn solve_intertwiners_lie(
    d1: &LieAlgebraRep,
    d2: &LieAlgebraRep,
    omega: &LieAlgebraRep,
) -> Result<IntertwinerSolution> {
    d1.check_same_algebra(d2)?;
    d1.check_same_algebra(omega)?;
    let d = endo_dim(d1.dim(), d2.dim())?;
    let id = CMatrix::identity(d);
    let ops: Vec<CMatrix> = d1
        .generators()
        .iter()
        .zip(d2.generators())
        .map(|(t1, t2)| &kron(&id, &t1.transpose()) - &kron(t2, &id))
        .collect();
    solve_stacked(d, &ops, omega.generators(), omega.label())
}

/// A_a D(g) = Σ_b Ω_ab(g) A_b for all g.
pub fn solve_symmetric_finite(d: &FiniteGroupRep, omega: &FiniteGroupRep) -> Result<IntertwinerSolution> {
    d.check_same_group(omega)?;
    let id = CMatrix::identity(d.dim());
    let ops: Vec<CMatrix> = d.generators().iter().map(|g| kron(&id, &g.transpose())).collect();
    solve_stacked(d.dim(), &ops, omega.generators(), omega.label())
}

/// A_a D(T) = Σ_b Ω(T)_ab A_b for all generators T.
pub fn solve_symmetric_lie(d: &LieAlgebraRep, omega: &LieAlgebraRep) -> Result<IntertwinerSolution> {
    d.check_same_algebra(omega)?;
    let id = CMatrix::identity(d.dim());
    let ops: Vec<CMatrix> = d.generators().iter().map(|t| kron(&id, &t.transpose())).collect();
    solve_stacked(d.dim(), &ops, omega.generators(), omega.label())
}

/// Dispatches to the finite or Lie solver.
pub fn solve_intertwiners(d1: Rep<'_>, d2: Rep<'_>, omega: Rep<'_>) -> Result<IntertwinerSolution> {
    match (d1, d2, omega) {
        (Rep::Finite(a), Rep::Finite(b), Rep::Finite(o)) => solve_intertwiners_finite(a, b, o),
        (Rep::Lie(a), Rep::Lie(b), Rep::Lie(o)) => solve_intertwiners_lie(a, b, o),
        _ => Err(Error::GroupMismatch("finite and Lie representations mixed".into())),
    }
}

pub fn solve_symmetric(d: Rep<'_>, omega: Rep<'_>) -> Result<IntertwinerSolution> {
    match (d, omega) {
        (Rep::Finite(a), Rep::Finite(o)) => solve_symmetric_finite(a, o),
        (Rep::Lie(a), Rep::Lie(o)) => solve_symmetric_lie(a, o),
        _ => Err(Error::GroupMismatch("finite and Lie representations mixed".into())),
    }
}

/// Multiplicity predicted by characters or weights, for comparison with
/// the null-space dimension.
pub fn predicted_multiplicity(d1: Rep<'_>, d2: Rep<'_>, omega: Rep<'_>) -> Result<usize> {
    let product = crate::group::intertwiner_product(d1, d2)?;
    multiplicity(omega, product.as_rep())
}

/// Rescales Kraus operators with Σ A†A = c·I (c > 0) to a TP channel.
pub fn normalize_tp(kraus: &[CMatrix]) -> Result<Channel> {
    let first = kraus.first().ok_or(Error::EmptyKraus)?;
    let d = first.square_dim()?;
    let s = kraus.iter().fold(CMatrix::zeros(d, d), |acc, a| &acc + &(&a.adjoint() * a));
    let c = s.trace().re / d as f64;
    if c <= 0.0 {
        return Err(Error::NotProportionalToIdentity(s.max_abs()));
    }
    let dev = (&s - &CMatrix::identity(d).scale_re(c)).max_abs();
    if dev > 1e-8 * c.max(1.0) {
        return Err(Error::NotProportionalToIdentity(dev));
    }
    let f = 1.0 / c.sqrt();
    Channel::new(kraus.iter().map(|a| a.scale_re(f)).collect())
}

/// Scale factor c in Σ A†A = c·I, without the proportionality check.
pub fn kraus_scale(kraus: &[CMatrix]) -> f64 {
    let d = kraus.first().map_or(1, CMatrix::rows);
    kraus.iter().map(|a| a.hs_inner(a).re).sum::<f64>() / d as f64
}

/// Outcome of a covariance or symmetry test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckReport {
    pub holds: bool,
    pub max_residual: f64,
}

pub const CHECK_STATES: usize = 25;
pub const LIE_ANGLES: [f64; 3] = [0.3, 0.7, 1.1];

fn test_states(d: usize, seed: u64) -> Vec<CMatrix> {
    let mut r = rng(seed);
    (0..CHECK_STATES).map(|_| random_density(&mut r, d)).collect()
}

/// Unitary pairs (D1(g), D2(g)) at which a check is evaluated: generators
/// for finite groups, exp(iθT) at fixed angles for Lie algebras.
pub fn sample_pairs(d1: Rep<'_>, d2: Rep<'_>) -> Result<Vec<(CMatrix, CMatrix)>> {
    match (d1, d2) {
        (Rep::Finite(a), Rep::Finite(b)) => {
            a.check_same_group(b)?;
            Ok(a.generators().iter().cloned().zip(b.generators().iter().cloned()).collect())
        }
        (Rep::Lie(a), Rep::Lie(b)) => {
            a.check_same_algebra(b)?;
            let mut out = Vec::new();
            for (t1, t2) in a.generators().iter().zip(b.generators()) {
                for theta in LIE_ANGLES {
                    out.push((expm_i_hermitian(t1, theta)?, expm_i_hermitian(t2, theta)?));
                }
            }
            Ok(out)
        }
        _ => Err(Error::GroupMismatch("finite and Lie representations mixed".into())),
    }
}

/// max ‖D2 E(ρ) D2⁻¹ − E(D1 ρ D1⁻¹)‖_F over the supplied pairs and 25
/// random states.
pub fn check_covariance_pairs(ch: &Channel, pairs: &[(CMatrix, CMatrix)], tol: f64, seed: u64) -> Result<CheckReport> {
    let d = ch.dim();
    let mut worst: f64 = 0.0;
    for rho in test_states(d, seed) {
        let out = ch.apply(&rho)?;
        for (u1, u2) in pairs {
            if u1.rows() != d || u2.rows() != d {
                return Err(Error::DimensionMismatch { expected: d, found: u1.rows().max(u2.rows()) });
            }
            let lhs = &(u2 * &out) * &u2.adjoint();
            let rhs = ch.apply(&(&(u1 * &rho) * &u1.adjoint()))?;
            worst = worst.max((&lhs - &rhs).frobenius_norm());
        }
    }
    Ok(CheckReport { holds: worst <= tol, max_residual: worst })
}

pub fn check_covariance(ch: &Channel, d1: Rep<'_>, d2: Rep<'_>, tol: f64, seed: u64) -> Result<CheckReport> {
    check_covariance_pairs(ch, &sample_pairs(d1, d2)?, tol, seed)
}

/// max ‖E(D ρ D⁻¹) − E(ρ)‖_F.
pub fn check_symmetry(ch: &Channel, d: Rep<'_>, tol: f64, seed: u64) -> Result<CheckReport> {
    let unitaries: Vec<CMatrix> = sample_pairs(d, d)?.into_iter().map(|(u, _)| u).collect();
    check_symmetry_unitaries(ch, &unitaries, tol, seed)
}

pub fn check_symmetry_unitaries(ch: &Channel, unitaries: &[CMatrix], tol: f64, seed: u64) -> Result<CheckReport> {
    let d = ch.dim();
    let mut worst: f64 = 0.0;
    for rho in test_states(d, seed) {
        let out = ch.apply(&rho)?;
        for u in unitaries {
            if u.rows() != d {
                return Err(Error::DimensionMismatch { expected: d, found: u.rows() });
            }
            let moved = ch.apply(&(&(u * &rho) * &u.adjoint()))?;
            worst = worst.max((&moved - &out).frobenius_norm());
        }
    }
    Ok(CheckReport { holds: worst <= tol, max_residual: worst })
}
