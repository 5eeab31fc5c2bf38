//! Entropies, Holevo quantity and the one-shot classical capacity of
//! covariant channels. All logarithms are base 2.
//!
//! For a channel covariant under an irreducible output action the optimal
//! ensemble is the group orbit of a single pure state, so the capacity is
//! log₂ d minus the minimum output entropy. The minimum is searched with
//! Nelder-Mead over pure states from several seeded random starts.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;
use rand::Rng;

use crate::channel::{classify, Channel, CLASSIFY_TOL};
use crate::group::FiniteGroupRep;
use crate::linalg::{c, hermitian_eig, CMatrix, CVector};
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::random::rng;
use crate::zoo::{Family, FamilySpec};
use crate::{Error, Result};

/// −x log₂ x with 0 log 0 = 0.
fn h(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    p.iter().map(|&x| h(x)).sum()
}

fn entropy_unchecked(rho: &CMatrix) -> Result<f64> {
    let eig = hermitian_eig(rho)?;
    let min = eig.min();
    if min < -1e-10 {
        return Err(Error::NotPositive(min));
    }
    Ok(eig.values.iter().map(|&l| h(l.max(0.0))).sum())
}

/// −Σ λ log₂ λ. Eigenvalues in [−1e-12, 0] count as zero; anything below
/// −1e-10 is an error.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let tr = rho.trace().re;
    if (tr - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitTrace(tr));
    }
    entropy_unchecked(rho)
}

/// Probability-weighted states {p_i, ρ_i}.
#[derive(Clone, Debug)]
pub struct Ensemble {
    states: Vec<CMatrix>,
    probs: Vec<f64>,
}

impl Ensemble {
    pub fn new(states: Vec<CMatrix>, probs: Vec<f64>) -> Result<Self> {
        if states.is_empty() || states.len() != probs.len() {
            return Err(Error::InvalidWeights(format!("{} states and {} probabilities", states.len(), probs.len())));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidWeights("probabilities must be nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidWeights(format!("probabilities sum to {total}")));
        }
        let d = states[0].square_dim()?;
        for s in &states {
            if s.square_dim()? != d {
                return Err(Error::DimensionMismatch { expected: d, found: s.rows() });
            }
            let tr = s.trace().re;
            if (tr - 1.0).abs() > 1e-8 {
                return Err(Error::NotUnitTrace(tr));
            }
            let min = hermitian_eig(s)?.min();
            if min < -1e-10 {
                return Err(Error::NotPositive(min));
            }
        }
        Ok(Self { states, probs })
    }

    /// Uniform mixture of the computational basis states.
    pub fn uniform_basis(d: usize) -> Self {
        Self { states: (0..d).map(|i| CMatrix::unit(d, i, i)).collect(), probs: alloc::vec![1.0 / d as f64; d] }
    }

    /// Uniform mixture of the pure states U ψ for the unitaries U.
    pub fn orbit(psi: &CVector, unitaries: &[CMatrix]) -> Result<Self> {
        let states: Vec<CMatrix> = unitaries
            .iter()
            .map(|u| {
                let v = u.mul_vec(psi);
                CMatrix::outer(&v, &v)
            })
            .collect();
        let n = states.len();
        Self::new(states, alloc::vec![1.0 / n as f64; n])
    }

    pub fn states(&self) -> &[CMatrix] {
        &self.states
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// S(Σ p_i E(ρ_i)) − Σ p_i S(E(ρ_i)).
pub fn holevo_quantity(ch: &Channel, ens: &Ensemble) -> Result<f64> {
    let d = ch.dim();
    let mut avg = CMatrix::zeros(d, d);
    let mut mean_entropy = 0.0;
    for (rho, &p) in ens.states.iter().zip(&ens.probs) {
        let out = ch.apply(rho)?;
        mean_entropy += p * von_neumann_entropy(&out)?;
        avg = &avg + &out.scale_re(p);
    }
    Ok(von_neumann_entropy(&avg)? - mean_entropy)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub restarts: usize,
    /// Target accuracy of the entropy value.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { restarts: 32, tol: 1e-12, seed: 0 }
    }
}

/// Pure state from d−1 hyperspherical angles and d−1 relative phases.
pub fn pure_state_from_angles(d: usize, x: &[f64]) -> CVector {
    let mut amps = Vec::with_capacity(d);
    let mut rest = 1.0;
    for k in 0..d - 1 {
        amps.push(rest * x[k].cos());
        rest *= x[k].sin();
    }
    amps.push(rest);
    let data = amps
        .iter()
        .enumerate()
        .map(|(k, &a)| if k == 0 { c(a, 0.0) } else { crate::C64::from_polar(a, x[d - 1 + k - 1]) })
        .collect();
    CVector::from_vec(data)
}

fn output_entropy(ch: &Channel, psi: &CVector) -> f64 {
    let rho = CMatrix::outer(psi, psi);
    ch.apply(&rho).and_then(|out| entropy_unchecked(&out)).unwrap_or(f64::INFINITY)
}

/// Minimum output entropy and a pure state attaining it.
#[derive(Clone, Debug)]
pub struct MinEntropy {
    pub s_min: f64,
    pub minimizer: CVector,
    /// Restarts that ended within 1e-6 of the best value.
    pub restarts_converged: usize,
}

fn require_channel(ch: &Channel) -> Result<()> {
    let cls = classify(ch, CLASSIFY_TOL);
    if !cls.cp {
        return Err(Error::NotCompletelyPositive(cls.min_choi_eigenvalue));
    }
    if !cls.tp {
        return Err(Error::NotTracePreserving(cls.tp_deviation));
    }
    Ok(())
}

pub fn min_output_entropy(ch: &Channel, opts: &SearchOptions) -> Result<MinEntropy> {
    require_channel(ch)?;
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter { name: "restarts".into(), reason: "must be at least 1".into() });
    }
    let d = ch.dim();
    let n = 2 * (d - 1);
    let nm = NelderMeadOptions { f_tol: opts.tol, ..Default::default() };
    let objective = |x: &[f64]| output_entropy(ch, &pure_state_from_angles(d, x));
    let mut r = rng(opts.seed);
    let mut results = Vec::with_capacity(opts.restarts);
    for _ in 0..opts.restarts {
        let x0: Vec<f64> = (0..n)
            .map(|k| {
                if k < d - 1 {
                    r.gen::<f64>() * core::f64::consts::FRAC_PI_2
                } else {
                    r.gen::<f64>() * core::f64::consts::TAU
                }
            })
            .collect();
        let first = nelder_mead(objective, &x0, &nm);
        // A second pass from the end point escapes premature collapse.
        let polished = nelder_mead(objective, &first.x, &NelderMeadOptions { initial_step: 0.05, ..nm });
        results.push(if polished.value <= first.value { polished } else { first });
    }
    let best = results
        .iter()
        .min_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(core::cmp::Ordering::Equal))
        .expect("at least one restart");
    let restarts_converged = results.iter().filter(|m| m.value - best.value <= 1e-6).count();
    let mut minimizer = pure_state_from_angles(d, &best.x);
    minimizer.fix_phase(1e-8);
    Ok(MinEntropy { s_min: best.value.max(0.0), minimizer, restarts_converged })
}

#[derive(Clone, Debug)]
pub struct CapacityReport {
    pub s_min: f64,
    pub minimizer: CVector,
    pub capacity: f64,
    pub method: String,
    pub restarts_converged: usize,
}

/// log₂ d − S_min, valid for channels covariant under an irreducible
/// output action.
pub fn covariant_capacity(ch: &Channel, opts: &SearchOptions) -> Result<CapacityReport> {
    let m = min_output_entropy(ch, opts)?;
    Ok(CapacityReport {
        s_min: m.s_min,
        capacity: (ch.dim() as f64).log2() - m.s_min,
        minimizer: m.minimizer,
        method: "optimizer".into(),
        restarts_converged: m.restarts_converged,
    })
}

/// ‖(1/|G|) Σ_g D2(g) E(ρ) D2(g)⁻¹ − I/d‖_F, zero when twirling the output
/// over the group makes it maximally mixed.
pub fn group_average_check(ch: &Channel, d2: &FiniteGroupRep, rho: &CMatrix) -> Result<f64> {
    let d = ch.dim();
    if d2.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: d2.dim() });
    }
    let out = ch.apply(rho)?;
    let mut avg = CMatrix::zeros(d, d);
    for g in d2.elements() {
        avg = &avg + &(&(g * &out) * &g.adjoint());
    }
    let avg = avg.scale_re(1.0 / d2.order() as f64);
    Ok((&avg - &CMatrix::identity(d).scale_re(1.0 / d as f64)).frobenius_norm())
}

/// Capacity from the known output spectrum of a family.
///
/// Supported: identity, mixing, symmetric-pauli (log₂ d − H(q)), su3-8,
/// su3-6 and su3-8-normalized. Parameters outside the completely positive
/// range are rejected unless `force` is set.
pub fn closed_form_capacity(spec: &FamilySpec, force: bool) -> Result<f64> {
    let log_d = (spec.d as f64).log2();
    let p_in_range = |p: f64| -> Result<()> {
        if force {
            return Ok(());
        }
        let (lo, hi) = match spec.family {
            Family::Su3Eight => (0.0, 0.75),
            _ => (0.0, 1.0),
        };
        if p < lo - 1e-12 || p > hi + 1e-12 {
            return Err(Error::InvalidParameter {
                name: "p".into(),
                reason: format!("{p} is outside the completely positive range [{lo}, {hi}]"),
            });
        }
        Ok(())
    };
    let p = || -> Result<f64> {
        let v = spec.params.get("p").ok_or(Error::InvalidParameter { name: "p".into(), reason: "missing".into() })?;
        Ok(v.re)
    };
    match spec.family {
        Family::Identity => Ok(log_d),
        Family::Mixing => Ok(0.0),
        Family::SymmetricPauli => {
            let q: Vec<f64> = (0..spec.d).map(|i| spec.params.get(&format!("q{i}")).map_or(0.0, |v| v.re)).collect();
            if q.iter().any(|&x| x < 0.0) || (q.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidWeights("coset weights must form a probability vector".into()));
            }
            Ok(log_d - shannon_entropy(&q))
        }
        Family::Su3Eight => {
            let p = p()?;
            p_in_range(p)?;
            Ok(log_d - h(1.0 - p) - 2.0 * h(p / 2.0))
        }
        Family::Su3Six => {
            let p = p()?;
            p_in_range(p)?;
            Ok(log_d - h(p / 2.0) - 2.0 * h((2.0 - p) / 4.0))
        }
        Family::Su3EightNormalized => {
            let p = p()?;
            p_in_range(p)?;
            Ok(log_d - h(1.0 - 0.75 * p) - 2.0 * h(0.375 * p))
        }
        other => Err(Error::Unsupported(format!("closed-form capacity for {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{pauli_group, s3_reps};
    use crate::random::{random_density, random_probabilities, random_pure};
    use crate::zoo::make_family;

    const LOG3: f64 = 1.584_962_500_721_156;

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&CMatrix::unit(3, 0, 0)).unwrap().abs() < 1e-15);
        assert!((von_neumann_entropy(&CMatrix::identity(3).scale_re(1.0 / 3.0)).unwrap() - LOG3).abs() < 1e-12);
        let rho = CMatrix::diag(&[c(0.5, 0.0), c(0.25, 0.0), c(0.25, 0.0)]);
        assert!((von_neumann_entropy(&rho).unwrap() - 1.5).abs() < 1e-12);
        let bad = CMatrix::diag(&[c(1.1, 0.0), c(-0.1, 0.0)]);
        assert!(matches!(von_neumann_entropy(&bad), Err(Error::NotPositive(_))));
        let tiny = CMatrix::diag(&[c(1.0 + 1e-13, 0.0), c(-1e-13, 0.0)]);
        assert!(von_neumann_entropy(&tiny).unwrap().abs() < 1e-10);
    }

    #[test]
    fn holevo_examples() {
        let id = Channel::identity(3);
        assert!((holevo_quantity(&id, &Ensemble::uniform_basis(3)).unwrap() - LOG3).abs() < 1e-12);
        let single = Ensemble::new(alloc::vec![CMatrix::unit(3, 1, 1)], alloc::vec![1.0]).unwrap();
        assert!(holevo_quantity(&id, &single).unwrap().abs() < 1e-12);
        for &p in &[0.1, 0.5, 0.7] {
            let ch = make_family(&FamilySpec::new(Family::Su3Eight).with_re("p", p)).unwrap().channel;
            let want = LOG3 + (1.0 - p) * (1.0 - p).log2() + p * (p / 2.0).log2();
            assert!((holevo_quantity(&ch, &Ensemble::uniform_basis(3)).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn concavity_on_random_ensembles() {
        let mut r = rng(11);
        for _ in 0..20 {
            let states: Vec<CMatrix> = (0..4).map(|_| random_density(&mut r, 3)).collect();
            let probs = random_probabilities(&mut r, 4);
            let avg = states.iter().zip(&probs).fold(CMatrix::zeros(3, 3), |a, (s, p)| &a + &s.scale_re(*p));
            let lhs = von_neumann_entropy(&avg).unwrap();
            let rhs: f64 = states.iter().zip(&probs).map(|(s, p)| p * von_neumann_entropy(s).unwrap()).sum();
            assert!(lhs >= rhs - 1e-12);
        }
    }

    #[test]
    fn identity_capacity() {
        let rep =
            covariant_capacity(&Channel::identity(3), &SearchOptions { restarts: 4, ..Default::default() }).unwrap();
        assert!(rep.s_min < 1e-9);
        assert!((rep.capacity - LOG3).abs() < 1e-9);
    }

    #[test]
    fn su3_six_capacity_matches_closed_form() {
        for &p in &[0.0, 0.5, 1.0] {
            let spec = FamilySpec::new(Family::Su3Six).with_re("p", p);
            let ch = make_family(&spec).unwrap().channel;
            let rep = covariant_capacity(&ch, &SearchOptions { restarts: 8, ..Default::default() }).unwrap();
            let closed = closed_form_capacity(&spec, false).unwrap();
            assert!((rep.capacity - closed).abs() < 1e-6, "p={p}: {} vs {closed}", rep.capacity);
        }
        let at_one = closed_form_capacity(&FamilySpec::new(Family::Su3Six).with_re("p", 1.0), false).unwrap();
        assert!((at_one - (LOG3 - 1.5)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_examples() {
        let q = FamilySpec::new(Family::SymmetricPauli).with_re("n", 1.0).with_re("q0", 1.0);
        assert!((closed_form_capacity(&q, false).unwrap() - LOG3).abs() < 1e-12);
        let e = FamilySpec::new(Family::Su3Eight).with_re("p", 0.75);
        let want = LOG3 - (0.25 * 2.0 + 0.75 * (8.0_f64 / 3.0).log2());
        assert!((closed_form_capacity(&e, false).unwrap() - want).abs() < 1e-12);
        assert!((want - 0.0236).abs() < 1e-4);
        let m = FamilySpec::new(Family::Su3Six).with_re("p", 2.0 / 3.0);
        assert!(closed_form_capacity(&m, false).unwrap().abs() < 1e-12);
        let out = FamilySpec::new(Family::Su3Eight).with_re("p", 0.9);
        assert!(closed_form_capacity(&out, false).is_err());
        assert!(closed_form_capacity(&out, true).is_ok());
    }

    #[test]
    fn rejects_non_cp() {
        let ch = make_family(&FamilySpec::new(Family::Su3Eight).with_re("p", 0.9)).unwrap().channel;
        assert!(matches!(min_output_entropy(&ch, &SearchOptions::default()), Err(Error::NotCompletelyPositive(_))));
    }

    #[test]
    fn group_averages() {
        let mut r = rng(4);
        let pg = pauli_group(3).unwrap();
        let probs = random_probabilities(&mut r, 9);
        let mut spec = FamilySpec::new(Family::Pauli);
        for (k, p) in probs.iter().enumerate() {
            spec = spec.with_re(&format!("p{}{}", k / 3, k % 3), *p);
        }
        let ch = make_family(&spec).unwrap().channel;
        let psi = random_pure(&mut r, 3);
        assert!(group_average_check(&ch, &pg, &CMatrix::outer(&psi, &psi)).unwrap() < 1e-10);

        let trivial = crate::group::cyclic_rep(1, CMatrix::identity(3)).unwrap();
        let v = group_average_check(&Channel::identity(3), &trivial, &CMatrix::unit(3, 0, 0)).unwrap();
        assert!((v - (2.0_f64 / 3.0).sqrt()).abs() < 1e-12);

        let s = s3_reps();
        let v =
            group_average_check(&Channel::identity(3), &s.defining, &CMatrix::identity(3).scale_re(1.0 / 3.0)).unwrap();
        assert!(v < 1e-12);
    }

    #[test]
    fn angles_give_unit_vectors() {
        let v = pure_state_from_angles(3, &[0.3, 1.2, 0.5, 2.0]);
        assert!((v.norm() - 1.0).abs() < 1e-14);
        let e0 = pure_state_from_angles(3, &[0.0, 0.0, 0.0, 0.0]);
        assert!((e0[0] - c(1.0, 0.0)).norm() < 1e-15);
    }
}
