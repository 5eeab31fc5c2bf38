use covchan_core::basis::{coherence_vector, gell_mann_basis};
use covchan_core::capacity::{covariant_capacity, holevo_quantity, von_neumann_entropy, Ensemble, SearchOptions};
use covchan_core::channel::{affine_rep, apply_affine, choi, classify, remix_kraus, Channel};
use covchan_core::group::{
    cyclic_irrep, cyclic_rep, hadamard_group, pauli_group, s3_reps, su3_rep, FiniteGroupRep, Rep, Su3Irrep,
};
use covchan_core::linalg::{c, devectorize, hermitian_eig, kron, null_space, re, vectorize};
use covchan_core::random::{random_density, random_matrix, random_probabilities, random_pure, random_unitary, rng};
use covchan_core::solver::{check_covariance, normalize_tp, predicted_multiplicity, solve_intertwiners};
use covchan_core::zoo::{make_family, Family, FamilySpec};
use covchan_core::{CMatrix, C64};
use proptest::prelude::*;
use rand::Rng;

fn tp_channel(seed: u64, d: usize, n: usize) -> Channel {
    let mut r = rng(seed);
    let raw: Vec<CMatrix> = (0..n).map(|_| random_matrix(&mut r, d)).collect();
    let s = raw.iter().fold(CMatrix::zeros(d, d), |acc, a| &acc + &(&a.adjoint() * a));
    let w = hermitian_eig(&s).unwrap().map_values(|x| re(1.0 / x.sqrt()));
    Channel::new(raw.iter().map(|a| a * &w).collect()).unwrap()
}

fn diag_phases(n: usize, charges: &[usize]) -> CMatrix {
    CMatrix::diag(
        &charges
            .iter()
            .map(|&k| C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect::<Vec<_>>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vectorization_identities(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, d);
        let b = random_matrix(&mut r, d);
        let id = CMatrix::identity(d);
        let va = vectorize(&a).unwrap();
        prop_assert_eq!(devectorize(&va, d).unwrap(), a.clone());
        let left = vectorize(&(&b * &a)).unwrap();
        let right = vectorize(&(&a * &b)).unwrap();
        let lk = kron(&b, &id).mul_vec(&va);
        let rk = kron(&id, &b.transpose()).mul_vec(&va);
        for k in 0..d * d {
            prop_assert!((left[k] - lk[k]).norm() <= 1e-12);
            prop_assert!((right[k] - rk[k]).norm() <= 1e-12);
        }
    }

    #[test]
    fn null_space_is_orthonormal_and_annihilated(seed in any::<u64>(), n in 2usize..7, rank in 1usize..6) {
        let rank = rank.min(n - 1);
        let mut r = rng(seed);
        let left = CMatrix::from_fn(n + 2, rank, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let right = CMatrix::from_fn(rank, n, |_, _| c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
        let m = &left * &right;
        let tol = 1e-9;
        let ns = null_space(&m, tol);
        prop_assert_eq!(ns.len(), n - rank);
        let norm = m.operator_norm();
        for (i, u) in ns.iter().enumerate() {
            prop_assert!(m.mul_vec(u).norm() <= 10.0 * tol * norm);
            for (j, v) in ns.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((u.inner(v) - re(want)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn coherence_vector_identities(seed in any::<u64>(), d in 2usize..5) {
        let basis = gell_mann_basis(d).unwrap();
        let mut r = rng(seed);
        let rho = random_density(&mut r, d);
        let v = coherence_vector(&rho, &basis).unwrap();
        let purity = (&rho * &rho).trace().re;
        prop_assert!((purity - v.components.iter().map(|x| x * x).sum::<f64>()).abs() <= 1e-12);
        let psi = random_pure(&mut r, d);
        let pure = coherence_vector(&CMatrix::outer(&psi, &psi), &basis).unwrap();
        prop_assert!((pure.polarization_norm_sqr() - (1.0 - 1.0 / d as f64)).abs() <= 1e-10);
    }

    #[test]
    fn channel_invariants(seed in any::<u64>(), d in 2usize..4, n in 1usize..5) {
        let ch = tp_channel(seed, d, n);
        let mut r = rng(seed ^ 0x5eed);
        let rho = random_density(&mut r, d);
        prop_assert!((ch.apply(&rho).unwrap().trace().re - 1.0).abs() <= 1e-10);
        prop_assert!(choi(&ch).min_eigenvalue() >= -1e-10);

        let basis = gell_mann_basis(d).unwrap();
        let ar = affine_rep(&ch, &basis).unwrap();
        prop_assert!((ar.lambda00() - 1.0).abs() <= 1e-10);
        prop_assert!(ar.row0_norm() <= 1e-10);
        let direct = coherence_vector(&ch.apply(&rho).unwrap(), &basis).unwrap();
        let via = apply_affine(&ar, &coherence_vector(&rho, &basis).unwrap()).unwrap();
        for (x, y) in direct.components.iter().zip(&via.components) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        let cls = classify(&ch, 1e-9);
        prop_assert_eq!(cls.unital, ar.col0_norm() <= 1e-9);

        let u = random_unitary(&mut r, n);
        let mixed = Channel::new(remix_kraus(ch.kraus(), &u).unwrap()).unwrap();
        prop_assert!((&choi(&mixed).matrix - &choi(&ch).matrix).frobenius_norm() <= 1e-10);
    }

    /// Random diagonal Z_n actions on a qutrit: the null-space multiplicities
    /// match the character prediction and exhaust the 9 Kraus directions.
    #[test]
    fn cyclic_intertwiners(n in 2usize..6, k1 in 0usize..6, k2 in 0usize..6, k3 in 0usize..6, l1 in 0usize..6, l2 in 0usize..6, l3 in 0usize..6) {
        let d1 = cyclic_rep(n, diag_phases(n, &[k1, k2, k3])).unwrap();
        let d2 = cyclic_rep(n, diag_phases(n, &[l1, l2, l3])).unwrap();
        let mut total = 0;
        for k in 0..n {
            let om = cyclic_irrep(n, k).unwrap();
            let sol = solve_intertwiners(Rep::Finite(&d1), Rep::Finite(&d2), Rep::Finite(&om)).unwrap();
            prop_assert!(sol.residual <= 1e-8);
            prop_assert_eq!(sol.multiplicity, predicted_multiplicity(Rep::Finite(&d1), Rep::Finite(&d2), Rep::Finite(&om)).unwrap());
            // Reducible outputs leave Σ A†A non-scalar, so only covariance is checked.
            for m in &sol.multiplets {
                let ch = Channel::new(m.clone()).unwrap();
                prop_assert!(check_covariance(&ch, Rep::Finite(&d1), Rep::Finite(&d2), 1e-9, 1).unwrap().holds);
            }
            total += sol.multiplicity;
        }
        prop_assert_eq!(total, 9);
    }

    #[test]
    fn su3_six_closed_form(p in 0.0f64..1.0, seed in any::<u64>()) {
        let ch = make_family(&FamilySpec::new(Family::Su3Six).with_re("p", p)).unwrap().channel;
        let rho = random_density(&mut rng(seed), 3);
        let want = (&CMatrix::identity(3).scale_re(2.0 - p) + &rho.transpose().scale_re(3.0 * p - 2.0)).scale_re(0.25);
        prop_assert!(ch.apply(&rho).unwrap().approx_eq(&want, 1e-12));
    }

    #[test]
    fn entropy_is_concave(seed in any::<u64>(), d in 2usize..5, k in 2usize..6) {
        let mut r = rng(seed);
        let states: Vec<CMatrix> = (0..k).map(|_| random_density(&mut r, d)).collect();
        let probs = random_probabilities(&mut r, k);
        let avg = states.iter().zip(&probs).fold(CMatrix::zeros(d, d), |a, (s, p)| &a + &s.scale_re(*p));
        let mixed: f64 = states.iter().zip(&probs).map(|(s, p)| p * von_neumann_entropy(s).unwrap()).sum();
        prop_assert!(von_neumann_entropy(&avg).unwrap() >= mixed - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// The orbit of the minimizer under the Pauli group attains the capacity.
    #[test]
    fn holevo_of_orbit_equals_capacity(p in 0.0f64..1.0) {
        let ch = make_family(&FamilySpec::new(Family::Su3Six).with_re("p", p)).unwrap().channel;
        let rep = covariant_capacity(&ch, &SearchOptions { restarts: 4, ..Default::default() }).unwrap();
        let g = pauli_group(3).unwrap();
        let ens = Ensemble::orbit(&rep.minimizer, g.elements()).unwrap();
        prop_assert!((holevo_quantity(&ch, &ens).unwrap() - rep.capacity).abs() <= 1e-6);
    }
}

fn check_table(g: &FiniteGroupRep) {
    let els = g.elements();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            let k = g.mult_table()[i][j];
            let w = g.phases()[i][j];
            assert!((&(a * b) - &els[k].scale(w)).max_abs() <= 1e-10, "{}: {i}·{j}", g.label());
        }
    }
}

#[test]
fn multiplication_tables_hold() {
    let s = s3_reps();
    for g in [&s.defining, &s.trivial, &s.sign, &s.standard] {
        check_table(g);
    }
    check_table(&hadamard_group(3).unwrap());
    check_table(&pauli_group(3).unwrap());
    check_table(&cyclic_rep(3, diag_phases(3, &[0, 1, 2])).unwrap());
}

#[test]
fn completeness_for_every_qutrit_pair() {
    let s = s3_reps();
    let total: usize = s
        .irreps()
        .iter()
        .map(|o| {
            predicted_multiplicity(Rep::Finite(&s.defining), Rep::Finite(&s.defining), Rep::Finite(o)).unwrap()
                * o.dim()
        })
        .sum();
    assert_eq!(total, 9);
    for a in [Su3Irrep::Three, Su3Irrep::ThreeBar] {
        for b in [Su3Irrep::Three, Su3Irrep::ThreeBar] {
            let (d1, d2) = (su3_rep(a), su3_rep(b));
            let total: usize = Su3Irrep::ALL
                .iter()
                .map(|&o| {
                    let om = su3_rep(o);
                    let sol = solve_intertwiners(Rep::Lie(&d1), Rep::Lie(&d2), Rep::Lie(&om)).unwrap();
                    assert!(sol.residual <= 1e-8);
                    for m in &sol.multiplets {
                        let ch = normalize_tp(m).unwrap();
                        assert!(ch.tp_deviation() <= 1e-10);
                        assert!(ch.unital_deviation() <= 1e-10);
                    }
                    sol.multiplicity * o.dim()
                })
                .sum();
            assert_eq!(total, 9);
        }
    }
}
