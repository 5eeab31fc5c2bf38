//! Named channel families with their parameters and trace-preservation
//! constraints.
//!
//! Parameters are looked up by name in a [`FamilySpec`]. Coefficients that
//! are not given default to zero; unknown names are rejected. Points of a
//! family outside its completely positive range are still constructed (as
//! signed maps) and reported through [`FamilyChannel::cp_warning`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use crate::basis::gell_mann_basis;
use crate::channel::{choi, Channel, ChoiMatrix};
use crate::group::pauli_op;
use crate::linalg::{kron, re, CMatrix, CVector, C64};
use crate::{Error, Result};

/// Tolerance for the trace-preservation constraints.
pub const TP_TOL: f64 = 1e-9;
/// Choi eigenvalues below −CP_TOL trigger a warning.
pub const CP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    Identity,
    Mixing,
    Transpose,
    Sod,
    CyclicZ3,
    Hadamard3,
    Pauli,
    SymmetricPauli,
    S3Covariant,
    S3Symmetric,
    U1,
    U1U1,
    Su3Eight,
    Su3Six,
    /// (1−p)ρ + p·(3tr(ρ)I − ρ)/8, the completely positive convex family
    /// between the identity and the normalized octet channel.
    Su3EightNormalized,
}

impl Family {
    pub const ALL: [Family; 15] = [
        Family::Identity,
        Family::Mixing,
        Family::Transpose,
        Family::Sod,
        Family::CyclicZ3,
        Family::Hadamard3,
        Family::Pauli,
        Family::SymmetricPauli,
        Family::S3Covariant,
        Family::S3Symmetric,
        Family::U1,
        Family::U1U1,
        Family::Su3Eight,
        Family::Su3Six,
        Family::Su3EightNormalized,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Mixing => "mixing",
            Family::Transpose => "transpose",
            Family::Sod => "sod",
            Family::CyclicZ3 => "cyclicZ3",
            Family::Hadamard3 => "hadamard3",
            Family::Pauli => "pauli",
            Family::SymmetricPauli => "symmetric-pauli",
            Family::S3Covariant => "s3-covariant",
            Family::S3Symmetric => "s3-symmetric",
            Family::U1 => "u1",
            Family::U1U1 => "u1u1",
            Family::Su3Eight => "su3-8",
            Family::Su3Six => "su3-6",
            Family::Su3EightNormalized => "su3-8-normalized",
        }
    }

    /// Families that only exist for qutrits.
    pub fn qutrit_only(self) -> bool {
        !matches!(
            self,
            Family::Identity
                | Family::Mixing
                | Family::Transpose
                | Family::Sod
                | Family::Pauli
                | Family::SymmetricPauli
        )
    }

    /// Accepted parameter names for dimension `d`.
    pub fn parameter_names(self, d: usize) -> Vec<String> {
        let idx2 = |prefix: &str, lo: usize, hi: usize| -> Vec<String> {
            (lo..hi).flat_map(|i| (lo..hi).map(move |j| (i, j))).map(|(i, j)| format!("{prefix}{i}{j}")).collect()
        };
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match self {
            Family::Identity | Family::Mixing | Family::Transpose => Vec::new(),
            Family::Sod => names(&["alpha", "beta", "gamma"]),
            Family::CyclicZ3 => idx2("a", 0, 3),
            Family::Hadamard3 => idx2("a", 1, 4),
            Family::Pauli => idx2("p", 0, d),
            Family::SymmetricPauli => {
                let mut v = names(&["m", "n"]);
                v.extend((0..d).map(|i| format!("q{i}")));
                v
            }
            Family::S3Covariant | Family::S3Symmetric => names(&["a", "b", "c", "d", "e", "f"]),
            Family::U1 => names(&["b00", "b01", "b10", "b11", "a", "b", "c", "d", "e"]),
            Family::U1U1 => {
                let mut v = names(&["a0", "a1", "a2"]);
                v.extend(idx2("p", 0, 3).into_iter().filter(|k| k != "p00"));
                v
            }
            Family::Su3Eight | Family::Su3Six | Family::Su3EightNormalized => names(&["p"]),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFamily(s.into()))
    }
}

/// A family together with a dimension and named parameter values.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub d: usize,
    pub params: BTreeMap<String, C64>,
}

impl FamilySpec {
    /// Uses d = 3 for every family.
    pub fn new(family: Family) -> Self {
        Self { family, d: 3, params: BTreeMap::new() }
    }

    pub fn with_dim(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    pub fn with(mut self, key: &str, value: C64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn with_re(self, key: &str, value: f64) -> Self {
        self.with(key, re(value))
    }

    fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::DimensionTooSmall(self.d));
        }
        if self.family.qutrit_only() && self.d != 3 {
            return Err(Error::InvalidParameter {
                name: "d".into(),
                reason: format!("{} is defined for d = 3 only", self.family),
            });
        }
        let allowed = self.family.parameter_names(self.d);
        for (k, v) in &self.params {
            if !allowed.iter().any(|a| a == k) {
                return Err(Error::InvalidParameter {
                    name: k.clone(),
                    reason: format!("not a parameter of {}", self.family),
                });
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidParameter { name: k.clone(), reason: "not finite".into() });
            }
        }
        Ok(())
    }

    /// Complex coefficient, zero when absent.
    fn cx(&self, key: &str) -> C64 {
        self.params.get(key).copied().unwrap_or(re(0.0))
    }

    fn real(&self, key: &str) -> Result<f64> {
        let v = self.cx(key);
        if v.im.abs() > 1e-12 {
            return Err(Error::InvalidParameter { name: key.into(), reason: "must be real".into() });
        }
        Ok(v.re)
    }

    fn required_real(&self, key: &str) -> Result<f64> {
        if !self.params.contains_key(key) {
            return Err(Error::InvalidParameter { name: key.into(), reason: "missing".into() });
        }
        self.real(key)
    }

    fn probability(&self, key: &str) -> Result<f64> {
        let v = self.real(key)?;
        if v < 0.0 {
            return Err(Error::InvalidParameter { name: key.into(), reason: "probability must be nonnegative".into() });
        }
        Ok(v)
    }

    fn index(&self, key: &str) -> Result<usize> {
        let v = self.real(key)?;
        if v < 0.0 || v.fract() != 0.0 || v >= self.d as f64 {
            return Err(Error::InvalidParameter {
                name: key.into(),
                reason: format!("must be an integer in 0..{}", self.d),
            });
        }
        Ok(v as usize)
    }
}

/// A constructed family member.
#[derive(Clone, Debug)]
pub struct FamilyChannel {
    pub channel: Channel,
    /// Minimum Choi eigenvalue when the point is not completely positive.
    pub cp_warning: Option<f64>,
}

/// Evaluation of a family's trace-preservation condition.
#[derive(Clone, Debug, PartialEq)]
pub struct TpConstraint {
    pub satisfied: bool,
    pub residual: f64,
    pub description: String,
}

fn constraint(description: &str, residual: f64) -> TpConstraint {
    TpConstraint { satisfied: residual <= TP_TOL, residual, description: description.into() }
}

fn ket_bra(u: &CVector, v: &CVector) -> CMatrix {
    CMatrix::outer(u, v)
}

/// Unit eigenvectors of the 3×3 Hadamard for eigenvalues 1, −1 and i.
pub fn hadamard3_eigenvectors() -> [CVector; 3] {
    let s3 = 3.0_f64.sqrt();
    let v = |x: [f64; 3]| CVector::from_vec(x.iter().map(|&t| re(t)).collect()).normalized();
    [v([1.0 + s3, 1.0, 1.0]), v([1.0 - s3, 1.0, 1.0]), v([0.0, -1.0, 1.0])]
}

/// Kraus list split by sign of the weight: √|w|·K goes to the Kraus part
/// for w ≥ 0 and to the anti-Kraus part otherwise.
fn signed_terms(terms: Vec<(f64, CMatrix)>) -> Result<Channel> {
    let mut kraus = Vec::new();
    let mut anti = Vec::new();
    for (w, k) in terms {
        if w == 0.0 {
            continue;
        }
        let scaled = k.scale_re(w.abs().sqrt());
        if w > 0.0 {
            kraus.push(scaled);
        } else {
            anti.push(scaled);
        }
    }
    if kraus.is_empty() && anti.is_empty() {
        kraus.push(CMatrix::zeros(3, 3));
    }
    Channel::signed(kraus, anti)
}

fn symmetric_units(d: usize) -> (Vec<CMatrix>, Vec<CMatrix>) {
    let s = 1.0 / 2.0_f64.sqrt();
    let mut sym = Vec::new();
    let mut anti = Vec::new();
    for i in 0..d {
        sym.push(CMatrix::unit(d, i, i));
        for j in (i + 1)..d {
            sym.push((&CMatrix::unit(d, i, j) + &CMatrix::unit(d, j, i)).scale_re(s));
            anti.push((&CMatrix::unit(d, i, j) - &CMatrix::unit(d, j, i)).scale_re(s));
        }
    }
    (sym, anti)
}

/// Label of the coset of ⟨(m, n)⟩ in Z_d × Z_d that contains (k, l).
pub fn pauli_coset(d: usize, m: usize, n: usize, k: usize, l: usize) -> Result<usize> {
    if m == 0 && n == 0 {
        return Err(Error::InvalidParameter { name: "m,n".into(), reason: "generator must not be (0, 0)".into() });
    }
    if m == 0 {
        return Ok(k);
    }
    let inv = (1..d).find(|&x| (x * m) % d == 1).ok_or_else(|| Error::InvalidParameter {
        name: "m".into(),
        reason: format!("{m} is not invertible mod {d}"),
    })?;
    Ok((l + d * d - (k * n % d) * inv % d) % d)
}

fn is_prime(d: usize) -> bool {
    d >= 2 && (2..d).take_while(|k| k * k <= d).all(|k| !d.is_multiple_of(k))
}

fn s3_covariant_kraus(sp: &FamilySpec) -> [CMatrix; 4] {
    let (a, b, c, d, e, f) = (sp.cx("a"), sp.cx("b"), sp.cx("c"), sp.cx("d"), sp.cx("e"), sp.cx("f"));
    let z = re(0.0);
    let m = |rows: [[C64; 3]; 3]| CMatrix::from_fn(3, 3, |i, j| rows[i][j]);
    let ka = m([[a, b, b], [b, a, b], [b, b, a]]);
    let kb = m([[z, c, -c], [-c, z, c], [c, -c, z]]);
    let c1 = m([[d, -e - f, e], [-e - f, d, e], [f, f, d * -2.0]]);
    let c2 = m([[d * 3.0, e - f, -e - f * 2.0], [f - e, d * -3.0, e + f * 2.0], [-e * 2.0 - f, e * 2.0 + f, z]])
        .scale_re(1.0 / 3.0_f64.sqrt());
    [ka, kb, c1, c2]
}

fn s3_symmetric_kraus(sp: &FamilySpec) -> [CMatrix; 3] {
    let u = [sp.cx("a"), sp.cx("b"), sp.cx("c")];
    let v = [sp.cx("d"), sp.cx("e"), sp.cx("f")];
    let ka = CMatrix::from_fn(3, 3, |i, _| u[i]);
    let w1 = [1.0, 1.0, -2.0];
    let w2 = [1.0, -1.0, 0.0];
    let c1 = CMatrix::from_fn(3, 3, |i, j| v[i] * w1[j]);
    let c2 = CMatrix::from_fn(3, 3, |i, j| v[i] * (w2[j] * 3.0_f64.sqrt()));
    [ka, c1, c2]
}

fn u1_kraus(sp: &FamilySpec) -> [CMatrix; 3] {
    let mut a0 = CMatrix::zeros(3, 3);
    for i in 0..2 {
        for j in 0..2 {
            a0[(i, j)] = sp.cx(&format!("b{i}{j}"));
        }
    }
    a0[(2, 2)] = sp.cx("a");
    let mut ap = CMatrix::zeros(3, 3);
    ap[(2, 0)] = sp.cx("b");
    ap[(2, 1)] = sp.cx("c");
    let mut am = CMatrix::zeros(3, 3);
    am[(0, 2)] = sp.cx("d");
    am[(1, 2)] = sp.cx("e");
    [a0, ap, am]
}

fn gram_deviation(kraus: &[CMatrix]) -> f64 {
    let d = kraus[0].rows();
    let s = kraus.iter().fold(CMatrix::zeros(d, d), |acc, a| &acc + &(&a.adjoint() * a));
    (&s - &CMatrix::identity(d)).operator_norm()
}

/// Evaluates the trace-preservation condition of the family at `spec`.
pub fn family_tp_constraint(spec: &FamilySpec) -> Result<TpConstraint> {
    spec.validate()?;
    let d = spec.d;
    Ok(match spec.family {
        Family::Identity | Family::Mixing | Family::Transpose => constraint("always trace preserving", 0.0),
        Family::Sod => {
            let r = spec.real("alpha")? * d as f64 + spec.real("beta")? + spec.real("gamma")? - 1.0;
            constraint("alpha*d + beta + gamma = 1", r.abs())
        }
        Family::CyclicZ3 => {
            let r = (0..3)
                .map(|m| ((0..3).map(|n| spec.cx(&format!("a{n}{m}")).norm_sqr()).sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max);
            constraint("each column vector (a_0m, a_1m, a_2m) has unit norm", r)
        }
        Family::Hadamard3 => {
            let r = (1..4)
                .map(|i| ((1..4).map(|j| spec.cx(&format!("a{i}{j}")).norm_sqr()).sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max);
            constraint("each vector (a_i1, a_i2, a_i3) has unit norm", r)
        }
        Family::Pauli => {
            let mut s = 0.0;
            for i in 0..d {
                for j in 0..d {
                    s += spec.probability(&format!("p{i}{j}"))?;
                }
            }
            constraint("sum of p_ij = 1", (s - 1.0).abs())
        }
        Family::SymmetricPauli => {
            let mut s = 0.0;
            for i in 0..d {
                s += spec.probability(&format!("q{i}"))?;
            }
            constraint("sum of coset weights q_i = 1", (s - 1.0).abs())
        }
        Family::S3Covariant => constraint(
            "A^dagger A + B^dagger B + C1^dagger C1 + C2^dagger C2 = I",
            gram_deviation(&s3_covariant_kraus(spec)),
        ),
        Family::S3Symmetric => {
            let u: f64 = ["a", "b", "c"].iter().map(|k| spec.cx(k).norm_sqr()).sum();
            let v: f64 = ["d", "e", "f"].iter().map(|k| spec.cx(k).norm_sqr()).sum();
            constraint(
                "|a|^2 + |b|^2 + |c|^2 = 1/3 and |d|^2 + |e|^2 + |f|^2 = 1/6",
                (u - 1.0 / 3.0).abs().max((v - 1.0 / 6.0).abs()),
            )
        }
        Family::U1 => constraint(
            "B^dagger B + [[|b|^2, conj(b) c], [b conj(c), |c|^2]] = I and |a|^2 + |d|^2 + |e|^2 = 1",
            gram_deviation(&u1_kraus(spec)),
        ),
        Family::U1U1 => {
            let mut worst: f64 = 0.0;
            for j in 0..3 {
                let mut s = spec.cx(&format!("a{j}")).norm_sqr();
                for i in 0..3 {
                    if (i, j) != (0, 0) {
                        s += spec.probability(&format!("p{i}{j}"))?;
                    }
                }
                worst = worst.max((s - 1.0).abs());
            }
            constraint("|a_j|^2 + sum_i p_ij = 1 for each j", worst)
        }
        Family::Su3Eight | Family::Su3Six | Family::Su3EightNormalized => {
            spec.required_real("p")?;
            constraint("trace preserving for every p", 0.0)
        }
    })
}

/// Builds the channel of `spec`.
///
/// Fails when the trace-preservation constraint is violated by more than
/// [`TP_TOL`]. Points that are not completely positive are returned with a
/// warning carrying the minimum Choi eigenvalue.
pub fn make_family(spec: &FamilySpec) -> Result<FamilyChannel> {
    let tp = family_tp_constraint(spec)?;
    if !tp.satisfied {
        return Err(Error::ConstraintViolated {
            description: format!("{}: {}", spec.family, tp.description),
            residual: tp.residual,
        });
    }
    let d = spec.d;
    let channel = match spec.family {
        Family::Identity => Channel::identity(d),
        Family::Mixing => Channel::completely_mixing(d),
        Family::Transpose => Channel::transpose_channel(d),
        Family::Sod => {
            let (a, b, g) = (spec.real("alpha")?, spec.real("beta")?, spec.real("gamma")?);
            let id = CMatrix::identity(d);
            let phi = CVector::from_vec((0..d * d).map(|k| re(if k % (d + 1) == 0 { 1.0 } else { 0.0 })).collect());
            let swap = CMatrix::from_fn(d * d, d * d, |r, c| {
                let (i, j) = (r / d, r % d);
                re(if c == j * d + i { 1.0 } else { 0.0 })
            });
            let j = &(&kron(&id, &id).scale_re(a) + &CMatrix::outer(&phi, &phi).scale_re(b)) + &swap.scale_re(g);
            Channel::from_choi_signed(&ChoiMatrix::new(j)?, 1e-13)?
        }
        Family::CyclicZ3 => Channel::new(
            (0..3)
                .map(|k| {
                    CMatrix::from_fn(3, 3, |i, j| if j == (i + k) % 3 { spec.cx(&format!("a{i}{j}")) } else { re(0.0) })
                })
                .collect(),
        )?,
        Family::Hadamard3 => {
            let [e1, em, ei] = hadamard3_eigenvectors();
            let a = |i: usize, j: usize| spec.cx(&format!("a{i}{j}"));
            let diag = &(&ket_bra(&e1, &e1).scale(a(1, 1)) + &ket_bra(&em, &em).scale(a(2, 2)))
                + &ket_bra(&ei, &ei).scale(a(3, 3));
            let minus = &ket_bra(&e1, &em).scale(a(2, 1)) + &ket_bra(&em, &e1).scale(a(1, 2));
            let plus_i = &ket_bra(&e1, &ei).scale(a(3, 1)) + &ket_bra(&ei, &em).scale(a(2, 3));
            let minus_i = &ket_bra(&ei, &e1).scale(a(1, 3)) + &ket_bra(&em, &ei).scale(a(3, 2));
            Channel::new(vec![diag, minus, plus_i, minus_i])?
        }
        Family::Pauli => {
            let mut kraus = Vec::new();
            for i in 0..d {
                for j in 0..d {
                    let p = spec.probability(&format!("p{i}{j}"))?;
                    if p > 0.0 {
                        kraus.push(pauli_op(d, i, j)?.scale_re(p.sqrt()));
                    }
                }
            }
            Channel::new(kraus)?
        }
        Family::SymmetricPauli => {
            if !is_prime(d) {
                return Err(Error::Unsupported(format!("symmetric-pauli needs a prime dimension, got {d}")));
            }
            let (m, n) = (spec.index("m")?, spec.index("n")?);
            let mut kraus = Vec::new();
            for k in 0..d {
                for l in 0..d {
                    let q = spec.probability(&format!("q{}", pauli_coset(d, m, n, k, l)?))?;
                    if q > 0.0 {
                        kraus.push(pauli_op(d, k, l)?.scale_re((q / d as f64).sqrt()));
                    }
                }
            }
            Channel::new(kraus)?
        }
        Family::S3Covariant => Channel::new(s3_covariant_kraus(spec).to_vec())?,
        Family::S3Symmetric => Channel::new(s3_symmetric_kraus(spec).to_vec())?,
        Family::U1 => Channel::new(u1_kraus(spec).to_vec())?,
        Family::U1U1 => {
            let mut kraus = vec![CMatrix::diag(&[spec.cx("a0"), spec.cx("a1"), spec.cx("a2")])];
            for i in 0..3 {
                for j in 0..3 {
                    if (i, j) != (0, 0) {
                        let p = spec.probability(&format!("p{i}{j}"))?;
                        if p > 0.0 {
                            kraus.push(CMatrix::unit(3, i, j).scale_re(p.sqrt()));
                        }
                    }
                }
            }
            Channel::new(kraus)?
        }
        Family::Su3Eight => {
            // ½[p tr(ρ) I + (2−3p) ρ] = (1 − 4p/3) ρ + (p/2) Σ_{i≥1} Γ_i ρ Γ_i.
            let p = spec.required_real("p")?;
            let mut terms = vec![(1.0 - 4.0 * p / 3.0, CMatrix::identity(3))];
            terms.extend(traceless_gammas().into_iter().map(|g| (p / 2.0, g)));
            signed_terms(terms)?
        }
        Family::Su3Six => {
            // p·¼(tr(ρ)I + ρᵀ) + (1−p)·½(tr(ρ)I − ρᵀ).
            let p = spec.required_real("p")?;
            let (sym, anti) = symmetric_units(3);
            let mut terms: Vec<(f64, CMatrix)> = sym.into_iter().map(|s| (p / 2.0, s)).collect();
            terms.extend(anti.into_iter().map(|a| (1.0 - p, a)));
            signed_terms(terms)?
        }
        Family::Su3EightNormalized => {
            // (3tr(ρ)I − ρ)/8 = (3/8) Σ_{i≥1} Γ_i ρ Γ_i.
            let p = spec.required_real("p")?;
            let mut terms = vec![(1.0 - p, CMatrix::identity(3))];
            terms.extend(traceless_gammas().into_iter().map(|g| (3.0 * p / 8.0, g)));
            signed_terms(terms)?
        }
    };
    let channel = channel.with_label(spec.family.as_str());
    let min = choi(&channel).min_eigenvalue();
    let cp_warning = (min < -CP_TOL).then_some(min);
    Ok(FamilyChannel { channel, cp_warning })
}

fn traceless_gammas() -> Vec<CMatrix> {
    gell_mann_basis(3).expect("d = 3").gammas()[1..].to_vec()
}

/// Completely positive parameter range of a one-parameter su(3) family,
/// found by scanning [−1, 2] and bisecting the minimum Choi eigenvalue to
/// 1e-8 at both ends.
pub fn su3_family_cp_interval(family: Family) -> Result<(f64, f64)> {
    if !matches!(family, Family::Su3Eight | Family::Su3Six | Family::Su3EightNormalized) {
        return Err(Error::Unsupported(format!("CP interval for {family}")));
    }
    let min_eig = |p: f64| -> Result<f64> {
        let ch = make_family(&FamilySpec::new(family).with_re("p", p))?;
        Ok(choi(&ch.channel).min_eigenvalue())
    };
    let is_cp = |p: f64| -> Result<bool> { Ok(min_eig(p)? >= -1e-12) };
    let grid: Vec<f64> = (0..=300).map(|k| -1.0 + k as f64 * 0.01).collect();
    let mut first = None;
    let mut last = None;
    for (k, &p) in grid.iter().enumerate() {
        if is_cp(p)? {
            first.get_or_insert(k);
            last = Some(k);
        }
    }
    let (first, last) = match (first, last) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::NotCompletelyPositive(min_eig(0.0)?)),
    };
    let bisect = |mut inside: f64, mut outside: f64| -> Result<f64> {
        while (inside - outside).abs() > 1e-9 {
            let mid = 0.5 * (inside + outside);
            if is_cp(mid)? {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(inside)
    };
    let lo = if first == 0 { grid[0] } else { bisect(grid[first], grid[first - 1])? };
    let hi = if last == grid.len() - 1 { grid[last] } else { bisect(grid[last], grid[last + 1])? };
    Ok((lo, hi))
}
