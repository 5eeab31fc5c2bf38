use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use super::IrrepLabel;
use crate::basis::gell_mann_basis;
use crate::linalg::{c, hermitian_eig, kron, re, CMatrix, CVector, C64};
use crate::{Error, Result};

/// Hermitian generators T_a of a Lie-algebra representation; the group acts
/// as exp(iθT). `cartan` indexes a maximal commuting subset.
#[derive(Clone, Debug)]
pub struct LieAlgebraRep {
    algebra: String,
    name: String,
    dim: usize,
    generators: Vec<CMatrix>,
    cartan: Vec<usize>,
}

impl LieAlgebraRep {
    pub fn new(
        algebra: impl Into<String>,
        name: impl Into<String>,
        generators: Vec<CMatrix>,
        cartan: Vec<usize>,
    ) -> Result<Self> {
        let first = generators.first().ok_or_else(|| Error::NotARepresentation("no generators".into()))?;
        let dim = first.square_dim()?;
        for g in &generators {
            if g.square_dim()? != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.rows() });
            }
            if !g.is_hermitian(1e-10) {
                return Err(Error::NotHermitian(g.hermiticity_error()));
            }
        }
        if let Some(&k) = cartan.iter().find(|&&k| k >= generators.len()) {
            return Err(Error::IndexOutOfRange { index: k, dim: generators.len() });
        }
        Ok(Self { algebra: algebra.into(), name: name.into(), dim, generators, cartan })
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self) -> IrrepLabel {
        IrrepLabel::new(self.algebra.clone(), self.name.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    /// True when every generator belongs to the Cartan subalgebra.
    pub fn is_abelian(&self) -> bool {
        self.cartan.len() == self.generators.len()
    }

    /// The conjugate representation, T ↦ −Tᵀ.
    pub fn conjugate(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            name: self.conjugate_name(),
            dim: self.dim,
            generators: self.generators.iter().map(|t| -&t.transpose()).collect(),
            cartan: self.cartan.clone(),
        }
    }

    /// T ⊗ I + I ⊗ T'.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_algebra(other)?;
        let ia = CMatrix::identity(self.dim);
        let ib = CMatrix::identity(other.dim);
        let generators =
            self.generators.iter().zip(&other.generators).map(|(a, b)| &kron(a, &ib) + &kron(&ia, b)).collect();
        Ok(Self {
            algebra: self.algebra.clone(),
            name: format!("{}x{}", self.name, other.name),
            dim: self.dim * other.dim,
            generators,
            cartan: self.cartan.clone(),
        })
    }

    /// Restriction to the invariant subspace spanned by orthonormal `basis`.
    pub fn restrict(&self, name: impl Into<String>, basis: &[CVector]) -> Result<Self> {
        let b = CMatrix::from_columns(basis);
        let mut generators = Vec::with_capacity(self.generators.len());
        for t in &self.generators {
            let small = t.compress(basis);
            let leak = (&(t * &b) - &(&b * &small)).max_abs();
            if leak > 1e-10 {
                return Err(Error::NotARepresentation(format!("subspace is not invariant (leak {leak:e})")));
            }
            generators.push(small);
        }
        Self::new(self.algebra.clone(), name, generators, self.cartan.clone())
    }

    /// Weights with multiplicity, one per basis vector, as eigenvalues of the
    /// Cartan generators.
    pub fn weights(&self) -> Result<Vec<Vec<f64>>> {
        // A generic combination separates distinct weights.
        const MIX: [f64; 4] = [1.0, 0.739_085_133_2, 0.577_215_664_9, 0.414_213_562_4];
        let mut h = CMatrix::zeros(self.dim, self.dim);
        for (i, &k) in self.cartan.iter().enumerate() {
            h = &h + &self.generators[k].scale_re(MIX[i % MIX.len()] / (1 + i / MIX.len()) as f64);
        }
        let eig = hermitian_eig(&h)?;
        Ok(eig
            .vectors
            .iter()
            .map(|v| self.cartan.iter().map(|&k| v.inner(&self.generators[k].mul_vec(v)).re).collect())
            .collect())
    }

    pub fn check_same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra || self.generators.len() != other.generators.len() {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.algebra, other.algebra)));
        }
        Ok(())
    }
}

fn charge_name(charges: impl Iterator<Item = f64>) -> String {
    charges.map(|q| format!("{}", q + 0.0)).collect::<Vec<_>>().join(",")
}

impl LieAlgebraRep {
    fn conjugate_name(&self) -> String {
        if self.is_abelian() && self.dim == 1 {
            return charge_name(self.generators.iter().map(|t| -t[(0, 0)].re));
        }
        match self.name.strip_suffix("bar") {
            Some(base) if !base.is_empty() => base.into(),
            _ if self.algebra == "su3" && (self.name == "1" || self.name == "8") => self.name.clone(),
            _ => format!("{}bar", self.name),
        }
    }
}

/// The small irreps of su(3) available as symmetry actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su3Irrep {
    One,
    Three,
    ThreeBar,
    Six,
    SixBar,
    Eight,
}

impl Su3Irrep {
    pub const ALL: [Su3Irrep; 6] =
        [Su3Irrep::One, Su3Irrep::Three, Su3Irrep::ThreeBar, Su3Irrep::Six, Su3Irrep::SixBar, Su3Irrep::Eight];

    pub fn as_str(self) -> &'static str {
        match self {
            Su3Irrep::One => "1",
            Su3Irrep::Three => "3",
            Su3Irrep::ThreeBar => "3bar",
            Su3Irrep::Six => "6",
            Su3Irrep::SixBar => "6bar",
            Su3Irrep::Eight => "8",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Su3Irrep::One => 1,
            Su3Irrep::Three | Su3Irrep::ThreeBar => 3,
            Su3Irrep::Six | Su3Irrep::SixBar => 6,
            Su3Irrep::Eight => 8,
        }
    }
}

impl FromStr for Su3Irrep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" => Ok(Su3Irrep::One),
            "3" => Ok(Su3Irrep::Three),
            "3bar" | "3b" | "-3" => Ok(Su3Irrep::ThreeBar),
            "6" => Ok(Su3Irrep::Six),
            "6bar" | "6b" | "-6" => Ok(Su3Irrep::SixBar),
            "8" => Ok(Su3Irrep::Eight),
            other => Err(Error::UnknownIrrep(other.into())),
        }
    }
}

/// Gell-Mann matrices divided by two, in the standard order.
fn su3_fundamental() -> Vec<CMatrix> {
    let z = re(0.0);
    let o = re(1.0);
    let i = c(0.0, 1.0);
    let m = |e: [[C64; 3]; 3]| CMatrix::from_fn(3, 3, |r, k| e[r][k] * 0.5);
    let s = 1.0 / 3.0_f64.sqrt();
    vec![
        m([[z, o, z], [o, z, z], [z, z, z]]),
        m([[z, -i, z], [i, z, z], [z, z, z]]),
        m([[o, z, z], [z, -o, z], [z, z, z]]),
        m([[z, z, o], [z, z, z], [o, z, z]]),
        m([[z, z, -i], [z, z, z], [i, z, z]]),
        m([[z, z, z], [z, z, o], [z, o, z]]),
        m([[z, z, z], [z, z, -i], [z, i, z]]),
        m([[re(s), z, z], [z, re(s), z], [z, z, re(-2.0 * s)]]),
    ]
}

const SU3_CARTAN: [usize; 2] = [2, 7];

fn symmetric_basis(d: usize) -> Vec<CVector> {
    let s = 1.0 / 2.0_f64.sqrt();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            let mut v = CVector::zeros(d * d);
            if i == j {
                v[i * d + i] = re(1.0);
            } else {
                v[i * d + j] = re(s);
                v[j * d + i] = re(s);
            }
            out.push(v);
        }
    }
    out
}

pub fn su3_rep(irrep: Su3Irrep) -> LieAlgebraRep {
    let three = LieAlgebraRep::new("su3", "3", su3_fundamental(), SU3_CARTAN.to_vec()).expect("fundamental");
    let name = irrep.as_str();
    let mut rep = match irrep {
        Su3Irrep::One => {
            LieAlgebraRep::new("su3", "1", vec![CMatrix::zeros(1, 1); 8], SU3_CARTAN.to_vec()).expect("trivial")
        }
        Su3Irrep::Three => three,
        Su3Irrep::ThreeBar => three.conjugate(),
        Su3Irrep::Six => three.tensor(&three).and_then(|t| t.restrict(name, &symmetric_basis(3))).expect("6"),
        Su3Irrep::SixBar => {
            let tb = three.conjugate();
            tb.tensor(&tb).and_then(|t| t.restrict(name, &symmetric_basis(3))).expect("6bar")
        }
        Su3Irrep::Eight => {
            let basis: Vec<CVector> = gell_mann_basis(3)
                .expect("d = 3")
                .gammas()
                .iter()
                .skip(1)
                .map(|g| crate::linalg::vectorize(g).expect("square"))
                .collect();
            three.tensor(&three.conjugate()).and_then(|t| t.restrict(name, &basis)).expect("8")
        }
    };
    rep.name = name.into();
    rep
}

/// Ladder operators E_α = T_a ± iT_b with their roots, in the order
/// (1,0), (1/2,√3/2), (−1/2,√3/2) and then the negatives.
pub fn su3_root_operators(rep: &LieAlgebraRep) -> Result<Vec<([f64; 2], CMatrix)>> {
    if rep.algebra != "su3" || rep.generators.len() != 8 {
        return Err(Error::GroupMismatch(format!("{} is not su3", rep.algebra)));
    }
    let h = 3.0_f64.sqrt() / 2.0;
    let pairs = [((0, 1), [1.0, 0.0]), ((3, 4), [0.5, h]), ((5, 6), [-0.5, h])];
    let t = &rep.generators;
    let mut out = Vec::with_capacity(6);
    for sign in [1.0, -1.0] {
        for &((a, b), root) in &pairs {
            let e = &t[a] + &t[b].scale(c(0.0, sign));
            out.push(([sign * root[0], sign * root[1]], e));
        }
    }
    Ok(out)
}

/// One-dimensional representation of an abelian algebra with the given
/// charges, one per generator.
pub fn abelian_charge(algebra: &str, charges: &[f64]) -> Result<LieAlgebraRep> {
    let generators = charges.iter().map(|&q| CMatrix::diag(&[re(q)])).collect::<Vec<_>>();
    let name = charge_name(charges.iter().copied());
    LieAlgebraRep::new(algebra, name, generators, (0..charges.len()).collect())
}

/// U(1) acting on a qutrit as diag(1, 1, e^{iθ}).
pub fn u1_rep() -> LieAlgebraRep {
    let t = CMatrix::diag(&[re(0.0), re(0.0), re(1.0)]);
    LieAlgebraRep::new("u1", "defining", vec![t], vec![0]).expect("u1")
}

pub fn u1_charge(q: f64) -> LieAlgebraRep {
    abelian_charge("u1", &[q]).expect("u1 charge")
}

/// U(1)×U(1) acting on a qutrit as diag(1, e^{iθ1}, e^{iθ2}).
pub fn u1u1_rep() -> LieAlgebraRep {
    let t1 = CMatrix::diag(&[re(0.0), re(1.0), re(0.0)]);
    let t2 = CMatrix::diag(&[re(0.0), re(0.0), re(1.0)]);
    LieAlgebraRep::new("u1u1", "defining", vec![t1, t2], vec![0, 1]).expect("u1u1")
}

pub fn u1u1_charge(q1: f64, q2: f64) -> LieAlgebraRep {
    abelian_charge("u1u1", &[q1, q2]).expect("u1u1 charge")
}

const WEIGHT_TOL: f64 = 1e-7;

fn same_weight(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() < WEIGHT_TOL)
}

/// Number of copies of the irrep `target` inside `product`.
///
/// Abelian algebras count matching weights. For su(3) the product is peeled
/// by repeatedly removing the irrep whose highest weight is the top
/// remaining weight; only the irreps in [`Su3Irrep`] can be recognised.
pub fn lie_irrep_multiplicity(target: &LieAlgebraRep, product: &LieAlgebraRep) -> Result<usize> {
    target.check_same_algebra(product)?;
    let mut remaining = product.weights()?;
    if target.is_abelian() {
        if target.dim != 1 {
            return Err(Error::Unsupported("reducible abelian target".into()));
        }
        let w = &target.weights()?[0];
        return Ok(remaining.iter().filter(|x| same_weight(x, w)).count());
    }
    if target.algebra != "su3" {
        return Err(Error::Unsupported(format!("multiplicities for {}", target.algebra)));
    }
    let registry: Vec<(Su3Irrep, Vec<Vec<f64>>)> =
        Su3Irrep::ALL.iter().map(|&r| (r, su3_rep(r).weights().expect("weights"))).collect();
    let height = |w: &[f64]| w[0] + 2.0 * w[1];
    let top = |ws: &[Vec<f64>]| -> Vec<f64> {
        ws.iter().cloned().fold(vec![f64::NEG_INFINITY, 0.0], |a, w| if height(&w) > height(&a) { w } else { a })
    };
    let target_weights = target.weights()?;
    let target_top = top(&target_weights);
    let mut count = 0;
    while !remaining.is_empty() {
        let hw = top(&remaining);
        let (_, ws) = registry
            .iter()
            .find(|(_, ws)| same_weight(&top(ws), &hw))
            .ok_or_else(|| Error::Unsupported(format!("su3 irrep with highest weight ({:.4}, {:.4})", hw[0], hw[1])))?;
        if same_weight(&hw, &target_top) && ws.len() == target_weights.len() {
            count += 1;
        }
        for w in ws {
            let pos = remaining
                .iter()
                .position(|x| same_weight(x, w))
                .ok_or_else(|| Error::NotARepresentation("weights do not decompose into irreps".into()))?;
            remaining.swap_remove(pos);
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn structure_constants_hold(rep: &LieAlgebraRep, reference: &LieAlgebraRep) {
        // [T_a, T_b] expanded in the fundamental must agree in every rep.
        let n = reference.generators.len();
        let basis = &reference.generators;
        for a in 0..n {
            for b in 0..n {
                let comm_ref = basis[a].commutator(&basis[b]);
                let coeffs: Vec<C64> = basis.iter().map(|t| t.hs_inner(&comm_ref) * 2.0).collect();
                let comm = rep.generators[a].commutator(&rep.generators[b]);
                let mut rebuilt = CMatrix::zeros(rep.dim, rep.dim);
                for (k, f) in coeffs.iter().enumerate() {
                    rebuilt = &rebuilt + &rep.generators[k].scale(*f);
                }
                assert!(comm.approx_eq(&rebuilt, 1e-10), "commutator [{a},{b}] in {}", rep.name);
            }
        }
    }

    #[test]
    fn irreps_have_expected_dimensions_and_brackets() {
        let three = su3_rep(Su3Irrep::Three);
        for r in Su3Irrep::ALL {
            let rep = su3_rep(r);
            assert_eq!(rep.dim(), r.dim());
            structure_constants_hold(&rep, &three);
        }
    }

    #[test]
    fn fundamental_normalization() {
        let t = su3_fundamental();
        for (a, ta) in t.iter().enumerate() {
            for (b, tb) in t.iter().enumerate() {
                let expected = if a == b { 0.5 } else { 0.0 };
                assert!((ta.hs_inner(tb) - re(expected)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn fundamental_weights() {
        let mut w = su3_rep(Su3Irrep::Three).weights().unwrap();
        w.sort_by(|a, b| a[0].partial_cmp(&b[0]).unwrap());
        let s = 1.0 / (2.0 * 3.0_f64.sqrt());
        let expected = [[-0.5, s], [0.0, -2.0 * s], [0.5, s]];
        for (x, e) in w.iter().zip(&expected) {
            assert!(same_weight(x, e), "{x:?}");
        }
    }

    #[test]
    fn roots_shift_weights() {
        let rep = su3_rep(Su3Irrep::Three);
        for (root, e) in su3_root_operators(&rep).unwrap() {
            for (k, &h) in SU3_CARTAN.iter().enumerate() {
                let lhs = rep.generators[h].commutator(&e);
                assert!(lhs.approx_eq(&e.scale_re(root[k]), 1e-12));
            }
        }
    }

    #[test]
    fn six_bar_matches_conjugate_of_six() {
        let mut a = su3_rep(Su3Irrep::SixBar).weights().unwrap();
        let mut b = su3_rep(Su3Irrep::Six).conjugate().weights().unwrap();
        let key = |w: &Vec<f64>| (w[0] * 1e6).round() as i64 * 10_000_000 + (w[1] * 1e6).round() as i64;
        a.sort_by_key(key);
        b.sort_by_key(key);
        for (x, y) in a.iter().zip(&b) {
            assert!(same_weight(x, y));
        }
    }

    #[test]
    fn tensor_product_decompositions() {
        let three = su3_rep(Su3Irrep::Three);
        let bar = three.conjugate();
        let tt = three.tensor(&three).unwrap();
        let tb = three.tensor(&bar).unwrap();
        let m = |r, p: &LieAlgebraRep| lie_irrep_multiplicity(&su3_rep(r), p).unwrap();
        assert_eq!((m(Su3Irrep::Six, &tt), m(Su3Irrep::ThreeBar, &tt), m(Su3Irrep::Eight, &tt)), (1, 1, 0));
        assert_eq!((m(Su3Irrep::Eight, &tb), m(Su3Irrep::One, &tb), m(Su3Irrep::Three, &tb)), (1, 1, 0));
    }

    #[test]
    fn abelian_charges() {
        let u = u1_rep();
        let p = u.tensor(&u.conjugate()).unwrap();
        assert_eq!(lie_irrep_multiplicity(&u1_charge(0.0), &p).unwrap(), 5);
        assert_eq!(lie_irrep_multiplicity(&u1_charge(1.0), &p).unwrap(), 2);
        assert_eq!(lie_irrep_multiplicity(&u1_charge(-1.0), &p).unwrap(), 2);
        let uu = u1u1_rep();
        let pp = uu.tensor(&uu.conjugate()).unwrap();
        assert_eq!(lie_irrep_multiplicity(&u1u1_charge(0.0, 0.0), &pp).unwrap(), 3);
        assert_eq!(lie_irrep_multiplicity(&u1u1_charge(1.0, -1.0), &pp).unwrap(), 1);
        assert_eq!(u1_charge(1.0).conjugate().name(), "-1");
        assert_eq!(su3_rep(Su3Irrep::Six).conjugate().name(), "6bar");
        assert_eq!(su3_rep(Su3Irrep::Eight).conjugate().name(), "8");
    }

    #[test]
    fn parse_irrep_labels() {
        for r in Su3Irrep::ALL {
            assert_eq!(r.as_str().parse::<Su3Irrep>().unwrap(), r);
        }
        assert!("10".parse::<Su3Irrep>().is_err());
    }

    #[test]
    fn restrict_rejects_non_invariant_subspace() {
        let three = su3_rep(Su3Irrep::Three);
        assert!(three.restrict("x", &[CVector::basis(3, 0)]).is_err());
    }
}
