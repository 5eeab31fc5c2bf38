use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std float methods when std is linked
use num_traits::Float;

use super::IrrepLabel;
use crate::linalg::{kron, re, CMatrix, C64};
use crate::{Error, Result};

const MATCH_TOL: f64 = 1e-9;
const MAX_ORDER: usize = 4096;

/// A representation of a finite group with its elements listed explicitly.
///
/// `words[g]` spells element `g` as a product of generator indices, applied
/// left to right, and `mult_table[g][h]` is the index of `g·h`. For
/// projective representations `phases[g][h]` holds the cocycle in
/// D(g)D(h) = ω(g,h) D(gh).
#[derive(Clone, Debug)]
pub struct FiniteGroupRep {
    group: String,
    name: String,
    dim: usize,
    elements: Vec<CMatrix>,
    words: Vec<Vec<usize>>,
    generators: Vec<CMatrix>,
    generator_indices: Vec<usize>,
    mult_table: Vec<Vec<usize>>,
    phases: Vec<Vec<C64>>,
    projective: bool,
}

/// Returns ω with `m ≈ ω·e` and |ω| = 1, if one exists.
fn phase_match(m: &CMatrix, e: &CMatrix) -> Option<C64> {
    let ee = e.hs_inner(e);
    if ee.norm() < 1e-14 {
        return None;
    }
    let w = e.hs_inner(m) / ee;
    if (w.norm() - 1.0).abs() > MATCH_TOL {
        return None;
    }
    let scale = 1.0 + e.max_abs();
    if (m - &e.scale(w)).max_abs() <= MATCH_TOL * scale {
        Some(w)
    } else {
        None
    }
}

fn find(elements: &[CMatrix], m: &CMatrix, projective: bool) -> Option<(usize, C64)> {
    for (i, e) in elements.iter().enumerate() {
        if projective {
            if let Some(w) = phase_match(m, e) {
                return Some((i, w));
            }
        } else if m.approx_eq(e, MATCH_TOL * (1.0 + e.max_abs())) {
            return Some((i, re(1.0)));
        }
    }
    None
}

impl FiniteGroupRep {
    /// Closes the set generated by `generators` under multiplication.
    ///
    /// With `projective` set, matrices that differ by a phase are identified.
    pub fn generate(
        group: impl Into<String>,
        name: impl Into<String>,
        generators: Vec<CMatrix>,
        projective: bool,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NotARepresentation("no generators".into()));
        }
        let dim = generators[0].square_dim()?;
        for g in &generators {
            if g.square_dim()? != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.rows() });
            }
        }
        let mut elements = vec![CMatrix::identity(dim)];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (k, g) in generators.iter().enumerate() {
                let prod = &elements[i] * g;
                if find(&elements, &prod, projective).is_none() {
                    if elements.len() >= MAX_ORDER {
                        return Err(Error::GroupTooLarge(MAX_ORDER));
                    }
                    let mut w = words[i].clone();
                    w.push(k);
                    elements.push(prod);
                    words.push(w);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let generator_indices =
            generators.iter().map(|g| find(&elements, g, projective).map(|(i, _)| i).unwrap_or(0)).collect();
        let (mult_table, phases) = table(&elements, projective)?;
        Ok(Self {
            group: group.into(),
            name: name.into(),
            dim,
            elements,
            words,
            generators,
            generator_indices,
            mult_table,
            phases,
            projective,
        })
    }

    /// Another representation of the same abstract group, given by the
    /// images of its generators. Elements are built from the stored words so
    /// indices line up, and the multiplication table is verified.
    pub fn realize(&self, name: impl Into<String>, images: Vec<CMatrix>) -> Result<Self> {
        if images.len() != self.generators.len() {
            return Err(Error::NotARepresentation(format!(
                "expected {} generator images, got {}",
                self.generators.len(),
                images.len()
            )));
        }
        let dim = images[0].square_dim()?;
        for g in &images {
            if g.square_dim()? != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.rows() });
            }
        }
        let elements: Vec<CMatrix> =
            self.words.iter().map(|w| w.iter().fold(CMatrix::identity(dim), |acc, &k| &acc * &images[k])).collect();
        let mut phases = vec![vec![re(1.0); elements.len()]; elements.len()];
        for (g, row) in self.mult_table.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                let prod = &elements[g] * &elements[h];
                let ok = if self.projective {
                    phase_match(&prod, &elements[gh]).map(|w| phases[g][h] = w).is_some()
                } else {
                    prod.approx_eq(&elements[gh], MATCH_TOL * (1.0 + prod.max_abs()))
                };
                if !ok {
                    return Err(Error::NotARepresentation(format!(
                        "product of elements {g} and {h} does not match the group table"
                    )));
                }
            }
        }
        Ok(Self {
            group: self.group.clone(),
            name: name.into(),
            dim,
            elements,
            words: self.words.clone(),
            generators: images,
            generator_indices: self.generator_indices.clone(),
            mult_table: self.mult_table.clone(),
            phases,
            projective: self.projective,
        })
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self) -> IrrepLabel {
        IrrepLabel::new(self.group.clone(), self.name.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[CMatrix] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult_table
    }

    pub fn phases(&self) -> &[Vec<C64>] {
        &self.phases
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// True when the cocycle is trivial, so D is an ordinary representation.
    pub fn is_linear(&self) -> bool {
        self.phases.iter().flatten().all(|w| (w - re(1.0)).norm() < 1e-9)
    }

    pub fn characters(&self) -> Vec<C64> {
        self.elements.iter().map(CMatrix::trace).collect()
    }

    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        out.name = conj_name(&self.name);
        out.elements = self.elements.iter().map(CMatrix::conj).collect();
        out.generators = self.generators.iter().map(CMatrix::conj).collect();
        out.phases = self.phases.iter().map(|r| r.iter().map(C64::conj).collect()).collect();
        out
    }

    /// Tensor product over the same group, element by element.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let mut out = self.clone();
        out.name = format!("{}x{}", self.name, other.name);
        out.dim = self.dim * other.dim;
        out.elements = self.elements.iter().zip(&other.elements).map(|(a, b)| kron(a, b)).collect();
        out.generators = self.generators.iter().zip(&other.generators).map(|(a, b)| kron(a, b)).collect();
        out.phases = self
            .phases
            .iter()
            .zip(&other.phases)
            .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| a * b).collect())
            .collect();
        Ok(out)
    }

    pub fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group || self.order() != other.order() || self.mult_table != other.mult_table {
            return Err(Error::GroupMismatch(format!(
                "{} (order {}) vs {} (order {})",
                self.group,
                self.order(),
                other.group,
                other.order()
            )));
        }
        Ok(())
    }
}

fn conj_name(name: &str) -> String {
    match name.strip_suffix("bar") {
        Some(base) if !base.is_empty() => base.to_string(),
        _ => format!("{name}bar"),
    }
}

type Table = (Vec<Vec<usize>>, Vec<Vec<C64>>);

fn table(elements: &[CMatrix], projective: bool) -> Result<Table> {
    let n = elements.len();
    let mut mult = vec![vec![0; n]; n];
    let mut phases = vec![vec![re(1.0); n]; n];
    for g in 0..n {
        for h in 0..n {
            let prod = &elements[g] * &elements[h];
            let (k, w) = find(elements, &prod, projective)
                .ok_or_else(|| Error::NotARepresentation("set is not closed under multiplication".into()))?;
            mult[g][h] = k;
            phases[g][h] = w;
        }
    }
    Ok((mult, phases))
}

/// (1/|G|) Σ_g conj(χ_target(g)) χ_product(g), required to be a non-negative
/// integer.
pub fn irrep_multiplicity(target: &FiniteGroupRep, product: &FiniteGroupRep) -> Result<usize> {
    target.check_same_group(product)?;
    if !target.is_linear() || !product.is_linear() {
        return Err(Error::Unsupported("characters of projective representations".into()));
    }
    let sum: C64 = target.characters().iter().zip(product.characters()).map(|(a, b)| a.conj() * b).sum();
    let m = sum / re(target.order() as f64);
    let rounded = m.re.round();
    if m.im.abs() > 1e-6 || (m.re - rounded).abs() > 1e-6 || rounded < 0.0 {
        return Err(Error::NonIntegerMultiplicity(m.re));
    }
    Ok(rounded as usize)
}

/// Z_n generated by a single matrix `x` with xⁿ = I.
pub fn cyclic_rep(n: usize, x: CMatrix) -> Result<FiniteGroupRep> {
    let dim = x.square_dim()?;
    if n == 0 {
        return Err(Error::GeneratorOrder { n });
    }
    let xn = x.pow(n);
    if !xn.approx_eq(&CMatrix::identity(dim), 1e-10) {
        return Err(Error::GeneratorOrder { n });
    }
    let elements: Vec<CMatrix> = (0..n).map(|k| x.pow(k)).collect();
    let words = (0..n).map(|k| vec![0; k]).collect();
    let mult_table = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
    Ok(FiniteGroupRep {
        group: format!("Z{n}"),
        name: "defining".into(),
        dim,
        elements,
        words,
        generators: vec![x],
        generator_indices: vec![if n == 1 { 0 } else { 1 }],
        mult_table,
        phases: vec![vec![re(1.0); n]; n],
        projective: false,
    })
}

/// One-dimensional irrep of Z_n where the generator acts as e^{2πik/n}.
pub fn cyclic_irrep(n: usize, k: usize) -> Result<FiniteGroupRep> {
    let w = C64::from_polar(1.0, 2.0 * core::f64::consts::PI * (k % n.max(1)) as f64 / n as f64);
    let mut r = cyclic_rep(n, CMatrix::diag(&[w]))?;
    r.name = (k % n).to_string();
    Ok(r)
}

/// Discrete Fourier matrix H_jk = ω^{jk}/√d with ω = e^{2πi/d}.
pub fn hadamard(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let s = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, d, |j, k| C64::from_polar(s, 2.0 * core::f64::consts::PI * ((j * k) % d) as f64 / d as f64)))
}

/// The cyclic group generated by the d-dimensional Hadamard matrix
/// (order 4 for d > 2, order 2 for d = 2).
pub fn hadamard_group(d: usize) -> Result<FiniteGroupRep> {
    let h = hadamard(d)?;
    let n = if d == 2 { 2 } else { 4 };
    let mut r = cyclic_rep(n, h)?;
    r.name = "hadamard".into();
    Ok(r)
}

/// Generalized Pauli operator X^m Z^n with X|j⟩ = |j+1⟩, Z|j⟩ = ω^j|j⟩.
pub fn pauli_op(d: usize, m: usize, n: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if m >= d || n >= d {
        return Err(Error::IndexOutOfRange { index: m.max(n), dim: d });
    }
    let x = CMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { re(1.0) } else { re(0.0) });
    let z = CMatrix::diag(
        &(0..d).map(|j| C64::from_polar(1.0, 2.0 * core::f64::consts::PI * j as f64 / d as f64)).collect::<Vec<_>>(),
    );
    Ok(&x.pow(m % d) * &z.pow(n % d))
}

/// The Weyl-Heisenberg group modulo phases: d² elements, projective.
pub fn pauli_group(d: usize) -> Result<FiniteGroupRep> {
    FiniteGroupRep::generate(format!("Pauli{d}"), "defining", vec![pauli_op(d, 1, 0)?, pauli_op(d, 0, 1)?], true)
}

/// The one-dimensional irrep of the Pauli group in which X ↦ ω^a and
/// Z ↦ ω^b, realized on the element list of [`pauli_group`].
pub fn pauli_irrep(d: usize, a: usize, b: usize) -> Result<FiniteGroupRep> {
    let parent = pauli_group(d)?;
    let w = |k: usize| CMatrix::diag(&[C64::from_polar(1.0, 2.0 * core::f64::consts::PI * (k % d) as f64 / d as f64)]);
    parent.realize(format!("{}{}", a % d, b % d), vec![w(a), w(b)])
}

/// S3 acting on a qutrit by permuting basis states, with its three irreps
/// realized on the same element list.
#[derive(Clone, Debug)]
pub struct S3Reps {
    pub defining: FiniteGroupRep,
    pub trivial: FiniteGroupRep,
    pub sign: FiniteGroupRep,
    pub standard: FiniteGroupRep,
}

impl S3Reps {
    pub fn irreps(&self) -> [&FiniteGroupRep; 3] {
        [&self.trivial, &self.sign, &self.standard]
    }

    /// Looks up an irrep by its label: `1`, `1'` (or `sign`) and `2`.
    pub fn irrep(&self, id: &str) -> Result<&FiniteGroupRep> {
        match id {
            "1" | "trivial" => Ok(&self.trivial),
            "1'" | "1p" | "sign" => Ok(&self.sign),
            "2" | "standard" => Ok(&self.standard),
            _ => Err(Error::UnknownIrrep(id.into())),
        }
    }
}

/// Generators are the transpositions (0 1) and (1 2).
pub fn s3_reps() -> S3Reps {
    let perm = |p: [usize; 3]| CMatrix::from_fn(3, 3, |i, j| if i == p[j] { re(1.0) } else { re(0.0) });
    let s1 = perm([1, 0, 2]);
    let s2 = perm([0, 2, 1]);
    let defining = FiniteGroupRep::generate("S3", "defining", vec![s1, s2], false).expect("S3 closes");
    let one = CMatrix::identity(1);
    let minus = CMatrix::diag(&[re(-1.0)]);
    let trivial = defining.realize("1", vec![one.clone(), one]).expect("trivial irrep");
    let sign = defining.realize("1'", vec![minus.clone(), minus]).expect("sign irrep");
    let h = 3.0_f64.sqrt() / 2.0;
    let o1 = CMatrix::from_real(2, &[1.0, 0.0, 0.0, -1.0]);
    let o2 = CMatrix::from_real(2, &[-0.5, h, h, 0.5]);
    let standard = defining.realize("2", vec![o1, o2]).expect("standard irrep");
    S3Reps { defining, trivial, sign, standard }
}
