//! Groups and representations acting on qudits.
//!
//! Finite groups are stored with their full element list and a word over the
//! generators for every element, so several representations of the same
//! abstract group stay aligned element by element. Continuous groups are
//! handled through Hermitian generators of their Lie algebra.

mod finite;
mod lie;

use alloc::string::String;

pub use finite::{
    cyclic_irrep, cyclic_rep, hadamard, hadamard_group, irrep_multiplicity, pauli_group, pauli_irrep, pauli_op,
    s3_reps, FiniteGroupRep, S3Reps,
};
pub use lie::{
    abelian_charge, lie_irrep_multiplicity, su3_rep, su3_root_operators, u1_charge, u1_rep, u1u1_charge, u1u1_rep,
    LieAlgebraRep, Su3Irrep,
};

use crate::Result;

/// Name of an irreducible representation within its group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepLabel {
    pub group: String,
    pub id: String,
}

impl IrrepLabel {
    pub fn new(group: impl Into<String>, id: impl Into<String>) -> Self {
        Self { group: group.into(), id: id.into() }
    }
}

impl core::fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}", self.group, self.id)
    }
}

/// A representation of either kind.
#[derive(Clone, Copy, Debug)]
pub enum Rep<'a> {
    Finite(&'a FiniteGroupRep),
    Lie(&'a LieAlgebraRep),
}

impl Rep<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Rep::Finite(r) => r.dim(),
            Rep::Lie(r) => r.dim(),
        }
    }

    pub fn label(&self) -> IrrepLabel {
        match self {
            Rep::Finite(r) => r.label(),
            Rep::Lie(r) => r.label(),
        }
    }
}

/// Multiplicity of `target` inside `product`, by characters for finite
/// groups and by weights for Lie algebras.
pub fn multiplicity(target: Rep<'_>, product: Rep<'_>) -> Result<usize> {
    match (target, product) {
        (Rep::Finite(t), Rep::Finite(p)) => irrep_multiplicity(t, p),
        (Rep::Lie(t), Rep::Lie(p)) => lie_irrep_multiplicity(t, p),
        _ => Err(crate::Error::GroupMismatch("finite and Lie representations mixed".into())),
    }
}

/// The product D1 ⊗ conj(D2) that must contain Ω for intertwiners to exist.
pub fn intertwiner_product(d1: Rep<'_>, d2: Rep<'_>) -> Result<RepOwned> {
    match (d1, d2) {
        (Rep::Finite(a), Rep::Finite(b)) => Ok(RepOwned::Finite(a.tensor(&b.conjugate())?)),
        (Rep::Lie(a), Rep::Lie(b)) => Ok(RepOwned::Lie(a.tensor(&b.conjugate())?)),
        _ => Err(crate::Error::GroupMismatch("finite and Lie representations mixed".into())),
    }
}

/// Owned counterpart of [`Rep`].
#[derive(Clone, Debug)]
pub enum RepOwned {
    Finite(FiniteGroupRep),
    Lie(LieAlgebraRep),
}

impl RepOwned {
    pub fn as_rep(&self) -> Rep<'_> {
        match self {
            RepOwned::Finite(r) => Rep::Finite(r),
            RepOwned::Lie(r) => Rep::Lie(r),
        }
    }
}
