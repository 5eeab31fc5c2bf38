//! Construction, validation and analysis of qudit quantum channels through
//! their covariance and symmetry properties.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats and the command-line tool live in
//! the `covchan` crate.
//!
//! Module map:
//!
//! * [`linalg`]: dense complex matrices, Kronecker products, vectorization,
//!   Hermitian eigensolver and null spaces.
//! * [`basis`]: generalized Gell-Mann bases and coherence vectors.
//! * [`channel`]: Kraus channels, Choi matrices, classification, affine form.
//! * [`group`]: finite groups and Lie-algebra representations used as
//!   symmetry actions, including the small irreps of su(3).
//! * [`solver`]: intertwiner solver for the covariance and symmetry equations.
//! * [`zoo`]: named channel families with their parameter constraints.
//! * [`capacity`]: entropies, Holevo quantity and one-shot capacity.
//! * [`optimize`]: Nelder-Mead minimizer used by the capacity search.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

pub mod basis;
pub mod capacity;
pub mod channel;
mod error;
pub mod group;
pub mod linalg;
pub mod optimize;
pub mod random;
pub mod solver;
pub mod zoo;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
