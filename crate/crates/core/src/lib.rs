//! Exact computations behind crossed products by endomorphisms.
//!
//! Everything here works with arbitrary-precision integers and is a pure
//! function of its inputs. The crate is `no_std` and only needs `alloc`.
//!
//! - [`matrix`]: integer matrices, Smith normal form, integer linear systems.
//! - [`abelian`]: finitely generated abelian groups in canonical form,
//!   presentations, homomorphisms, kernels and cokernels.
//! - [`colimit`]: the direct limit of a group along an endomorphism (the
//!   K-group of a dilation) and `ker`/`coker` of `Id - f` on it.
//! - [`kcrossed`]: the Pimsner–Voiculescu sequence for `A ⋊ ℕ`, scaling of
//!   K-maps, and the closed forms for the Cuntz-algebra family.
//! - [`graphalg`]: hereditary saturated vertex sets, ideal lattices,
//!   primitive ideal posets and subquotient K-groups of graph algebras.
#![no_std]

extern crate alloc;

pub mod abelian;
pub mod colimit;
mod error;
pub mod graphalg;
pub mod kcrossed;
pub mod matrix;
pub mod numtheory;
pub mod poset;

pub use error::{Error, Result};

pub use num_bigint::BigInt;
