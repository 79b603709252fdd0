//! Exact construction, verification, enumeration and classification of
//! uniserial representations of the solvable Lie algebras `g = <x> ⋉ V`,
//! where `V` is abelian and `x` acts on `V` through a prescribed Jordan form.
//!
//! All arithmetic is exact over the rationals.

#![allow(clippy::result_large_err)]

pub mod algebra;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod linalg;
pub mod matrix;
mod mpoly;
pub mod poly;
pub mod rational;
pub mod sl2;

pub use error::{Error, Refusal, Result};
pub use matrix::Matrix;
pub use rational::{q, Rational};
