//! Exact birationality tests for monomial rational maps, Cremona
//! classification for squarefree monomial sets, and the supporting integer
//! linear algebra.
//!
//! A set `F` of monomials of degree `d` in `x_1..x_n` is modelled by
//! [`MonomialSet`]; its log-matrix has the exponent vectors as columns.
//! [`decide::decide`] answers whether `k[F] ⊂ k[x_d]` is birational, which is
//! the same as the map defined by `F` being birational onto its image.

pub mod cli;
mod combinatorics;
pub mod cremona;
pub mod decide;
pub mod error;
pub mod exactla;
pub mod matrix;
pub mod monomial;
pub mod polymatroid;
pub mod termmat;
mod union_find;

pub use decide::{decide, BirationalityReport, Criterion, Verdict};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use monomial::{Monomial, MonomialSet, NormalizationRecord};
