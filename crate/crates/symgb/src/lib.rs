//! Exact computation with finitely generated ideals of eventually symmetric
//! grevlex power series in infinitely many variables: finite equivariant
//! Gröbner bases, generic initial ideals by random change of coordinates,
//! and the recursive stratification that enumerates every possible generic
//! initial ideal of k forms of fixed degrees together with the
//! characteristic and coefficient conditions under which each occurs.
//!
//! Layout:
//! - [`monomial`], [`coeff`], [`poly`]: sparse grevlex monomials over an
//!   unbounded variable set and exact coefficient arithmetic;
//! - [`buchberger`]: division and reduced Gröbner bases in finitely many
//!   variables (the classical engine and oracle);
//! - [`invariant`]: finite representations of eventually invariant series
//!   and their product / remainder / S-series calculus;
//! - [`symmetric`]: the equivariant Buchberger loop and the
//!   truncation-stabilization oracle certifying it;
//! - [`gin`]: generic initial ideals by random coordinate change;
//! - [`param`], [`fraction_free`], [`stillman`]: the universal coefficient
//!   ring, prime harvesting, and the stratification of coefficient space by
//!   generic initial ideal;
//! - [`text`]: the shared parse/print grammar.

pub mod buchberger;
pub mod coeff;
pub mod error;
pub mod fq;
pub mod fraction_free;
pub mod gin;
pub mod invariant;
pub mod monomial;
pub mod param;
pub mod poly;
pub mod stillman;
pub mod symmetric;
pub mod text;

pub use coeff::{is_prime_u64, Coeff, FieldCoeff, Fp};
pub use error::{Error, Result};
pub use invariant::Representation;
pub use monomial::{grevlex_cmp, Monomial, Perm};
pub use poly::Poly;
pub use text::FieldSpec;
