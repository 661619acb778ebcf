//! Petit algebras S_f = K[t;σ]/K[t;σ]f over finite fields: skew polynomial
//! arithmetic, bounds and similarity, isotopy orbits and their closed-form
//! count, and the associated MRD spread-set codes.

pub mod arith;
pub mod cli;
pub mod error;
pub mod field;
pub mod gf;
pub mod linalg;
pub mod mrd;
pub mod orbits;
pub mod petit;
pub mod skewpoly;
pub mod upoly;

pub use error::{Error, Result};
