//! Defining equations of Rees algebras of height-two ideals in `k[x0,x1]`,
//! computed through the tower of approximations `E_m` and cross-checked by
//! an independent Gröbner-basis saturation oracle.

pub mod cli;
pub mod combinat;
pub mod error;
pub mod generators;
pub mod gradedlin;
pub mod oracle;
pub mod ring;
pub mod syzygy;
pub mod tower;

pub use error::{Error, Result};
