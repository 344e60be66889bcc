//! High-precision evaluation of Euler's zeta and phi values, multiple zeta
//! values, polylogarithms, primitive Feynman graph periods and the
//! electron anomalous magnetic moment series, together with a small
//! symbolic algebra of motivic periods and their coaction.

pub mod error;
pub mod numkernel;

pub use error::{Error, Result};
pub use numkernel::{BigReal, Rational};
pub mod eulerfun;
pub mod feynper;
pub mod g2;
pub mod mzv;
pub mod symbolic;
