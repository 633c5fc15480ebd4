//! Exact computer algebra for boson normal ordering, generalized Stirling
//! numbers, one-parameter substitution groups and Riordan arrays.

pub mod error;
pub mod flows;
pub mod rational;
pub mod riordan;
pub mod series;
pub mod striped;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{PowerTable, PuiseuxSeries, RefSeq, Series};
