use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// Reference sequence `(c_n)` fixing how generating-function coefficients
/// are weighted: `f_n = c_n [x^n] f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RefSeq {
    /// `c_n = 1`.
    Ordinary,
    /// `c_n = n!`.
    Exponential,
    /// Explicit prefix `c_0, c_1, ...`; terms past the end are unavailable.
    Custom(#[serde(with = "crate::rational::serde_vec")] Vec<Rational>),
}

impl RefSeq {
    /// Validates a custom sequence: `c_0 = 1` and no zero terms.
    pub fn custom(terms: Vec<Rational>) -> Result<RefSeq> {
        match terms.first() {
            None => return Err(Error::InvalidRefSeq("empty sequence".into())),
            Some(c0) if !c0.is_one() => {
                return Err(Error::InvalidRefSeq("c_0 must be 1".into()))
            }
            _ => {}
        }
        if let Some(i) = terms.iter().position(Zero::is_zero) {
            return Err(Error::InvalidRefSeq(format!("c_{i} is zero")));
        }
        Ok(RefSeq::Custom(terms))
    }

    pub fn term(&self, n: usize) -> Result<Rational> {
        match self {
            RefSeq::Ordinary => Ok(Rational::one()),
            RefSeq::Exponential => Ok(factorial(n)),
            RefSeq::Custom(v) => v.get(n).cloned().ok_or(Error::OutOfRange {
                index: n,
                trunc: v.len().saturating_sub(1),
            }),
        }
    }

    /// `c_0 .. c_n`.
    pub fn terms(&self, n: usize) -> Result<Vec<Rational>> {
        (0..=n).map(|i| self.term(i)).collect()
    }

    /// Short label used by the CLI and JSON output.
    pub fn label(&self) -> &'static str {
        match self {
            RefSeq::Ordinary => "ogf",
            RefSeq::Exponential => "egf",
            RefSeq::Custom(_) => "custom",
        }
    }
}
