//! Counting sequences `G_n = n! [z^n] (1 - a z^e)^(-b)`, computed two ways.

use num_traits::Zero;
use serde::Serialize;

use super::Series;
use crate::error::Result;
use crate::rational::{factorial, int, Rational};

/// `(1 - a z^e)^(-b)` together with a known prefix of its EGF values.
#[derive(Clone, Debug, Serialize)]
pub struct CountingFamily {
    pub name: &'static str,
    /// OEIS identifier of the sequence.
    pub tag: &'static str,
    pub a: i64,
    pub e: usize,
    /// `b` as `(numerator, denominator)`.
    pub b: (i64, i64),
    /// Index `n` of the first listed value; values step through multiples of `e`.
    pub start: usize,
    pub expected: &'static [i64],
}

pub const FAMILIES: &[CountingFamily] = &[
    CountingFamily {
        name: "d1",
        tag: "A000142",
        a: 1,
        e: 1,
        b: (1, 1),
        start: 0,
        expected: &[1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800],
    },
    CountingFamily {
        name: "d2",
        tag: "A001147",
        a: 2,
        e: 1,
        b: (1, 2),
        start: 0,
        expected: &[1, 1, 3, 15, 105, 945, 10395, 135135, 2027025, 34459425],
    },
    CountingFamily {
        name: "d3",
        tag: "A007559",
        a: 3,
        e: 1,
        b: (1, 3),
        start: 1,
        expected: &[
            1,
            4,
            28,
            280,
            3640,
            58240,
            1106560,
            24344320,
            608608000,
            17041024000,
        ],
    },
    CountingFamily {
        name: "quad",
        tag: "A001813",
        a: 4,
        e: 1,
        b: (1, 2),
        start: 0,
        expected: &[1, 2, 12, 120, 1680, 30240, 665280, 17297280, 518918400],
    },
    CountingFamily {
        name: "even",
        tag: "A126934",
        a: 2,
        e: 2,
        b: (1, 2),
        start: 0,
        expected: &[1, 2, 36, 1800, 176400, 28576800, 6915585600, 2337467932800],
    },
];

pub fn family(name: &str) -> Option<&'static CountingFamily> {
    FAMILIES.iter().find(|f| f.name == name)
}

/// The family `(1 - d z)^(-1/d)` for any positive `d`.
pub fn d_family(d: i64) -> CountingFamily {
    CountingFamily {
        name: "d",
        tag: "",
        a: d,
        e: 1,
        b: (1, d),
        start: 0,
        expected: &[],
    }
}

impl CountingFamily {
    fn b(&self) -> Rational {
        Rational::new(self.b.0.into(), self.b.1.into())
    }

    /// The indices `n` of the first `count` listed values.
    pub fn indices(&self, count: usize) -> Vec<usize> {
        let first = self.start.div_ceil(self.e) * self.e;
        (0..count).map(|i| first + i * self.e).collect()
    }

    /// `G_n = (n! / m!) prod_{j<m} a (b + j)` for `n = e m`, zero otherwise.
    pub fn product_formula(&self, n: usize) -> Rational {
        if !n.is_multiple_of(self.e) {
            return Rational::zero();
        }
        let m = n / self.e;
        let b = self.b();
        let prod: Rational = (0..m).map(|j| int(self.a) * (&b + int(j as i64))).product();
        factorial(n) / factorial(m) * prod
    }

    /// `n! [z^n]` of the series expanded by [`Series::pow_rational`].
    pub fn egf_values(&self, n_max: usize) -> Result<Vec<Rational>> {
        let base = &Series::one(n_max) - &Series::monomial(int(self.a), self.e, n_max);
        let s = base.pow_rational(&-self.b())?;
        Ok((0..=n_max).map(|n| s.coeff(n) * factorial(n)).collect())
    }

    /// Both computations agree with each other and with the listed prefix.
    pub fn check(&self, count: usize) -> Result<bool> {
        let count = count.min(self.expected.len());
        let idx = self.indices(count);
        let egf = self.egf_values(idx.last().copied().unwrap_or(0))?;
        Ok(idx.iter().zip(self.expected).all(|(&n, &want)| {
            let p = self.product_formula(n);
            p == egf[n] && p == int(want)
        }))
    }
}
