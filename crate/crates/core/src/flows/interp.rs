//! Exact polynomial interpolation.

use num_traits::Zero;

use crate::rational::Rational;

/// Coefficients (lowest degree first) of the unique polynomial of degree
/// below `xs.len()` through the points `(xs[i], ys[i])`. The `xs` must be
/// distinct.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    // Newton divided differences, in place.
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form: p = dd[n-1]; p = p (x - xs[i]) + dd[i].
    let mut poly = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut next = vec![Rational::zero(); n];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly
}
