//! Normal ordering by literal rewriting, kept independent of the structure
//! constants so each can check the other.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use super::{BosonWord, Letter, Mode, NormalForm};
use crate::rational::Rational;

/// Repeatedly rewrites the leftmost `a a+` into `a+ a + 1` (or `+ c` when
/// the central element is tracked) until no word has an `a` before an `a+`.
pub fn normal_order_by_rewriting(word: &BosonWord, mode: Mode) -> NormalForm {
    // c is central, so it is pulled out up front as an exponent.
    let m = word.count(Letter::C);
    let core: Vec<Letter> = word.letters().iter().copied().filter(|&l| l != Letter::C).collect();
    let mut pending: BTreeMap<(Vec<Letter>, usize), Rational> = BTreeMap::new();
    pending.insert((core, m), Rational::one());
    let mut done: Vec<((usize, usize, usize), Rational)> = Vec::new();

    while let Some(((w, m), coeff)) = pending.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        let redex = w.windows(2).position(|p| p == [Letter::A, Letter::B]);
        match redex {
            None => {
                let i = w.iter().filter(|&&l| l == Letter::B).count();
                done.push(((i, w.len() - i, m), coeff));
            }
            Some(p) => {
                let mut swapped = w.clone();
                swapped.swap(p, p + 1);
                let mut contracted = w;
                contracted.drain(p..p + 2);
                *pending.entry((swapped, m)).or_insert_with(Rational::zero) += &coeff;
                *pending.entry((contracted, m + 1)).or_insert_with(Rational::zero) += &coeff;
            }
        }
    }
    NormalForm::from_terms(done, mode)
}
