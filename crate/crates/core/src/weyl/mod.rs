//! The Heisenberg-Weyl algebra: boson words, normal ordering, generalized
//! Stirling tables and the Bargmann-Fock matrix representation.

mod matrix;
mod normal;
pub mod rewrite;
mod stirling;

pub use matrix::{to_matrix, RowFiniteMatrix};
pub use normal::{Mode, NormalForm};
pub use stirling::{balanced_stirling_explicit, gen_stirling, GSTable};

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use num_traits::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Annihilation `a`.
    A,
    /// Creation `a+`.
    B,
    /// Central `c`.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BosonWord {
    letters: Vec<Letter>,
}

impl BosonWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BosonWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Creators minus annihilators.
    pub fn excess(&self) -> i64 {
        self.letters.iter().fold(0, |e, l| match l {
            Letter::A => e - 1,
            Letter::B => e + 1,
            Letter::C => e,
        })
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Normal form via the closed-form structure constants.
    pub fn normal_order(&self, mode: Mode) -> NormalForm {
        self.letters
            .iter()
            .fold(NormalForm::identity(mode), |acc, &l| {
                acc.mul(&NormalForm::letter(l, mode))
            })
    }
}

impl fmt::Display for BosonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::A => "a",
                Letter::B => "a+",
                Letter::C => "c",
            })
            .collect();
        write!(f, "{}", names.join(" "))
    }
}

fn parse_exponent(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    if bytes.get(*pos) != Some(&b'^') {
        return Ok(1);
    }
    *pos += 1;
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    let digits = std::str::from_utf8(&bytes[start..*pos]).unwrap_or_default();
    match digits.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(Error::Parse {
            pos: start,
            msg: "expected a positive exponent after '^'".into(),
        }),
    }
}

/// Parses words such as `"a+^2 a"`, `"(a a+)^1 c^2"` or `"b a"`; `b` is a
/// synonym for `a+`. Whitespace and parentheses only separate tokens.
pub fn parse_word(text: &str) -> Result<BosonWord> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    while pos < bytes.len() {
        let start = pos;
        let letter = match bytes[pos] {
            b' ' | b'\t' | b'\n' | b'\r' | b'(' | b')' => {
                pos += 1;
                continue;
            }
            b'a' => {
                pos += 1;
                if bytes.get(pos) == Some(&b'+') {
                    pos += 1;
                    Letter::B
                } else {
                    Letter::A
                }
            }
            b'b' => {
                pos += 1;
                Letter::B
            }
            b'c' => {
                pos += 1;
                Letter::C
            }
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", text[start..].chars().next().unwrap()),
                })
            }
        };
        let k = parse_exponent(bytes, &mut pos)?;
        letters.extend(std::iter::repeat_n(letter, k));
    }
    Ok(BosonWord { letters })
}

/// Parses operators in the `X`/`D` notation of the Bargmann-Fock picture,
/// e.g. `"X2D"`, `"X3D2"`, `"XD + 2X"` or `"DX"`. A factor is `X` or `D`
/// with an optional exponent; factors in a term multiply left to right, so
/// `"DX"` normal orders to `XD + 1`. Terms may carry a rational coefficient.
pub fn parse_omega(text: &str) -> Result<NormalForm> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut total = NormalForm::zero(Mode::Hw);
    let mut sign = Rational::one();
    let mut expect_term = true;
    let skip_ws = |pos: &mut usize| {
        while bytes.get(*pos).is_some_and(|b| b.is_ascii_whitespace() || *b == b'*') {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        match bytes[pos] {
            b'+' | b'-' if expect_term && sign.is_one() && bytes[pos] == b'-' => {
                sign = -sign;
                pos += 1;
                continue;
            }
            b'+' | b'-' if !expect_term => {
                sign = if bytes[pos] == b'-' { -Rational::one() } else { Rational::one() };
                expect_term = true;
                pos += 1;
                continue;
            }
            _ => {}
        }
        if !expect_term {
            return Err(Error::Parse {
                pos,
                msg: "expected '+' or '-' between terms".into(),
            });
        }
        let start = pos;
        while bytes.get(pos).is_some_and(|b| b.is_ascii_digit() || *b == b'/') {
            pos += 1;
        }
        let coeff = if pos > start {
            parse_rational(&text[start..pos]).map_err(|_| Error::Parse {
                pos: start,
                msg: "invalid coefficient".into(),
            })?
        } else {
            Rational::one()
        };
        skip_ws(&mut pos);
        let mut term = NormalForm::identity(Mode::Hw);
        let mut factors = 0;
        loop {
            skip_ws(&mut pos);
            let letter = match bytes.get(pos) {
                Some(b'X' | b'x') => Letter::B,
                Some(b'D' | b'd') => Letter::A,
                _ => break,
            };
            pos += 1;
            let dstart = pos;
            while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
                pos += 1;
            }
            let k = if pos > dstart {
                text[dstart..pos].parse::<usize>().map_err(|_| Error::Parse {
                    pos: dstart,
                    msg: "invalid exponent".into(),
                })?
            } else {
                parse_exponent(bytes, &mut pos)?
            };
            for _ in 0..k {
                term = term.mul(&NormalForm::letter(letter, Mode::Hw));
            }
            factors += 1;
        }
        if factors == 0 && pos == start {
            return Err(Error::Parse {
                pos,
                msg: "expected a term".into(),
            });
        }
        total = total.add(&term.scale(&(&sign * coeff)));
        sign = Rational::one();
        expect_term = false;
    }
    if expect_term {
        return Err(Error::Parse {
            pos,
            msg: "expected a term".into(),
        });
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
