use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::QuadMatrix;

/// One generator or its inverse. `gen` is zero-based, so `g1` is `gen == 0`.
///
/// The derived order is g1 < g1⁻¹ < g2 < g2⁻¹ < …, which is the order used for
/// lexicographic tie-breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u8, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.gen + 1)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A word in the generators, read as a matrix product from left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(gen: u8, inverse: bool) -> Self {
        Word(vec![Letter::new(gen, inverse)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Concatenation with free cancellation of adjacent inverse letters.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        for &l in &other.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Exact product of the generator matrices named by the word.
    pub fn evaluate(&self, generators: &[QuadMatrix], radicand: u32) -> Result<QuadMatrix> {
        let mut m = QuadMatrix::identity(radicand);
        for l in &self.0 {
            let g = generators
                .get(l.gen as usize)
                .ok_or_else(|| Error::Parse(format!("no generator g{}", l.gen + 1)))?;
            let g = if l.inverse { g.inverse()? } else { g.clone() };
            m = &m * &g;
        }
        Ok(m)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Id");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `Id`, `g1^-1*g3`, `g1^-1 g3`, `g1^-1g3` and integer exponents
    /// such as `g2^3`.
    fn from_str(s: &str) -> Result<Word> {
        let compact: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        if compact.is_empty() || compact.eq_ignore_ascii_case("id") {
            return Ok(Word::identity());
        }
        let bad = || Error::Parse(format!("malformed word {s:?}"));
        let bytes = compact.as_bytes();
        let mut i = 0;
        let mut word = Word::identity();
        while i < bytes.len() {
            if bytes[i] != b'g' {
                return Err(bad());
            }
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let index: u8 = compact[start..i].parse().map_err(|_| bad())?;
            if index == 0 {
                return Err(bad());
            }
            let mut exponent: i32 = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                if i < bytes.len() && bytes[i] == b'-' {
                    i += 1;
                }
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                exponent = compact[start..i].parse().map_err(|_| bad())?;
            }
            let letter = Letter::new(index - 1, exponent < 0);
            let power = Word(vec![letter; exponent.unsigned_abs() as usize]);
            word = word.concat(&power);
        }
        Ok(word)
    }
}
