//! Words in free groups on meridians `m_i` or string-link generators `x_ij`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod hall;
mod simple;

pub use hall::{decompose_iterated, decompose_to_simple, hall_collect, lcs_degree, DecomposeError, HallCollection, HallFactor, LcsDegree};
pub use simple::{Layer, Side, SimpleCommutatorSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreewordError {
    #[error("generator x{0}{1} needs 1 <= i < j")]
    BadPair(usize, usize),
    #[error("meridian index must be >= 1")]
    BadMeridian,
    #[error("malformed commutator spec: {0}")]
    MalformedSpec(String),
}

/// A free generator: a meridian `m_i` or a pure-braid style generator `x_ij`
/// with `i < j`. The two alphabets never mix inside one computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Meridian(usize),
    /// Always `Pair(i, j)` with `1 <= i < j`; build through [`Generator::pair`].
    Pair(usize, usize),
}

impl Generator {
    pub fn meridian(i: usize) -> Result<Self, FreewordError> {
        if i == 0 {
            return Err(FreewordError::BadMeridian);
        }
        Ok(Generator::Meridian(i))
    }

    pub fn pair(i: usize, j: usize) -> Result<Self, FreewordError> {
        if i == 0 || i >= j {
            return Err(FreewordError::BadPair(i, j));
        }
        Ok(Generator::Pair(i, j))
    }

    /// `x_{min(a,b), max(a,b)}`.
    pub fn joining(a: usize, b: usize) -> Result<Self, FreewordError> {
        Self::pair(a.min(b), a.max(b))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Meridian(i) => write!(f, "m{i}"),
            Generator::Pair(i, j) if i < 10 && j < 10 => write!(f, "x{i}{j}"),
            Generator::Pair(i, j) => write!(f, "x{i}_{j}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn generator(g: Generator) -> Self {
        GroupWord { letters: vec![Letter::new(g, false)] }
    }

    /// Free reduction of a raw letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters: Vec<Letter> = Vec::new();
        for l in raw {
            if letters.last() == Some(&l.inverted()) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        GroupWord { letters }
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        GroupWord::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &GroupWord, v: &GroupWord) -> GroupWord {
        GroupWord::reduce(
            u.letters
                .iter()
                .chain(&v.letters)
                .copied()
                .chain(u.inverse().letters)
                .chain(v.inverse().letters),
        )
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g w g^-1`.
    pub fn conjugate_by(&self, g: &GroupWord) -> GroupWord {
        g.mul(self).mul(&g.inverse())
    }

    /// Distinct generators in ascending order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut gs: Vec<Generator> = self.letters.iter().map(|l| l.generator).collect();
        gs.sort();
        gs.dedup();
        gs
    }

    /// Signed number of occurrences of `g`.
    pub fn exponent_sum(&self, g: Generator) -> i64 {
        self.letters.iter().filter(|l| l.generator == g).map(Letter::exponent).sum()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (n, l) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        GroupWord::reduce(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> GroupWord {
        GroupWord::generator(Generator::pair(i, j).unwrap())
    }
    fn m(i: usize) -> GroupWord {
        GroupWord::generator(Generator::Meridian(i))
    }

    #[test]
    fn reduction_examples() {
        assert!(x(1, 3).mul(&x(1, 3).inverse()).is_identity());
        let w = m(1).mul(&m(2)).mul(&m(2).inverse()).mul(&m(1));
        assert_eq!(w, m(1).pow(2));
        let c = GroupWord::commutator(&m(1), &m(2));
        assert_eq!(c.len(), 4);
        assert_eq!(GroupWord::reduce(c.letters().iter().copied()), c);
    }

    #[test]
    fn commutator_examples() {
        let c = GroupWord::commutator(&x(1, 3), &x(2, 3));
        assert_eq!(c.to_string(), "x13 x23 x13^-1 x23^-1");
        assert!(GroupWord::commutator(&c, &GroupWord::identity()).is_identity());
        assert_eq!(m(1).mul(&m(2)).inverse().to_string(), "m2^-1 m1^-1");
    }

    #[test]
    fn generator_validation_and_display() {
        assert_eq!(Generator::pair(3, 1), Err(FreewordError::BadPair(3, 1)));
        assert_eq!(Generator::pair(2, 2), Err(FreewordError::BadPair(2, 2)));
        assert_eq!(Generator::pair(0, 2), Err(FreewordError::BadPair(0, 2)));
        assert_eq!(Generator::joining(4, 2).unwrap(), Generator::Pair(2, 4));
        assert_eq!(Generator::pair(10, 12).unwrap().to_string(), "x10_12");
        assert_eq!(Generator::meridian(0), Err(FreewordError::BadMeridian));
        assert_eq!(GroupWord::identity().to_string(), "1");
    }

    #[test]
    fn powers_and_sums() {
        let w = x(1, 2).pow(-3);
        assert_eq!(w.len(), 3);
        assert_eq!(w.exponent_sum(Generator::Pair(1, 2)), -3);
        assert!(x(1, 2).pow(0).is_identity());
        assert_eq!(x(2, 3).mul(&x(1, 2)).generators(), vec![Generator::Pair(1, 2), Generator::Pair(2, 3)]);
    }
}
