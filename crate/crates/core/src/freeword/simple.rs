use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FreewordError, Generator, GroupWord, Letter};

/// Which slot of the commutator the new generator occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `[x^±, A]`
    Left,
    /// `[A, x^±]`
    Right,
}

/// One nesting step: wrap the current commutator `A` with `x_{source,target}^±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layer {
    pub source: usize,
    pub inverse: bool,
    pub side: Side,
    /// Invert the commutator produced by this layer.
    pub inverted: bool,
}

/// A simple n-commutator on the generators `x_{i,target}`: a generator, then
/// `n - 1` nesting layers listed from the inside out.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleCommutatorSpec {
    pub target: usize,
    pub innermost: usize,
    pub innermost_inverse: bool,
    pub layers: Vec<Layer>,
}

impl SimpleCommutatorSpec {
    pub fn generator(target: usize, source: usize, inverse: bool) -> Self {
        SimpleCommutatorSpec { target, innermost: source, innermost_inverse: inverse, layers: Vec::new() }
    }

    /// `[a_1,[a_2,...,[a_{n-1},a_n]]]` with every generator positive.
    pub fn right_normed(target: usize, sources: &[usize]) -> Result<Self, FreewordError> {
        let (&last, rest) = sources.split_last().ok_or_else(|| FreewordError::MalformedSpec("no sources".into()))?;
        let mut spec = Self::generator(target, last, false);
        for &s in rest.iter().rev() {
            spec = spec.wrap(s, false, Side::Left);
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn wrap(mut self, source: usize, inverse: bool, side: Side) -> Self {
        self.layers.push(Layer { source, inverse, side, inverted: false });
        self
    }

    /// The same spec with its outermost commutator inverted.
    pub fn inverted(mut self) -> Self {
        match self.layers.last_mut() {
            Some(l) => l.inverted = !l.inverted,
            None => self.innermost_inverse = !self.innermost_inverse,
        }
        self
    }

    pub fn depth(&self) -> usize {
        self.layers.len() + 1
    }

    /// Sources from the inside out.
    pub fn sources(&self) -> Vec<usize> {
        std::iter::once(self.innermost).chain(self.layers.iter().map(|l| l.source)).collect()
    }

    pub fn validate(&self) -> Result<(), FreewordError> {
        if self.target == 0 {
            return Err(FreewordError::MalformedSpec("target index must be >= 1".into()));
        }
        for s in self.sources() {
            if s == 0 || s == self.target {
                return Err(FreewordError::MalformedSpec(format!("source {s} cannot pair with target {}", self.target)));
            }
        }
        Ok(())
    }

    fn letter(&self, source: usize, inverse: bool) -> Result<GroupWord, FreewordError> {
        let g = Generator::joining(source, self.target)?;
        Ok(GroupWord::reduce([Letter::new(g, inverse)]))
    }

    pub fn expand(&self) -> Result<GroupWord, FreewordError> {
        self.validate()?;
        let mut a = self.letter(self.innermost, self.innermost_inverse)?;
        for l in &self.layers {
            let x = self.letter(l.source, l.inverse)?;
            a = match l.side {
                Side::Left => GroupWord::commutator(&x, &a),
                Side::Right => GroupWord::commutator(&a, &x),
            };
            if l.inverted {
                a = a.inverse();
            }
        }
        Ok(a)
    }
}

impl fmt::Display for SimpleCommutatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gen = |s: usize, inv: bool| {
            let g = Generator::Pair(s.min(self.target), s.max(self.target));
            if inv {
                format!("{g}^-1")
            } else {
                g.to_string()
            }
        };
        let mut text = gen(self.innermost, self.innermost_inverse);
        for l in &self.layers {
            let x = gen(l.source, l.inverse);
            text = match l.side {
                Side::Left => format!("[{x},{text}]"),
                Side::Right => format!("[{text},{x}]"),
            };
            if l.inverted {
                text = format!("{text}^-1");
            }
        }
        write!(f, "{text}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::{lcs_degree, LcsDegree};

    #[test]
    fn depth_two_is_borromean_commutator() {
        let s = SimpleCommutatorSpec::right_normed(3, &[1, 2]).unwrap();
        assert_eq!(s.to_string(), "[x13,x23]");
        assert_eq!(s.expand().unwrap().to_string(), "x13 x23 x13^-1 x23^-1");
    }

    #[test]
    fn depth_one_is_a_generator() {
        let s = SimpleCommutatorSpec::generator(4, 2, true);
        assert_eq!(s.expand().unwrap().to_string(), "x24^-1");
        assert_eq!(s.depth(), 1);
    }

    #[test]
    fn depth_three_word() {
        let s = SimpleCommutatorSpec::right_normed(4, &[1, 2, 3]).unwrap();
        assert_eq!(s.to_string(), "[x14,[x24,x34]]");
        let w = s.expand().unwrap();
        assert_eq!(w.to_string(), "x14 x24 x34 x24^-1 x34^-1 x14^-1 x34 x24 x34^-1 x24^-1");
        assert_eq!(lcs_degree(&w, 6).unwrap(), LcsDegree::Exactly(3));
    }

    #[test]
    fn right_side_and_inversion() {
        let s = SimpleCommutatorSpec::generator(3, 1, false).wrap(2, true, Side::Right).inverted();
        assert_eq!(s.to_string(), "[x13,x23^-1]^-1");
        let w = s.expand().unwrap();
        assert_eq!(w.to_string(), "x23^-1 x13 x23 x13^-1");
    }

    #[test]
    fn malformed_specs() {
        assert!(SimpleCommutatorSpec::generator(3, 3, false).expand().is_err());
        assert!(SimpleCommutatorSpec::generator(3, 0, false).expand().is_err());
        assert!(SimpleCommutatorSpec::generator(0, 2, false).validate().is_err());
        assert!(SimpleCommutatorSpec::right_normed(3, &[]).is_err());
    }
}
