//! Permutations of `{0, .., d-1}`.
//!
//! Squares are 0-based internally. The textual cycle notation used for input
//! and output is 1-based, as in the usual `(1 2)(3 4 5)` convention.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 0-based cycles. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!("symbol {} exceeds degree {degree}", x + 1)));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!("symbol {} appears twice", x + 1)));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)`. Returns the
    /// 0-based cycles and the largest symbol seen.
    pub fn parse_cycles(text: &str) -> Result<(Vec<Vec<usize>>, usize)> {
        let mut cycles = Vec::new();
        let mut max_symbol = 0;
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let mut cycle = Vec::new();
            for tok in open[..close].split_whitespace() {
                let sym: usize = tok.parse().map_err(|_| Error::Parse(format!("bad symbol {tok:?}")))?;
                if sym == 0 {
                    return Err(Error::Parse("symbols are 1-based".into()));
                }
                max_symbol = max_symbol.max(sym);
                cycle.push(sym - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Ok((cycles, max_symbol))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self.compose(other)` maps `x` to `self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    /// Relabels by `relabel`: the result maps `relabel(x)` to `relabel(self(x))`.
    pub fn conjugate(&self, relabel: &Permutation) -> Self {
        let mut images = vec![0; self.degree()];
        for x in 0..self.degree() {
            images[relabel.apply(x)] = relabel.apply(self.apply(x));
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let (cycles, max) = Permutation::parse_cycles("(1 3 4 5)").unwrap();
        assert_eq!(max, 5);
        let p = Permutation::from_cycles(5, &cycles).unwrap();
        assert_eq!(p.apply(0), 2);
        assert_eq!(p.apply(4), 0);
        assert_eq!(p.apply(1), 1);
        assert_eq!(p.to_string(), "(1 3 4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn rejects_repeated_symbol() {
        let (cycles, _) = Permutation::parse_cycles("(1 2)(2 3)").unwrap();
        assert!(Permutation::from_cycles(3, &cycles).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::parse_cycles("(1 0)").is_err());
        assert!(Permutation::parse_cycles("1 2").is_err());
    }

    #[test]
    fn compose_and_inverse() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_images(vec![1, 0, 2]).unwrap();
        let ab = a.compose(&b);
        assert_eq!(ab.apply(0), a.apply(b.apply(0)));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(a.cycle_type(), vec![3]);
        assert_eq!(b.cycle_type(), vec![2, 1]);
    }

    #[test]
    fn conjugation_relabels() {
        let a = Permutation::from_images(vec![1, 2, 0, 3]).unwrap();
        let r = Permutation::from_images(vec![3, 0, 1, 2]).unwrap();
        let c = a.conjugate(&r);
        for x in 0..4 {
            assert_eq!(c.apply(r.apply(x)), r.apply(a.apply(x)));
        }
    }
}
