//! Integer unimodular 2x2 matrices and words over the generators
//! `S = ((0,-1),(1,0))` and `T = ((1,1),(0,1))`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A matrix `((a, b), (c, d))` with `ad - bc = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const MINUS_IDENTITY: Mat2 = Mat2 { a: -1, b: 0, c: 0, d: -1 };
    pub const S: Mat2 = Mat2 { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Mat2 = Mat2 { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(Error::Unimodularity { det });
        }
        Ok(Mat2 { a, b, c, d })
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Mat2 {
        Mat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn apply(&self, v: (i64, i64)) -> (i64, i64) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl TryFrom<[[i64; 2]; 2]> for Mat2 {
    type Error = Error;

    fn try_from(m: [[i64; 2]; 2]) -> Result<Self> {
        Mat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Mat2> for [[i64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        m.rows()
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Generator {
    S,
    SInv,
    T,
    TInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::S, Generator::SInv, Generator::T, Generator::TInv];

    pub fn inverse(self) -> Generator {
        match self {
            Generator::S => Generator::SInv,
            Generator::SInv => Generator::S,
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
        }
    }

    pub fn matrix(self) -> Mat2 {
        match self {
            Generator::S => Mat2::S,
            Generator::SInv => Mat2::S.inverse(),
            Generator::T => Mat2::T,
            Generator::TInv => Mat2::T.inverse(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::S => "S",
            Generator::SInv => "S^-1",
            Generator::T => "T",
            Generator::TInv => "T^-1",
        })
    }
}

/// A word `g1 g2 ... gk`, read as the matrix product in that order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Generator>);

impl Word {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    /// Cancels adjacent inverse pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn word_to_matrix(w: &Word) -> Mat2 {
    w.0.iter().fold(Mat2::IDENTITY, |m, g| m * g.matrix())
}

/// Writes `m` as a word in `S` and `T`.
///
/// Runs the Euclidean algorithm on the first column, left-multiplying by
/// powers of `T` and by `S^-1` until the column is `(±1, 0)`. A leftover
/// `-1` is absorbed as `S^2`, and the remaining upper unipotent matrix is a
/// power of `T`.
pub fn matrix_to_word(m: &Mat2) -> Word {
    debug_assert_eq!(m.det(), 1);
    let mut cur = *m;
    // Letters applied on the left, in application order.
    let mut applied: Vec<Generator> = Vec::new();
    let apply = |cur: &mut Mat2, applied: &mut Vec<Generator>, g: Generator| {
        *cur = g.matrix() * *cur;
        applied.push(g);
    };
    while cur.c != 0 {
        let k = cur.a.div_euclid(cur.c);
        // T^-k sends a to a - k c, with 0 <= a - k c < |c|.
        let g = if k > 0 { Generator::TInv } else { Generator::T };
        for _ in 0..k.abs() {
            apply(&mut cur, &mut applied, g);
        }
        apply(&mut cur, &mut applied, Generator::SInv);
    }
    if cur.a == -1 {
        apply(&mut cur, &mut applied, Generator::S);
        apply(&mut cur, &mut applied, Generator::S);
    }
    debug_assert!(cur.a == 1 && cur.d == 1 && cur.c == 0);
    // applied_k ... applied_1 * m = T^b, so m = applied_1^-1 ... applied_k^-1 T^b.
    let mut letters: Vec<Generator> = applied.iter().map(|g| g.inverse()).collect();
    let t = if cur.b > 0 { Generator::T } else { Generator::TInv };
    letters.extend(std::iter::repeat_n(t, cur.b.unsigned_abs() as usize));
    Word(letters).freely_reduced()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(gs: &[Generator]) -> Word {
        Word(gs.to_vec())
    }

    #[test]
    fn relations() {
        use Generator::*;
        assert_eq!(word_to_matrix(&w(&[S, S, S, S])), Mat2::IDENTITY);
        assert_eq!(word_to_matrix(&w(&[S, S])), Mat2::MINUS_IDENTITY);
        let st: Vec<Generator> = std::iter::repeat_n([S, T], 6).flatten().collect();
        assert_eq!(word_to_matrix(&Word(st)), Mat2::IDENTITY);
        // (ST)^3 = S^2
        let st3: Vec<Generator> = std::iter::repeat_n([S, T], 3).flatten().collect();
        assert_eq!(word_to_matrix(&Word(st3)), Mat2::MINUS_IDENTITY);
    }

    #[test]
    fn small_words() {
        assert!(matrix_to_word(&Mat2::IDENTITY).is_empty());
        assert_eq!(matrix_to_word(&Mat2::T), w(&[Generator::T]));
        let m = Mat2::new(2, 1, -1, 0).unwrap();
        assert_eq!(word_to_matrix(&matrix_to_word(&m)), m);
        for m in [Mat2::MINUS_IDENTITY, Mat2::S, Mat2::S.inverse(), Mat2::new(3, 2, -2, -1).unwrap()] {
            assert_eq!(word_to_matrix(&matrix_to_word(&m)), m, "{m}");
        }
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(Mat2::new(2, 0, 0, 1), Err(Error::Unimodularity { det: 2 })));
        assert!(serde_json::from_str::<Mat2>("[[1,1],[1,1]]").is_err());
    }

    #[test]
    fn serde_shape() {
        let m = Mat2::new(2, 1, -1, 0).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[2,1],[-1,0]]");
    }
}
