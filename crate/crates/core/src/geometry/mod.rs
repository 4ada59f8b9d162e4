//! Straight-line geometry on square-tiled surfaces in exact rational
//! coordinates.
//!
//! A point is a square together with coordinates in `[0, 1]^2`. Points on a
//! vertical edge are normally stored in the square to their right and points
//! on a horizontal edge in the square above; [`Surface::canonical_point`]
//! produces that representative.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::origami::Origami;
use crate::perm::Permutation;
use crate::sl2::{matrix_to_word, Generator, Mat2, Word};

pub mod cylinders;
pub mod flow;
pub mod lattice;
pub mod separatrix;

pub use cylinders::{
    decompose, horizontal_decomposition, saddle_connections, Cylinder, CylinderDecomposition, SaddleConnection,
};
pub use lattice::{lattice_points, on_saddle_connection};
pub use separatrix::{separatrix_diagram, trace_boundaries, EdgeEnd, SeparatrixDiagram};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

/// A primitive integer direction with `q > 0`, or `(1, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Direction {
    p: i64,
    q: i64,
}

impl Direction {
    pub const HORIZONTAL: Direction = Direction { p: 1, q: 0 };
    pub const VERTICAL: Direction = Direction { p: 0, q: 1 };

    /// Accepts any primitive vector and flips it into canonical sign.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if (p, q) == (0, 0) || p.gcd(&q) != 1 {
            return Err(Error::InvalidDirection { p, q });
        }
        if q < 0 || (q == 0 && p < 0) {
            Ok(Direction { p: -p, q: -q })
        } else {
            Ok(Direction { p, q })
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn vector(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    pub fn is_parallel(&self, other: &Direction) -> bool {
        self.p * other.q == self.q * other.p
    }

    /// All canonical directions ordered by `|p| + |q|`, then `q`, then `p`.
    pub fn enumerate() -> impl Iterator<Item = Direction> {
        (1i64..).flat_map(|n| {
            (0..=n).flat_map(move |q| {
                let a = n - q;
                let ps: Vec<i64> = if a == 0 { vec![0] } else { vec![-a, a] };
                ps.into_iter().filter_map(move |p| {
                    let d = Direction::new(p, q).ok()?;
                    (d.vector() == (p, q)).then_some(d)
                })
            })
        })
    }
}

impl TryFrom<(i64, i64)> for Direction {
    type Error = Error;

    fn try_from(v: (i64, i64)) -> Result<Self> {
        Direction::new(v.0, v.1)
    }
}

impl From<Direction> for (i64, i64) {
    fn from(d: Direction) -> Self {
        d.vector()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The matrix with rows `(a, b)` and `(-q, p)` sending `(p, q)` to `(1, 0)`,
/// where `ap + bq = 1` and `|a|` is minimal (ties go to `a >= 0`).
pub fn shear_matrix(dir: Direction) -> Mat2 {
    let (p, q) = dir.vector();
    if q == 0 {
        return Mat2::IDENTITY;
    }
    let e = p.extended_gcd(&q);
    let x = if e.gcd == 1 { e.x } else { -e.x };
    let r = x.rem_euclid(q);
    let a = if (r - q).abs() < r { r - q } else { r };
    let b = (1 - a * p) / q;
    Mat2::new(a, b, -q, p).expect("extended gcd gives a unimodular matrix")
}

/// Permutations of an origami with their inverses and the corner
/// permutation, for repeated lookups.
#[derive(Clone, Debug)]
pub struct Surface {
    pub origami: Origami,
    pub h: Permutation,
    pub v: Permutation,
    pub hinv: Permutation,
    pub vinv: Permutation,
    pub corner: Permutation,
}

impl Surface {
    pub fn new(o: &Origami) -> Self {
        Surface {
            origami: o.clone(),
            h: o.h().clone(),
            v: o.v().clone(),
            hinv: o.h().inverse(),
            vinv: o.v().inverse(),
            corner: o.corner_permutation(),
        }
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    /// Square whose lower-left corner is corner `(cx, cy)` of `s`, taken
    /// along the bottom edge first.
    pub fn vertex_rep(&self, s: usize, cx: i64, cy: i64) -> usize {
        match (cx, cy) {
            (0, 0) => s,
            (1, 0) => self.h.apply(s),
            (0, 1) => self.v.apply(s),
            _ => self.v.apply(self.h.apply(s)),
        }
    }

    /// Whether the lower-left corner of `s` is a cone point.
    pub fn is_singular(&self, s: usize) -> bool {
        self.corner.apply(s) != s
    }

    /// Moves coordinates back into `[0, 1)^2`.
    pub fn normalize(&self, mut s: usize, mut x: Q, mut y: Q) -> Point {
        while x >= Q::one() {
            s = self.h.apply(s);
            x -= Q::one();
        }
        while x < Q::zero() {
            s = self.hinv.apply(s);
            x += Q::one();
        }
        while y >= Q::one() {
            s = self.v.apply(s);
            y -= Q::one();
        }
        while y < Q::zero() {
            s = self.vinv.apply(s);
            y += Q::one();
        }
        Point { square: s, x, y }
    }

    /// The representative in `[0, 1)^2`. Corners become `(0, 0)` of the
    /// vertex representative; cone points are rejected.
    pub fn canonical_point(&self, p: &Point) -> Result<Point> {
        let corner_x = p.x.is_zero() || p.x.is_one();
        let corner_y = p.y.is_zero() || p.y.is_one();
        if corner_x && corner_y {
            let cx = if p.x.is_one() { 1 } else { 0 };
            let cy = if p.y.is_one() { 1 } else { 0 };
            let rep = self.vertex_rep(p.square, cx, cy);
            if self.is_singular(rep) {
                return Err(Error::Degenerate(format!("point {p} is a cone point")));
            }
            return Ok(Point { square: rep, x: Q::zero(), y: Q::zero() });
        }
        Ok(self.normalize(p.square, p.x, p.y))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Point {
    pub square: usize,
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(square: usize, x: Q, y: Q) -> Self {
        Point { square, x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}: ({}, {})]", self.square + 1, self.x, self.y)
    }
}

/// A straight piece of a curve inside one closed unit square.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Segment {
    pub square: usize,
    pub start: (Q, Q),
    pub end: (Q, Q),
}

impl Segment {
    pub fn displacement(&self) -> (Q, Q) {
        (self.end.0 - self.start.0, self.end.1 - self.start.1)
    }

    /// The common point of two non-parallel segments in the same square.
    pub fn crossing(&self, other: &Segment) -> Option<(Q, Q)> {
        let (ux, uy) = self.displacement();
        let (wx, wy) = other.displacement();
        let den = ux * wy - uy * wx;
        if den.is_zero() {
            return None;
        }
        let dx = other.start.0 - self.start.0;
        let dy = other.start.1 - self.start.1;
        let t = (dx * wy - dy * wx) / den;
        let s = (dx * uy - dy * ux) / den;
        let unit = Q::zero()..=Q::one();
        (unit.contains(&t) && unit.contains(&s)).then(|| (self.start.0 + t * ux, self.start.1 + t * uy))
    }

    pub fn contains(&self, pt: (Q, Q)) -> bool {
        let (ux, uy) = self.displacement();
        let dx = pt.0 - self.start.0;
        let dy = pt.1 - self.start.1;
        if !(ux * dy - uy * dx).is_zero() {
            return false;
        }
        let dot = ux * dx + uy * dy;
        dot >= Q::zero() && dot <= ux * ux + uy * uy
    }
}

/// A closed straight-line curve, listed segment by segment.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeodesicLoop {
    pub direction: Direction,
    pub segments: Vec<Segment>,
}

impl GeodesicLoop {
    /// Total holonomy of the loop.
    pub fn pushforward(&self) -> (i64, i64) {
        let (mut x, mut y) = (Q::zero(), Q::zero());
        for s in &self.segments {
            let (dx, dy) = s.displacement();
            x += dx;
            y += dy;
        }
        debug_assert!(x.is_integer() && y.is_integer());
        (x.to_integer(), y.to_integer())
    }

    pub fn squares(&self) -> impl Iterator<Item = usize> + '_ {
        self.segments.iter().map(|s| s.square)
    }
}

/// The chain of origamis `o' = g1 (g2 (... gk o))` for a word `g1 ... gk`,
/// used to move points from the image frame back to `o`.
#[derive(Clone, Debug)]
pub struct Frames {
    word: Word,
    /// `frames[0]` is the image, `frames[k]` the original origami.
    frames: Vec<Surface>,
}

fn point_map(g: Generator, x: Q, y: Q) -> (Q, Q) {
    match g {
        Generator::T => (x + y, y),
        Generator::TInv => (x - y, y),
        Generator::S => (Q::one() - y, x),
        Generator::SInv => (y, Q::one() - x),
    }
}

impl Frames {
    pub fn new(o: &Origami, m: &Mat2) -> Self {
        let word = matrix_to_word(m);
        let k = word.len();
        let mut chain = vec![o.clone()];
        for &g in word.letters().iter().rev() {
            let next = chain.last().unwrap().act_generator(g);
            chain.push(next);
        }
        chain.reverse();
        debug_assert_eq!(chain.len(), k + 1);
        Frames { word, frames: chain.iter().map(Surface::new).collect() }
    }

    pub fn image(&self) -> &Surface {
        &self.frames[0]
    }

    pub fn original(&self) -> &Surface {
        self.frames.last().unwrap()
    }

    /// Carries a point of the image back to the original origami.
    pub fn pull_back(&self, p: Point) -> Point {
        let mut cur = p;
        for (i, g) in self.word.letters().iter().enumerate() {
            let (x, y) = point_map(g.inverse(), cur.x, cur.y);
            cur = self.frames[i + 1].normalize(cur.square, x, y);
        }
        cur
    }

    /// Carries a point of the original origami forward to the image.
    pub fn push_forward(&self, p: Point) -> Point {
        let mut cur = p;
        let k = self.word.len();
        for i in (0..k).rev() {
            let g = self.word.letters()[i];
            let (x, y) = point_map(g, cur.x, cur.y);
            cur = self.frames[i].normalize(cur.square, x, y);
        }
        cur
    }
}
