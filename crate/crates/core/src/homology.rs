//! Algebraic intersection numbers of straight loops and coordinates in a
//! basis of four core curves.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{decompose, Direction, GeodesicLoop, Point, Surface, Q};
use crate::origami::Origami;

/// Regular vertices a loop passes through, by their representative square.
fn vertices_on(surf: &Surface, l: &GeodesicLoop) -> Result<HashSet<usize>> {
    let mut out = HashSet::new();
    for seg in &l.segments {
        for (x, y) in [seg.start, seg.end] {
            let cx = x.is_zero() || x == Q::from_integer(1);
            let cy = y.is_zero() || y == Q::from_integer(1);
            if cx && cy {
                let pt = surf.canonical_point(&Point::new(seg.square, x, y))?;
                out.insert(pt.square);
            }
        }
    }
    Ok(out)
}

/// `Omega(a, b)`: the number of crossings, each counted with the sign of
/// `det[dir a, dir b]`.
pub fn intersection_number_on(surf: &Surface, a: &GeodesicLoop, b: &GeodesicLoop) -> Result<i64> {
    let (ux, uy) = a.direction.vector();
    let (wx, wy) = b.direction.vector();
    let det = ux * wy - uy * wx;
    if det == 0 {
        return Ok(0);
    }
    let mut points: HashSet<Point> = HashSet::new();
    for sa in &a.segments {
        for sb in b.segments.iter().filter(|s| s.square == sa.square) {
            if let Some((x, y)) = sa.crossing(sb) {
                points.insert(surf.canonical_point(&Point::new(sa.square, x, y))?);
            }
        }
    }
    let va = vertices_on(surf, a)?;
    for r in vertices_on(surf, b)?.intersection(&va) {
        points.insert(Point::new(*r, Q::zero(), Q::zero()));
    }
    Ok(det.signum() * points.len() as i64)
}

pub fn intersection_number(o: &Origami, a: &GeodesicLoop, b: &GeodesicLoop) -> Result<i64> {
    intersection_number_on(&Surface::new(o), a, b)
}

/// Coordinates over `(X1, X2, Y1, Y2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ClassVector(pub [i64; 4]);

impl ClassVector {
    pub const ZERO: ClassVector = ClassVector([0; 4]);

    pub fn unit(i: usize) -> Self {
        let mut v = [0; 4];
        v[i] = 1;
        ClassVector(v)
    }

    pub fn add(&self, o: &ClassVector) -> ClassVector {
        ClassVector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn scale(&self, k: i64) -> ClassVector {
        ClassVector(self.0.map(|x| k * x))
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0, |g, x| g.gcd(x))
    }
}

pub type GramMatrix = [[i64; 4]; 4];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyBasis {
    pub origami: Origami,
    /// Directions of `X1, X2` and of `Y1, Y2`.
    pub directions: [Direction; 2],
    /// `X1, X2, Y1, Y2`.
    pub curves: [GeodesicLoop; 4],
    pub f: [i64; 4],
    pub gram: GramMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonTautBasis {
    pub x: ClassVector,
    pub y: ClassVector,
}

fn two_cores(o: &Origami, d: Direction) -> Result<[(GeodesicLoop, i64); 2]> {
    let dec = decompose(o, d)?;
    if dec.cylinders.len() != 2 {
        return Err(Error::BasisUnavailable(format!("direction {d} has {} cylinders, need 2", dec.cylinders.len())));
    }
    let mut cyls = dec.cylinders;
    cyls.sort_by_key(|c| (c.f, c.min_square()));
    let [a, b]: [_; 2] = cyls.try_into().unwrap();
    Ok([(a.core, a.f as i64), (b.core, b.f as i64)])
}

pub fn gram_matrix(surf: &Surface, curves: &[GeodesicLoop; 4]) -> Result<GramMatrix> {
    let mut g = [[0; 4]; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            let w = intersection_number_on(surf, &curves[i], &curves[j])?;
            g[i][j] = w;
            g[j][i] = -w;
        }
    }
    Ok(g)
}

/// Determinant of an integer matrix by exact elimination.
#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &GramMatrix) -> i64 {
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let n = a.len();
    let mut det = Q::from_integer(1);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let factor = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= factor * v;
            }
        }
    }
    det.to_integer()
}

/// Solves `m x = b` over the rationals; `None` if `m` is singular.
#[allow(clippy::needless_range_loop)]
fn solve(m: &GramMatrix, b: [i64; 4]) -> Option<[Q; 4]> {
    let mut a: Vec<Vec<Q>> = (0..4)
        .map(|i| {
            let mut row: Vec<Q> = m[i].iter().map(|&x| Q::from_integer(x)).collect();
            row.push(Q::from_integer(b[i]));
            row
        })
        .collect();
    for col in 0..4 {
        let piv = (col..4).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col];
        for c in col..5 {
            a[col][c] /= p;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in col..5 {
                    let v = a[col][c];
                    a[r][c] -= factor * v;
                }
            }
        }
    }
    Some(std::array::from_fn(|i| a[i][4]))
}

impl HomologyBasis {
    /// Core curves of two parallel-cylinder pairs in directions `dx` and `dy`.
    pub fn from_directions(o: &Origami, dx: Direction, dy: Direction) -> Result<Self> {
        let [(x1, fx1), (x2, fx2)] = two_cores(o, dx)?;
        let [(y1, fy1), (y2, fy2)] = two_cores(o, dy)?;
        let curves = [x1, x2, y1, y2];
        let gram = gram_matrix(&Surface::new(o), &curves)?;
        if determinant(&gram) == 0 {
            return Err(Error::Rank);
        }
        Ok(HomologyBasis { origami: o.clone(), directions: [dx, dy], curves, f: [fx1, fx2, fy1, fy2], gram })
    }

    pub fn gram_determinant(&self) -> i64 {
        determinant(&self.gram)
    }

    pub fn intersection(&self, a: &GeodesicLoop, b: &GeodesicLoop) -> Result<i64> {
        intersection_number(&self.origami, a, b)
    }

    /// `u^T A w`.
    pub fn omega(&self, u: &ClassVector, w: &ClassVector) -> i64 {
        let mut s = 0;
        for i in 0..4 {
            for j in 0..4 {
                s += u.0[i] * self.gram[i][j] * w.0[j];
            }
        }
        s
    }

    /// Pairings `Omega(b_i, l)` with the basis curves.
    pub fn pairings(&self, l: &GeodesicLoop) -> Result<[i64; 4]> {
        let surf = Surface::new(&self.origami);
        let mut out = [0; 4];
        for (i, b) in self.curves.iter().enumerate() {
            out[i] = intersection_number_on(&surf, b, l)?;
        }
        Ok(out)
    }

    /// The integer vector `x` with `A x = (Omega(b_i, l))_i`.
    pub fn express(&self, l: &GeodesicLoop) -> Result<ClassVector> {
        let rhs = self.pairings(l)?;
        let x = solve(&self.gram, rhs).ok_or(Error::Rank)?;
        if x.iter().any(|v| !v.is_integer()) {
            let shown: Vec<String> = x.iter().map(|v| v.to_string()).collect();
            return Err(Error::Integrality(format!("coordinates ({})", shown.join(", "))));
        }
        Ok(ClassVector(x.map(|v| v.to_integer())))
    }

    /// Holonomy of a class.
    pub fn pushforward(&self, u: &ClassVector) -> (i64, i64) {
        let mut out = (0, 0);
        for (k, c) in self.curves.iter().enumerate() {
            let (x, y) = c.pushforward();
            out.0 += u.0[k] * x;
            out.1 += u.0[k] * y;
        }
        out
    }

    /// `X = (f1/g) X2 - (f2/g) X1` and likewise for `Y`.
    pub fn nontaut(&self) -> NonTautBasis {
        let pair = |f1: i64, f2: i64| {
            let g = f1.gcd(&f2);
            (-(f2 / g), f1 / g)
        };
        let (a, b) = pair(self.f[0], self.f[1]);
        let (c, d) = pair(self.f[2], self.f[3]);
        NonTautBasis { x: ClassVector([a, b, 0, 0]), y: ClassVector([0, 0, c, d]) }
    }

    /// Coordinates `(a, b)` with `u = a X + b Y`, if `u` lies in that span.
    pub fn nontaut_coordinates(&self, u: &ClassVector) -> Result<(i64, i64)> {
        let nt = self.nontaut();
        let along = |k: usize, basis: &ClassVector| -> Result<i64> {
            let (i, j) = (k, k + 1);
            let (bi, bj) = (basis.0[i], basis.0[j]);
            // bj > 0 by construction
            if u.0[j] % bj != 0 {
                return Err(Error::Integrality(format!("{u:?} is not an integer combination of X and Y")));
            }
            let t = u.0[j] / bj;
            if t * bi != u.0[i] {
                return Err(Error::Integrality(format!("{u:?} leaves the non-tautological part")));
            }
            Ok(t)
        };
        Ok((along(0, &nt.x)?, along(2, &nt.y)?))
    }
}

pub fn standard_basis(o: &Origami) -> Result<HomologyBasis> {
    HomologyBasis::from_directions(o, Direction::HORIZONTAL, Direction::VERTICAL)
}

pub fn express_in_basis(l: &GeodesicLoop, basis: &HomologyBasis) -> Result<ClassVector> {
    basis.express(l)
}

pub fn pushforward(l: &GeodesicLoop) -> (i64, i64) {
    l.pushforward()
}

pub fn nontaut_basis(basis: &HomologyBasis) -> NonTautBasis {
    basis.nontaut()
}

/// The first pair of two-cylinder directions, among the first `cap`
/// canonical directions, whose core curves form a unimodular basis.
pub fn find_basis_directions(o: &Origami, cap: usize) -> Result<(Direction, Direction)> {
    let mut found: Vec<Direction> = Vec::new();
    for d in Direction::enumerate().take(cap) {
        if two_cores(o, d).is_err() {
            continue;
        }
        for &e in &found {
            if let Ok(b) = HomologyBasis::from_directions(o, e, d) {
                if b.gram_determinant().abs() == 1 {
                    return Ok((e, d));
                }
            }
        }
        found.push(d);
    }
    Err(Error::NoBasisFound { cap })
}

/// The standard basis if both axis directions have two cylinders, otherwise
/// the first basis found by [`find_basis_directions`].
pub fn basis_for(o: &Origami, cap: usize) -> Result<HomologyBasis> {
    match standard_basis(o) {
        Ok(b) if b.gram_determinant().abs() == 1 => Ok(b),
        _ => {
            let (a, b) = find_basis_directions(o, cap)?;
            HomologyBasis::from_directions(o, a, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: GramMatrix = [[0, 0, 0, 1], [0, 0, 1, 1], [0, -1, 0, 0], [-1, -1, 0, 0]];

    #[test]
    fn l_shape_gram_matrix() {
        for m in [4, 6, 3, 5] {
            let b = standard_basis(&Origami::l_shape(2, m).unwrap()).unwrap();
            assert_eq!(b.gram, A, "L(2,{m})");
            assert_eq!(b.gram_determinant(), 1);
        }
    }

    #[test]
    fn basis_vectors_express_themselves() {
        let b = standard_basis(&Origami::l_shape(2, 4).unwrap()).unwrap();
        for i in 0..4 {
            assert_eq!(b.express(&b.curves[i]).unwrap(), ClassVector::unit(i));
        }
    }

    #[test]
    fn one_cylinder_direction_is_rejected() {
        // a single horizontal cylinder of width 3 with a twist
        let o = Origami::from_cycles(3, "(1 2 3)", "(1 2)").unwrap();
        assert!(o.in_h2());
        assert!(matches!(standard_basis(&o), Err(Error::BasisUnavailable(_))));
    }

    #[test]
    fn nontautological_vectors() {
        let b = standard_basis(&Origami::l_shape(2, 4).unwrap()).unwrap();
        let nt = b.nontaut();
        assert_eq!(nt.x, ClassVector([-2, 1, 0, 0]));
        assert_eq!(nt.y, ClassVector([0, 0, -4, 1]));
        assert_eq!(b.pushforward(&nt.x), (0, 0));
        assert_eq!(b.pushforward(&nt.y), (0, 0));
        let b = standard_basis(&Origami::l_shape(2, 3).unwrap()).unwrap();
        assert_eq!(b.nontaut().y, ClassVector([0, 0, -3, 1]));
    }

    #[test]
    fn basis_search() {
        for (n, m) in [(2, 4), (3, 3)] {
            let o = Origami::l_shape(n, m).unwrap();
            assert_eq!(find_basis_directions(&o, 50).unwrap(), (Direction::HORIZONTAL, Direction::VERTICAL));
        }
        let o = Origami::l_shape(2, 4).unwrap();
        assert!(matches!(find_basis_directions(&o, 0), Err(Error::NoBasisFound { cap: 0 })));
    }
}
