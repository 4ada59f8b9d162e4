//! Dehn multitwists along the cylinders of a direction and their action on
//! the non-tautological part of homology.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{decompose, CylinderDecomposition, Direction};
use crate::homology::{ClassVector, HomologyBasis};
use crate::origami::Origami;
use crate::sl2::Mat2;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwistSpec {
    pub decomposition: CylinderDecomposition,
    pub multiplicities: Vec<i64>,
}

/// Minimal positive integers proportional to `c_i / f_i`: the multitwist
/// twisting cylinder `i` exactly `n_i` times is affine.
pub fn twist_multiplicities(dec: &CylinderDecomposition) -> TwistSpec {
    let l = dec.cylinders.iter().fold(1i64, |a, c| a.lcm(&(c.f as i64)));
    let raw: Vec<i64> = dec.cylinders.iter().map(|c| c.c as i64 * l / c.f as i64).collect();
    let g = raw.iter().fold(0, |a, b| a.gcd(b)).max(1);
    TwistSpec { decomposition: dec.clone(), multiplicities: raw.into_iter().map(|n| n / g).collect() }
}

/// The multitwist action `z -> z + sum n_i Omega(z, gamma_i) gamma_i` on
/// classes, with the cores `gamma_i` given in basis coordinates.
#[derive(Clone, Debug)]
pub struct Multitwist {
    pub cores: Vec<ClassVector>,
    pub multiplicities: Vec<i64>,
}

impl Multitwist {
    pub fn new(spec: &TwistSpec, basis: &HomologyBasis) -> Result<Self> {
        let cores = spec.decomposition.cylinders.iter().map(|c| basis.express(&c.core)).collect::<Result<Vec<_>>>()?;
        Ok(Multitwist { cores, multiplicities: spec.multiplicities.clone() })
    }

    pub fn apply(&self, basis: &HomologyBasis, z: &ClassVector) -> ClassVector {
        let mut out = *z;
        for (g, &n) in self.cores.iter().zip(&self.multiplicities) {
            out = out.add(&g.scale(n * basis.omega(z, g)));
        }
        out
    }
}

/// Matrix of the multitwist in direction `dir` on the basis `(X, Y)` of the
/// non-tautological part; columns are the images of `X` and `Y`.
pub fn dehn_twist_action(o: &Origami, dir: Direction, basis: &HomologyBasis) -> Result<Mat2> {
    let dec = decompose(o, dir)?;
    let spec = twist_multiplicities(&dec);
    let tw = Multitwist::new(&spec, basis)?;
    let nt = basis.nontaut();
    let (a, c) = basis.nontaut_coordinates(&tw.apply(basis, &nt.x))?;
    let (b, d) = basis.nontaut_coordinates(&tw.apply(basis, &nt.y))?;
    let det = a * d - b * c;
    if det != 1 {
        return Err(Error::Unimodularity { det });
    }
    Mat2::new(a, b, c, d)
}

pub fn kz_generators(o: &Origami, dirs: &[Direction], basis: &HomologyBasis) -> Result<Vec<Mat2>> {
    dirs.iter().map(|&d| dehn_twist_action(o, d, basis)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::standard_basis;

    fn dir(p: i64, q: i64) -> Direction {
        Direction::new(p, q).unwrap()
    }

    fn mult(o: &Origami, d: Direction) -> Vec<(usize, i64)> {
        let spec = twist_multiplicities(&decompose(o, d).unwrap());
        let mut v: Vec<(usize, i64)> =
            spec.decomposition.cylinders.iter().map(|c| c.f).zip(spec.multiplicities).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    #[test]
    fn multiplicities() {
        let l24 = Origami::l_shape(2, 4).unwrap();
        assert_eq!(mult(&l24, dir(2, 3)), vec![(3, 2), (2, 3)]);
        let l23 = Origami::l_shape(2, 3).unwrap();
        assert_eq!(mult(&l23, dir(3, 5)), vec![(2, 1), (1, 4)]);
        let one = Origami::from_cycles(3, "(1 2 3)", "(1 2)").unwrap();
        assert_eq!(mult(&one, Direction::HORIZONTAL), vec![(3, 1)]);
    }

    #[test]
    fn matrices() {
        let l24 = Origami::l_shape(2, 4).unwrap();
        let b = standard_basis(&l24).unwrap();
        assert_eq!(dehn_twist_action(&l24, dir(2, 3), &b).unwrap(), Mat2::new(2, 1, -1, 0).unwrap());
        assert_eq!(dehn_twist_action(&l24, dir(0, 1), &b).unwrap(), Mat2::new(1, 0, -1, 1).unwrap());
        let l23 = Origami::l_shape(2, 3).unwrap();
        let b = standard_basis(&l23).unwrap();
        assert_eq!(dehn_twist_action(&l23, dir(3, 5), &b).unwrap(), Mat2::new(3, 2, -2, -1).unwrap());
        assert_eq!(dehn_twist_action(&l23, dir(4, 3), &b).unwrap(), Mat2::new(1, 0, -1, 1).unwrap());
        assert!(kz_generators(&l23, &[], &b).unwrap().is_empty());
    }
}
