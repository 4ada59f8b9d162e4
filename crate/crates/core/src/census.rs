//! Enumeration of the origamis of a given degree in `H(2)` and their
//! partition into SL2(Z) orbits.
//!
//! Every surface in `H(2)` with a completely periodic horizontal direction
//! has one of two horizontal cylinder diagrams, so the origamis of degree `d`
//! are exactly the surfaces obtained by filling those diagrams with integer
//! widths, heights and twists of total area `d`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::origami::Origami;
use crate::perm::Permutation;

/// A horizontal cylinder: bottom and top boundaries as labelled intervals
/// `(label, length)`, the top read from `twist`.
#[derive(Clone, Debug)]
pub struct DiagramCylinder {
    pub width: usize,
    pub height: usize,
    pub twist: usize,
    pub bottom: Vec<(usize, usize)>,
    pub top: Vec<(usize, usize)>,
}

/// Glues the cylinders along matching labels. Each label must occur once
/// on a bottom and once on a top with the same length.
pub fn build_from_cylinders(cyls: &[DiagramCylinder]) -> Result<Origami> {
    let mut base = Vec::with_capacity(cyls.len());
    let mut d = 0;
    for c in cyls {
        base.push(d);
        d += c.width * c.height;
    }
    let id = |k: usize, row: usize, col: usize| base[k] + row * cyls[k].width + col;
    // label -> (cylinder, start position on its bottom)
    let mut bottom_at = std::collections::HashMap::new();
    for (k, c) in cyls.iter().enumerate() {
        let mut pos = 0;
        for &(label, len) in &c.bottom {
            bottom_at.insert(label, (k, pos));
            pos += len;
        }
    }
    let mut h = vec![0; d];
    let mut v = vec![0; d];
    for (k, c) in cyls.iter().enumerate() {
        for row in 0..c.height {
            for col in 0..c.width {
                h[id(k, row, col)] = id(k, row, (col + 1) % c.width);
                if row + 1 < c.height {
                    v[id(k, row, col)] = id(k, row + 1, col);
                }
            }
        }
        let mut pos = c.twist;
        for &(label, len) in &c.top {
            let (k2, start) = bottom_at[&label];
            for u in 0..len {
                let col = (pos + u) % c.width;
                v[id(k, c.height - 1, col)] = id(k2, 0, start + u);
            }
            pos += len;
        }
    }
    Origami::new(Permutation::from_images(h)?, Permutation::from_images(v)?)
}

fn one_cylinder(d: usize, out: &mut BTreeSet<Origami>) -> Result<()> {
    for w in 3..=d {
        if !d.is_multiple_of(w) {
            continue;
        }
        let height = d / w;
        for l1 in 1..w {
            for l2 in 1..w - l1 {
                let l3 = w - l1 - l2;
                for twist in 0..w {
                    let c = DiagramCylinder {
                        width: w,
                        height,
                        twist,
                        bottom: vec![(0, l1), (1, l2), (2, l3)],
                        top: vec![(2, l3), (1, l2), (0, l1)],
                    };
                    out.insert(build_from_cylinders(&[c])?.canonical_form());
                }
            }
        }
    }
    Ok(())
}

fn two_cylinders(d: usize, out: &mut BTreeSet<Origami>) -> Result<()> {
    for w2 in 1..d {
        for w1 in w2 + 1..=d {
            for h1 in 1..=d / w1 {
                let rest = d - w1 * h1;
                if rest == 0 || !rest.is_multiple_of(w2) {
                    continue;
                }
                let h2 = rest / w2;
                for t1 in 0..w1 {
                    for t2 in 0..w2 {
                        let wide = DiagramCylinder {
                            width: w1,
                            height: h1,
                            twist: t1,
                            bottom: vec![(2, w2), (1, w1 - w2)],
                            top: vec![(0, w2), (1, w1 - w2)],
                        };
                        let narrow = DiagramCylinder {
                            width: w2,
                            height: h2,
                            twist: t2,
                            bottom: vec![(0, w2)],
                            top: vec![(2, w2)],
                        };
                        out.insert(build_from_cylinders(&[wide, narrow])?.canonical_form());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Canonical forms of all origamis of degree `d` in `H(2)`, primitive or not.
pub fn h2_origamis(d: usize) -> Result<Vec<Origami>> {
    let mut out = BTreeSet::new();
    one_cylinder(d, &mut out)?;
    two_cylinders(d, &mut out)?;
    Ok(out.into_iter().collect())
}

/// Canonical forms of the primitive origamis of degree `d` in `H(2)`.
pub fn primitive_h2_origamis(d: usize) -> Result<Vec<Origami>> {
    Ok(h2_origamis(d)?.into_iter().filter(Origami::is_primitive).collect())
}

/// Exhaustive search over `v` for each cycle type of `h`. Slow; meant as a
/// cross-check for small degrees.
pub fn h2_origamis_brute_force(d: usize) -> Vec<Origami> {
    let mut out = BTreeSet::new();
    for part in partitions(d) {
        let mut cycles = Vec::new();
        let mut next = 0;
        for len in part {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        let h = Permutation::from_cycles(d, &cycles).expect("disjoint cycles");
        let mut images: Vec<usize> = (0..d).collect();
        loop {
            let v = Permutation::from_images(images.clone()).expect("permutation");
            if let Ok(o) = Origami::new(h.clone(), v) {
                if o.in_h2() {
                    out.insert(o.canonical_form());
                }
            }
            if !next_permutation(&mut images) {
                break;
            }
        }
    }
    out.into_iter().collect()
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub size: usize,
    pub representative: Origami,
    /// The `(n, m)` with `L(n, m)` in this orbit.
    pub l_shapes: Vec<(usize, usize)>,
    /// Members of the orbit not found by the enumeration (should be none).
    pub stray: usize,
}

impl OrbitSummary {
    pub fn label(&self) -> String {
        if self.l_shapes.is_empty() {
            return "unlabelled".into();
        }
        let names: Vec<String> = self.l_shapes.iter().map(|(n, m)| format!("L({n},{m})")).collect();
        names.join(" ")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Census {
    pub degree: usize,
    pub count: usize,
    pub orbits: Vec<OrbitSummary>,
}

/// Partitions `origamis` (canonical forms) into SL2(Z) orbits.
pub fn partition_orbits(origamis: &[Origami], cap: usize) -> Result<Vec<OrbitSummary>> {
    let all: BTreeSet<Origami> = origamis.iter().cloned().collect();
    let mut left = all.clone();
    let mut orbits = Vec::new();
    while let Some(rep) = left.iter().next().cloned() {
        let orbit: BTreeSet<Origami> = rep.orbit(cap)?.into_iter().collect();
        let stray = orbit.iter().filter(|o| !all.contains(o)).count();
        for o in &orbit {
            left.remove(o);
        }
        let d = rep.degree();
        let l_shapes = (2..d)
            .map(|n| (n, d + 1 - n))
            .filter(|&(n, m)| m >= 2 && orbit.contains(&Origami::l_shape(n, m).unwrap().canonical_form()))
            .collect();
        orbits.push(OrbitSummary { size: orbit.len(), representative: rep, l_shapes, stray });
    }
    orbits.sort_by(|a, b| a.l_shapes.cmp(&b.l_shapes).then(a.size.cmp(&b.size)));
    Ok(orbits)
}

pub fn census(d: usize, cap: usize) -> Result<Census> {
    let origamis = primitive_h2_origamis(d)?;
    let orbits = partition_orbits(&origamis, cap)?;
    Ok(Census { degree: d, count: origamis.len(), orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::DEFAULT_ORBIT_CAP;

    #[test]
    fn l_shape_from_diagram() {
        let wide =
            DiagramCylinder { width: 2, height: 1, twist: 0, bottom: vec![(2, 1), (1, 1)], top: vec![(0, 1), (1, 1)] };
        let narrow = DiagramCylinder { width: 1, height: 3, twist: 0, bottom: vec![(0, 1)], top: vec![(2, 1)] };
        let o = build_from_cylinders(&[wide, narrow]).unwrap();
        assert_eq!(o.canonical_form(), Origami::l_shape(2, 4).unwrap().canonical_form());
    }

    #[test]
    fn diagrams_match_brute_force() {
        for d in 3..=6 {
            assert_eq!(h2_origamis(d).unwrap(), h2_origamis_brute_force(d), "degree {d}");
        }
    }

    #[test]
    fn small_censuses() {
        let c = census(3, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(c.orbits.len(), 1);
        let c = census(4, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(c.orbits.len(), 1);
        let c = census(5, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(c.orbits.len(), 2);
        let labels: Vec<String> = c.orbits.iter().map(OrbitSummary::label).collect();
        assert_eq!(labels, vec!["L(2,4) L(4,2)", "L(3,3)"]);
        assert!(c.orbits.iter().all(|o| o.stray == 0));
    }

    #[test]
    fn helpers() {
        assert_eq!(partitions(4).len(), 5);
        let mut a = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut a) {
            n += 1;
        }
        assert_eq!(n, 6);
    }
}
