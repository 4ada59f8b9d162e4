//! Origamis as transitive pairs of permutations.
//!
//! `h` sends a square to its right neighbour and `v` to its top neighbour.
//! The corner permutation `c = v h v^-1 h^-1` sends a square to the next
//! square, counterclockwise, sharing its lower-left vertex; its cycles are
//! the vertices of the tiling and a cycle of length `l` is a cone point of
//! angle `2 pi l`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::sl2::{matrix_to_word, Generator, Mat2, Word};

/// Default bound on orbit sizes.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrigamiRepr", into = "OrigamiRepr")]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

#[derive(Serialize, Deserialize)]
struct OrigamiRepr {
    degree: usize,
    h: String,
    v: String,
}

impl From<Origami> for OrigamiRepr {
    fn from(o: Origami) -> Self {
        OrigamiRepr { degree: o.degree(), h: o.h.to_string(), v: o.v.to_string() }
    }
}

impl TryFrom<OrigamiRepr> for Origami {
    type Error = Error;

    fn try_from(r: OrigamiRepr) -> Result<Self> {
        let (hc, _) = Permutation::parse_cycles(&r.h)?;
        let (vc, _) = Permutation::parse_cycles(&r.v)?;
        Origami::new(Permutation::from_cycles(r.degree, &hc)?, Permutation::from_cycles(r.degree, &vc)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityData {
    /// Orders `k` of the cone points (angle `2 pi (k + 1)`), non-increasing.
    pub cone_orders: Vec<usize>,
    pub genus: usize,
}

impl SingularityData {
    pub fn stratum(&self) -> String {
        if self.cone_orders.is_empty() {
            return "H(0)".into();
        }
        let parts: Vec<String> = self.cone_orders.iter().map(|k| k.to_string()).collect();
        format!("H({})", parts.join(","))
    }
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self> {
        if h.degree() != v.degree() {
            return Err(Error::InvalidOrigami(format!("h has degree {} but v has degree {}", h.degree(), v.degree())));
        }
        if h.degree() == 0 {
            return Err(Error::InvalidOrigami("no squares".into()));
        }
        let o = Origami { h, v };
        if !o.is_transitive() {
            return Err(Error::InvalidOrigami("h and v do not act transitively".into()));
        }
        Ok(o)
    }

    /// Builds an origami from 1-based cycle strings.
    pub fn from_cycles(degree: usize, h: &str, v: &str) -> Result<Self> {
        let (hc, _) = Permutation::parse_cycles(h)?;
        let (vc, _) = Permutation::parse_cycles(v)?;
        Origami::new(Permutation::from_cycles(degree, &hc)?, Permutation::from_cycles(degree, &vc)?)
    }

    pub fn torus() -> Self {
        Origami { h: Permutation::identity(1), v: Permutation::identity(1) }
    }

    /// The L-shaped origami with a bottom row of `n` squares and a column of
    /// `m` squares over the first one.
    pub fn l_shape(n: usize, m: usize) -> Result<Self> {
        if n < 2 || m < 2 {
            return Err(Error::InvalidShape { n, m });
        }
        let d = n + m - 1;
        let row: Vec<usize> = (0..n).collect();
        let mut col = vec![0];
        col.extend(n..d);
        Origami::new(Permutation::from_cycles(d, &[row])?, Permutation::from_cycles(d, &[col])?)
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn degree(&self) -> usize {
        self.h.degree()
    }

    fn is_transitive(&self) -> bool {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(s) = stack.pop() {
            for t in [self.h.apply(s), self.v.apply(s)] {
                if !seen[t] {
                    seen[t] = true;
                    count += 1;
                    stack.push(t);
                }
            }
        }
        // h and v are bijections on a finite set, so forward reachability suffices.
        count == d
    }

    /// `c = v h v^-1 h^-1`.
    pub fn corner_permutation(&self) -> Permutation {
        self.v.compose(&self.h).compose(&self.v.inverse()).compose(&self.h.inverse())
    }

    pub fn singularity_data(&self) -> SingularityData {
        let mut cone_orders: Vec<usize> =
            self.corner_permutation().cycle_type().into_iter().filter(|&l| l >= 2).map(|l| l - 1).collect();
        cone_orders.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = cone_orders.iter().sum();
        SingularityData { cone_orders, genus: total / 2 + 1 }
    }

    pub fn stratum(&self) -> String {
        self.singularity_data().stratum()
    }

    pub fn in_h2(&self) -> bool {
        self.singularity_data().cone_orders == [2]
    }

    /// Image under one generator of SL2(Z):
    /// `T(h, v) = (h, v h^-1)` and `S(h, v) = (v^-1, h)`.
    pub fn act_generator(&self, g: Generator) -> Origami {
        let (h, v) = match g {
            Generator::T => (self.h.clone(), self.v.compose(&self.h.inverse())),
            Generator::TInv => (self.h.clone(), self.v.compose(&self.h)),
            Generator::S => (self.v.inverse(), self.h.clone()),
            Generator::SInv => (self.v.clone(), self.h.inverse()),
        };
        Origami { h, v }
    }

    /// Image under `g1 g2 ... gk`; `gk` acts first.
    pub fn act_word(&self, w: &Word) -> Origami {
        w.letters().iter().rev().fold(self.clone(), |o, &g| o.act_generator(g))
    }

    pub fn act_matrix(&self, m: &Mat2) -> Origami {
        self.act_word(&matrix_to_word(m))
    }

    /// Breadth-first relabeling from `start`, visiting neighbours in the
    /// order `h, v, h^-1, v^-1`. Returns the new label of every square.
    fn bfs_labels(&self, start: usize, hinv: &Permutation, vinv: &Permutation) -> Vec<usize> {
        let d = self.degree();
        let mut label = vec![usize::MAX; d];
        let mut queue = VecDeque::with_capacity(d);
        label[start] = 0;
        queue.push_back(start);
        let mut next = 1;
        while let Some(s) = queue.pop_front() {
            for t in [self.h.apply(s), self.v.apply(s), hinv.apply(s), vinv.apply(s)] {
                if label[t] == usize::MAX {
                    label[t] = next;
                    next += 1;
                    queue.push_back(t);
                }
            }
        }
        label
    }

    pub fn relabel(&self, relabel: &Permutation) -> Origami {
        Origami { h: self.h.conjugate(relabel), v: self.v.conjugate(relabel) }
    }

    /// The lexicographically smallest `(h, v)` among all breadth-first
    /// relabelings. Two origamis are isomorphic iff their canonical forms agree.
    pub fn canonical_form(&self) -> Origami {
        let hinv = self.h.inverse();
        let vinv = self.v.inverse();
        let mut best: Option<Origami> = None;
        for start in 0..self.degree() {
            let label =
                Permutation::from_images(self.bfs_labels(start, &hinv, &vinv)).expect("bfs labels form a bijection");
            let cand = self.relabel(&label);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("degree is positive")
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_form()
    }

    /// Canonical forms of the SL2(Z) orbit, in discovery order.
    pub fn orbit(&self, cap: usize) -> Result<Vec<Origami>> {
        let start = self.canonical_form();
        let mut seen: HashSet<Origami> = HashSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        order.push(start.clone());
        queue.push_back(start);
        while let Some(o) = queue.pop_front() {
            for g in [Generator::S, Generator::T] {
                let n = o.act_generator(g).canonical_form();
                if seen.insert(n.clone()) {
                    if order.len() >= cap {
                        return Err(Error::OrbitTooLarge { cap, partial: order });
                    }
                    order.push(n.clone());
                    queue.push_back(n);
                }
            }
        }
        Ok(order)
    }

    pub fn same_orbit(&self, other: &Origami, cap: usize) -> Result<bool> {
        if self.degree() != other.degree() {
            return Ok(false);
        }
        let target = other.canonical_form();
        Ok(self.orbit(cap)?.contains(&target))
    }

    /// Holonomy vectors of the fundamental cycles of the square graph with
    /// respect to a breadth-first spanning tree.
    pub fn period_vectors(&self) -> Vec<(i64, i64)> {
        let d = self.degree();
        let mut pos: Vec<Option<(i64, i64)>> = vec![None; d];
        pos[0] = Some((0, 0));
        let mut queue = VecDeque::from([0]);
        let hinv = self.h.inverse();
        let vinv = self.v.inverse();
        while let Some(s) = queue.pop_front() {
            let (x, y) = pos[s].unwrap();
            for (t, p) in [
                (self.h.apply(s), (x + 1, y)),
                (self.v.apply(s), (x, y + 1)),
                (hinv.apply(s), (x - 1, y)),
                (vinv.apply(s), (x, y - 1)),
            ] {
                if pos[t].is_none() {
                    pos[t] = Some(p);
                    queue.push_back(t);
                }
            }
        }
        let pos: Vec<(i64, i64)> = pos.into_iter().map(|p| p.unwrap()).collect();
        let mut out = Vec::new();
        for s in 0..d {
            let (x, y) = pos[s];
            for (t, step) in [(self.h.apply(s), (1, 0)), (self.v.apply(s), (0, 1))] {
                let w = (x + step.0 - pos[t].0, y + step.1 - pos[t].1);
                if w != (0, 0) {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Whether the lattice of periods is all of `Z^2`.
    pub fn is_primitive(&self) -> bool {
        let vs = self.period_vectors();
        let mut g = 0i64;
        for (i, a) in vs.iter().enumerate() {
            for b in &vs[i + 1..] {
                g = g.gcd(&(a.0 * b.1 - a.1 * b.0));
                if g == 1 {
                    return true;
                }
            }
        }
        g == 1
    }

    pub fn to_text(&self) -> String {
        format!("d={}\nh={}\nv={}\n", self.degree(), self.h, self.v)
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={} v={} (d={})", self.h, self.v, self.degree())
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Origami {
    type Err = Error;

    /// Parses lines `h=<cycles>`, `v=<cycles>` and an optional `d=<int>`.
    /// Blank lines and `#` comments are ignored.
    fn from_str(text: &str) -> Result<Self> {
        let mut degree: Option<usize> = None;
        let mut h = None;
        let mut v = None;
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "d" => {
                    let n = value.parse::<usize>().map_err(|_| Error::Parse(format!("bad degree {value:?}")))?;
                    degree = Some(n);
                }
                "h" => h = Some(Permutation::parse_cycles(value)?),
                "v" => v = Some(Permutation::parse_cycles(value)?),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            }
        }
        let (hc, hm) = h.ok_or_else(|| Error::Parse("missing h line".into()))?;
        let (vc, vm) = v.ok_or_else(|| Error::Parse("missing v line".into()))?;
        let d = match degree {
            Some(d) => d,
            None => hm.max(vm).max(1),
        };
        Origami::new(Permutation::from_cycles(d, &hc)?, Permutation::from_cycles(d, &vc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_shapes() {
        let o = Origami::l_shape(2, 4).unwrap();
        assert_eq!(o.degree(), 5);
        assert_eq!(o.h().to_string(), "(1 2)");
        assert_eq!(o.v().to_string(), "(1 3 4 5)");
        let o = Origami::l_shape(3, 3).unwrap();
        assert_eq!((o.h().to_string(), o.v().to_string()), ("(1 2 3)".into(), "(1 4 5)".into()));
        assert!(matches!(Origami::l_shape(1, 4), Err(Error::InvalidShape { n: 1, m: 4 })));
        assert!(matches!(Origami::l_shape(3, 1), Err(Error::InvalidShape { .. })));
    }

    #[test]
    fn singularities() {
        let l22 = Origami::l_shape(2, 2).unwrap();
        // c = v h v^-1 h^-1 expanded by hand for h=(1 2), v=(1 3): (1 2 3)
        assert_eq!(l22.corner_permutation().cycle_type(), vec![3]);
        assert_eq!(l22.singularity_data(), SingularityData { cone_orders: vec![2], genus: 2 });
        assert_eq!(Origami::torus().singularity_data(), SingularityData { cone_orders: vec![], genus: 1 });
        assert!(Origami::l_shape(2, 4).unwrap().in_h2());
        assert_eq!(Origami::torus().stratum(), "H(0)");
    }

    #[test]
    fn parse_round_trip() {
        let o: Origami = "h=(1 2)\nv=(1 3 4 5)\n".parse().unwrap();
        assert_eq!(o, Origami::l_shape(2, 4).unwrap());
        let again: Origami = o.to_text().parse().unwrap();
        assert_eq!(again, o);
        let padded: Origami = "# comment\n\nd=3\nh=(1 2)  # row\nv=(1 3)\n".parse().unwrap();
        assert_eq!(padded, Origami::l_shape(2, 2).unwrap());
        let torus: Origami = "d=1\nh=()\nv=()".parse().unwrap();
        assert_eq!(torus, Origami::torus());
        assert!("h=(1 2)".parse::<Origami>().is_err());
        assert!("h=(1 2)\nv=(1 2)\nd=3".parse::<Origami>().is_err());
    }

    #[test]
    fn inverse_generators() {
        let o = Origami::l_shape(2, 4).unwrap();
        for g in Generator::ALL {
            assert_eq!(o.act_generator(g).act_generator(g.inverse()), o);
        }
        let mut s4 = o.clone();
        for _ in 0..4 {
            s4 = s4.act_generator(Generator::S);
        }
        assert_eq!(s4.canonical_form(), o.canonical_form());
    }

    #[test]
    fn canonical_form_is_invariant() {
        let o = Origami::l_shape(2, 4).unwrap();
        let c = o.canonical_form();
        assert_eq!(c.canonical_form(), c);
        let (cyc, _) = Permutation::parse_cycles("(1 5 2)").unwrap();
        let r = Permutation::from_cycles(5, &cyc).unwrap();
        assert_eq!(o.relabel(&r).canonical_form(), c);
        assert_ne!(Origami::l_shape(3, 3).unwrap().canonical_form(), c);
    }

    #[test]
    fn orbits() {
        let a = Origami::l_shape(2, 4).unwrap();
        let b = Origami::l_shape(3, 3).unwrap();
        assert!(!a.same_orbit(&b, DEFAULT_ORBIT_CAP).unwrap());
        assert!(a.same_orbit(&a.act_generator(Generator::T), DEFAULT_ORBIT_CAP).unwrap());
        let orbit = a.orbit(DEFAULT_ORBIT_CAP).unwrap();
        for o in &orbit {
            assert!(orbit.contains(&o.act_generator(Generator::S).canonical_form()));
            assert!(orbit.contains(&o.act_generator(Generator::T).canonical_form()));
        }
        match a.orbit(2) {
            Err(Error::OrbitTooLarge { cap: 2, partial }) => assert_eq!(partial.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn primitivity() {
        assert!(Origami::l_shape(2, 4).unwrap().is_primitive());
        assert!(Origami::l_shape(3, 3).unwrap().is_primitive());
        assert!(Origami::torus().is_primitive());
        let quad = Origami::from_cycles(4, "(1 2)(3 4)", "(1 3)(2 4)").unwrap();
        assert!(!quad.is_primitive());
    }

    #[test]
    fn serde_round_trip() {
        let o = Origami::l_shape(2, 3).unwrap();
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(s, r#"{"degree":4,"h":"(1 2)","v":"(1 3 4)"}"#);
        assert_eq!(serde_json::from_str::<Origami>(&s).unwrap(), o);
    }
}
