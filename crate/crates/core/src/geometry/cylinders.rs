//! Cylinder decompositions by reduction to the horizontal direction.
//!
//! For a direction `(p, q)` the origami is moved by [`shear_matrix`] so that
//! `(p, q)` becomes horizontal. There the cylinders are read off from the
//! cycles of `h`, and core curves and saddle connections are carried back to
//! the original frame and retraced there.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::flow::{flow_for, flow_to_cone};
use super::{shear_matrix, Direction, Frames, GeodesicLoop, Point, Segment, Surface, Q};
use crate::error::{Error, Result};
use crate::origami::Origami;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cylinder {
    /// Rows from bottom to top in the horizontal frame, each in `h` order.
    pub rows: Vec<Vec<usize>>,
    pub circumference: usize,
    pub height_rows: usize,
    /// Combinatorial length: the core curve is `f` times the direction.
    pub f: usize,
    /// Combinatorial height: heights divided by their common gcd.
    pub c: usize,
    pub core: GeodesicLoop,
}

impl Cylinder {
    pub fn min_square(&self) -> usize {
        self.rows.iter().flatten().copied().min().unwrap_or(usize::MAX)
    }

    pub fn contains(&self, square: usize) -> bool {
        self.rows.iter().any(|r| r.contains(&square))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaddleConnection {
    /// The cone point it leaves, as a corner of a square.
    pub start: Point,
    pub end: Point,
    pub segments: Vec<Segment>,
    /// Holonomy is `multiple` times the direction.
    pub multiple: i64,
    pub holonomy: (i64, i64),
    /// Index of the cylinder lying directly below it.
    pub top_of: Option<usize>,
    /// Index of the cylinder lying directly above it.
    pub bottom_of: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub direction: Direction,
    pub cylinders: Vec<Cylinder>,
    pub saddle_connections: Vec<SaddleConnection>,
}

impl CylinderDecomposition {
    pub fn f_values(&self) -> Vec<usize> {
        self.cylinders.iter().map(|c| c.f).collect()
    }

    pub fn c_values(&self) -> Vec<usize> {
        self.cylinders.iter().map(|c| c.c).collect()
    }

    /// Sorted multiset of combinatorial lengths.
    pub fn f_multiset(&self) -> Vec<usize> {
        let mut f = self.f_values();
        f.sort_unstable();
        f
    }

    pub fn area(&self) -> usize {
        self.cylinders.iter().map(|c| c.circumference * c.height_rows).sum()
    }

    pub fn cylinder_of(&self, square: usize) -> Option<usize> {
        self.cylinders.iter().position(|c| c.contains(square))
    }
}

/// Horizontal cylinders as stacks of rows, ordered by smallest square.
pub(crate) fn horizontal_rows(surf: &Surface) -> Vec<Vec<Vec<usize>>> {
    let cycles = surf.h.cycles();
    let d = surf.degree();
    let mut row_of = vec![0; d];
    for (i, c) in cycles.iter().enumerate() {
        for &s in c {
            row_of[s] = i;
        }
    }
    // whether the top of a row is free of cone points, so the cylinder continues upward
    let continues: Vec<bool> = cycles
        .iter()
        .map(|c| c.iter().all(|&s| surf.v.apply(surf.h.apply(s)) == surf.h.apply(surf.v.apply(s))))
        .collect();
    let mut has_lower = vec![false; cycles.len()];
    for (i, c) in cycles.iter().enumerate() {
        if continues[i] {
            has_lower[row_of[surf.v.apply(c[0])]] = true;
        }
    }
    let mut used = vec![false; cycles.len()];
    let mut stacks = Vec::new();
    let starts: Vec<usize> = (0..cycles.len()).filter(|&i| !has_lower[i]).chain(0..cycles.len()).collect();
    for start in starts {
        if used[start] {
            continue;
        }
        let mut stack = Vec::new();
        let mut first = *cycles[start].iter().min().unwrap();
        let mut r = start;
        loop {
            used[r] = true;
            let mut row = Vec::with_capacity(cycles[r].len());
            let mut s = first;
            for _ in 0..cycles[r].len() {
                row.push(s);
                s = surf.h.apply(s);
            }
            stack.push(row);
            if !continues[r] {
                break;
            }
            first = surf.v.apply(first);
            r = row_of[first];
            if used[r] {
                break;
            }
        }
        stacks.push(stack);
    }
    stacks.sort_by_key(|st| st.iter().flatten().copied().min());
    stacks
}

/// Offsets tried in turn for the height of a core curve inside its row.
fn core_offsets() -> impl Iterator<Item = Q> {
    std::iter::once(Q::new(1, 2)).chain((1..=8).flat_map(|k| {
        let e = Q::new(1, 2 * k + 1);
        [Q::new(1, 2) + e, Q::new(1, 2) - e]
    }))
}

fn core_curve(frames: &Frames, dir: Direction, stack: &[Vec<usize>]) -> Result<GeodesicLoop> {
    let row = &stack[stack.len() / 2];
    let f = row.len() as i64;
    let surf = frames.original();
    let mut last = None;
    for t in core_offsets() {
        let start = frames.pull_back(Point::new(row[0], Q::new(1, 2), t));
        match flow_for(surf, start, dir.vector(), Q::from_integer(f)) {
            Ok(tr) => {
                if surf.canonical_point(&tr.end)? != surf.canonical_point(&start)? {
                    return Err(Error::Degenerate(format!("core curve from {start} does not close")));
                }
                return Ok(GeodesicLoop { direction: dir, segments: tr.segments });
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// Horizontal saddle connection leaving the cone point at the lower-left
/// corner of `s` in the horizontal frame: the squares along its lower side.
fn horizontal_connection(image: &Surface, s: usize) -> Vec<usize> {
    let mut squares = vec![s];
    let mut t = image.h.apply(s);
    while !image.is_singular(t) {
        squares.push(t);
        t = image.h.apply(t);
    }
    squares
}

/// The saddle connection through a point, retraced in direction `dir`.
fn retrace(surf: &Surface, through: Point, dir: Direction) -> Result<(Point, Vec<Segment>, Q, Point)> {
    let (p, q) = dir.vector();
    let back = flow_to_cone(surf, through, (-p, -q))?;
    let arrival = back.arrival.expect("flow_to_cone stops at a cone point");
    let start = Point::new(arrival.square, Q::from_integer(arrival.corner.0), Q::from_integer(arrival.corner.1));
    let fwd = flow_to_cone(surf, start, (p, q))?;
    Ok((start, fwd.segments, fwd.time, fwd.end))
}

pub fn decompose(o: &Origami, dir: Direction) -> Result<CylinderDecomposition> {
    let frames = Frames::new(o, &shear_matrix(dir));
    let image = frames.image();
    let stacks = horizontal_rows(image);
    let heights: Vec<usize> = stacks.iter().map(Vec::len).collect();
    let g = heights.iter().fold(0, |a, &b| a.gcd(&b));
    let mut cylinders = Vec::with_capacity(stacks.len());
    for stack in &stacks {
        let core = core_curve(&frames, dir, stack)?;
        let circumference = stack[0].len();
        cylinders.push(Cylinder {
            circumference,
            height_rows: stack.len(),
            f: circumference,
            c: stack.len() / g,
            core,
            rows: stack.clone(),
        });
    }
    let cylinder_of = |s: usize| cylinders.iter().position(|c| c.contains(s));
    let surf = frames.original();
    let mut saddle_connections = Vec::new();
    for s in 0..image.degree() {
        if !image.is_singular(s) {
            continue;
        }
        let along = horizontal_connection(image, s);
        let through = frames.pull_back(Point::new(s, Q::new(1, 2), Q::zero()));
        let (start, segments, time, end) = retrace(surf, through, dir)?;
        if time != Q::from_integer(along.len() as i64) {
            return Err(Error::Degenerate(format!(
                "saddle connection through {through} has length {time}, expected {}",
                along.len()
            )));
        }
        let a = along.len() as i64;
        saddle_connections.push(SaddleConnection {
            start,
            end,
            segments,
            multiple: a,
            holonomy: (a * dir.p(), a * dir.q()),
            top_of: cylinder_of(image.vinv.apply(s)),
            bottom_of: cylinder_of(s),
        });
    }
    Ok(CylinderDecomposition { direction: dir, cylinders, saddle_connections })
}

pub fn horizontal_decomposition(o: &Origami) -> Result<CylinderDecomposition> {
    decompose(o, Direction::HORIZONTAL)
}

pub fn saddle_connections(o: &Origami, dir: Direction) -> Result<Vec<SaddleConnection>> {
    Ok(decompose(o, dir)?.saddle_connections)
}

impl SaddleConnection {
    /// Whether the connection passes through `(x, y)` of `square`.
    pub fn passes_through(&self, square: usize, x: Q, y: Q) -> bool {
        self.segments.iter().any(|seg| seg.square == square && seg.contains((x, y)))
    }

    pub fn length_squared(&self) -> i64 {
        self.holonomy.0 * self.holonomy.0 + self.holonomy.1 * self.holonomy.1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dir(p: i64, q: i64) -> Direction {
        Direction::new(p, q).unwrap()
    }

    fn shape(dec: &CylinderDecomposition) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = dec.cylinders.iter().map(|c| (c.circumference, c.height_rows)).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn horizontal_l_shapes() {
        let dec = horizontal_decomposition(&Origami::l_shape(2, 4).unwrap()).unwrap();
        assert_eq!(shape(&dec), vec![(1, 3), (2, 1)]);
        let dec = horizontal_decomposition(&Origami::l_shape(2, 6).unwrap()).unwrap();
        assert_eq!(shape(&dec), vec![(1, 5), (2, 1)]);
        let dec = horizontal_decomposition(&Origami::torus()).unwrap();
        assert_eq!(shape(&dec), vec![(1, 1)]);
        assert!(dec.saddle_connections.is_empty());
    }

    #[test]
    fn sheared_l_shapes() {
        let l24 = Origami::l_shape(2, 4).unwrap();
        let dec = decompose(&l24, dir(2, 3)).unwrap();
        assert_eq!(dec.f_multiset(), vec![2, 3]);
        assert_eq!(dec.c_values(), vec![1, 1]);
        assert_eq!(dec.saddle_connections.len(), 3);
        let dec = decompose(&l24, dir(0, 1)).unwrap();
        assert_eq!(dec.f_multiset(), vec![1, 4]);
        let l23 = Origami::l_shape(2, 3).unwrap();
        let dec = decompose(&l23, dir(3, 5)).unwrap();
        assert_eq!(dec.f_multiset(), vec![1, 2]);
        let short = dec.cylinders.iter().find(|c| c.f == 1).unwrap();
        assert_eq!(short.c, 2);
    }

    #[test]
    fn cores_have_the_expected_holonomy() {
        let o = Origami::l_shape(3, 4).unwrap();
        for (p, q) in [(1, 0), (0, 1), (1, 1), (-1, 2), (3, 2), (-5, 7)] {
            let d = dir(p, q);
            let dec = decompose(&o, d).unwrap();
            assert_eq!(dec.area(), o.degree());
            for c in &dec.cylinders {
                assert_eq!(c.core.pushforward(), (c.f as i64 * p, c.f as i64 * q));
            }
            for sc in &dec.saddle_connections {
                assert!(sc.multiple > 0);
                assert!(sc.top_of.is_some() && sc.bottom_of.is_some());
            }
        }
    }
}
