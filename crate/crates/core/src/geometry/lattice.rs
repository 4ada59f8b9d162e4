//! Lattice points of a direction and their position on saddle connections.
//!
//! For a direction `(p, q)` the lattice points are the points lying over
//! `(a/q, b/p)` on the torus, one copy per square, with `0 <= a < q` and
//! `0 <= b < p`. A zero component collapses the matching grid to `{0}`.

use super::cylinders::SaddleConnection;
use super::{Direction, Point, Surface, Q};
use crate::origami::Origami;

pub fn lattice_points(o: &Origami, dir: Direction) -> Vec<Point> {
    let px = dir.p().unsigned_abs().max(1) as i64;
    let qy = dir.q().unsigned_abs().max(1) as i64;
    let mut out = Vec::with_capacity(o.degree() * (px * qy) as usize);
    for s in 0..o.degree() {
        for a in 0..qy {
            for b in 0..px {
                out.push(Point::new(s, Q::new(a, qy), Q::new(b, px)));
            }
        }
    }
    out
}

/// Every way of writing `pt` (given in `[0, 1)^2`) as a point of a closed square.
fn representations(surf: &Surface, pt: &Point) -> Vec<(usize, Q, Q)> {
    let (zero, one) = (Q::from_integer(0), Q::from_integer(1));
    let s = pt.square;
    let mut out = vec![(s, pt.x, pt.y)];
    let left = surf.hinv.apply(s);
    let below = surf.vinv.apply(s);
    if pt.x == zero {
        out.push((left, one, pt.y));
    }
    if pt.y == zero {
        out.push((below, pt.x, one));
    }
    if pt.x == zero && pt.y == zero {
        out.push((surf.vinv.apply(left), one, one));
        out.push((surf.hinv.apply(below), one, one));
    }
    out
}

/// Whether `pt` lies on `sc`. Cone points lie on every connection that
/// starts or ends there.
pub fn on_saddle_connection(surf: &Surface, pt: &Point, sc: &SaddleConnection) -> bool {
    if pt.x == Q::from_integer(0) && pt.y == Q::from_integer(0) && surf.is_singular(pt.square) {
        let cone = surf.corner.cycles().into_iter().find(|c| c.contains(&pt.square)).unwrap();
        let at = |p: &Point| {
            let cx = p.x.to_integer();
            let cy = p.y.to_integer();
            cone.contains(&surf.vertex_rep(p.square, cx, cy))
        };
        return at(&sc.start) || at(&sc.end);
    }
    representations(surf, pt).into_iter().any(|(s, x, y)| sc.passes_through(s, x, y))
}
