//! Exact straight-line flow across the squares of an origami.

use num_traits::{One, Signed, Zero};

use super::{Point, Segment, Surface, Q};
use crate::error::{Error, Result};

/// Where a flow line ran into a cone point: the square it arrived through
/// and the corner of that square.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Arrival {
    pub square: usize,
    pub corner: (i64, i64),
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub segments: Vec<Segment>,
    pub end: Point,
    pub time: Q,
    pub arrival: Option<Arrival>,
}

/// Starting square and corner for leaving a regular vertex whose
/// representative is `r`.
fn leave_vertex(surf: &Surface, r: usize, p: i64, q: i64) -> (usize, Q, Q) {
    let (zero, one) = (Q::zero(), Q::one());
    match (p.signum(), q.signum()) {
        (1, 1) | (1, 0) | (0, 1) => (r, zero, zero),
        (-1, 1) | (-1, 0) => (surf.hinv.apply(r), one, zero),
        (-1, -1) => (surf.vinv.apply(surf.hinv.apply(r)), one, one),
        _ => (surf.vinv.apply(r), zero, one),
    }
}

fn exit_time(pos: Q, speed: i64) -> Option<Q> {
    match speed.signum() {
        1 => Some((Q::one() - pos) / Q::from_integer(speed)),
        -1 => Some(pos / Q::from_integer(speed.abs())),
        _ => None,
    }
}

/// Flows from `start` with velocity `(p, q)`.
///
/// With a time limit the flow stops there, and running into a cone point is
/// an error. Without one it stops at the first cone point. `max_steps`
/// bounds the number of squares visited.
pub fn run(surf: &Surface, start: Point, (p, q): (i64, i64), limit: Option<Q>, max_steps: usize) -> Result<Trace> {
    assert!((p, q) != (0, 0));
    let (zero, one) = (Q::zero(), Q::one());
    let (mut s, mut x, mut y) = (start.square, start.x, start.y);
    let mut time = zero;
    let mut segments = Vec::new();
    let (pq, qq) = (Q::from_integer(p), Q::from_integer(q));
    for _ in 0..max_steps {
        let tx = exit_time(x, p);
        let ty = exit_time(y, q);
        let t = match (tx, ty) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!(),
        };
        if let Some(lim) = limit {
            let rest = lim - time;
            if rest <= t {
                let end = (x + rest * pq, y + rest * qq);
                if rest.is_positive() {
                    segments.push(Segment { square: s, start: (x, y), end });
                }
                return Ok(Trace { segments, end: Point::new(s, end.0, end.1), time: lim, arrival: None });
            }
        }
        let (nx, ny) = (x + t * pq, y + t * qq);
        if t.is_positive() {
            segments.push(Segment { square: s, start: (x, y), end: (nx, ny) });
            time += t;
        }
        let hit_x = tx == Some(t);
        let hit_y = ty == Some(t);
        let on_x_line = nx.is_zero() || nx == one;
        let on_y_line = ny.is_zero() || ny == one;
        if (hit_x && on_y_line) || (hit_y && on_x_line) {
            let corner = (nx.to_integer(), ny.to_integer());
            let r = surf.vertex_rep(s, corner.0, corner.1);
            if surf.is_singular(r) {
                if limit.is_some() {
                    return Err(Error::ConePointHit { square: r });
                }
                return Ok(Trace {
                    segments,
                    end: Point::new(s, nx, ny),
                    time,
                    arrival: Some(Arrival { square: s, corner }),
                });
            }
            (s, x, y) = leave_vertex(surf, r, p, q);
        } else if hit_x {
            if p > 0 {
                (s, x, y) = (surf.h.apply(s), zero, ny);
            } else {
                (s, x, y) = (surf.hinv.apply(s), one, ny);
            }
        } else if q > 0 {
            (s, x, y) = (surf.v.apply(s), nx, zero);
        } else {
            (s, x, y) = (surf.vinv.apply(s), nx, one);
        }
    }
    Err(Error::Degenerate(format!("flow from {start} did not terminate within {max_steps} steps")))
}

/// A step budget comfortably above the length of any saddle connection or
/// closed leaf in direction `(p, q)`.
pub fn step_budget(surf: &Surface, (p, q): (i64, i64)) -> usize {
    4 * (surf.degree() + 1) * (p.unsigned_abs() as usize + q.unsigned_abs() as usize + 2)
}

/// Flows for exactly `time` units, failing on a cone point.
pub fn flow_for(surf: &Surface, start: Point, dir: (i64, i64), time: Q) -> Result<Trace> {
    let budget = step_budget(surf, dir) * (time.to_integer().unsigned_abs() as usize + 1);
    run(surf, start, dir, Some(time), budget)
}

/// Flows until the first cone point.
pub fn flow_to_cone(surf: &Surface, start: Point, dir: (i64, i64)) -> Result<Trace> {
    run(surf, start, dir, None, step_budget(surf, dir))
}

/// The square and corner from which the outgoing separatrix in direction
/// `(p, q)` leaves sheet `r` of a cone point, for `q > 0` or `(p, q) = (1, 0)`.
pub fn separatrix_start(surf: &Surface, r: usize, (p, q): (i64, i64)) -> Point {
    let (s, x, y) = leave_vertex(surf, r, p, q);
    Point::new(s, x, y)
}

/// The sheet (lower-left square) at which a flow in a direction with `q > 0`
/// or `(p, q) = (1, 0)` arrives, given the arrival square and corner.
pub fn arrival_sheet(surf: &Surface, a: Arrival) -> usize {
    let s = a.square;
    match a.corner {
        (1, 1) => surf.h.apply(surf.v.apply(s)),
        (0, 1) => surf.h.apply(surf.v.apply(surf.hinv.apply(s))),
        (1, 0) => surf.h.apply(s),
        _ => s,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::Origami;

    fn half() -> Q {
        Q::new(1, 2)
    }

    #[test]
    fn horizontal_loop_on_the_torus() {
        let surf = Surface::new(&Origami::torus());
        let tr = flow_for(&surf, Point::new(0, half(), half()), (1, 0), Q::one()).unwrap();
        assert_eq!(tr.segments.len(), 2);
        assert_eq!(surf.canonical_point(&tr.end).unwrap(), Point::new(0, half(), half()));
    }

    #[test]
    fn separatrices_of_l_shape_reach_the_cone_point() {
        let o = Origami::l_shape(2, 4).unwrap();
        let surf = Surface::new(&o);
        let sheets: Vec<usize> = (0..5).filter(|&s| surf.is_singular(s)).collect();
        assert_eq!(sheets.len(), 3);
        let mut total = Q::zero();
        for &r in &sheets {
            let tr = flow_to_cone(&surf, separatrix_start(&surf, r, (2, 3)), (2, 3)).unwrap();
            assert!(tr.time.is_integer() && tr.time.is_positive());
            let sheet = arrival_sheet(&surf, tr.arrival.unwrap());
            assert!(sheets.contains(&sheet));
            total += tr.time;
        }
        // total holonomy of the three saddle connections: 5 = 3 + 2 cylinders' circumferences
        assert_eq!(total, Q::from_integer(5));
    }

    #[test]
    fn cone_point_is_an_error_with_a_time_limit() {
        let surf = Surface::new(&Origami::l_shape(2, 2).unwrap());
        let start = separatrix_start(&surf, 0, (1, 0));
        assert!(matches!(flow_for(&surf, start, (1, 0), Q::from_integer(3)), Err(Error::ConePointHit { .. })));
    }
}
