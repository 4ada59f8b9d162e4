//! Separatrix diagrams traced directly in the original frame.
//!
//! Every outgoing separatrix in the chosen direction is followed until it
//! returns to a cone point. The ends of the resulting saddle connections are
//! ordered counterclockwise around each cone point, and the cylinders are
//! recovered from the ribbon graph alone: walking along an edge and turning
//! to the next end counterclockwise traces the upper boundary of the
//! cylinder below that edge.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::cylinders::SaddleConnection;
use super::flow::{arrival_sheet, flow_to_cone, separatrix_start};
use super::{Direction, Point, Surface};
use crate::error::{Error, Result};
use crate::origami::Origami;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub outgoing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub start: usize,
    pub end: usize,
    /// Holonomy divided by the direction vector.
    pub multiple: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatrixDiagram {
    pub direction: Option<Direction>,
    /// For each cone point, its sheets (lower-left squares) in counterclockwise order.
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<DiagramEdge>,
    /// Counterclockwise order of edge ends at each vertex.
    pub cyclic_order: Vec<Vec<EdgeEnd>>,
    /// The traced geometry, absent for diagrams built by hand.
    pub saddle_connections: Vec<SaddleConnection>,
}

impl SeparatrixDiagram {
    /// A diagram given only by its combinatorics.
    pub fn from_parts(edges: Vec<DiagramEdge>, cyclic_order: Vec<Vec<EdgeEnd>>) -> Result<Self> {
        let mut seen: HashMap<EdgeEnd, usize> = HashMap::new();
        for (v, ends) in cyclic_order.iter().enumerate() {
            for e in ends {
                let ok =
                    e.edge < edges.len() && if e.outgoing { edges[e.edge].start == v } else { edges[e.edge].end == v };
                if !ok || seen.insert(*e, v).is_some() {
                    return Err(Error::Degenerate(format!("edge end {e:?} misplaced at vertex {v}")));
                }
            }
        }
        if seen.len() != 2 * edges.len() {
            return Err(Error::Degenerate("every edge needs both ends in the cyclic order".into()));
        }
        Ok(SeparatrixDiagram {
            direction: None,
            vertices: vec![Vec::new(); cyclic_order.len()],
            edges,
            cyclic_order,
            saddle_connections: Vec::new(),
        })
    }

    /// Combinatorial lengths of the cylinders, one per boundary cycle.
    pub fn cylinder_lengths(&self) -> Vec<i64> {
        trace_boundaries(self).iter().map(|part| part.iter().map(|&e| self.edges[e].multiple).sum()).collect()
    }

    /// Checks that ends alternate between outgoing and incoming around
    /// every vertex.
    pub fn alternates(&self) -> bool {
        self.cyclic_order.iter().all(|ends| {
            ends.len() % 2 == 0
                && ends.iter().enumerate().all(|(i, e)| e.outgoing != ends[(i + 1) % ends.len()].outgoing)
        })
    }
}

pub fn separatrix_diagram(o: &Origami, dir: Direction) -> Result<SeparatrixDiagram> {
    let surf = Surface::new(o);
    let vertices: Vec<Vec<usize>> = surf.corner.cycles().into_iter().filter(|c| c.len() > 1).collect();
    let mut vertex_of: HashMap<usize, (usize, usize)> = HashMap::new();
    for (vi, sheets) in vertices.iter().enumerate() {
        for (k, &s) in sheets.iter().enumerate() {
            vertex_of.insert(s, (vi, k));
        }
    }
    let mut edges = Vec::new();
    let mut saddle_connections = Vec::new();
    // (vertex, sheet index, outgoing?) -> edge
    let mut ends: HashMap<(usize, usize, bool), usize> = HashMap::new();
    for (vi, sheets) in vertices.iter().enumerate() {
        for (k, &r) in sheets.iter().enumerate() {
            let start = separatrix_start(&surf, r, dir.vector());
            let tr = flow_to_cone(&surf, start, dir.vector())?;
            let arrival = tr.arrival.expect("flow_to_cone stops at a cone point");
            let sheet = arrival_sheet(&surf, arrival);
            let &(vj, kj) = vertex_of
                .get(&sheet)
                .ok_or_else(|| Error::Degenerate(format!("arrival sheet {} is regular", sheet + 1)))?;
            if !tr.time.is_integer() {
                return Err(Error::Degenerate(format!("saddle connection of length {}", tr.time)));
            }
            let a = tr.time.to_integer();
            let e = edges.len();
            edges.push(DiagramEdge { start: vi, end: vj, multiple: a });
            ends.insert((vi, k, true), e);
            if ends.insert((vj, kj, false), e).is_some() {
                return Err(Error::Degenerate(format!("two separatrices arrive at sheet {}", sheet + 1)));
            }
            saddle_connections.push(SaddleConnection {
                start: Point::new(start.square, start.x, start.y),
                end: tr.end,
                segments: tr.segments,
                multiple: a,
                holonomy: (a * dir.p(), a * dir.q()),
                top_of: None,
                bottom_of: None,
            });
        }
    }
    let cyclic_order: Vec<Vec<EdgeEnd>> = vertices
        .iter()
        .enumerate()
        .map(|(vi, sheets)| {
            (0..sheets.len())
                .flat_map(|k| {
                    [
                        EdgeEnd { edge: ends[&(vi, k, true)], outgoing: true },
                        EdgeEnd { edge: ends[&(vi, k, false)], outgoing: false },
                    ]
                })
                .collect()
        })
        .collect();
    let mut diag = SeparatrixDiagram { direction: Some(dir), vertices, edges, cyclic_order, saddle_connections };
    let parts = trace_boundaries(&diag);
    for (ci, part) in parts.iter().enumerate() {
        for &e in part {
            diag.saddle_connections[e].top_of = Some(ci);
        }
    }
    Ok(diag)
}

/// Partitions the edges into upper boundaries of cylinders. Each part is
/// listed in boundary order starting from its smallest edge; parts are
/// ordered by that edge.
pub fn trace_boundaries(diag: &SeparatrixDiagram) -> Vec<Vec<usize>> {
    let mut position: HashMap<EdgeEnd, (usize, usize)> = HashMap::new();
    for (v, ends) in diag.cyclic_order.iter().enumerate() {
        for (i, e) in ends.iter().enumerate() {
            position.insert(*e, (v, i));
        }
    }
    let next = |e: usize| -> usize {
        let (v, i) = position[&EdgeEnd { edge: e, outgoing: false }];
        let ends = &diag.cyclic_order[v];
        let n = ends[(i + 1) % ends.len()];
        debug_assert!(n.outgoing);
        n.edge
    };
    let mut seen = vec![false; diag.edges.len()];
    let mut parts = Vec::new();
    for start in 0..diag.edges.len() {
        if seen[start] {
            continue;
        }
        let mut part = Vec::new();
        let mut e = start;
        while !seen[e] {
            seen[e] = true;
            part.push(e);
            e = next(e);
        }
        parts.push(part);
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::decompose;

    #[test]
    fn l_shape_diagram() {
        let o = Origami::l_shape(2, 4).unwrap();
        let d = Direction::new(2, 3).unwrap();
        let diag = separatrix_diagram(&o, d).unwrap();
        assert_eq!(diag.vertices.len(), 1);
        assert_eq!(diag.edges.len(), 3);
        assert_eq!(diag.cyclic_order[0].len(), 6);
        assert!(diag.alternates());
        let parts = trace_boundaries(&diag);
        let mut sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2]);
        let mut lengths = diag.cylinder_lengths();
        lengths.sort_unstable();
        let dec = decompose(&o, d).unwrap();
        let f: Vec<i64> = dec.f_multiset().into_iter().map(|x| x as i64).collect();
        assert_eq!(lengths, f);
    }

    #[test]
    fn single_loop() {
        let diag = SeparatrixDiagram::from_parts(
            vec![DiagramEdge { start: 0, end: 0, multiple: 1 }],
            vec![vec![EdgeEnd { edge: 0, outgoing: true }, EdgeEnd { edge: 0, outgoing: false }]],
        )
        .unwrap();
        assert_eq!(trace_boundaries(&diag), vec![vec![0]]);
        assert!(SeparatrixDiagram::from_parts(
            vec![DiagramEdge { start: 0, end: 0, multiple: 1 }],
            vec![vec![EdgeEnd { edge: 0, outgoing: true }]],
        )
        .is_err());
    }

    #[test]
    fn torus_is_empty() {
        let diag = separatrix_diagram(&Origami::torus(), Direction::HORIZONTAL).unwrap();
        assert!(diag.vertices.is_empty() && diag.edges.is_empty());
        assert!(trace_boundaries(&diag).is_empty());
    }
}
