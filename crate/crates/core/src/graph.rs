//! Tropical curves: connected multigraphs with positive rational edge
//! lengths and nonnegative integer vertex weights, plus the homology
//! machinery (genus, fundamental cycle basis) everything downstream uses.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::Rat;

/// A vertex with its weight `w(v)` (the genus of the component it carries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
}

/// An edge with a fixed orientation `tail → head` and a positive length.
/// Self-loops (`tail == head`) and parallel edges are first-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub length: Rat,
}

/// A connected, weighted, length-decorated multigraph.
///
/// Vertices and edges are stored sorted by id, so every derived object
/// (spanning tree, cycle basis, period matrix) is reproducible from the
/// input alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    NoVertices,
    DuplicateVertexId(String),
    DuplicateEdgeId(String),
    UnknownEndpoint { edge: String, vertex: String },
    NonpositiveLength { edge: String },
    Disconnected,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::NoVertices => write!(f, "curve has no vertices"),
            CurveError::DuplicateVertexId(id) => write!(f, "duplicate vertex id {id:?}"),
            CurveError::DuplicateEdgeId(id) => write!(f, "duplicate edge id {id:?}"),
            CurveError::UnknownEndpoint { edge, vertex } => {
                write!(f, "edge {edge:?} references unknown vertex {vertex:?}")
            }
            CurveError::NonpositiveLength { edge } => {
                write!(f, "edge {edge:?} has nonpositive length")
            }
            CurveError::Disconnected => write!(f, "underlying graph is not connected"),
        }
    }
}

impl TropicalCurve {
    /// Validates and canonicalizes raw curve data. Endpoints refer to
    /// vertices by id.
    pub fn new(
        vertices: Vec<(String, u32)>,
        edges: Vec<(String, String, String, Rat)>,
    ) -> Result<Self, CurveError> {
        if vertices.is_empty() {
            return Err(CurveError::NoVertices);
        }
        let mut vs: Vec<Vertex> = vertices
            .into_iter()
            .map(|(id, weight)| Vertex { id, weight })
            .collect();
        vs.sort_by(|a, b| a.id.cmp(&b.id));
        for w in vs.windows(2) {
            if w[0].id == w[1].id {
                return Err(CurveError::DuplicateVertexId(w[0].id.clone()));
            }
        }
        let index_of = |id: &str| vs.binary_search_by(|v| v.id.as_str().cmp(id)).ok();
        let mut es: Vec<Edge> = Vec::with_capacity(edges.len());
        for (id, tail, head, length) in edges {
            let t = index_of(&tail).ok_or_else(|| CurveError::UnknownEndpoint {
                edge: id.clone(),
                vertex: tail.clone(),
            })?;
            let h = index_of(&head).ok_or_else(|| CurveError::UnknownEndpoint {
                edge: id.clone(),
                vertex: head.clone(),
            })?;
            if length <= Rat::zero() {
                return Err(CurveError::NonpositiveLength { edge: id });
            }
            es.push(Edge { id, tail: t, head: h, length });
        }
        es.sort_by(|a, b| a.id.cmp(&b.id));
        for w in es.windows(2) {
            if w[0].id == w[1].id {
                return Err(CurveError::DuplicateEdgeId(w[0].id.clone()));
            }
        }
        let curve = TropicalCurve { vertices: vs, edges: es };
        if !curve.is_connected() {
            return Err(CurveError::Disconnected);
        }
        Ok(curve)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.id.as_str().cmp(id)).ok()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    pub fn lengths(&self) -> Vec<Rat> {
        self.edges.iter().map(|e| e.length.clone()).collect()
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for (a, b) in [(e.tail, e.head), (e.head, e.tail)] {
                    if seen[v] && a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// First Betti number `h₁ = |E| − |V| + 1`.
    pub fn h1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// `(h₁, g)` with `g = h₁ + Σ_v w(v)` the genus of the nodal curve.
    pub fn genus(&self) -> (usize, usize) {
        let h1 = self.h1();
        let w: usize = self.vertices.iter().map(|v| v.weight as usize).sum();
        (h1, h1 + w)
    }

    /// Signed vertex-edge incidence matrix: +1 at the head, −1 at the tail,
    /// 0 for self-loops.
    pub fn incidence_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            if e.tail != e.head {
                m[e.head][j] += 1;
                m[e.tail][j] -= 1;
            }
        }
        m
    }
}

/// An edge traversed either along (`forward`) or against its orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    /// Vertex the traversal starts from.
    pub fn from_vertex(&self, curve: &TropicalCurve) -> usize {
        let e = &curve.edges()[self.edge];
        if self.forward {
            e.tail
        } else {
            e.head
        }
    }

    /// Vertex the traversal arrives at.
    pub fn to_vertex(&self, curve: &TropicalCurve) -> usize {
        let e = &curve.edges()[self.edge];
        if self.forward {
            e.head
        } else {
            e.tail
        }
    }

    pub fn sign(&self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }
}

/// Fundamental cycle basis of `H₁(Δ, ℤ)`.
///
/// Row `j` of `matrix` records the signed traversal counts of cycle `b_j`;
/// `paths[j]` is the actual closed walk, starting with the defining non-tree
/// edge traversed forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub tree: Vec<usize>,
    pub paths: Vec<Vec<OrientedEdge>>,
    pub matrix: Vec<Vec<i64>>,
    pub num_edges: usize,
    pub num_vertices: usize,
}

impl CycleBasis {
    pub fn h1(&self) -> usize {
        self.matrix.len()
    }

    /// Checks that this basis was built for a curve of the same shape.
    pub fn matches(&self, curve: &TropicalCurve) -> bool {
        self.num_edges == curve.edges().len() && self.num_vertices == curve.vertices().len()
    }
}

/// Deterministic fundamental cycle basis.
///
/// The spanning tree is grown greedily from the lowest vertex id, always
/// taking the lowest-id edge that leaves the visited set. The cycle of a
/// non-tree edge `f` traverses `f` forward and returns through the tree;
/// tree edges enter the row with sign +1 when traversed along their
/// orientation.
pub fn cycle_basis(curve: &TropicalCurve) -> CycleBasis {
    let nv = curve.vertices().len();
    let ne = curve.edges().len();
    let mut in_tree = vec![false; ne];
    let mut visited = vec![false; nv];
    visited[0] = true;
    // parent[v] = oriented edge whose traversal arrives at v from its tree parent
    let mut parent: Vec<Option<OrientedEdge>> = vec![None; nv];
    loop {
        let mut grown = false;
        for (j, e) in curve.edges().iter().enumerate() {
            if in_tree[j] || e.tail == e.head {
                continue;
            }
            let (fwd, from, to) = if visited[e.tail] && !visited[e.head] {
                (true, e.tail, e.head)
            } else if visited[e.head] && !visited[e.tail] {
                (false, e.head, e.tail)
            } else {
                continue;
            };
            let _ = from;
            in_tree[j] = true;
            visited[to] = true;
            parent[to] = Some(OrientedEdge { edge: j, forward: fwd });
            grown = true;
            break;
        }
        if !grown {
            break;
        }
    }
    debug_assert!(visited.iter().all(|&v| v), "curve validated as connected");

    // Path from v up to the root, as a list of oriented edges traversed
    // from v towards the root.
    let root_path = |mut v: usize| -> Vec<OrientedEdge> {
        let mut out = Vec::new();
        while let Some(oe) = parent[v] {
            out.push(OrientedEdge { edge: oe.edge, forward: !oe.forward });
            v = oe.from_vertex(curve);
        }
        out
    };

    let mut paths = Vec::new();
    let mut matrix = Vec::new();
    for (j, e) in curve.edges().iter().enumerate() {
        if in_tree[j] {
            continue;
        }
        // Tree path from head(f) to tail(f): climb to the common ancestor.
        let up_from_head = root_path(e.head);
        let up_from_tail = root_path(e.tail);
        // Drop the shared suffix (edges above the common ancestor).
        let mut a = up_from_head;
        let mut b = up_from_tail;
        while let (Some(x), Some(y)) = (a.last(), b.last()) {
            if x.edge == y.edge {
                a.pop();
                b.pop();
            } else {
                break;
            }
        }
        // head → ancestor, then ancestor → tail (reverse the tail climb).
        let mut path = vec![OrientedEdge { edge: j, forward: true }];
        path.extend(a.iter().copied());
        path.extend(b.iter().rev().map(|oe| OrientedEdge { edge: oe.edge, forward: !oe.forward }));
        let mut row = vec![0i64; ne];
        for oe in &path {
            row[oe.edge] += oe.sign();
        }
        paths.push(path);
        matrix.push(row);
    }
    CycleBasis { tree: (0..ne).filter(|&j| in_tree[j]).collect(), paths, matrix, num_edges: ne, num_vertices: nv }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::{rat, rat_int};
    use alloc::string::ToString;

    pub(crate) fn curve(
        vs: &[(&str, u32)],
        es: &[(&str, &str, &str, Rat)],
    ) -> Result<TropicalCurve, CurveError> {
        TropicalCurve::new(
            vs.iter().map(|(i, w)| (i.to_string(), *w)).collect(),
            es.iter()
                .map(|(i, t, h, l)| (i.to_string(), t.to_string(), h.to_string(), l.clone()))
                .collect(),
        )
    }

    pub(crate) fn single_loop(weight: u32, length: Rat) -> TropicalCurve {
        curve(&[("v", weight)], &[("e", "v", "v", length)]).unwrap()
    }

    pub(crate) fn theta_graph(w1: u32, w2: u32, l: [Rat; 3]) -> TropicalCurve {
        curve(
            &[("u", w1), ("v", w2)],
            &[
                ("e1", "u", "v", l[0].clone()),
                ("e2", "u", "v", l[1].clone()),
                ("e3", "u", "v", l[2].clone()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn smallest_loop_is_valid() {
        let c = single_loop(0, rat_int(3));
        assert_eq!(c.genus(), (1, 1));
    }

    #[test]
    fn theta_graph_h1_and_genus() {
        let c = theta_graph(1, 0, [rat_int(1), rat_int(2), rat_int(3)]);
        assert_eq!(c.genus(), (2, 3));
    }

    #[test]
    fn tree_has_no_cycles() {
        let c = curve(&[("a", 0), ("b", 0)], &[("e", "a", "b", rat_int(1))]).unwrap();
        assert_eq!(c.genus(), (0, 0));
        let basis = cycle_basis(&c);
        assert_eq!(basis.h1(), 0);
        assert_eq!(basis.tree, vec![0]);
    }

    #[test]
    fn weighted_loop_genus() {
        let c = single_loop(2, rat_int(1));
        assert_eq!(c.genus(), (1, 3));
    }

    #[test]
    fn self_loop_cycle_row_is_unit() {
        let c = single_loop(0, rat(3, 2));
        let basis = cycle_basis(&c);
        assert_eq!(basis.matrix, vec![vec![1]]);
        assert_eq!(basis.paths[0], vec![OrientedEdge { edge: 0, forward: true }]);
    }

    #[test]
    fn theta_graph_fundamental_cycles() {
        let c = theta_graph(0, 0, [rat_int(1), rat_int(2), rat_int(3)]);
        let basis = cycle_basis(&c);
        assert_eq!(basis.tree, vec![0]);
        assert_eq!(basis.matrix, vec![vec![-1, 1, 0], vec![-1, 0, 1]]);
    }

    #[test]
    fn cycle_rows_annihilate_incidence() {
        let c = curve(
            &[("a", 0), ("b", 1), ("c", 0), ("d", 2)],
            &[
                ("e1", "a", "b", rat_int(1)),
                ("e2", "b", "c", rat_int(2)),
                ("e3", "c", "a", rat(1, 3)),
                ("e4", "c", "d", rat_int(1)),
                ("e5", "d", "d", rat_int(5)),
                ("e6", "b", "a", rat(7, 2)),
            ],
        )
        .unwrap();
        let basis = cycle_basis(&c);
        assert_eq!(basis.h1(), c.h1());
        let inc = c.incidence_matrix();
        for row in &basis.matrix {
            for vrow in &inc {
                let dot: i64 = row.iter().zip(vrow.iter()).map(|(a, b)| a * b).sum();
                assert_eq!(dot, 0);
            }
        }
        // fundamental-cycle form: ±1 on exactly one non-tree edge
        for (j, row) in basis.matrix.iter().enumerate() {
            let nontree: Vec<_> =
                (0..c.edges().len()).filter(|e| !basis.tree.contains(e)).collect();
            for (k, &e) in nontree.iter().enumerate() {
                assert_eq!(row[e].abs(), if k == j { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            curve(&[("v", 0)], &[("e", "v", "w", rat_int(1))]),
            Err(CurveError::UnknownEndpoint { edge: "e".into(), vertex: "w".into() })
        );
        assert_eq!(
            curve(&[("v", 0)], &[("e", "v", "v", rat_int(0))]),
            Err(CurveError::NonpositiveLength { edge: "e".into() })
        );
        assert_eq!(curve(&[("a", 0), ("b", 0)], &[]), Err(CurveError::Disconnected));
        assert_eq!(
            curve(&[("a", 0), ("a", 1)], &[]),
            Err(CurveError::DuplicateVertexId("a".into()))
        );
    }
}
