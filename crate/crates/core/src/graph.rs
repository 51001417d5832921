//! Static graphs, their adjacency matrices, and classification of connected
//! components into the shapes with known closed-form walk evolutions.

use std::collections::BTreeSet;

use crate::error::GraphError;
use crate::linalg::Matrix;

/// An undirected simple graph with optional self-loops on isolated vertices.
///
/// Self-loops are only permitted on vertices with no incident edges; a looped
/// vertex with neighbors is rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
}

impl Graph {
    /// Build a graph, validating vertex ranges and the loop convention.
    /// Edge pairs are stored with the smaller endpoint first; duplicates
    /// collapse.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        loops: impl IntoIterator<Item = usize>,
    ) -> Result<Graph, GraphError> {
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfEdge(u));
            }
            edge_set.insert((u.min(v), u.max(v)));
        }
        let mut loop_set = BTreeSet::new();
        for v in loops {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            loop_set.insert(v);
        }
        for &v in &loop_set {
            if edge_set.iter().any(|&(a, b)| a == v || b == v) {
                return Err(GraphError::LoopOnNonIsolated(v));
            }
        }
        Ok(Graph {
            n,
            edges: edge_set,
            loops: loop_set,
        })
    }

    /// Graph with no edges and no loops.
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: BTreeSet::new(),
            loops: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Symmetric 0/1 adjacency matrix; diagonal entries mark self-loops.
    pub fn adjacency_matrix(&self) -> Matrix {
        let mut a = Matrix::zeros(self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        for &v in &self.loops {
            a[(v, v)] = 1.0;
        }
        a
    }

    /// Partition of the vertex set under the edge relation. Components come
    /// out sorted by their smallest vertex, each sorted internally.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            seen[start] = true;
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    /// Identify the shape of one connected component for closed-form
    /// evolution dispatch.
    pub fn classify_component(&self, comp: &[usize]) -> ComponentKind {
        match comp {
            [v] => {
                if self.has_loop(*v) {
                    ComponentKind::LoopedIsolated
                } else {
                    ComponentKind::LooplessIsolated
                }
            }
            [u, v] if self.has_edge(*u, *v) => ComponentKind::Path2,
            four @ [_, _, _, _] => {
                if four.iter().all(|&v| self.degree(v) == 2) {
                    // Degree-2 connected on 4 vertices is C4; the two
                    // non-adjacent pairs are the opposite corners.
                    let a = four[0];
                    let opposite = *four[1..].iter().find(|&&v| !self.has_edge(a, v)).unwrap();
                    let rest: Vec<usize> = four[1..]
                        .iter()
                        .copied()
                        .filter(|&v| v != opposite)
                        .collect();
                    ComponentKind::Cycle4 {
                        pairs: [(a, opposite), (rest[0], rest[1])],
                    }
                } else {
                    ComponentKind::Other
                }
            }
            _ => ComponentKind::Other,
        }
    }
}

/// The component shapes with tabulated closed-form evolutions, plus `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentKind {
    /// Degree-0 vertex, no loop: amplitude never changes.
    LooplessIsolated,
    /// Degree-0 vertex with a self-loop: amplitude picks up `e^{-it}`.
    LoopedIsolated,
    /// Path on two vertices.
    Path2,
    /// Cycle on four vertices; `pairs` are the two antipodal (non-adjacent)
    /// vertex pairs, the first containing the component's smallest vertex.
    Cycle4 { pairs: [(usize, usize); 2] },
    Other,
}

impl ComponentKind {
    /// Number of amplitudes the closed form acts on, if it has one.
    pub fn arity(&self) -> Option<usize> {
        match self {
            ComponentKind::LooplessIsolated | ComponentKind::LoopedIsolated => Some(1),
            ComponentKind::Path2 => Some(2),
            ComponentKind::Cycle4 { .. } => Some(4),
            ComponentKind::Other => None,
        }
    }
}
