use serde::Deserialize;

use crate::error::{Error, Result};

/// Undirected multigraph with a fixed edge order; edge `i` carries the
/// Schwinger parameter `α_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl MultiGraph {
    /// Parallel edges are allowed, self-loops are not.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(Error::Input(format!(
                    "edge {i} ({u},{v}) refers to a vertex outside 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("edge {i} is a self-loop at vertex {u}")));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    /// Same as [`MultiGraph::new`] but keeps self-loops, which contraction
    /// can produce.
    pub(crate) fn with_loops(vertices: usize, edges: Vec<(usize, usize)>) -> Self {
        MultiGraph { vertices, edges }
    }

    /// `{"vertices": 4, "edges": [[0,1], ...]}` with 0-based vertices.
    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("graph json: {e}")))?;
        MultiGraph::new(g.vertices, g.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.vertices);
        let mut parts = self.vertices;
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// First Betti number `h = |E| - |V| + 1`.
    pub fn loop_number(&self) -> Result<usize> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(self.edges.len() + 1 - self.vertices)
    }

    pub fn delete(&self, e: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        MultiGraph::with_loops(self.vertices, edges)
    }

    /// Contracts edge `e`, merging its endpoints; other edges between the
    /// same two vertices become self-loops.
    pub fn contract(&self, e: usize) -> MultiGraph {
        let (a, b) = self.edges[e];
        let (keep, gone) = (a.min(b), a.max(b));
        let relabel = |x: usize| {
            let x = if x == gone { keep } else { x };
            if x > gone {
                x - 1
            } else {
                x
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        MultiGraph::with_loops(self.vertices - 1, edges)
    }

    /// Two vertices joined by two edges.
    pub fn bubble() -> Self {
        MultiGraph::new(2, vec![(0, 1), (0, 1)]).unwrap()
    }

    pub fn triangle() -> Self {
        MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn complete4() -> Self {
        MultiGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Wheel with `k` spokes: hub 0 and rim 1..=k.
    pub fn wheel(k: usize) -> Self {
        let mut edges: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
        edges.extend((1..=k).map(|i| (i, i % k + 1)));
        MultiGraph::new(k + 1, edges).unwrap()
    }
}

#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
