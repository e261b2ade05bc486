use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fuzzy::check_membership;

/// Undirected graph with edge weights in `(0, 1]` and no self-loops.
///
/// Edges are keyed by `(u, v)` with `u < v` (vertex indices).
#[derive(Clone, Debug, PartialEq)]
pub struct FuzzyGraph {
    vertices: Vec<String>,
    edges: BTreeMap<(usize, usize), f64>,
}

impl FuzzyGraph {
    pub fn new<I>(vertices: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = vertices.len();
        let mut map = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { dim: n, index: u.max(v) });
            }
            if u == v {
                return Err(Error::Structure(format!("self-loop at `{}`", vertices[u])));
            }
            check_membership(w)?;
            if map.insert((u.min(v), u.max(v)), w).is_some() {
                return Err(Error::Structure(format!("duplicate edge {{{}, {}}}", vertices[u], vertices[v])));
            }
        }
        Ok(Self { vertices, edges: map })
    }

    /// A graph on vertices labeled `0..n`.
    pub fn with_indexed_vertices<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edges as `(u, v, w)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub(crate) fn edge_map(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.edges
    }

    pub(crate) fn from_parts(vertices: Vec<String>, edges: BTreeMap<(usize, usize), f64>) -> Self {
        Self { vertices, edges }
    }
}
