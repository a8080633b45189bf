//! The multipartite graph model.
//!
//! Vertices are dense ids `0..n` assigned in part order, so part `i` owns the
//! contiguous id range `offsets[i]..offsets[i + 1]`. Adjacency is one bit row
//! per vertex. Graphs are immutable once built; mutation goes through
//! [`GraphBuilder`], which owns a private copy.

mod bitset;
mod blowup;
mod clique;
mod density;
mod independent;
mod scores;

pub use bitset::BitSet;
pub use blowup::{blow_up, blow_up_uniform, BlowUp};
pub use clique::{clique_number, find_clique, find_clique_containing};
pub use density::DensityMatrix;
pub use independent::{is_independent, max_independent_set, DEFAULT_MIS_BUDGET};
pub use scores::{edge_scores, EdgeScore, EdgeScoreReport};

use std::ops::Range;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultipartiteGraph {
    offsets: Vec<usize>,
    part_of: Vec<usize>,
    rows: Vec<BitSet>,
    edge_count: usize,
}

impl MultipartiteGraph {
    /// Graph with the given part sizes and no edges.
    pub fn empty(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::invalid(
                "a multipartite graph needs at least one part",
            ));
        }
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::invalid(format!("part {i} is empty")));
        }
        let mut offsets = Vec::with_capacity(part_sizes.len() + 1);
        offsets.push(0);
        let mut part_of = Vec::new();
        for (i, &size) in part_sizes.iter().enumerate() {
            offsets.push(offsets[i] + size);
            part_of.extend(std::iter::repeat_n(i, size));
        }
        let n = part_of.len();
        Ok(MultipartiteGraph {
            offsets,
            part_of,
            rows: vec![BitSet::new(n); n],
            edge_count: 0,
        })
    }

    pub fn from_edges(part_sizes: &[usize], edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut builder = GraphBuilder::new(part_sizes)?;
        for &(u, v) in edges {
            builder.add_edge(u, v)?;
        }
        Ok(builder.build())
    }

    /// Complete multipartite graph on the given parts.
    pub fn complete(part_sizes: &[usize]) -> Result<Self> {
        let mut builder = GraphBuilder::new(part_sizes)?;
        let n = builder.graph.vertex_count();
        for u in 0..n {
            for v in builder.graph.offsets[builder.graph.part_of[u] + 1]..n {
                builder.add_edge(u, v)?;
            }
        }
        Ok(builder.build())
    }

    pub fn part_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.part_of.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn part_size(&self, part: usize) -> usize {
        self.offsets[part + 1] - self.offsets[part]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        (0..self.part_count()).map(|i| self.part_size(i)).collect()
    }

    pub fn part_range(&self, part: usize) -> Range<Vertex> {
        self.offsets[part]..self.offsets[part + 1]
    }

    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v]
    }

    /// True when every part has the same number of vertices.
    pub fn is_balanced(&self) -> bool {
        let first = self.part_size(0);
        (1..self.part_count()).all(|i| self.part_size(i) == first)
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbors(&self, v: Vertex) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rows[v].count()
    }

    /// Number of neighbors of `v` inside `part`.
    pub fn degree_into(&self, v: Vertex, part: usize) -> usize {
        self.rows[v].count_range(self.offsets[part], self.offsets[part + 1])
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.rows[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Number of edges between two distinct parts.
    pub fn edge_count_between(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = (self.offsets[j], self.offsets[j + 1]);
        self.part_range(i)
            .map(|u| self.rows[u].count_range(lo, hi))
            .sum()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            graph: self.clone(),
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::invalid(format!(
                "vertex {v} out of range (graph has {} vertices)",
                self.vertex_count()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_part(&self, part: usize) -> Result<()> {
        if part >= self.part_count() {
            return Err(Error::invalid(format!(
                "part {part} out of range (graph has {} parts)",
                self.part_count()
            )));
        }
        Ok(())
    }
}

/// Mutable staging area for a [`MultipartiteGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    graph: MultipartiteGraph,
}

impl GraphBuilder {
    pub fn new(part_sizes: &[usize]) -> Result<Self> {
        Ok(GraphBuilder {
            graph: MultipartiteGraph::empty(part_sizes)?,
        })
    }

    /// Read-only view of the current state.
    pub fn graph(&self) -> &MultipartiteGraph {
        &self.graph
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<()> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if self.graph.part_of[u] == self.graph.part_of[v] {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) lies inside part {}",
                self.graph.part_of[u]
            )));
        }
        Ok(())
    }

    /// Adds `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_pair(u, v)?;
        Ok(self.insert_unchecked(u, v))
    }

    /// Removes `uv`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check_pair(u, v)?;
        Ok(self.remove_unchecked(u, v))
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, u: Vertex, v: Vertex) -> bool {
        if self.graph.rows[u].contains(v) {
            return false;
        }
        self.graph.rows[u].insert(v);
        self.graph.rows[v].insert(u);
        self.graph.edge_count += 1;
        true
    }

    #[inline]
    pub(crate) fn remove_unchecked(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.graph.rows[u].contains(v) {
            return false;
        }
        self.graph.rows[u].remove(v);
        self.graph.rows[v].remove(u);
        self.graph.edge_count -= 1;
        true
    }

    pub fn build(self) -> MultipartiteGraph {
        self.graph
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_parts_and_intra_part_edges() {
        assert!(MultipartiteGraph::empty(&[2, 0, 1]).is_err());
        assert!(MultipartiteGraph::empty(&[]).is_err());
        let err = MultipartiteGraph::from_edges(&[2, 2], &[(0, 1)]).unwrap_err();
        assert!(err.to_string().contains("inside part 0"));
        assert!(MultipartiteGraph::from_edges(&[2, 2], &[(0, 9)]).is_err());
    }

    #[test]
    fn ids_follow_part_order() {
        let g = MultipartiteGraph::empty(&[2, 3, 1]).unwrap();
        assert_eq!(g.part_range(1), 2..5);
        assert_eq!(g.part_of(5), 2);
        assert_eq!(g.vertex_count(), 6);
        assert!(!g.is_balanced());
    }

    #[test]
    fn complete_graph_counts() {
        let g = MultipartiteGraph::complete(&[1, 2, 3]).unwrap();
        assert_eq!(g.edge_count(), 2 + 3 + 6);
        assert_eq!(g.edge_count_between(1, 2), 6);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.degree_into(0, 2), 3);
        assert!(g.edges().all(|(u, v)| u < v));
    }

    #[test]
    fn builder_tracks_edge_count() {
        let mut b = GraphBuilder::new(&[2, 2]).unwrap();
        assert!(b.add_edge(0, 2).unwrap());
        assert!(!b.add_edge(2, 0).unwrap());
        assert_eq!(b.graph().edge_count(), 1);
        assert!(b.remove_edge(0, 2).unwrap());
        assert!(!b.remove_edge(0, 2).unwrap());
        assert_eq!(b.build().edge_count(), 0);
    }
}
