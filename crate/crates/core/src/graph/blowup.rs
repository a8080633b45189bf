use super::{GraphBuilder, MultipartiteGraph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct BlowUp {
    pub graph: MultipartiteGraph,
    /// Original vertex of every new vertex.
    pub origin: Vec<Vertex>,
    /// False when some part mixed different factors. Clique number is kept
    /// either way, pairwise densities only when this is true.
    pub density_preserving: bool,
}

/// Replaces every vertex `v` by `factors[v]` pairwise nonadjacent twins.
/// Copies of adjacent vertices are fully joined. Copies stay in the part of
/// their original, consecutively and in original id order.
pub fn blow_up(g: &MultipartiteGraph, factors: &[usize]) -> Result<BlowUp> {
    if factors.len() != g.vertex_count() {
        return Err(Error::invalid(format!(
            "expected {} blow-up factors, got {}",
            g.vertex_count(),
            factors.len()
        )));
    }
    if let Some(v) = factors.iter().position(|&f| f == 0) {
        return Err(Error::invalid(format!(
            "blow-up factor of vertex {v} is zero"
        )));
    }

    let mut origin = Vec::with_capacity(factors.iter().sum());
    let mut first_copy = Vec::with_capacity(g.vertex_count());
    for (v, &f) in factors.iter().enumerate() {
        first_copy.push(origin.len());
        origin.extend(std::iter::repeat_n(v, f));
    }
    let sizes: Vec<usize> = (0..g.part_count())
        .map(|p| g.part_range(p).map(|v| factors[v]).sum())
        .collect();
    let mut builder = GraphBuilder::new(&sizes)?;
    for (u, v) in g.edges() {
        for cu in first_copy[u]..first_copy[u] + factors[u] {
            for cv in first_copy[v]..first_copy[v] + factors[v] {
                builder.insert_unchecked(cu, cv);
            }
        }
    }
    let density_preserving = (0..g.part_count()).all(|p| {
        let mut range = g.part_range(p);
        let first = factors[range.next().expect("parts are nonempty")];
        range.all(|v| factors[v] == first)
    });
    Ok(BlowUp {
        graph: builder.build(),
        origin,
        density_preserving,
    })
}

/// Blow-up with the same factor for every vertex.
pub fn blow_up_uniform(g: &MultipartiteGraph, factor: usize) -> Result<BlowUp> {
    blow_up(g, &vec![factor; g.vertex_count()])
}
