use super::{MultipartiteGraph, Vertex};

/// Score of an edge `xy` with `x ∈ V_i`, `y ∈ V_j`:
/// `s(xy) = d(x) − d_j(x) + d(y) − d_i(y)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EdgeScore {
    pub edge: (Vertex, Vertex),
    pub score: u64,
}

/// All edge scores together with both sides of the double-counting identity
/// `Σ_{xy ∈ E} s(xy) = Σ_x (d(x)² − Σ_j d_j(x)²)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeScoreReport {
    pub scores: Vec<EdgeScore>,
    pub edge_sum: u128,
    pub vertex_sum: u128,
}

impl EdgeScoreReport {
    pub fn identity_holds(&self) -> bool {
        self.edge_sum == self.vertex_sum
    }

    pub fn max_score(&self) -> Option<EdgeScore> {
        self.scores
            .iter()
            .copied()
            .max_by_key(|s| (s.score, std::cmp::Reverse(s.edge)))
    }
}

pub fn edge_scores(g: &MultipartiteGraph) -> EdgeScoreReport {
    let n = g.vertex_count();
    let parts = g.part_count();
    // part_degrees[v * parts + j] = d_j(v)
    let mut part_degrees = vec![0u64; n * parts];
    let mut degrees = vec![0u64; n];
    for v in 0..n {
        for j in 0..parts {
            let d = g.degree_into(v, j) as u64;
            part_degrees[v * parts + j] = d;
            degrees[v] += d;
        }
    }

    let mut scores = Vec::with_capacity(g.edge_count());
    let mut edge_sum = 0u128;
    for (x, y) in g.edges() {
        let (i, j) = (g.part_of(x), g.part_of(y));
        let score =
            degrees[x] - part_degrees[x * parts + j] + degrees[y] - part_degrees[y * parts + i];
        edge_sum += score as u128;
        scores.push(EdgeScore {
            edge: (x, y),
            score,
        });
    }

    let vertex_sum = (0..n)
        .map(|x| {
            let d = degrees[x] as u128;
            let squares: u128 = part_degrees[x * parts..(x + 1) * parts]
                .iter()
                .map(|&dj| (dj as u128) * (dj as u128))
                .sum();
            d * d - squares
        })
        .sum();

    EdgeScoreReport {
        scores,
        edge_sum,
        vertex_sum,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_scores_zero() {
        let g = MultipartiteGraph::from_edges(&[1, 1], &[(0, 1)]).unwrap();
        let r = edge_scores(&g);
        assert_eq!(
            r.scores,
            vec![EdgeScore {
                edge: (0, 1),
                score: 0
            }]
        );
        assert_eq!((r.edge_sum, r.vertex_sum), (0, 0));
    }

    #[test]
    fn complete_tripartite_singletons() {
        let g = MultipartiteGraph::complete(&[1, 1, 1]).unwrap();
        let r = edge_scores(&g);
        assert!(r.scores.iter().all(|s| s.score == 2));
        assert_eq!((r.edge_sum, r.vertex_sum), (6, 6));
        assert!(r.identity_holds());
    }

    #[test]
    fn empty_graph() {
        let g = MultipartiteGraph::empty(&[3, 2]).unwrap();
        let r = edge_scores(&g);
        assert!(r.scores.is_empty());
        assert!(r.identity_holds());
        assert_eq!(r.max_score(), None);
    }
}
