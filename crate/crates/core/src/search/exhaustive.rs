use super::{
    initial_graph, pair_index, Initial, Objective, SearchConfig, SearchResult, SearchTrace,
};
use crate::error::{Error, Result};
use crate::graph::{find_clique_containing, GraphBuilder, MultipartiteGraph, Vertex};

/// Largest `l·n` accepted by [`exhaustive_frontier`].
pub const EXHAUSTIVE_MAX_VERTICES: usize = 14;

struct Edge {
    u: Vertex,
    v: Vertex,
    pair: usize,
    /// `u` lies in part 0 past its first vertex and this is the first edge of
    /// its row.
    row_start: bool,
}

struct Enumeration<'a> {
    k: usize,
    edges: &'a [Edge],
    part0: usize,
    builder: GraphBuilder,
    counts: Vec<usize>,
    remaining: Vec<usize>,
    nodes: u64,
    complete: u64,
    best: Option<(Objective, MultipartiteGraph)>,
}

impl Enumeration<'_> {
    fn upper_bound(&self) -> Objective {
        let ub: Vec<usize> = self
            .counts
            .iter()
            .zip(&self.remaining)
            .map(|(c, r)| c + r)
            .collect();
        Objective::from_counts(&ub)
    }

    /// Rows of part-0 vertices are kept in non-increasing lexicographic
    /// order (1 before 0); `tight` means the current row equals the previous
    /// one so far.
    fn visit(&mut self, idx: usize, tight: bool) {
        self.nodes += 1;
        if let Some((best, _)) = &self.best {
            if self.upper_bound() <= *best {
                return;
            }
        }
        let Some(edge) = self.edges.get(idx) else {
            self.complete += 1;
            let obj = Objective::from_counts(&self.counts);
            if self.best.as_ref().is_none_or(|(b, _)| obj > *b) {
                self.best = Some((obj, self.builder.graph().clone()));
            }
            return;
        };
        let (u, v, pair) = (edge.u, edge.v, edge.pair);
        let symmetric = u > 0 && u < self.part0;
        let tight = edge.row_start || (symmetric && tight);
        let prev = symmetric && self.builder.graph().has_edge(u - 1, v);
        self.remaining[pair] -= 1;

        if !(symmetric && tight && !prev) {
            self.builder.insert_unchecked(u, v);
            if find_clique_containing(self.builder.graph(), &[u, v], self.k).is_none() {
                self.counts[pair] += 1;
                self.visit(idx + 1, tight);
                self.counts[pair] -= 1;
            }
            self.builder.remove_unchecked(u, v);
        }
        self.visit(idx + 1, symmetric && tight && !prev);

        self.remaining[pair] += 1;
    }
}

/// Provably optimal `K^k`-free graph on `l` parts of `n` vertices under the
/// search objective, by enumeration of all edge sets with bound pruning and
/// symmetry breaking on the vertices of part 0.
pub fn exhaustive_frontier(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if cfg.l * cfg.n > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::invalid(format!(
            "exhaustive search needs l*n <= {EXHAUSTIVE_MAX_VERTICES}, got {}*{} = {}",
            cfg.l,
            cfg.n,
            cfg.l * cfg.n
        )));
    }
    if !matches!(cfg.initial, Initial::Empty) {
        return Err(Error::invalid("exhaustive search takes no initial graph"));
    }
    let empty = initial_graph(cfg)?;
    let l = cfg.l;
    let n = cfg.n;
    let mut edges = Vec::new();
    for u in 0..empty.vertex_count() {
        let pu = empty.part_of(u);
        let mut first = true;
        for v in empty.part_range(pu).end..empty.vertex_count() {
            let pv = empty.part_of(v);
            edges.push(Edge {
                u,
                v,
                pair: pair_index(l, pu, pv),
                row_start: first && pu == 0 && u > 0,
            });
            first = false;
        }
    }
    let mut remaining = vec![0; l * (l - 1) / 2];
    for e in &edges {
        remaining[e.pair] += 1;
    }
    let mut run = Enumeration {
        k: cfg.k,
        edges: &edges,
        part0: n,
        builder: empty.to_builder(),
        counts: vec![0; remaining.len()],
        remaining,
        nodes: 0,
        complete: 0,
        best: None,
    };
    run.visit(0, true);
    let (_, graph) = run.best.expect("the empty graph is always reached");
    let trace = SearchTrace {
        nodes: run.nodes,
        complete_graphs: run.complete,
        ..SearchTrace::default()
    };
    Ok(SearchResult::new(graph, cfg.k, trace, cfg.echo()))
}
