use super::{BitSet, MultipartiteGraph, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_MIS_BUDGET: u64 = 5_000_000;

pub fn is_independent(g: &MultipartiteGraph, set: &[Vertex]) -> bool {
    set.iter()
        .enumerate()
        .all(|(a, &u)| set[a + 1..].iter().all(|&v| !g.has_edge(u, v)))
}

/// Exact maximum independent set by branch and bound.
///
/// Branches on the closed neighborhood of a minimum-degree candidate (some
/// maximum independent set meets it) and bounds with a greedy clique cover of
/// the remaining candidates. Exceeding `budget` search nodes is an error; no
/// approximate answer is ever returned.
pub fn max_independent_set(g: &MultipartiteGraph, budget: u64) -> Result<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut search = Search {
        g,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        budget,
    };
    search.descend(BitSet::full(n))?;
    let mut best = search.best;
    best.sort_unstable();
    Ok(best)
}

struct Search<'a> {
    g: &'a MultipartiteGraph,
    best: Vec<Vertex>,
    current: Vec<Vertex>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn descend(&mut self, cand: BitSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::ResourceLimit {
                what: "maximum independent set search",
                budget: self.budget,
            });
        }
        if cand.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return Ok(());
        }
        if self.current.len() + clique_cover_bound(self.g, &cand) <= self.best.len() {
            return Ok(());
        }

        let pivot = cand
            .iter()
            .min_by_key(|&v| (self.g.neighbors(v).intersection_count(&cand), v))
            .expect("candidates are nonempty");
        let mut branch_on = self.g.neighbors(pivot).clone();
        branch_on.intersect_with(&cand);
        branch_on.insert(pivot);

        let mut remaining = cand;
        let mut next = BitSet::new(self.g.vertex_count());
        for u in branch_on.iter() {
            next.assign_and_not(&remaining, self.g.neighbors(u));
            next.remove(u);
            self.current.push(u);
            self.descend(next.clone())?;
            self.current.pop();
            // later branches skip u: sets containing u were already covered
            remaining.remove(u);
            if self.current.len() + remaining.count() <= self.best.len() {
                break;
            }
        }
        Ok(())
    }
}

/// Number of cliques in a greedy clique cover of `cand`. Each clique holds
/// at most one vertex of any independent set.
fn clique_cover_bound(g: &MultipartiteGraph, cand: &BitSet) -> usize {
    let mut commons: Vec<BitSet> = Vec::new();
    for w in cand.iter() {
        match commons.iter_mut().find(|c| c.contains(w)) {
            Some(common) => common.intersect_with(g.neighbors(w)),
            None => {
                let mut common = g.neighbors(w).clone();
                common.intersect_with(cand);
                commons.push(common);
            }
        }
    }
    commons.len()
}
