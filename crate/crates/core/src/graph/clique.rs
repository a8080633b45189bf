use super::{BitSet, MultipartiteGraph, Vertex};

/// Finds `k` pairwise adjacent vertices, or `None` if the graph has no `K^k`.
///
/// Parts are independent, so every clique is transversal. Candidates are
/// visited part by part in order of ascending part size (ties by index), and a
/// branch is cut once its candidate set spans fewer parts than the clique
/// still needs.
pub fn find_clique(g: &MultipartiteGraph, k: usize) -> Option<Vec<Vertex>> {
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.part_count() {
        return None;
    }
    let mut order: Vec<usize> = (0..g.part_count()).collect();
    order.sort_by_key(|&p| (g.part_size(p), p));
    if order.iter().enumerate().all(|(i, &p)| i == p) {
        return search_from(g, &BitSet::full(g.vertex_count()), k, &[]);
    }

    // Relabel so that id order follows the chosen part order.
    let mut old_of_new = Vec::with_capacity(g.vertex_count());
    for &p in &order {
        old_of_new.extend(g.part_range(p));
    }
    let mut new_of_old = vec![0; g.vertex_count()];
    for (new, &old) in old_of_new.iter().enumerate() {
        new_of_old[old] = new;
    }
    let sizes: Vec<usize> = order.iter().map(|&p| g.part_size(p)).collect();
    let mut builder = super::GraphBuilder::new(&sizes).expect("sizes come from a valid graph");
    for (u, v) in g.edges() {
        builder.insert_unchecked(new_of_old[u], new_of_old[v]);
    }
    let relabeled = builder.build();
    search_from(&relabeled, &BitSet::full(g.vertex_count()), k, &[]).map(|clique| {
        let mut mapped: Vec<Vertex> = clique.into_iter().map(|v| old_of_new[v]).collect();
        mapped.sort_unstable();
        mapped
    })
}

/// Finds a `K^k` containing every vertex of `seed`. The seed vertices must be
/// pairwise adjacent, otherwise `None` is returned.
pub fn find_clique_containing(
    g: &MultipartiteGraph,
    seed: &[Vertex],
    k: usize,
) -> Option<Vec<Vertex>> {
    for (a, &u) in seed.iter().enumerate() {
        if seed[a + 1..].iter().any(|&v| !g.has_edge(u, v)) {
            return None;
        }
    }
    if seed.len() >= k {
        return (seed.len() == k).then(|| seed.to_vec());
    }
    let mut cand = BitSet::full(g.vertex_count());
    for &v in seed {
        cand.intersect_with(g.neighbors(v));
    }
    let mut found = search_from(g, &cand, k - seed.len(), seed)?;
    found.sort_unstable();
    Some(found)
}

fn search_from(
    g: &MultipartiteGraph,
    cand: &BitSet,
    need: usize,
    seed: &[Vertex],
) -> Option<Vec<Vertex>> {
    let mut acc = seed.to_vec();
    if need == 0 {
        return Some(acc);
    }
    if spans_fewer_parts(g, cand, need) {
        return None;
    }
    let mut scratch = vec![BitSet::new(g.vertex_count()); need];
    extend(g, cand, need, &mut acc, &mut scratch).then_some(acc)
}

fn extend(
    g: &MultipartiteGraph,
    cand: &BitSet,
    need: usize,
    acc: &mut Vec<Vertex>,
    scratch: &mut [BitSet],
) -> bool {
    if need == 1 {
        if let Some(v) = cand.first() {
            acc.push(v);
            return true;
        }
        return false;
    }
    let (next, rest) = scratch
        .split_first_mut()
        .expect("one scratch set per level");
    for v in cand.iter() {
        next.assign_and(cand, g.neighbors(v));
        next.clear_below(v + 1);
        if spans_fewer_parts(g, next, need - 1) {
            continue;
        }
        acc.push(v);
        if extend(g, next, need - 1, acc, rest) {
            return true;
        }
        acc.pop();
    }
    false
}

/// True when `set` meets fewer than `need` distinct parts.
#[inline]
fn spans_fewer_parts(g: &MultipartiteGraph, set: &BitSet, need: usize) -> bool {
    let mut parts = 0;
    let mut last = usize::MAX;
    for v in set.iter() {
        let p = g.part_of(v);
        if p != last {
            parts += 1;
            if parts >= need {
                return false;
            }
            last = p;
        }
    }
    true
}

/// Size of the largest clique.
pub fn clique_number(g: &MultipartiteGraph) -> usize {
    let mut k = 0;
    while find_clique(g, k + 1).is_some() {
        k += 1;
    }
    k
}
