//! Reference computations for integration tests. Each works from raw
//! adjacency queries only, without the library's clique, density, score or
//! independence code.

#![allow(dead_code)]

use num_rational::Ratio;
use turan_core::MultipartiteGraph;

pub type Q = Ratio<i128>;

pub fn q(p: i128, r: i128) -> Q {
    Ratio::new(p, r)
}

pub fn density(g: &MultipartiteGraph, i: usize, j: usize) -> Q {
    let mut edges = 0i128;
    for u in g.part_range(i) {
        for v in g.part_range(j) {
            if g.has_edge(u, v) {
                edges += 1;
            }
        }
    }
    q(edges, (g.part_size(i) * g.part_size(j)) as i128)
}

pub fn min_density(g: &MultipartiteGraph) -> Q {
    let l = g.part_count();
    (0..l)
        .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
        .map(|(i, j)| density(g, i, j))
        .min()
        .expect("two parts")
}

pub fn has_triangle(g: &MultipartiteGraph) -> bool {
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Whether `g` contains a clique on `k` vertices, by extending cliques one
/// higher-numbered common neighbour at a time.
pub fn has_clique(g: &MultipartiteGraph, k: usize) -> bool {
    fn grow(g: &MultipartiteGraph, candidates: &[usize], need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if candidates.len() < need {
            return false;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| g.has_edge(v, w))
                .collect();
            if grow(g, &next, need - 1) {
                return true;
            }
        }
        false
    }
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    grow(g, &all, k)
}

pub fn brute_clique_number(g: &MultipartiteGraph) -> usize {
    let mut k = 0;
    while has_clique(g, k + 1) {
        k += 1;
    }
    k
}

/// Independence number of a graph on at most 128 vertices, by branching on
/// the lowest remaining vertex over bitmasks.
pub fn alpha(g: &MultipartiteGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 128);
    let nbr: Vec<u128> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&w| g.has_edge(v, w))
                .fold(0u128, |m, w| m | 1 << w)
        })
        .collect();
    fn go(nbr: &[u128], candidates: u128, size: usize, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let rest = candidates & !(1u128 << v);
        go(nbr, rest & !nbr[v], size + 1, best);
        if nbr[v] & rest != 0 {
            go(nbr, rest, size, best);
        }
    }
    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut best = 0;
    go(&nbr, all, 0, &mut best);
    best
}

/// Both sides of `Σ_{xy ∈ E} s(xy) = Σ_x (d(x)² − Σ_j d_j(x)²)` from the
/// definition `s(xy) = d(x) − d_j(x) + d(y) − d_i(y)`.
pub fn edge_score_sides(g: &MultipartiteGraph) -> (u128, u128) {
    let n = g.vertex_count();
    let l = g.part_count();
    let deg_into =
        |x: usize, j: usize| g.part_range(j).filter(|&y| g.has_edge(x, y)).count() as u128;
    let deg = |x: usize| (0..n).filter(|&y| g.has_edge(x, y)).count() as u128;
    let mut lhs = 0;
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                let (i, j) = (g.part_of(x), g.part_of(y));
                lhs += deg(x) - deg_into(x, j) + deg(y) - deg_into(y, i);
            }
        }
    }
    let rhs = (0..n)
        .map(|x| deg(x) * deg(x) - (0..l).map(|j| deg_into(x, j).pow(2)).sum::<u128>())
        .sum();
    (lhs, rhs)
}
