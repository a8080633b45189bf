//! Worked examples across modules, each checked against a reference count
//! from `common`.

mod common;

use common::{
    alpha, brute_clique_number, density, edge_score_sides, has_clique, has_triangle, min_density, q,
};
use turan_core::extremal::{
    check_density_condition, check_membership, generate, is_member, vertex_id, DeletionSpec,
    ExtremalParams, MembershipOptions, PartOrder,
};
use turan_core::graph::{
    blow_up, blow_up_uniform, edge_scores, find_clique, max_independent_set, DEFAULT_MIS_BUDGET,
};
use turan_core::oracles::check_bondy2;
use turan_core::search::{local_search, Initial, Mode, SearchConfig};
use turan_core::MultipartiteGraph;

fn member(params: &ExtremalParams) -> MultipartiteGraph {
    generate(params, &DeletionSpec::none()).unwrap().graph
}

#[test]
fn densities_of_small_graphs() {
    let g = MultipartiteGraph::from_edges(&[1, 1], &[(0, 1)]).unwrap();
    assert_eq!(g.pairwise_density(0, 1).unwrap(), q(1, 1));
    let g = MultipartiteGraph::empty(&[2, 3]).unwrap();
    assert_eq!(g.pairwise_density(0, 1).unwrap(), q(0, 1));
    let g = MultipartiteGraph::from_edges(&[2, 2], &[(0, 2), (0, 3), (1, 2)]).unwrap();
    assert_eq!(g.density_matrix().get(0, 1), Some(&q(3, 4)));
    let g = MultipartiteGraph::complete(&[2, 3, 1]).unwrap();
    assert_eq!(g.min_pairwise_density().unwrap(), q(1, 1));
    let g = MultipartiteGraph::from_edges(&[1, 1, 1], &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(g.min_pairwise_density().unwrap(), q(0, 1));
}

#[test]
fn unbalanced_three_part_member() {
    let p = ExtremalParams {
        k: 3,
        part_count: 3,
        class_sizes: vec![vec![2, 1], vec![1, 2], vec![1, 1]],
    };
    let g = member(&p);
    assert_eq!(g.pairwise_density(0, 1).unwrap(), q(5, 9));
    assert_eq!(density(&g, 0, 1), q(5, 9));
    assert_eq!(g.pairwise_density(0, 2).unwrap(), q(1, 2));
    assert_eq!(density(&g, 0, 2), q(1, 2));
    assert!(!has_triangle(&g));
}

#[test]
fn balanced_members_across_k() {
    let g = member(&ExtremalParams::balanced(3, 3, 1));
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 6));
    assert_eq!(min_density(&g), q(1, 2));
    assert!(find_clique(&g, 3).is_none() && !has_triangle(&g));

    let g = member(&ExtremalParams::balanced(4, 6, 1));
    assert_eq!(g.part_sizes(), vec![3; 6]);
    for i in 0..6 {
        for j in i + 1..6 {
            assert_eq!(density(&g, i, j), q(2, 3));
        }
    }
    assert!(find_clique(&g, 3).is_some() && find_clique(&g, 4).is_none());
    assert_eq!(brute_clique_number(&g), 3);
}

#[test]
fn one_zone_deletion_on_thirteen_parts() {
    let p = ExtremalParams::balanced(3, 13, 1);
    let a = vertex_id(&p.class_sizes, 0, 0, 0);
    let b = vertex_id(&p.class_sizes, 1, 1, 0);
    let g = generate(&p, &DeletionSpec::from_pairs([(a, b)]))
        .unwrap()
        .graph;
    assert_eq!(density(&g, 0, 1), q(1, 4));
    for i in 0..13 {
        for j in i + 1..13 {
            if (i, j) != (0, 1) {
                assert_eq!(density(&g, i, j), q(1, 2));
            }
        }
    }
    let shortfalls = check_density_condition(&g, 3).unwrap();
    assert_eq!(shortfalls.len(), 1);
    assert_eq!(
        (shortfalls[0].parts, shortfalls[0].density),
        ((0, 1), q(1, 4))
    );
    assert!(check_density_condition(&member(&p), 3).unwrap().is_empty());
    let complete = MultipartiteGraph::complete(&[2; 5]).unwrap();
    for k in 3..6 {
        assert!(check_density_condition(&complete, k).unwrap().is_empty());
    }
}

#[test]
fn parameter_violations() {
    assert!(ExtremalParams::balanced(3, 13, 1).is_valid());
    let bad_tail = ExtremalParams {
        k: 3,
        part_count: 3,
        class_sizes: vec![vec![1, 1], vec![1, 1], vec![2, 1]],
    };
    assert!(!bad_tail.is_valid());
    let empty = ExtremalParams {
        k: 3,
        part_count: 3,
        class_sizes: vec![vec![1, 1], vec![0, 0], vec![1, 1]],
    };
    assert!(!empty.is_valid());
}

#[test]
fn membership_mutations_between_later_parts() {
    let p = ExtremalParams::balanced(3, 13, 1);
    let g = member(&p);
    let (a3, a4) = (
        vertex_id(&p.class_sizes, 3, 0, 0),
        vertex_id(&p.class_sizes, 4, 0, 0),
    );
    let b4 = vertex_id(&p.class_sizes, 4, 1, 0);

    let mut added = g.to_builder();
    added.add_edge(a3, a4).unwrap();
    let added = added.build();
    assert!(has_triangle(&added));
    assert!(is_member(&added, 3).unwrap().is_none());

    // With parts taken in file order the zone is parts 0 and 1, so a removal
    // between parts 3 and 4 is outside it. With free order those two parts
    // can serve as the zone instead.
    let mut removed = g.to_builder();
    removed.remove_edge(a3, b4).unwrap();
    let removed = removed.build();
    let fixed = MembershipOptions {
        part_order: PartOrder::Fixed,
        ..MembershipOptions::default()
    };
    assert!(check_membership(&removed, 3, fixed)
        .unwrap()
        .witness()
        .is_none());
    let m = is_member(&removed, 3)
        .unwrap()
        .expect("free order admits the zone {3, 4}");
    assert_eq!(m.deleted, vec![(a3, b4)]);
}

#[test]
fn membership_round_trip_recovers_the_table() {
    let p = ExtremalParams {
        k: 4,
        part_count: 7,
        class_sizes: vec![
            vec![3, 2, 1],
            vec![3, 1, 2],
            vec![2, 3, 1],
            vec![1, 3, 2],
            vec![2, 1, 3],
            vec![1, 2, 3],
            vec![2, 2, 2],
        ],
    };
    assert!(p.is_valid());
    let g = member(&p);
    let m = is_member(&g, 4).unwrap().expect("generated member");
    let mut want: Vec<Vec<usize>> = p.class_sizes.iter().map(|r| sorted(r)).collect();
    let mut got: Vec<Vec<usize>> = m.params.class_sizes.iter().map(|r| sorted(r)).collect();
    want.sort();
    got.sort();
    assert_eq!(got, want);
}

fn sorted(row: &[usize]) -> Vec<usize> {
    let mut r = row.to_vec();
    r.sort_unstable();
    r
}

#[test]
fn blow_ups() {
    let g = member(&ExtremalParams::balanced(3, 3, 1));
    let same = blow_up(&g, &[1; 6]).unwrap();
    assert_eq!(same.graph, g);
    let double = blow_up_uniform(&g, 2).unwrap().graph;
    assert_eq!(min_density(&double), q(1, 2));
    assert!(find_clique(&double, 3).is_none() && !has_triangle(&double));

    let edge = MultipartiteGraph::from_edges(&[1, 1], &[(0, 1)]).unwrap();
    let b = blow_up(&edge, &[2, 2]).unwrap().graph;
    assert_eq!(b.edge_count(), 4);
    assert_eq!(density(&b, 0, 1), q(1, 1));
}

#[test]
fn edge_score_examples() {
    let single = MultipartiteGraph::from_edges(&[1, 1], &[(0, 1)]).unwrap();
    let r = edge_scores(&single);
    assert_eq!(r.scores[0].score, 0);
    assert_eq!((r.edge_sum, r.vertex_sum), (0, 0));

    let k3 = MultipartiteGraph::complete(&[1, 1, 1]).unwrap();
    let r = edge_scores(&k3);
    assert!(r.scores.iter().all(|s| s.score == 2));
    assert_eq!((r.edge_sum, r.vertex_sum), (6, 6));
    assert_eq!(edge_score_sides(&k3), (6, 6));
}

#[test]
fn independence_examples() {
    let k3 = MultipartiteGraph::complete(&[1, 1, 1]).unwrap();
    assert_eq!(
        max_independent_set(&k3, DEFAULT_MIS_BUDGET).unwrap().len(),
        1
    );
    let g = member(&ExtremalParams::balanced(3, 3, 1));
    assert_eq!(
        max_independent_set(&g, DEFAULT_MIS_BUDGET).unwrap().len(),
        3
    );
    assert_eq!(alpha(&g), 3);
    let empty = MultipartiteGraph::empty(&[2, 3]).unwrap();
    assert_eq!(
        max_independent_set(&empty, DEFAULT_MIS_BUDGET)
            .unwrap()
            .len(),
        5
    );
}

#[test]
fn balanced_members_fail_the_product_condition() {
    for l in [3, 5, 13] {
        let g = member(&ExtremalParams::balanced(3, l, 1));
        let sub = MultipartiteGraph::from_edges(
            &[2, 2, 2],
            &g.edges().filter(|&(_, v)| v < 6).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(!check_bondy2(&sub).unwrap().holds());
    }
}

/// A local search seeded from the thirteen-part member either stays a member
/// or keeps a pair at exactly 1/2.
#[test]
fn thirteen_part_search_stays_consistent() {
    let cfg =
        SearchConfig::new(3, 13, 12, Mode::Anneal, 4, 200_000).with_initial(Initial::ExtremalSeed);
    let r = local_search(&cfg).unwrap();
    assert!(r.kfree_verified && !has_triangle(&r.graph));
    assert!(r.min_density >= q(1, 2));
    let at_half = (0..13).any(|i| (i + 1..13).any(|j| density(&r.graph, i, j) == q(1, 2)));
    assert!(at_half || is_member(&r.graph, 3).unwrap().is_some());
}

#[test]
fn search_results_are_kk_free_by_brute_force() {
    for (k, l, n) in [(3, 3, 4), (3, 4, 3), (4, 4, 3), (4, 5, 2)] {
        let cfg = SearchConfig::new(k, l, n, Mode::Anneal, 9, 5_000);
        let r = local_search(&cfg).unwrap();
        assert!(r.kfree_verified);
        assert!(!has_clique(&r.graph, k), "k={k} l={l} n={n}");
        assert_eq!(r.min_density, min_density(&r.graph));
    }
}

#[test]
fn exhaustive_optima_do_not_grow_with_more_parts() {
    use turan_core::search::exhaustive_frontier;
    for n in 1..=2 {
        let three =
            exhaustive_frontier(&SearchConfig::new(3, 3, n, Mode::Exhaustive, 0, 0)).unwrap();
        let four =
            exhaustive_frontier(&SearchConfig::new(3, 4, n, Mode::Exhaustive, 0, 0)).unwrap();
        assert!(four.min_density <= three.min_density, "n={n}");
        assert!(!has_triangle(&three.graph) && !has_triangle(&four.graph));
    }
}
