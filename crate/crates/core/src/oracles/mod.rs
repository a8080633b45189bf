//! Executable hypothesis checks for the triangle-forcing density conditions,
//! and seeded property suites that pit them against the clique search.
//!
//! Every margin is an exact rational. A report lists each condition with its
//! margin; premises describe the hypothesis of a statement, conclusions what
//! it promises.

mod random;
mod suite;

pub use random::{
    random_multipartite, random_triangle_free, stream_rng, substream_seed, RandomGraphConfig, Rng,
    RNG_ALGORITHM,
};
pub use suite::{run_suite, triangle_property_suite, Sample, Suite, SuiteConfig, SuiteReport};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{find_clique, is_independent, MultipartiteGraph, Vertex};
use crate::scalar::{format_ratio, half, ratio, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Premise,
    Conclusion,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Condition {
    pub label: String,
    /// Signed slack of the inequality, when it is one.
    pub margin: Option<Rational>,
    pub satisfied: bool,
    pub role: Role,
}

impl Condition {
    fn at_least(label: String, margin: Rational) -> Self {
        Condition {
            satisfied: margin >= Rational::zero(),
            label,
            margin: Some(margin),
            role: Role::Premise,
        }
    }

    fn greater(label: String, margin: Rational) -> Self {
        Condition {
            satisfied: margin > Rational::zero(),
            label,
            margin: Some(margin),
            role: Role::Premise,
        }
    }

    fn flag(label: &str, satisfied: bool) -> Self {
        Condition {
            label: label.to_string(),
            margin: None,
            satisfied,
            role: Role::Premise,
        }
    }

    fn concluding(mut self) -> Self {
        self.role = Role::Conclusion;
        self
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisReport {
    pub name: &'static str,
    pub conditions: Vec<Condition>,
}

impl HypothesisReport {
    /// Every listed condition is satisfied.
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|c| c.satisfied)
    }

    pub fn premises_hold(&self) -> bool {
        self.conditions
            .iter()
            .filter(|c| c.role == Role::Premise)
            .all(|c| c.satisfied)
    }

    pub fn conclusion_holds(&self) -> bool {
        self.conditions
            .iter()
            .filter(|c| c.role == Role::Conclusion)
            .all(|c| c.satisfied)
    }

    pub fn condition(&self, label: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }
}

impl std::fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.name,
            if self.holds() { "holds" } else { "fails" }
        )?;
        for c in &self.conditions {
            let margin = c
                .margin
                .as_ref()
                .map(format_ratio)
                .unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "  [{}] {} (margin {margin})",
                if c.satisfied { "ok" } else { "no" },
                c.label
            )?;
        }
        Ok(())
    }
}

/// Three pairwise adjacent vertices in three distinct parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TriangleCertificate {
    pub vertices: [Vertex; 3],
}

impl TriangleCertificate {
    pub fn find(g: &MultipartiteGraph) -> Option<Self> {
        find_clique(g, 3).map(|c| TriangleCertificate {
            vertices: [c[0], c[1], c[2]],
        })
    }

    pub fn verify(&self, g: &MultipartiteGraph) -> bool {
        let [a, b, c] = self.vertices;
        let parts = [g.part_of(a), g.part_of(b), g.part_of(c)];
        g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(a, c)
            && parts[0] != parts[1]
            && parts[1] != parts[2]
            && parts[0] != parts[2]
    }
}

fn require_three_parts(g: &MultipartiteGraph) -> Result<()> {
    if g.part_count() != 3 {
        return Err(Error::invalid(format!(
            "expected a 3-partite graph, got {} parts",
            g.part_count()
        )));
    }
    Ok(())
}

/// Checks the hypothesis of the independent-set triangle lemma: `X` is
/// independent, `d_ij ≥ 1/2` for all pairs, `|X ∩ V_i| ≥ |V_i|/2` for all
/// parts, and at least two of these six inequalities are strict.
pub fn check_bondy_lemma(g: &MultipartiteGraph, x: &[Vertex]) -> Result<HypothesisReport> {
    require_three_parts(g)?;
    for &v in x {
        g.check_vertex(v)?;
    }
    let mut conditions = vec![Condition::flag("X is independent", is_independent(g, x))];
    let mut inequalities = Vec::with_capacity(6);
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let margin = g.pairwise_density(i, j)? - half();
        inequalities.push(Condition::at_least(format!("d({i},{j}) >= 1/2"), margin));
    }
    for i in 0..3 {
        let inside = x.iter().filter(|&&v| g.part_of(v) == i).count() as i128;
        let margin = ratio(2 * inside - g.part_size(i) as i128, 2);
        inequalities.push(Condition::at_least(
            format!("|X cap V_{i}| >= |V_{i}|/2"),
            margin,
        ));
    }
    let strict = inequalities
        .iter()
        .filter(|c| c.margin.is_some_and(|m| m > Rational::zero()))
        .count();
    conditions.extend(inequalities);
    conditions.push(Condition::flag(
        "at least two inequalities strict",
        strict >= 2,
    ));
    Ok(HypothesisReport {
        name: "independent-set triangle lemma",
        conditions,
    })
}

/// Margins `d_ij d_ik + d_jk − 1` for the three choices of the apex `i`,
/// given `d01`, `d02`, `d12`.
pub fn bondy2_margins(d01: Rational, d02: Rational, d12: Rational) -> [Rational; 3] {
    let one = Rational::one();
    [
        d01 * d02 + d12 - one,
        d01 * d12 + d02 - one,
        d02 * d12 + d01 - one,
    ]
}

/// Checks `d_ij d_ik + d_jk > 1` for every labeling of the three parts.
pub fn check_bondy2(g: &MultipartiteGraph) -> Result<HypothesisReport> {
    require_three_parts(g)?;
    let d01 = g.pairwise_density(0, 1)?;
    let d02 = g.pairwise_density(0, 2)?;
    let d12 = g.pairwise_density(1, 2)?;
    Ok(bondy2_report(d01, d02, d12))
}

pub fn bondy2_report(d01: Rational, d02: Rational, d12: Rational) -> HypothesisReport {
    let labels = [
        "d01*d02 + d12 > 1",
        "d01*d12 + d02 > 1",
        "d02*d12 + d01 > 1",
    ];
    let conditions = labels
        .iter()
        .zip(bondy2_margins(d01, d02, d12))
        .map(|(label, m)| Condition::greater(label.to_string(), m))
        .collect();
    HypothesisReport {
        name: "pairwise density product condition",
        conditions,
    }
}

/// For a balanced ℓ-partite triangle-free graph with all densities at least
/// 1/2, an independent set has at most `(ℓ + 1) n / 2` vertices. The premises
/// are checked here too; unbalanced parts are an error.
pub fn check_independence_bound(g: &MultipartiteGraph, x: &[Vertex]) -> Result<HypothesisReport> {
    if !g.is_balanced() {
        return Err(Error::invalid(format!(
            "independence bound needs balanced parts, got sizes {:?}",
            g.part_sizes()
        )));
    }
    if g.part_count() < 2 {
        return Err(Error::invalid(
            "independence bound needs at least two parts",
        ));
    }
    for &v in x {
        g.check_vertex(v)?;
    }
    let parts = g.part_count() as i128;
    let n = g.part_size(0) as i128;
    let min_density = g.min_pairwise_density()?;
    let conditions = vec![
        Condition::at_least("min d_ij >= 1/2".into(), min_density - half()),
        Condition::flag("triangle-free", find_clique(g, 3).is_none()),
        Condition::flag("X is independent", is_independent(g, x)),
        Condition::at_least(
            "|X| <= (l+1)n/2".into(),
            ratio((parts + 1) * n, 2) - Rational::from_integer(x.len() as i128),
        )
        .concluding(),
    ];
    Ok(HypothesisReport {
        name: "independence number bound",
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{class_structured, generate, DeletionSpec, ExtremalParams};
    use crate::graph::{blow_up_uniform, max_independent_set, DEFAULT_MIS_BUDGET};

    fn balanced_member(parts: usize) -> MultipartiteGraph {
        generate(
            &ExtremalParams::balanced(3, parts, 1),
            &DeletionSpec::none(),
        )
        .unwrap()
        .graph
    }

    /// Parts `{a_i, b_i}`; every cross pair is an edge except `a_i a_j`.
    fn lemma_example() -> MultipartiteGraph {
        let mut b = crate::GraphBuilder::new(&[2, 2, 2]).unwrap();
        for u in 0..6 {
            for v in u + 1..6 {
                let both_a = u % 2 == 0 && v % 2 == 0;
                if u / 2 != v / 2 && !both_a {
                    b.add_edge(u, v).unwrap();
                }
            }
        }
        b.build()
    }

    #[test]
    fn lemma_holds_with_strict_densities() {
        let g = lemma_example();
        let report = check_bondy_lemma(&g, &[0, 2, 4]).unwrap();
        assert!(report.holds(), "{report}");
        assert_eq!(
            report.condition("d(0,1) >= 1/2").unwrap().margin,
            Some(ratio(1, 4))
        );
        assert_eq!(
            report.condition("|X cap V_0| >= |V_0|/2").unwrap().margin,
            Some(ratio(0, 1))
        );
        assert!(TriangleCertificate::find(&g).unwrap().verify(&g));
    }

    #[test]
    fn lemma_fails_when_everything_is_tight() {
        let e = generate(&ExtremalParams::balanced(3, 3, 1), &DeletionSpec::none()).unwrap();
        let class0: Vec<Vertex> = (0..6).filter(|&v| e.coloring.label(v) == 0).collect();
        let report = check_bondy_lemma(&e.graph, &class0).unwrap();
        assert!(!report.holds());
        assert!(
            !report
                .condition("at least two inequalities strict")
                .unwrap()
                .satisfied
        );
        assert!(report.condition("X is independent").unwrap().satisfied);
    }

    #[test]
    fn lemma_detects_dependent_set() {
        let g = MultipartiteGraph::complete(&[1, 1, 1]).unwrap();
        let report = check_bondy_lemma(&g, &[0, 1]).unwrap();
        assert!(!report.condition("X is independent").unwrap().satisfied);
        assert!(!report.holds());
    }

    #[test]
    fn wrong_part_count_is_rejected() {
        let g = MultipartiteGraph::complete(&[1, 1, 1, 1]).unwrap();
        assert!(check_bondy_lemma(&g, &[]).is_err());
        assert!(check_bondy2(&g).is_err());
    }

    #[test]
    fn product_condition_examples() {
        let q = ratio(3, 4);
        let report = bondy2_report(q, q, q);
        assert!(report.holds());
        assert_eq!(report.conditions[0].margin, Some(ratio(5, 16)));

        let one = ratio(1, 1);
        let two_fifths = ratio(2, 5);
        let report = bondy2_report(one, two_fifths, two_fifths);
        assert!(!report.holds());
        // apex 0: 1 * 2/5 + 2/5 - 1
        assert_eq!(report.conditions[0].margin, Some(ratio(-1, 5)));
    }

    #[test]
    fn product_condition_brackets_the_golden_ratio() {
        let below = ratio(6180, 10000);
        let above = ratio(6181, 10000);
        assert!(!bondy2_report(below, below, below).holds());
        assert!(bondy2_report(above, above, above).holds());
    }

    #[test]
    fn product_condition_on_realized_graphs() {
        // 100 x 100 x 100, each pair filled row-major with `per_pair` edges
        let build = |per_pair: usize| {
            let mut b = crate::GraphBuilder::new(&[100, 100, 100]).unwrap();
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                for e in 0..per_pair {
                    b.add_edge(i * 100 + e / 100, j * 100 + e % 100).unwrap();
                }
            }
            b.build()
        };
        let above = build(6181);
        assert!(check_bondy2(&above).unwrap().holds());
        assert!(TriangleCertificate::find(&above).is_some());
        assert!(!check_bondy2(&build(6180)).unwrap().holds());
    }

    #[test]
    fn product_condition_is_symmetric_under_relabeling() {
        let d = [ratio(3, 5), ratio(4, 5), ratio(7, 10)];
        let base = bondy2_report(d[0], d[1], d[2]).holds();
        for (a, b, c) in [(0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
            assert_eq!(bondy2_report(d[a], d[b], d[c]).holds(), base);
        }
    }

    #[test]
    fn extremal_members_sit_below_the_product_condition() {
        assert!(!check_bondy2(&balanced_member(3)).unwrap().holds());
        let g = class_structured(&[vec![2, 2], vec![2, 2], vec![2, 2]])
            .unwrap()
            .graph;
        assert!(!check_bondy2(&g).unwrap().holds());
    }

    #[test]
    fn independence_bound_on_thirteen_parts() {
        let g = balanced_member(13);
        let alpha = max_independent_set(&g, DEFAULT_MIS_BUDGET).unwrap();
        assert_eq!(alpha.len(), 13);
        let report = check_independence_bound(&g, &alpha).unwrap();
        assert!(report.holds(), "{report}");
        // parts have two vertices: (13 + 1) * 2 / 2 - 13
        assert_eq!(
            report.condition("|X| <= (l+1)n/2").unwrap().margin,
            Some(ratio(1, 1))
        );

        let doubled = blow_up_uniform(&g, 2).unwrap().graph;
        let alpha = max_independent_set(&doubled, DEFAULT_MIS_BUDGET).unwrap();
        assert_eq!(alpha.len(), 26);
        let report = check_independence_bound(&doubled, &alpha).unwrap();
        assert_eq!(
            report.condition("|X| <= (l+1)n/2").unwrap().margin,
            Some(ratio(2, 1))
        );
    }

    #[test]
    fn independence_bound_for_a_single_part() {
        for parts in 2..6 {
            let g = balanced_member(parts);
            let x: Vec<Vertex> = g.part_range(0).collect();
            assert!(check_independence_bound(&g, &x).unwrap().conclusion_holds());
        }
    }

    #[test]
    fn independence_bound_needs_balanced_parts() {
        let g = MultipartiteGraph::empty(&[1, 2]).unwrap();
        assert!(matches!(
            check_independence_bound(&g, &[]),
            Err(Error::InvalidArgument(_))
        ));
    }
}
