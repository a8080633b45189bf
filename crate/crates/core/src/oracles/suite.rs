use std::str::FromStr;
use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::random::{fill_random, random_triangle_free, stream_rng, Rng, RNG_ALGORITHM};
use super::{check_bondy2, check_bondy_lemma, check_independence_bound, HypothesisReport};
use super::{random_multipartite, RandomGraphConfig};
use crate::error::{Error, Result};
use crate::extremal::class_structured;
use crate::graph::{
    blow_up_uniform, find_clique, max_independent_set, MultipartiteGraph, Vertex,
    DEFAULT_MIS_BUDGET,
};
use crate::io::GraphDocument;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    /// Random 3-partite graphs against the density product condition.
    Bondy2,
    /// Random 3-partite graphs with a planted large independent set.
    Lemma,
    /// Balanced triangle-free graphs against the independence bound.
    AlphaBound,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Bondy2 => "bondy2",
            Suite::Lemma => "lemma",
            Suite::AlphaBound => "alpha-bound",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bondy2" => Ok(Suite::Bondy2),
            "lemma" => Ok(Suite::Lemma),
            "alpha-bound" => Ok(Suite::AlphaBound),
            other => Err(Error::invalid(format!(
                "unknown suite {other:?} (expected bondy2, lemma or alpha-bound)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: u64,
    pub seed: u64,
    pub max_part_size: usize,
}

impl SuiteConfig {
    pub fn new(suite: Suite, trials: u64, seed: u64) -> Self {
        SuiteConfig {
            suite,
            trials,
            seed,
            max_part_size: 6,
        }
    }
}

/// One generated instance: a graph and, for the lemma suite, the planted set.
#[derive(Clone, Debug)]
pub struct Sample {
    pub graph: MultipartiteGraph,
    pub set: Vec<Vertex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: u64,
    /// Trials whose hypothesis held (the non-vacuous ones).
    pub hypothesis_held: u64,
    pub violations: u64,
    /// Trials abandoned because an exact search hit its budget.
    pub inconclusive: u64,
    pub seed: u64,
    pub rng: &'static str,
    pub counterexamples: Vec<GraphDocument>,
    pub runtime_ms: u64,
}

impl SuiteReport {
    /// JSON without the wall-clock field; identical for identical inputs.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().expect("object").remove("runtime_ms");
        serde_json::to_string(&value).expect("value serializes")
    }
}

enum Trial {
    Vacuous,
    Held,
    Violated(MultipartiteGraph),
    Inconclusive,
}

fn run_trials<G, C>(name: &str, trials: u64, seed: u64, generate: G, check: C) -> SuiteReport
where
    G: Fn(&mut Rng) -> Sample + Sync,
    C: Fn(Sample) -> Trial + Sync,
{
    let start = Instant::now();
    let outcomes: Vec<Trial> = (0..trials)
        .into_par_iter()
        .map(|t| check(generate(&mut stream_rng(seed, t))))
        .collect();
    let mut report = SuiteReport {
        suite: name.to_string(),
        trials,
        hypothesis_held: 0,
        violations: 0,
        inconclusive: 0,
        seed,
        rng: RNG_ALGORITHM,
        counterexamples: Vec::new(),
        runtime_ms: 0,
    };
    for outcome in outcomes {
        match outcome {
            Trial::Vacuous => {}
            Trial::Held => report.hypothesis_held += 1,
            Trial::Violated(g) => {
                report.hypothesis_held += 1;
                report.violations += 1;
                report.counterexamples.push(GraphDocument::from_graph(&g));
            }
            Trial::Inconclusive => report.inconclusive += 1,
        }
    }
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report
}

/// Runs `trials` seeded samples; whenever `hypothesis` holds on a sample the
/// graph must contain a triangle. Hypothesis-satisfying triangle-free graphs
/// are returned as counterexamples.
pub fn triangle_property_suite<G, H>(
    name: &str,
    trials: u64,
    seed: u64,
    generate: G,
    hypothesis: H,
) -> SuiteReport
where
    G: Fn(&mut Rng) -> Sample + Sync,
    H: Fn(&Sample) -> Result<HypothesisReport> + Sync,
{
    run_trials(name, trials, seed, generate, |sample| {
        match hypothesis(&sample) {
            Ok(report) if report.holds() => {
                if find_clique(&sample.graph, 3).is_some() {
                    Trial::Held
                } else {
                    Trial::Violated(sample.graph)
                }
            }
            Ok(_) => Trial::Vacuous,
            Err(_) => Trial::Inconclusive,
        }
    })
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    if config.max_part_size == 0 {
        return Err(Error::invalid("max part size must be positive"));
    }
    let max = config.max_part_size;
    let name = config.suite.name();
    Ok(match config.suite {
        Suite::Bondy2 => triangle_property_suite(
            name,
            config.trials,
            config.seed,
            |rng| Sample {
                graph: random_multipartite(&RandomGraphConfig::tripartite(max), rng),
                set: Vec::new(),
            },
            |s| check_bondy2(&s.graph),
        ),
        Suite::Lemma => triangle_property_suite(
            name,
            config.trials,
            config.seed,
            |rng| planted_independent_set(max, rng),
            |s| check_bondy_lemma(&s.graph, &s.set),
        ),
        Suite::AlphaBound => {
            if max > 16 {
                return Err(Error::invalid(
                    "alpha-bound keeps exact independence search to parts of at most 16 vertices",
                ));
            }
            run_trials(
                name,
                config.trials,
                config.seed,
                |rng| balanced_triangle_free(max, rng),
                alpha_trial,
            )
        }
    })
}

/// Three parts with a random set `X` covering at least half of each part;
/// `X` is kept independent and every other cross pair is an edge with a
/// per-pair probability in `[1/2, 1]`.
fn planted_independent_set(max_part_size: usize, rng: &mut Rng) -> Sample {
    let sizes: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=max_part_size)).collect();
    let mut in_set = Vec::new();
    let mut set = Vec::new();
    let mut offset = 0;
    for &s in &sizes {
        let take = rng.gen_range(s.div_ceil(2)..=s);
        let mut chosen = vec![false; s];
        for i in sample(rng, s, take).iter() {
            chosen[i] = true;
        }
        set.extend((0..s).filter(|&i| chosen[i]).map(|i| offset + i));
        in_set.extend(chosen);
        offset += s;
    }
    let graph = fill_random(&sizes, (0.5, 1.0), rng, |u, v| !(in_set[u] && in_set[v]));
    Sample { graph, set }
}

/// Balanced triangle-free graphs: half from the class-structured family
/// (random leading-part splits and zone deletions, optional doubling), half
/// from random graphs with their triangles destroyed.
fn balanced_triangle_free(max_part_size: usize, rng: &mut Rng) -> Sample {
    let parts = rng.gen_range(3..=6);
    let graph = if rng.gen_bool(0.5) {
        let half = rng.gen_range(1..=(max_part_size / 2).max(1));
        let n = 2 * half;
        let a = rng.gen_range(half..=n);
        let b = rng.gen_range(0..=half);
        let mut rows = vec![vec![a, n - a], vec![b, n - b]];
        rows.extend(std::iter::repeat_n(vec![half, half], parts - 2));
        let e = class_structured(&rows).expect("rows are nonempty");
        let mut builder = e.graph.to_builder();
        for u in e.graph.part_range(0) {
            for v in e.graph.part_range(1) {
                if e.graph.has_edge(u, v) && rng.gen_bool(0.2) {
                    builder.remove_unchecked(u, v);
                }
            }
        }
        let g = builder.build();
        if 2 * n <= 16 && rng.gen_bool(0.3) {
            blow_up_uniform(&g, 2).expect("factor is positive").graph
        } else {
            g
        }
    } else {
        let config = RandomGraphConfig {
            parts: (parts, parts),
            part_size: (1, max_part_size),
            density: (0.5, 1.0),
            balanced: true,
        };
        random_triangle_free(&config, rng)
    };
    Sample {
        graph,
        set: Vec::new(),
    }
}

fn alpha_trial(sample: Sample) -> Trial {
    let g = sample.graph;
    match check_independence_bound(&g, &[]) {
        Ok(premises) if premises.premises_hold() => {}
        Ok(_) => return Trial::Vacuous,
        Err(_) => return Trial::Inconclusive,
    }
    let alpha = match max_independent_set(&g, DEFAULT_MIS_BUDGET) {
        Ok(set) => set,
        Err(_) => return Trial::Inconclusive,
    };
    match check_independence_bound(&g, &alpha) {
        Ok(report) if report.conclusion_holds() => Trial::Held,
        Ok(_) => Trial::Violated(g),
        Err(_) => Trial::Inconclusive,
    }
}
