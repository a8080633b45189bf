//! Searches for `K^k`-free balanced ℓ-partite graphs with large minimum
//! pairwise density.
//!
//! All graphs searched have ℓ parts of `n` vertices, so densities compare as
//! edge counts. Candidates are ranked by [`Objective`]: minimum pair count,
//! then total edges, then the ascending vector of pair counts.

mod exhaustive;
mod experiment;
mod local;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::class_structured;
use crate::graph::{find_clique, MultipartiteGraph};
use crate::scalar::{format_ratio, Rational};

pub use exhaustive::{exhaustive_frontier, EXHAUSTIVE_MAX_VERTICES};
pub use experiment::{
    frontier_experiment, Anchor, ExperimentOverrides, ExperimentReport, ExperimentRow, Preset,
};
pub use local::local_search;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Anneal,
    Tabu,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "anneal" => Ok(Mode::Anneal),
            "tabu" => Ok(Mode::Tabu),
            other => Err(Error::invalid(format!(
                "unknown mode {other:?} (expected exhaustive, anneal or tabu)"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Anneal => "anneal",
            Mode::Tabu => "tabu",
        })
    }
}

/// Starting state of a local search.
#[derive(Clone, Debug, Default)]
pub enum Initial {
    #[default]
    Empty,
    /// Every part split as evenly as possible into `k − 1` classes, with all
    /// edges between different classes of different parts.
    ExtremalSeed,
    Graph(MultipartiteGraph),
}

impl Initial {
    pub fn name(&self) -> &'static str {
        match self {
            Initial::Empty => "empty",
            Initial::ExtremalSeed => "extremal-seed",
            Initial::Graph(_) => "file",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub mode: Mode,
    pub seed: u64,
    /// Moves per restart. Ignored by exhaustive mode.
    pub iterations: u64,
    pub initial: Initial,
    /// Independent restarts, run in parallel; each uses its own substream.
    pub restarts: usize,
    /// Final temperature of the annealing schedule as a fraction of the
    /// calibrated initial one.
    pub final_temperature_ratio: f64,
    /// Probability that a move is drawn from a currently minimal pair.
    pub min_pair_bias: f64,
    /// Iterations a toggled pair stays tabu; 0 picks `7 + cross_pairs / 64`.
    pub tabu_tenure: usize,
    /// Candidate moves evaluated per tabu iteration.
    pub tabu_candidates: usize,
}

impl SearchConfig {
    pub fn new(k: usize, l: usize, n: usize, mode: Mode, seed: u64, iterations: u64) -> Self {
        SearchConfig {
            k,
            l,
            n,
            mode,
            seed,
            iterations,
            initial: Initial::Empty,
            restarts: 1,
            final_temperature_ratio: 1e-3,
            min_pair_bias: 0.5,
            tabu_tenure: 0,
            tabu_candidates: 16,
        }
    }

    pub fn with_initial(mut self, initial: Initial) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::invalid(format!(
                "k must be at least 3, got {}",
                self.k
            )));
        }
        if self.l < 3 {
            return Err(Error::invalid(format!(
                "l must be at least 3, got {}",
                self.l
            )));
        }
        if self.n == 0 {
            return Err(Error::invalid("part size n must be positive"));
        }
        if self.restarts == 0 {
            return Err(Error::invalid("restarts must be positive"));
        }
        if !(self.final_temperature_ratio > 0.0 && self.final_temperature_ratio <= 1.0) {
            return Err(Error::invalid("final temperature ratio must lie in (0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.min_pair_bias) {
            return Err(Error::invalid("minimum-pair bias must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            k: self.k,
            l: self.l,
            n: self.n,
            mode: self.mode,
            seed: self.seed,
            iterations: self.iterations,
            initial: self.initial.name(),
            restarts: self.restarts,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConfigEcho {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub mode: Mode,
    pub seed: u64,
    pub iterations: u64,
    pub initial: &'static str,
    pub restarts: usize,
}

/// Counters collected while searching. Local-search fields are zero for
/// exhaustive runs and vice versa.
#[derive(Clone, PartialEq, Debug, Default, Serialize)]
pub struct SearchTrace {
    pub iterations: u64,
    pub accepted: u64,
    pub repairs: u64,
    pub improvements: u64,
    pub best_iteration: u64,
    pub best_restart: usize,
    pub initial_temperature: Option<f64>,
    pub initial_min_density: Option<String>,
    pub nodes: u64,
    pub complete_graphs: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub graph: MultipartiteGraph,
    pub min_density: Rational,
    pub kfree_verified: bool,
    pub trace: SearchTrace,
    pub config: ConfigEcho,
}

impl SearchResult {
    fn new(graph: MultipartiteGraph, k: usize, trace: SearchTrace, config: ConfigEcho) -> Self {
        let min_density = graph
            .min_pairwise_density()
            .expect("search graphs have at least 3 parts");
        let kfree_verified = find_clique(&graph, k).is_none();
        SearchResult {
            graph,
            min_density,
            kfree_verified,
            trace,
            config,
        }
    }

    pub fn objective(&self) -> Objective {
        Objective::of(&self.graph)
    }

    pub fn report(&self, wall_ms: u64) -> SearchReport {
        SearchReport {
            min_density: format_ratio(&self.min_density),
            k: self.config.k,
            l: self.config.l,
            n: self.config.n,
            seed: self.config.seed,
            iterations: self.config.iterations,
            wall_ms,
            mode: self.config.mode,
            initial: self.config.initial,
            restarts: self.config.restarts,
            kfree_verified: self.kfree_verified,
            exceeds_half: self.min_density > crate::scalar::half(),
            edges: self.graph.edge_count(),
            trace: self.trace.clone(),
        }
    }
}

/// Sidecar written next to a search result graph.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SearchReport {
    pub min_density: String,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub seed: u64,
    pub iterations: u64,
    pub wall_ms: u64,
    pub mode: Mode,
    pub initial: &'static str,
    pub restarts: usize,
    pub kfree_verified: bool,
    pub exceeds_half: bool,
    pub edges: usize,
    pub trace: SearchTrace,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// JSON without the wall-clock field.
    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().expect("object").remove("wall_ms");
        serde_json::to_string(&value).expect("value serializes")
    }
}

/// Lexicographic search objective; larger is better.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Objective {
    pub min_edges: usize,
    pub total_edges: usize,
    /// Pair edge counts in ascending order.
    pub sorted_pairs: Vec<usize>,
}

impl Objective {
    pub fn from_counts(counts: &[usize]) -> Self {
        let mut sorted_pairs = counts.to_vec();
        sorted_pairs.sort_unstable();
        Objective {
            min_edges: sorted_pairs.first().copied().unwrap_or(0),
            total_edges: counts.iter().sum(),
            sorted_pairs,
        }
    }

    pub fn of(g: &MultipartiteGraph) -> Self {
        Objective::from_counts(&pair_counts(g))
    }
}

/// Index of the pair `i < j` among the `l·(l − 1)/2` part pairs.
pub(crate) fn pair_index(l: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < l);
    i * (2 * l - i - 1) / 2 + (j - i - 1)
}

pub(crate) fn pair_counts(g: &MultipartiteGraph) -> Vec<usize> {
    let l = g.part_count();
    let mut counts = Vec::with_capacity(l * (l - 1) / 2);
    for i in 0..l {
        for j in i + 1..l {
            counts.push(g.edge_count_between(i, j));
        }
    }
    counts
}

/// Class-structured seed with every part split as evenly as possible.
pub fn extremal_seed(k: usize, l: usize, n: usize) -> MultipartiteGraph {
    let classes = k - 1;
    let row: Vec<usize> = (0..classes)
        .map(|s| n / classes + usize::from(s < n % classes))
        .collect();
    class_structured(&vec![row; l])
        .expect("parts are nonempty")
        .graph
}

pub(crate) fn initial_graph(cfg: &SearchConfig) -> Result<MultipartiteGraph> {
    let g = match &cfg.initial {
        Initial::Empty => MultipartiteGraph::empty(&vec![cfg.n; cfg.l])?,
        Initial::ExtremalSeed => extremal_seed(cfg.k, cfg.l, cfg.n),
        Initial::Graph(g) => {
            if g.part_sizes() != vec![cfg.n; cfg.l] {
                return Err(Error::invalid(format!(
                    "initial graph has part sizes {:?}, expected {} parts of {}",
                    g.part_sizes(),
                    cfg.l,
                    cfg.n
                )));
            }
            if let Some(c) = find_clique(g, cfg.k) {
                return Err(Error::invalid(format!(
                    "initial graph contains K^{} on {c:?}",
                    cfg.k
                )));
            }
            g.clone()
        }
    };
    Ok(g)
}

/// Runs the search selected by `cfg.mode`.
pub fn search(cfg: &SearchConfig) -> Result<SearchResult> {
    match cfg.mode {
        Mode::Exhaustive => exhaustive_frontier(cfg),
        Mode::Anneal | Mode::Tabu => local_search(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn pair_indices_are_dense() {
        for l in 2..8 {
            let mut seen = Vec::new();
            for i in 0..l {
                for j in i + 1..l {
                    seen.push(pair_index(l, i, j));
                }
            }
            assert_eq!(seen, (0..l * (l - 1) / 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn objective_order() {
        let a = Objective::from_counts(&[2, 3, 3]);
        let b = Objective::from_counts(&[3, 2, 2]);
        assert!(a > b);
        assert!(Objective::from_counts(&[2, 2, 4]) > Objective::from_counts(&[2, 3, 2]));
        assert!(Objective::from_counts(&[2, 3, 3]) > Objective::from_counts(&[2, 2, 4]));
    }

    #[test]
    fn seeds_reach_the_class_density() {
        let g = extremal_seed(4, 10, 3);
        assert_eq!(g.min_pairwise_density().unwrap(), ratio(2, 3));
        assert!(find_clique(&g, 4).is_none());
        let g = extremal_seed(3, 4, 5);
        assert_eq!(g.min_pairwise_density().unwrap(), ratio(12, 25));
    }

    #[test]
    fn config_validation() {
        let cfg = SearchConfig::new(2, 3, 1, Mode::Anneal, 0, 10);
        assert!(cfg.validate().is_err());
        let cfg = SearchConfig::new(3, 3, 0, Mode::Anneal, 0, 10);
        assert!(cfg.validate().is_err());
        assert!("greedy".parse::<Mode>().is_err());
        let g = MultipartiteGraph::complete(&[1, 1, 1]).unwrap();
        let cfg = SearchConfig::new(3, 3, 1, Mode::Anneal, 0, 10).with_initial(Initial::Graph(g));
        assert!(initial_graph(&cfg).is_err());
    }
}
