use std::cmp::Ordering;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{search, Initial, Mode, SearchConfig, EXHAUSTIVE_MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::MultipartiteGraph;
use crate::scalar::{cmp_golden, format_ratio, half, turan_density, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Preset {
    /// Triangles, three parts.
    D33,
    /// Triangles, four parts.
    D34,
    /// Triangles, five parts.
    D35,
    /// `K^k` on ℓ parts, seeded from the class-structured family.
    DKEll,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::D33 => "d33",
            Preset::D34 => "d34",
            Preset::D35 => "d35",
            Preset::DKEll => "d-k-ell",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d33" => Ok(Preset::D33),
            "d34" => Ok(Preset::D34),
            "d35" => Ok(Preset::D35),
            "d-k-ell" => Ok(Preset::DKEll),
            other => Err(Error::invalid(format!(
                "unknown preset {other:?} (expected d33, d34, d35 or d-k-ell)"
            ))),
        }
    }
}

/// Changes to a preset's battery. `k` and `l` apply to `d-k-ell` only.
#[derive(Clone, Debug, Default)]
pub struct ExperimentOverrides {
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub iterations: Option<u64>,
    pub seeds: Option<Vec<u64>>,
    /// Part sizes of the annealing runs.
    pub sizes: Option<Vec<usize>>,
}

/// Known value the results are compared against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Anchor {
    /// The golden ratio conjugate, the limit for triangles on three parts.
    Tau,
    Exact(Rational),
}

impl Anchor {
    pub fn for_problem(k: usize, l: usize) -> Self {
        match (k, l) {
            (3, 3) => Anchor::Tau,
            (3, l) if l >= 13 => Anchor::Exact(half()),
            _ => Anchor::Exact(turan_density(k)),
        }
    }

    fn compare(&self, value: &Rational) -> Ordering {
        match self {
            Anchor::Tau => cmp_golden(value),
            Anchor::Exact(a) => value.cmp(a),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Anchor::Tau => s.serialize_str("tau"),
            Anchor::Exact(r) => s.serialize_str(&format_ratio(r)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub mode: Mode,
    pub seed: u64,
    pub iterations: u64,
    pub min_density: String,
    /// "below", "equal" or "above" the anchor.
    pub versus_anchor: &'static str,
    pub kfree_verified: bool,
    #[serde(skip)]
    pub graph: MultipartiteGraph,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub preset: &'static str,
    pub k: usize,
    pub l: usize,
    pub anchor: Anchor,
    pub best_min_density: String,
    pub rows: Vec<ExperimentRow>,
    pub runtime_ms: u64,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn canonical_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value.as_object_mut().expect("object").remove("runtime_ms");
        serde_json::to_string(&value).expect("value serializes")
    }
}

struct Battery {
    k: usize,
    l: usize,
    exhaustive_sizes: Vec<usize>,
    anneal_sizes: Vec<usize>,
}

fn battery(preset: Preset, overrides: &ExperimentOverrides) -> Result<Battery> {
    if preset != Preset::DKEll && (overrides.k.is_some() || overrides.l.is_some()) {
        return Err(Error::invalid(format!(
            "preset {} has fixed k and l",
            preset.name()
        )));
    }
    let b = match preset {
        Preset::D33 => Battery {
            k: 3,
            l: 3,
            exhaustive_sizes: vec![1, 2, 3],
            anneal_sizes: vec![4, 8, 12],
        },
        Preset::D34 => Battery {
            k: 3,
            l: 4,
            exhaustive_sizes: vec![1, 2],
            anneal_sizes: vec![6, 12, 24],
        },
        Preset::D35 => Battery {
            k: 3,
            l: 5,
            exhaustive_sizes: vec![1, 2],
            anneal_sizes: vec![6, 12],
        },
        Preset::DKEll => {
            let k = overrides.k.unwrap_or(4);
            let l = overrides.l.unwrap_or(10);
            Battery {
                k,
                l,
                exhaustive_sizes: Vec::new(),
                anneal_sizes: vec![k - 1, 2 * (k - 1)],
            }
        }
    };
    if b.k < 3 || b.l < 3 {
        return Err(Error::invalid("experiments need k >= 3 and l >= 3"));
    }
    Ok(b)
}

/// Runs a preset battery: exhaustive optima where `l·n` is small enough,
/// then seeded annealing from the class-structured seed for every size and
/// seed. Runs execute in parallel and are reported in a fixed order.
pub fn frontier_experiment(
    preset: Preset,
    overrides: &ExperimentOverrides,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    let b = battery(preset, overrides)?;
    let iterations = overrides.iterations.unwrap_or(20_000);
    let seeds = overrides.seeds.clone().unwrap_or_else(|| vec![1, 2, 3]);
    let anneal_sizes = overrides.sizes.clone().unwrap_or(b.anneal_sizes);
    if anneal_sizes.contains(&0) {
        return Err(Error::invalid("part sizes must be positive"));
    }

    let mut configs = Vec::new();
    for &n in b
        .exhaustive_sizes
        .iter()
        .filter(|&&n| b.l * n <= EXHAUSTIVE_MAX_VERTICES)
    {
        configs.push(SearchConfig::new(b.k, b.l, n, Mode::Exhaustive, 0, 0));
    }
    for &n in &anneal_sizes {
        for &seed in &seeds {
            configs.push(
                SearchConfig::new(b.k, b.l, n, Mode::Anneal, seed, iterations)
                    .with_initial(Initial::ExtremalSeed),
            );
        }
    }

    let anchor = Anchor::for_problem(b.k, b.l);
    let results: Vec<Result<ExperimentRow>> = configs
        .par_iter()
        .map(|cfg| {
            let r = search(cfg)?;
            Ok(ExperimentRow {
                k: cfg.k,
                l: cfg.l,
                n: cfg.n,
                mode: cfg.mode,
                seed: cfg.seed,
                iterations: cfg.iterations,
                min_density: format_ratio(&r.min_density),
                versus_anchor: match anchor.compare(&r.min_density) {
                    Ordering::Less => "below",
                    Ordering::Equal => "equal",
                    Ordering::Greater => "above",
                },
                kfree_verified: r.kfree_verified,
                graph: r.graph,
            })
        })
        .collect();
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    let best = rows
        .iter()
        .map(|r| {
            r.graph
                .min_pairwise_density()
                .expect("at least three parts")
        })
        .max()
        .unwrap_or_default();
    Ok(ExperimentReport {
        preset: preset.name(),
        k: b.k,
        l: b.l,
        anchor,
        best_min_density: format_ratio(&best),
        rows,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use std::cmp::Ordering;

    fn quick() -> ExperimentOverrides {
        ExperimentOverrides {
            iterations: Some(2_000),
            seeds: Some(vec![1]),
            ..ExperimentOverrides::default()
        }
    }

    #[test]
    fn d33_stays_below_tau() {
        let report = frontier_experiment(Preset::D33, &quick()).unwrap();
        assert_eq!(report.rows.len(), 6);
        for row in &report.rows {
            assert!(row.kfree_verified);
            assert_eq!(row.versus_anchor, "below");
        }
        let exact: Vec<&str> = report
            .rows
            .iter()
            .filter(|r| r.mode == Mode::Exhaustive)
            .map(|r| r.min_density.as_str())
            .collect();
        assert_eq!(&exact[..2], &["0/1", "1/2"]);
    }

    #[test]
    fn d_k_ell_keeps_the_seed_density() {
        let report = frontier_experiment(Preset::DKEll, &quick()).unwrap();
        assert_eq!((report.k, report.l), (4, 10));
        for row in &report.rows {
            let d = row.graph.min_pairwise_density().unwrap();
            assert!(d >= ratio(2, 3));
        }
    }

    #[test]
    fn anchors() {
        assert_eq!(Anchor::for_problem(3, 3), Anchor::Tau);
        assert_eq!(Anchor::for_problem(3, 13), Anchor::Exact(half()));
        assert_eq!(Anchor::for_problem(5, 7), Anchor::Exact(ratio(3, 4)));
        assert_eq!(Anchor::Tau.compare(&ratio(6181, 10000)), Ordering::Greater);
        assert!(frontier_experiment(
            Preset::D34,
            &ExperimentOverrides {
                k: Some(4),
                ..quick()
            }
        )
        .is_err());
        assert!("d36".parse::<Preset>().is_err());
    }
}
