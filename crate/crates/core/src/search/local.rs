use std::collections::HashMap;

use rand::Rng as _;
use rayon::prelude::*;

use super::{
    initial_graph, pair_counts, pair_index, Mode, Objective, SearchConfig, SearchResult,
    SearchTrace,
};
use crate::error::{Error, Result};
use crate::graph::{find_clique_containing, GraphBuilder, MultipartiteGraph, Vertex};
use crate::oracles::{stream_rng, Rng};
use crate::scalar::format_ratio;

/// Worsening moves sampled to calibrate the initial temperature.
const CALIBRATION_SAMPLES: usize = 200;

/// A toggle and the repair edges it removed.
struct Move {
    u: Vertex,
    v: Vertex,
    added: bool,
    repaired: Vec<(Vertex, Vertex)>,
}

struct State {
    k: usize,
    l: usize,
    n: usize,
    builder: GraphBuilder,
    counts: Vec<usize>,
    total: usize,
}

impl State {
    fn new(g: MultipartiteGraph, k: usize, n: usize) -> Self {
        let counts = pair_counts(&g);
        State {
            k,
            l: g.part_count(),
            n,
            total: g.edge_count(),
            builder: g.to_builder(),
            counts,
        }
    }

    fn pair(&self, u: Vertex, v: Vertex) -> usize {
        let g = self.builder.graph();
        let (a, b) = (g.part_of(u), g.part_of(v));
        pair_index(self.l, a.min(b), a.max(b))
    }

    fn min_count(&self) -> usize {
        *self.counts.iter().min().expect("at least three parts")
    }

    /// Annealing energy (higher is better): the minimum pair count dominates,
    /// then fewer pairs at the minimum, then more edges overall.
    fn score(&self) -> f64 {
        let m = self.min_count();
        let at_min = self.counts.iter().filter(|&&c| c == m).count();
        let pairs = self.counts.len() as f64;
        let cap = pairs * (self.n * self.n) as f64;
        m as f64 - 0.5 * (at_min - 1) as f64 / pairs + 0.25 * self.total as f64 / cap
    }

    fn objective(&self) -> Objective {
        Objective::from_counts(&self.counts)
    }

    fn set(&mut self, u: Vertex, v: Vertex, present: bool) {
        let p = self.pair(u, v);
        if present {
            self.builder.insert_unchecked(u, v);
            self.counts[p] += 1;
            self.total += 1;
        } else {
            self.builder.remove_unchecked(u, v);
            self.counts[p] -= 1;
            self.total -= 1;
        }
    }

    /// Toggles `uv`. An added edge that closes a `K^k` is kept and the clique
    /// is broken by removing its edge from the fullest pair (ties by vertex
    /// ids), repeated until no `K^k` contains `uv`.
    fn apply(&mut self, u: Vertex, v: Vertex) -> Move {
        let added = !self.builder.graph().has_edge(u, v);
        self.set(u, v, added);
        let mut repaired = Vec::new();
        if added {
            while let Some(clique) = find_clique_containing(self.builder.graph(), &[u, v], self.k) {
                let mut victim = None;
                for (i, &a) in clique.iter().enumerate() {
                    for &b in &clique[i + 1..] {
                        let e = (a.min(b), a.max(b));
                        if e == (u.min(v), u.max(v)) {
                            continue;
                        }
                        let c = self.counts[self.pair(a, b)];
                        if victim.is_none_or(|(best, vc)| c > best || (c == best && e < vc)) {
                            victim = Some((c, e));
                        }
                    }
                }
                let (_, (a, b)) = victim.expect("a clique on k >= 3 vertices has another edge");
                self.set(a, b, false);
                repaired.push((a, b));
            }
        }
        Move {
            u,
            v,
            added,
            repaired,
        }
    }

    fn undo(&mut self, m: &Move) {
        for &(a, b) in m.repaired.iter().rev() {
            self.set(a, b, true);
        }
        self.set(m.u, m.v, !m.added);
    }

    /// Random cross pair, drawn from a minimal pair with probability `bias`.
    fn propose(&self, rng: &mut Rng, bias: f64) -> (Vertex, Vertex) {
        let p = if rng.gen_bool(bias) {
            let m = self.min_count();
            let minimal: Vec<usize> = (0..self.counts.len())
                .filter(|&p| self.counts[p] == m)
                .collect();
            minimal[rng.gen_range(0..minimal.len())]
        } else {
            rng.gen_range(0..self.counts.len())
        };
        let (i, j) = pair_parts(self.l, p);
        let u = i * self.n + rng.gen_range(0..self.n);
        let v = j * self.n + rng.gen_range(0..self.n);
        (u, v)
    }
}

fn pair_parts(l: usize, p: usize) -> (usize, usize) {
    let mut rest = p;
    for i in 0..l {
        let row = l - i - 1;
        if rest < row {
            return (i, i + 1 + rest);
        }
        rest -= row;
    }
    unreachable!("pair index {p} out of range for {l} parts")
}

struct Outcome {
    best: MultipartiteGraph,
    objective: Objective,
    trace: SearchTrace,
}

struct Best {
    graph: MultipartiteGraph,
    objective: Objective,
}

impl Best {
    fn offer(&mut self, state: &State, iteration: u64, trace: &mut SearchTrace) {
        let obj = state.objective();
        if obj > self.objective {
            self.graph = state.builder.graph().clone();
            self.objective = obj;
            trace.improvements += 1;
            trace.best_iteration = iteration;
        }
    }
}

/// Initial temperature at which a worsening move of average size is accepted
/// with probability 1/2.
fn calibrate(state: &mut State, rng: &mut Rng, bias: f64) -> f64 {
    let base = state.score();
    let mut worse = Vec::new();
    for _ in 0..CALIBRATION_SAMPLES {
        let (u, v) = state.propose(rng, bias);
        let m = state.apply(u, v);
        let delta = base - state.score();
        state.undo(&m);
        if delta > 0.0 {
            worse.push(delta);
        }
    }
    if worse.is_empty() {
        return 1.0;
    }
    let mean = worse.iter().sum::<f64>() / worse.len() as f64;
    mean / std::f64::consts::LN_2
}

fn anneal(
    cfg: &SearchConfig,
    state: &mut State,
    rng: &mut Rng,
    best: &mut Best,
    trace: &mut SearchTrace,
) {
    let t0 = calibrate(state, rng, cfg.min_pair_bias);
    trace.initial_temperature = Some(t0);
    let cooling = cfg
        .final_temperature_ratio
        .powf(1.0 / cfg.iterations as f64);
    let mut t = t0;
    let mut current = state.score();
    for it in 1..=cfg.iterations {
        let (u, v) = state.propose(rng, cfg.min_pair_bias);
        let m = state.apply(u, v);
        let next = state.score();
        let accept = next >= current || rng.gen_bool(((next - current) / t).exp());
        if accept {
            current = next;
            trace.accepted += 1;
            trace.repairs += m.repaired.len() as u64;
            best.offer(state, it, trace);
        } else {
            state.undo(&m);
        }
        t *= cooling;
    }
}

fn tabu(
    cfg: &SearchConfig,
    state: &mut State,
    rng: &mut Rng,
    best: &mut Best,
    trace: &mut SearchTrace,
) {
    let cross = state.counts.len() * state.n * state.n;
    let tenure = if cfg.tabu_tenure == 0 {
        7 + cross / 64
    } else {
        cfg.tabu_tenure
    } as u64;
    let mut released: HashMap<(Vertex, Vertex), u64> = HashMap::new();
    let mut record = state.score();
    for it in 1..=cfg.iterations {
        let mut chosen: Option<((Vertex, Vertex), f64)> = None;
        for _ in 0..cfg.tabu_candidates.max(1) {
            let (u, v) = state.propose(rng, cfg.min_pair_bias);
            let m = state.apply(u, v);
            let s = state.score();
            state.undo(&m);
            let is_tabu = released.get(&(u, v)).is_some_and(|&r| r > it);
            if is_tabu && s <= record {
                continue;
            }
            if chosen.is_none_or(|(_, cs)| s > cs) {
                chosen = Some(((u, v), s));
            }
        }
        let Some(((u, v), s)) = chosen else { continue };
        let m = state.apply(u, v);
        trace.accepted += 1;
        trace.repairs += m.repaired.len() as u64;
        released.insert((u, v), it + tenure);
        for &e in &m.repaired {
            released.insert(e, it + tenure);
        }
        record = record.max(s);
        best.offer(state, it, trace);
    }
}

fn restart(cfg: &SearchConfig, initial: &MultipartiteGraph, index: usize) -> Outcome {
    let mut rng = stream_rng(cfg.seed, index as u64);
    let mut state = State::new(initial.clone(), cfg.k, cfg.n);
    let mut best = Best {
        graph: initial.clone(),
        objective: state.objective(),
    };
    let mut trace = SearchTrace {
        iterations: cfg.iterations,
        ..SearchTrace::default()
    };
    if cfg.iterations > 0 {
        match cfg.mode {
            Mode::Anneal => anneal(cfg, &mut state, &mut rng, &mut best, &mut trace),
            Mode::Tabu => tabu(cfg, &mut state, &mut rng, &mut best, &mut trace),
            Mode::Exhaustive => unreachable!("checked by local_search"),
        }
    }
    Outcome {
        best: best.graph,
        objective: best.objective,
        trace,
    }
}

/// Seeded local search over balanced `K^k`-free graphs. Returns the best
/// state seen over all restarts; ties go to the lowest restart index, so the
/// result does not depend on scheduling.
pub fn local_search(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    if cfg.mode == Mode::Exhaustive {
        return Err(Error::invalid("local search needs mode anneal or tabu"));
    }
    let initial = initial_graph(cfg)?;
    let initial_min = initial.min_pairwise_density()?;
    let outcomes: Vec<Outcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| restart(cfg, &initial, r))
        .collect();
    let (index, winner) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.objective > a.1.objective { b } else { a })
        .expect("at least one restart");
    let mut trace = winner.trace;
    trace.best_restart = index;
    trace.initial_min_density = Some(format_ratio(&initial_min));
    Ok(SearchResult::new(winner.best, cfg.k, trace, cfg.echo()))
}
