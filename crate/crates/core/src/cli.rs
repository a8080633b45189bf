//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns its exit code: 0 on success, 1 when a check fails
//! (membership rejected, suite violations), 2 on usage, input or I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::extremal::{
    check_membership, generate, DeletionSpec, MembershipOptions, MembershipVerdict, PartOrder,
};
use crate::graph::find_clique;
use crate::io::{
    graph_to_string, load_deletions, load_graph, load_params, save_graph, write_text, RunReport,
};
use crate::oracles::{run_suite, Suite, SuiteConfig};
use crate::scalar::format_ratio;
use crate::search::{
    frontier_experiment, search, ExperimentOverrides, Initial, Mode, Preset, SearchConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "turan",
    version,
    about = "Exact tools for multipartite Turán density problems"
)]
struct Cli {
    /// Also write a JSON run report (command, input digests, outputs, seed).
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a member of the class-structured family.
    GenExtremal {
        #[arg(long)]
        params: PathBuf,
        /// Edge list of zone edges to remove.
        #[arg(long)]
        delete: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide membership in the family for cliques K^k.
    CheckMember {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Require the deletion zone to be the leading parts in file order.
        #[arg(long)]
        fixed_order: bool,
    },
    /// Print the matrix of pairwise densities.
    Density {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Print a K^k or "none".
    FindClique {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Run a seeded randomized suite of triangle-forcing checks.
    VerifyTheorems {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_part_size: usize,
    },
    /// Search for a K^k-free balanced graph with large minimum density.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        iters: u64,
        /// "empty", "extremal-seed" or a graph file.
        #[arg(long, default_value = "empty")]
        init: String,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a preset battery of searches.
    Experiment {
        #[arg(long)]
        preset: Preset,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        iters: Option<u64>,
        /// Seeds of the annealing runs; repeat the flag for several.
        #[arg(long)]
        seed: Vec<u64>,
    },
}

/// Exit code and, when the command got far enough, its run report.
pub struct Dispatch {
    pub code: i32,
    pub report: Option<RunReport>,
}

enum Status {
    Ok,
    Failed,
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and diagnostics to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> Dispatch
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return Dispatch { code, report: None };
        }
    };
    let command: Vec<String> = argv
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut report = RunReport::new(command);
    let start = Instant::now();
    let status = run(&cli.command, &mut report, out, err);
    report.wall_ms = start.elapsed().as_millis() as u64;
    let mut code = match status {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    };
    if let Some(path) = &cli.report {
        if let Err(e) = write_text(path, &report.to_json()) {
            let _ = writeln!(err, "error: {e}");
            code = 2;
        }
    }
    Dispatch {
        code,
        report: Some(report),
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<()> {
    writeln!(out, "{text}").map_err(|source| Error::Io {
        path: "<stdout>".to_string(),
        source,
    })
}

fn run(
    command: &Command,
    report: &mut RunReport,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Status> {
    match command {
        Command::GenExtremal {
            params,
            delete,
            out: path,
        } => {
            report.add_input(params)?;
            let p = load_params(params)?;
            let deletions = match delete {
                Some(d) => {
                    report.add_input(d)?;
                    load_deletions(d)?
                }
                None => DeletionSpec::none(),
            };
            let e = generate(&p, &deletions)?;
            save_graph(&e.graph, path)?;
            let min = e.graph.min_pairwise_density()?;
            report.outputs.push(path.display().to_string());
            report.summarize("vertices", e.graph.vertex_count());
            report.summarize("edges", e.graph.edge_count());
            report.summarize("min_density", format_ratio(&min));
            emit(
                out,
                format_args!(
                    "wrote {}: {} parts, {} vertices, {} edges, min density {}",
                    path.display(),
                    e.graph.part_count(),
                    e.graph.vertex_count(),
                    e.graph.edge_count(),
                    format_ratio(&min)
                ),
            )?;
            Ok(Status::Ok)
        }
        Command::CheckMember {
            graph,
            k,
            fixed_order,
        } => {
            report.add_input(graph)?;
            let g = load_graph(graph)?;
            let options = MembershipOptions {
                part_order: if *fixed_order {
                    PartOrder::Fixed
                } else {
                    PartOrder::Free
                },
                ..MembershipOptions::default()
            };
            match check_membership(&g, *k, options)? {
                MembershipVerdict::Member(m) => {
                    let mut zone: Vec<usize> = m.part_order[..m.params.special_parts()].to_vec();
                    zone.sort_unstable();
                    report.summarize("member", true);
                    report.summarize("deleted_edges", m.deleted.len());
                    emit(
                        out,
                        format_args!(
                            "member: {} zone edges deleted, zone parts {:?}",
                            m.deleted.len(),
                            zone
                        ),
                    )?;
                    for ((i, j), d) in &m.zone_densities {
                        emit(
                            out,
                            format_args!("zone density d({i},{j}) = {}", format_ratio(d)),
                        )?;
                    }
                    Ok(Status::Ok)
                }
                MembershipVerdict::Rejected(reason) => {
                    report.summarize("member", false);
                    report.summarize("reason", reason.clone());
                    emit(out, format_args!("rejected: {reason}"))?;
                    let _ = writeln!(err, "not a member: {reason}");
                    Ok(Status::Failed)
                }
            }
        }
        Command::Density { graph } => {
            report.add_input(graph)?;
            let g = load_graph(graph)?;
            let m = g.density_matrix();
            for i in 0..g.part_count() {
                let row: Vec<String> = (0..g.part_count())
                    .map(|j| m.get(i, j).map_or_else(|| "-".to_string(), format_ratio))
                    .collect();
                emit(out, row.join(" "))?;
            }
            if g.part_count() >= 2 {
                report.summarize("min_density", format_ratio(&g.min_pairwise_density()?));
            }
            Ok(Status::Ok)
        }
        Command::FindClique { graph, k } => {
            report.add_input(graph)?;
            let g = load_graph(graph)?;
            match find_clique(&g, *k) {
                Some(c) => {
                    let ids: Vec<String> = c.iter().map(ToString::to_string).collect();
                    report.summarize("clique", serde_json::json!(c));
                    emit(out, ids.join(" "))?;
                }
                None => {
                    report.summarize("clique", serde_json::Value::Null);
                    emit(out, "none")?;
                }
            }
            Ok(Status::Ok)
        }
        Command::VerifyTheorems {
            suite,
            trials,
            seed,
            max_part_size,
        } => {
            let config = SuiteConfig {
                suite: *suite,
                trials: *trials,
                seed: *seed,
                max_part_size: *max_part_size,
            };
            let r = run_suite(&config)?;
            report.seed = Some(*seed);
            report.summarize("hypothesis_held", r.hypothesis_held);
            report.summarize("violations", r.violations);
            report.summarize("inconclusive", r.inconclusive);
            emit(
                out,
                serde_json::to_string_pretty(&r).expect("report serializes"),
            )?;
            Ok(if r.violations == 0 {
                Status::Ok
            } else {
                Status::Failed
            })
        }
        Command::Search {
            k,
            l,
            n,
            mode,
            seed,
            iters,
            init,
            restarts,
            out: path,
        } => {
            let initial = match init.as_str() {
                "empty" => Initial::Empty,
                "extremal-seed" => Initial::ExtremalSeed,
                file => {
                    report.add_input(Path::new(file))?;
                    Initial::Graph(load_graph(file)?)
                }
            };
            let cfg = SearchConfig::new(*k, *l, *n, *mode, *seed, *iters)
                .with_initial(initial)
                .with_restarts(*restarts);
            let start = Instant::now();
            let result = search(&cfg)?;
            let sidecar = result.report(start.elapsed().as_millis() as u64);
            let side_path = path.with_extension("report.json");
            write_text(path, &graph_to_string(&result.graph))?;
            write_text(&side_path, &sidecar.to_json())?;
            report.seed = Some(*seed);
            report.outputs.push(path.display().to_string());
            report.outputs.push(side_path.display().to_string());
            report.summarize("min_density", sidecar.min_density.clone());
            report.summarize("kfree_verified", result.kfree_verified);
            emit(
                out,
                format_args!(
                    "min density {} ({} edges), K^{}-free: {}",
                    sidecar.min_density,
                    result.graph.edge_count(),
                    k,
                    result.kfree_verified
                ),
            )?;
            Ok(Status::Ok)
        }
        Command::Experiment {
            preset,
            out: dir,
            k,
            l,
            iters,
            seed,
        } => {
            let overrides = ExperimentOverrides {
                k: *k,
                l: *l,
                iterations: *iters,
                seeds: (!seed.is_empty()).then(|| seed.clone()),
                sizes: None,
            };
            let r = frontier_experiment(*preset, &overrides)?;
            let report_path = dir.join("report.json");
            write_text(&report_path, &r.to_json())?;
            report.outputs.push(report_path.display().to_string());
            for row in &r.rows {
                let name = format!(
                    "{}-l{}-n{}-{}-s{}.json",
                    r.preset, row.l, row.n, row.mode, row.seed
                );
                let path = dir.join(name);
                save_graph(&row.graph, &path)?;
                report.outputs.push(path.display().to_string());
            }
            report.summarize("best_min_density", r.best_min_density.clone());
            emit(
                out,
                format_args!(
                    "{:<12} {:>3} {:>3} {:>6} {:>6} {:>12}  anchor {}",
                    "mode",
                    "l",
                    "n",
                    "seed",
                    "iters",
                    "min density",
                    serde_json::to_string(&r.anchor).expect("anchor serializes")
                ),
            )?;
            for row in &r.rows {
                emit(
                    out,
                    format_args!(
                        "{:<12} {:>3} {:>3} {:>6} {:>6} {:>12}  {}",
                        row.mode.to_string(),
                        row.l,
                        row.n,
                        row.seed,
                        row.iterations,
                        row.min_density,
                        row.versus_anchor
                    ),
                )?;
            }
            Ok(Status::Ok)
        }
    }
}
