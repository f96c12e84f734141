use std::collections::BTreeSet;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bicyclic::classify::{Classifier, Verdict};
use bicyclic::coloring::{k_colorable, ColoringOutcome, DEFAULT_BUDGET};
use bicyclic::element::{evaluate_word, format_elements, parse_elements, parse_word};
use bicyclic::graph::{
    associated_graph_with, bipartition_or_odd_cycle, verify_certificate, Certificate,
};
use bicyclic::partition::{partition_avoids_with, render_grid, PartitionRule};
use bicyclic::sweep::{self, SweepReport};
use bicyclic::{Element, Error, Exec, MaximalFamily, TargetSet, Window};

/// Arithmetic, avoiding partitions and odd-cycle certificates in the bicyclic
/// inverse semigroup.
#[derive(Parser)]
#[command(name = "bicyclic", version)]
struct Cli {
    /// Run sweeps and window checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements, e.g. `mul "(2,1)" "(1,1)"`.
    Mul { left: String, right: String },
    /// Adjoint of an element.
    Star { element: String },
    /// Evaluate a word in G and G*, e.g. `GG*G`.
    Word { word: String },
    /// Decide avoidability of a finite set and print the certificate.
    Classify {
        /// Elements separated by `;`, e.g. "(8,-8);(3,-3)".
        #[arg(long)]
        set: String,
        #[arg(long)]
        json: bool,
        /// Largest window searched when no construction applies.
        #[arg(long, default_value_t = 64)]
        cap: u32,
    },
    /// Check that a partition rule avoids a set on a window.
    Partition {
        /// Rule descriptor: parity, D:a=8,c=3, E:a=6,d=5, Z:d=5, H:a=4, star(...).
        #[arg(long)]
        rule: String,
        /// Finite target set.
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        set: Option<String>,
        /// Family target, e.g. d:a=8,c=3.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 40)]
        window: u32,
    },
    /// Print the classes of a rule: one row per a, one column per b.
    Grid {
        #[arg(long)]
        rule: String,
        /// Inclusive range `lo..hi` of a.
        #[arg(long, allow_hyphen_values = true)]
        rows: String,
        /// Inclusive range `lo..hi` of b.
        #[arg(long, allow_hyphen_values = true)]
        cols: String,
    },
    /// Build the associated graph on a window and export it as DOT.
    Graph {
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: u32,
        #[arg(long)]
        dot: PathBuf,
        /// Color the vertices by a two-coloring when one exists.
        #[arg(long)]
        color: bool,
        /// Also write the bipartition or odd-cycle certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Verify a certificate file against the graph of a set on a window.
    Check {
        #[arg(long)]
        certificate: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: u32,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sweep bound; see `Suite` for its meaning and default.
        #[arg(long)]
        max: Option<i64>,
    },
    /// Search for a proper k-coloring of the associated graph.
    Ncolor {
        #[arg(long)]
        set: String,
        #[arg(long)]
        window: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Look for a finite obstruction to every element outside a family.
    Probe {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 12)]
        window: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    /// Associativity on window max (10); pair laws on window 2·max.
    Axioms,
    /// Shift composition on window max (20), points 0..=3·max.
    Representation,
    /// Parity of products on window max (20).
    Parity,
    /// Every witness construction with coordinates up to max (20).
    Witnesses,
    /// Partition rules with parameters up to max (30).
    Partitions,
    /// The three printed grids; max is ignored.
    Figures,
    /// Sets of size ≤ 2 in window max (8) against search on window 3·max.
    Theorem,
    /// Adjoint agreement on the theorem sets, and adjoint rules up to 30.
    Duality,
    /// Maximality probes on window max (12).
    Probes,
}

/// Bad input: reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!(Usage(e.to_string()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Ok = 0,
    Refuted = 1,
    Budget = 3,
}

fn parse_element(s: &str) -> Result<Element> {
    s.parse().map_err(usage)
}

fn parse_set(s: &str) -> Result<BTreeSet<Element>> {
    Ok(parse_elements(s).map_err(usage)?.into_iter().collect())
}

fn parse_rule(s: &str) -> Result<PartitionRule> {
    s.parse().map_err(usage)
}

fn parse_family(s: &str) -> Result<MaximalFamily> {
    s.parse().map_err(usage)
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| usage(format!("expected lo..hi, got {s:?}")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound in {s:?}")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad bound in {s:?}")))?;
    if lo > hi {
        return Err(usage(format!("empty range {s:?}")));
    }
    Ok(lo..=hi)
}

fn verdict_json(u: &BTreeSet<Element>, verdict: &Verdict) -> Value {
    let set: Vec<String> = u.iter().map(|x| x.to_string()).collect();
    match verdict {
        Verdict::Avoidable {
            families,
            certificate,
        } => json!({
            "verdict": "avoidable",
            "set": set,
            "families": families.iter().map(|f| json!({
                "family": f.family.to_string(),
                "free": f.free,
            })).collect::<Vec<_>>(),
            "certificate": certificate.to_string(),
        }),
        Verdict::Unavoidable { witness } => json!({
            "verdict": "unavoidable",
            "set": set,
            "witness": {
                "provenance": witness.provenance.to_string(),
                "cycle": witness.cycle.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "edges": witness.edge_report().iter().map(|e| json!({
                    "left": e.left.to_string(),
                    "right": e.right.to_string(),
                    "forward": e.forward.to_string(),
                    "forward_in": e.forward_in,
                    "backward": e.backward.to_string(),
                    "backward_in": e.backward_in,
                })).collect::<Vec<_>>(),
            },
        }),
    }
}

fn run_suite(suite: Suite, max: Option<i64>, exec: Exec) -> Vec<SweepReport> {
    let bound = |default: i64| max.unwrap_or(default).max(0);
    let window = |default: i64| bound(default) as u32;
    match suite {
        Suite::Axioms => vec![sweep::axioms(window(10), 2 * window(10), exec)],
        Suite::Representation => vec![sweep::representation(window(20), 3 * bound(20), exec)],
        Suite::Parity => vec![sweep::parity_law(window(20), exec)],
        Suite::Witnesses => vec![sweep::witnesses(bound(20), exec)],
        Suite::Partitions => vec![sweep::partitions(bound(30), exec)],
        Suite::Figures => vec![sweep::figures()],
        Suite::Theorem => vec![sweep::theorem(window(8), 3 * window(8), exec)],
        Suite::Duality => vec![
            sweep::duality(window(8), 3 * window(8), exec),
            sweep::star_transport(30, exec),
        ],
        Suite::Probes => vec![sweep::probes(window(12), exec)],
    }
}

fn run(cli: Cli) -> Result<Status> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match cli.command {
        Command::Mul { left, right } => {
            let (x, y) = (parse_element(&left)?, parse_element(&right)?);
            let p = x.checked_mul(y).ok_or_else(|| usage(Error::Overflow))?;
            println!("{p}");
        }
        Command::Star { element } => println!("{}", parse_element(&element)?.adjoint()),
        Command::Word { word } => {
            let letters = parse_word(&word).map_err(usage)?;
            println!("{}", evaluate_word(&letters).map_err(usage)?);
        }
        Command::Classify { set, json, cap } => {
            let u = parse_set(&set)?;
            let verdict = match (Classifier { search_cap: cap }).classify(&u) {
                Ok(v) => v,
                Err(e @ Error::NoWitness { .. }) => {
                    eprintln!("{e}");
                    return Ok(Status::Budget);
                }
                Err(e) => return Err(e.into()),
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&verdict_json(&u, &verdict))?
                );
            } else {
                println!("set {{{}}}", format_elements(&u));
                print!("{verdict}");
            }
            if !verdict.is_avoidable() {
                return Ok(Status::Refuted);
            }
        }
        Command::Partition {
            rule,
            set,
            family,
            window,
        } => {
            let rule = parse_rule(&rule)?;
            let target = match (set, family) {
                (Some(s), _) => TargetSet::Finite(parse_set(&s)?),
                (None, Some(f)) => TargetSet::Family(parse_family(&f)?),
                (None, None) => return Err(usage("one of --set or --family is required")),
            };
            match partition_avoids_with(&rule, &target, Window::new(window), exec) {
                Ok(()) => println!("{rule} avoids {target} on window {window}"),
                Err(v) => {
                    println!("{rule} violated on window {window}: {v}");
                    return Ok(Status::Refuted);
                }
            }
        }
        Command::Grid { rule, rows, cols } => {
            let rule = parse_rule(&rule)?;
            print!(
                "{}",
                render_grid(&rule, parse_range(&rows)?, parse_range(&cols)?)
            );
        }
        Command::Graph {
            set,
            window,
            dot,
            color,
            certificate,
        } => {
            let target = TargetSet::Finite(parse_set(&set)?);
            let g = associated_graph_with(Window::new(window), &target, exec);
            let cert = bipartition_or_odd_cycle(&g);
            let coloring = match (&cert, color) {
                (Certificate::TwoColoring(c), true) => Some(c),
                _ => None,
            };
            fs::write(&dot, g.to_dot(coloring))
                .with_context(|| format!("writing {}", dot.display()))?;
            if let Some(path) = certificate {
                fs::write(&path, cert.to_string())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            println!("vertices {}", g.vertex_count());
            println!("edges {}", g.edge_count());
            match cert.odd_cycle() {
                Some(cycle) => println!("odd cycle {}", format_elements(cycle)),
                None => println!("bipartite"),
            }
        }
        Command::Check {
            certificate,
            set,
            window,
        } => {
            let text = fs::read_to_string(&certificate)
                .with_context(|| format!("reading {}", certificate.display()))?;
            let cert: Certificate = text.parse().map_err(usage)?;
            let target = TargetSet::Finite(parse_set(&set)?);
            let g = associated_graph_with(Window::new(window), &target, exec);
            if verify_certificate(&g, &cert) {
                println!("certificate verified");
            } else {
                println!("certificate rejected");
                return Ok(Status::Refuted);
            }
        }
        Command::Verify { suite, max } => {
            let reports = run_suite(suite, max, exec);
            for r in &reports {
                print!("{r}");
            }
            if !reports.iter().all(SweepReport::passed) {
                return Ok(Status::Refuted);
            }
        }
        Command::Ncolor {
            set,
            window,
            k,
            budget,
        } => {
            if k == 0 {
                return Err(usage("k must be at least 1"));
            }
            let target = TargetSet::Finite(parse_set(&set)?);
            let g = associated_graph_with(Window::new(window), &target, exec);
            match k_colorable(&g, k, budget) {
                ColoringOutcome::Colored(colors) => {
                    println!("{k}-colorable");
                    for class in 0..k {
                        let members: Vec<Element> = g
                            .vertices()
                            .iter()
                            .zip(&colors)
                            .filter(|&(_, &c)| c == class)
                            .map(|(&v, _)| v)
                            .collect();
                        println!("class {class} {}", format_elements(&members));
                    }
                }
                ColoringOutcome::Impossible => {
                    println!("not {k}-colorable");
                    return Ok(Status::Refuted);
                }
                ColoringOutcome::Undecided { nodes } => {
                    println!("undecided after {nodes} search nodes");
                    return Ok(Status::Budget);
                }
            }
        }
        Command::Probe { family, window } => {
            let family = parse_family(&family)?;
            let report = Classifier::default().maximality_probe(family, Window::new(window), exec);
            print!("{report}");
            if !report.all_obstructed() {
                return Ok(Status::Refuted);
            }
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
