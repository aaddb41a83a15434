//! Command-line interface.
//!
//! Exit codes: `decide` returns 0 for forcing, 1 for not forcing and 2 when
//! the budget runs out (batch mode: 2 if any graph is unknown, else 1 if any
//! is not forcing). `check` returns 0 for avoiding and 1 when a witness is
//! found. `verify` returns 0 when every row passes, 1 on a failing row and 2
//! on unknown rows. Usage and input errors return 64.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zsf::construct::{
    cycle_labeling, path_labeling, spider_from_sumset, tree_labeling, ConstructError,
};
use zsf::engine::{
    check_labeling, decide_zero_forcing, CheckMode, CheckOutcome, EngineError, Labeling,
    SearchConfig,
};
use zsf::graphkit::{parse_graph, Graph};
use zsf::obstructions::minimal_induced_obstructions;
use zsf::report::{
    parse_labels, CheckReport, ConstructReport, DavenportReport, DecideReport, VerdictKind,
};
use zsf::verify::{self, RowStatus, SuiteReport};
use zsf::GroupSpec;

const EXIT_USAGE: u8 = 64;
const BUDGET_ENV: &str = "ZSF_BUDGET";

#[derive(Parser)]
#[command(
    name = "zsf",
    version,
    about = "Zero-forcing graphs for finite abelian groups"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,
    /// Worker threads for the search.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Maximum number of labels tried per decision (overrides ZSF_BUDGET).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Restrict the first label of each component to automorphism-orbit representatives.
    #[arg(long, global = true)]
    symmetry: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is zero-forcing.
    Decide {
        #[arg(long)]
        group: String,
        /// Edge list ("4; 0-1,1-2"), named shape (P5, C6, K4, K1,3, grid3x3) or graph6.
        #[arg(
            long,
            conflicts_with = "graph_file",
            required_unless_present = "graph_file"
        )]
        graph: Option<String>,
        /// File with one graph per line.
        #[arg(long)]
        graph_file: Option<String>,
    },
    /// Check one labeling for a connected zero-sum set.
    Check {
        #[arg(long, required_unless_present = "certificate")]
        group: Option<String>,
        #[arg(long, required_unless_present = "certificate")]
        graph: Option<String>,
        /// Labels per vertex, e.g. "1,1" or "1:0,0:1".
        #[arg(
            long,
            conflicts_with = "certificate",
            required_unless_present = "certificate"
        )]
        labels: Option<String>,
        /// JSON report from `decide --output json`.
        #[arg(long)]
        certificate: Option<String>,
        /// Scan connected sets only up to the witness bound.
        #[arg(long)]
        bounded: bool,
    },
    /// Build a zero-avoiding labeling.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Davenport constant and a longest zero-sum-free sequence.
    Davenport {
        #[arg(long)]
        group: String,
    },
    /// Minimal zero-forcing graphs up to an order cap.
    Obstructions {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },
    /// Compare verdicts with closed-form predictions.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Group order for the monotone scan.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        /// Monotone scan over all graphs instead of connected ones.
        #[arg(long)]
        all_graphs: bool,
        /// Seed for the randomized suites.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Instances per randomized suite.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
    },
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        group: String,
    },
    Tree {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        group: String,
    },
    /// Spider from sets A, B in Z_p with A + B != Z_p.
    Spider {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Path,
    Prime,
    Cycle,
    Tree,
    Bramble,
    Monotone,
    Qset,
    Witness,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn search_config(run: &RunArgs) -> Result<SearchConfig, Failure> {
    let budget = match (run.budget, std::env::var(BUDGET_ENV)) {
        (Some(b), _) => b,
        (None, Ok(text)) => match text.trim().parse::<u64>() {
            Ok(b) if b >= 1 => b,
            _ => {
                return Err(usage(format!(
                    "{BUDGET_ENV} must be a positive integer, got '{text}'"
                )))
            }
        },
        (None, Err(_)) => SearchConfig::default().budget,
    };
    Ok(SearchConfig {
        budget,
        jobs: run.jobs as usize,
        symmetry: run.symmetry,
    })
}

fn group(text: &str) -> Result<GroupSpec, Failure> {
    text.parse().map_err(usage)
}

fn graph(text: &str) -> Result<Graph, Failure> {
    parse_graph(text).map_err(usage)
}

fn emit_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("reports serialize")
    );
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = cli.run.output;
    match &cli.command {
        Command::Decide {
            group: gs,
            graph: g,
            graph_file,
        } => {
            let grp = group(gs)?;
            let cfg = search_config(&cli.run)?;
            let graphs = match (g, graph_file) {
                (Some(text), _) => vec![graph(text)?],
                (None, Some(path)) => {
                    let body = fs::read_to_string(path).map_err(usage)?;
                    body.lines()
                        .map(str::trim)
                        .filter(|l| !l.is_empty() && !l.starts_with('#'))
                        .map(graph)
                        .collect::<Result<_, _>>()?
                }
                (None, None) => return Err(usage("one of --graph or --graph-file is required")),
            };
            let mut codes = Vec::new();
            for g in &graphs {
                let result = decide_zero_forcing(g, &grp, &cfg);
                if let Err(e) = &result {
                    if !matches!(e, EngineError::BudgetExhausted { .. }) {
                        return Err(usage(e));
                    }
                }
                let report = DecideReport::new(g, &grp, &result);
                codes.push(match report.verdict {
                    VerdictKind::Forcing => 0,
                    VerdictKind::NotForcing => 1,
                    VerdictKind::Unknown => 2,
                });
                match out {
                    Output::Json => emit_json(&report),
                    Output::Text => {
                        print_decide(&report, result.as_ref().ok().and_then(|v| v.certificate()))
                    }
                }
            }
            Ok(if codes.contains(&2) {
                2
            } else {
                codes.iter().copied().max().unwrap_or(0)
            })
        }
        Command::Check {
            group: gs,
            graph: g,
            labels,
            certificate,
            bounded,
        } => {
            let l = match certificate {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(usage)?;
                    let report: DecideReport = serde_json::from_str(&text).map_err(usage)?;
                    report
                        .certificate_labeling()
                        .map_err(usage)?
                        .ok_or_else(|| usage("report carries no certificate"))?
                }
                None => {
                    let grp = group(gs.as_deref().unwrap_or_default())?;
                    let g = graph(g.as_deref().unwrap_or_default())?;
                    let values =
                        parse_labels(&grp, labels.as_deref().unwrap_or_default()).map_err(usage)?;
                    Labeling::new(g, grp, values).map_err(usage)?
                }
            };
            let mode = if *bounded {
                CheckMode::Bounded
            } else {
                CheckMode::Full
            };
            let outcome = check_labeling(&l, mode);
            let report = CheckReport::new(&l, &outcome);
            match out {
                Output::Json => emit_json(&report),
                Output::Text => match outcome {
                    CheckOutcome::Avoiding => println!("avoiding"),
                    CheckOutcome::Witness(w) => println!(
                        "witness {{{}}} sums to {}",
                        join(&w.vertices.to_vec()),
                        l.sum(w.vertices)
                    ),
                },
            }
            Ok(if report.avoiding { 0 } else { 1 })
        }
        Command::Construct { kind } => {
            let (name, built) = match kind {
                ConstructKind::Path { n, group: gs } => ("path", path_labeling(*n, &group(gs)?)),
                ConstructKind::Cycle { n, group: gs } => ("cycle", cycle_labeling(*n, &group(gs)?)),
                ConstructKind::Tree {
                    graph: g,
                    group: gs,
                } => ("tree", tree_labeling(&graph(g)?, &group(gs)?)),
                ConstructKind::Spider { a, b, p } => {
                    let a = parse_residues(a)?;
                    let b = parse_residues(b)?;
                    ("spider", spider_from_sumset(&a, &b, *p).map(|(_, l)| l))
                }
            };
            let l = built.map_err(|e: ConstructError| usage(e))?;
            // refuse to emit anything that fails an independent check
            if !check_labeling(&l, CheckMode::Bounded).is_avoiding() {
                return Err(Failure {
                    code: 70,
                    message: "construction failed verification".into(),
                });
            }
            let report = ConstructReport::new(name, &l, true);
            match out {
                Output::Json => emit_json(&report),
                Output::Text => {
                    println!(
                        "{name} over {}: graph {} ({})",
                        report.group, report.graph6, report.edges
                    );
                    println!(
                        "labels [{}]",
                        l.values()
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    println!("verified avoiding");
                }
            }
            Ok(0)
        }
        Command::Davenport { group: gs } => {
            let report = DavenportReport::new(&group(gs)?).map_err(usage)?;
            match out {
                Output::Json => emit_json(&report),
                Output::Text => println!("{}", report.davenport),
            }
            Ok(0)
        }
        Command::Obstructions { group: gs, cap } => {
            let grp = group(gs)?;
            let report = minimal_induced_obstructions(&grp, *cap, &search_config(&cli.run)?)
                .map_err(usage)?;
            match out {
                Output::Json => emit_json(&report),
                Output::Text => {
                    println!(
                        "group {} up to {} vertices ({} graphs decided)",
                        report.group, report.order_cap, report.decided
                    );
                    println!("induced-minimal ({}):", report.induced_minimal.len());
                    for g in report.induced_minimal_graphs() {
                        println!("  {}  {}", g.to_graph6(), g.to_edge_list());
                    }
                    println!("minor-minimal ({}):", report.minor_minimal.len());
                    for g in report.minor_minimal_graphs() {
                        println!("  {}  {}", g.to_graph6(), g.to_edge_list());
                    }
                    if !report.unknown.is_empty() {
                        println!("undecided: {}", report.unknown.join(" "));
                    }
                    println!("complete: {} ({})", report.complete, report.note);
                }
            }
            Ok(if report.unknown.is_empty() { 0 } else { 2 })
        }
        Command::Verify {
            suite,
            group: gs,
            max_n,
            order,
            max_vertices,
            all_graphs,
            seed,
            count,
        } => {
            let cfg = search_config(&cli.run)?;
            let need_group = || {
                gs.as_deref()
                    .ok_or_else(|| usage("--group is required for this suite"))
                    .and_then(group)
            };
            let report = match suite {
                Suite::Path => {
                    let g = need_group()?;
                    verify::path_suite(&g, max_n.unwrap_or(g.order() + 1), &cfg)
                }
                Suite::Prime => verify::prime_suite(&need_group()?, &cfg),
                Suite::Cycle => {
                    let g = need_group()?;
                    verify::cycle_suite(&g, max_n.unwrap_or(g.order()), &cfg)
                }
                Suite::Tree => verify::tree_suite(&need_group()?, &cfg),
                Suite::Bramble => {
                    verify::bramble_suite(&group(gs.as_deref().unwrap_or("Z2xZ2"))?, &cfg)
                }
                Suite::Monotone => verify::monotone_suite(*order, *max_vertices, !all_graphs, &cfg),
                Suite::Qset => verify::qset_suite(&[5, 7], *count, 10, *seed),
                Suite::Witness => verify::witness_suite(*count, 8, 8, *seed),
            }
            .map_err(usage)?;
            match out {
                Output::Json => emit_json(&report),
                Output::Text => print_suite(&report),
            }
            Ok(if report.count(RowStatus::Fail) > 0 {
                1
            } else if report.count(RowStatus::Unknown) > 0 {
                2
            } else {
                0
            })
        }
    }
}

fn parse_residues(text: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| usage(format!("'{s}' is not a residue")))
        })
        .collect()
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn print_decide(report: &DecideReport, cert: Option<&Labeling>) {
    let verdict = match report.verdict {
        VerdictKind::Forcing => "forcing",
        VerdictKind::NotForcing => "not forcing",
        VerdictKind::Unknown => "unknown",
    };
    println!("{} over {}: {verdict}", report.graph6, report.group);
    if let Some(l) = cert {
        let parts: Vec<String> = l
            .values()
            .iter()
            .enumerate()
            .map(|(v, x)| format!("{v}:{x}"))
            .collect();
        println!("  certificate {}", parts.join(" "));
    }
    if let Some(s) = &report.stats {
        println!(
            "  explored {} pruned {} bound {} in {} ms",
            s.explored, s.pruned, s.witness_bound, s.elapsed_ms
        );
    }
    if let Some(e) = &report.error {
        println!("  {e}");
    }
}

fn print_suite(report: &SuiteReport) {
    let mut stdout = std::io::stdout().lock();
    for row in &report.rows {
        let status = match row.status {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Unknown => "UNKNOWN",
            RowStatus::Info => "INFO",
        };
        let _ = writeln!(
            stdout,
            "{status:<8} {:<40} expected {:<14} observed {}",
            row.instance, row.expected, row.observed
        );
    }
    let _ = writeln!(stdout, "{}: {}", report.suite, report.summary);
}
