//! `cgh`: construct, detect, bound, search, verify, experiment.
//!
//! Exit codes: 0 success (or "free"), 1 pattern found (detect/verify),
//! 2 usage or input error, 3 search budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cgh::bounds::{applicable_kinds, evaluate_bound, BoundKind};
use cgh::extension::{random_partition_experiment, verify_counting, EndMode};
use cgh::patterns::{find_pattern, PatternKind};
use cgh::search::{exact_extremal, Certificate, FamilyCertificate, SearchOptions};
use cgh::{CghError, Hypergraph};

#[derive(Parser)]
#[command(
    name = "cgh",
    version,
    about = "Workbench for tight paths, zigzags and stacks in convex geometric hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the extremal families to a hypergraph file.
    Construct(ConstructArgs),
    /// Read a hypergraph file and search it for a pattern.
    Detect(DetectArgs),
    /// Print the table of applicable upper bounds for (n, r, k).
    Bound(BoundArgs),
    /// Compute an exact extremal number by exhaustive search.
    Search(SearchArgs),
    /// Certify a family pattern-free and verify the counting inequalities.
    Verify(VerifyArgs),
    /// Run the random block-coloring experiment on a hypergraph file.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "stack_free")]
    StackFree,
    #[value(name = "short_side")]
    ShortSide,
    #[value(name = "clique_union")]
    CliqueUnion,
    #[value(name = "transversal")]
    Transversal,
    #[value(name = "lift_plus")]
    LiftPlus,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    #[value(name = "tight_path")]
    TightPath,
    #[value(name = "zigzag")]
    Zigzag,
    #[value(name = "stack")]
    Stack,
}

impl From<PatternArg> for PatternKind {
    fn from(p: PatternArg) -> Self {
        match p {
            PatternArg::TightPath => PatternKind::TightPath,
            PatternArg::Zigzag => PatternKind::Zigzag,
            PatternArg::Stack => PatternKind::Stack,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GeometryArg {
    /// Convex geometric: the cyclic order matters.
    Cgh,
    /// Abstract: the cyclic order is ignored.
    Abstract,
}

#[derive(Args)]
struct ConstructArgs {
    /// Which family to build.
    #[arg(long)]
    family: FamilyArg,
    /// Number of ground vertices.
    #[arg(long)]
    n: Option<u32>,
    /// Uniformity.
    #[arg(long)]
    r: Option<u32>,
    /// Pattern length parameter.
    #[arg(long)]
    k: Option<u32>,
    /// Number of fresh vertices (lift_plus only).
    #[arg(long)]
    m: Option<u32>,
    /// Input hypergraph file (lift_plus only).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output file.
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    /// Hypergraph file to read.
    #[arg(long = "in")]
    input: PathBuf,
    /// Pattern kind to look for.
    #[arg(long)]
    pattern: PatternArg,
    /// Number of pattern edges.
    #[arg(long)]
    k: usize,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    pattern: PatternArg,
    /// Whether the cyclic order is meaningful.
    #[arg(long)]
    geometry: GeometryArg,
    /// Node budget; the search reports a lower bound when exceeded.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads for the top-level subtree split.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write the extremal witness to this file.
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    pattern: PatternArg,
    #[arg(long)]
    k: usize,
    /// Largest path length for the counting verification (defaults to k).
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Number of random colorings to draw.
    #[arg(long)]
    trials: u64,
    /// Base seed; trial t uses stream t of this seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    // Die quietly when the output pipe closes (e.g. piping into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => construct(args),
        Command::Detect(args) => detect(args),
        Command::Bound(args) => bound(args),
        Command::Search(args) => search(args),
        Command::Verify(args) => verify(args),
        Command::Experiment(args) => experiment(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn usage(msg: &str) -> CghError {
    CghError::Domain(msg.to_string())
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, CghError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(&format!("cannot read {}: {e}", path.display())))?;
    Hypergraph::parse(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CghError> {
    fs::write(path, contents).map_err(|e| usage(&format!("cannot write {}: {e}", path.display())))
}

fn construct(args: ConstructArgs) -> Result<ExitCode, CghError> {
    let need = |value: Option<u32>, flag: &str| {
        value.ok_or_else(|| usage(&format!("--{flag} is required for this family")))
    };
    let h = match args.family {
        FamilyArg::StackFree => {
            cgh::constructions::stack_free(need(args.n, "n")?, need(args.r, "r")?, need(args.k, "k")?)?
        }
        FamilyArg::ShortSide => {
            cgh::constructions::short_side(need(args.n, "n")?, need(args.r, "r")?, need(args.k, "k")?)?
        }
        FamilyArg::CliqueUnion => {
            if let Some(r) = args.r {
                if r != 2 {
                    return Err(usage("clique_union is a graph family; omit --r or pass 2"));
                }
            }
            cgh::constructions::clique_union(need(args.n, "n")?, need(args.k, "k")?)?
        }
        FamilyArg::Transversal => cgh::constructions::transversal_blocks(
            need(args.n, "n")?,
            need(args.r, "r")?,
            need(args.k, "k")?,
        )?,
        FamilyArg::LiftPlus => {
            let input = args
                .input
                .as_ref()
                .ok_or_else(|| usage("--in FILE is required for lift_plus"))?;
            let base = read_hypergraph(input)?;
            cgh::constructions::lift_plus(&base, need(args.m, "m")?)?
        }
    };
    write_file(&args.out, &h.to_text())?;
    println!("wrote {} ({h})", args.out.display());
    Ok(ExitCode::SUCCESS)
}

fn detect(args: DetectArgs) -> Result<ExitCode, CghError> {
    let h = read_hypergraph(&args.input)?;
    match find_pattern(&h, args.pattern.into(), args.k)? {
        None => {
            if args.json {
                println!(
                    "{}",
                    serde_json::json!({"free": true, "edge_count": h.len()})
                );
            } else {
                println!("free");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(witness) => {
            if args.json {
                println!("{}", serde_json::to_string_pretty(&witness).expect("serializable"));
            } else {
                println!(
                    "pattern found: {} with {} edges",
                    witness.kind.label(),
                    witness.k
                );
                println!(
                    "sequence: {}",
                    witness
                        .sequence
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                for e in &witness.edges {
                    println!("edge: {e}");
                }
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn precondition_note(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::Trivial | BoundKind::Kalai | BoundKind::TightPath => "n >= r, k >= 1",
        BoundKind::Perles => "r = 2",
        BoundKind::Zigzag | BoundKind::StackLeading => "even r",
        BoundKind::SmallK => "k <= r + 1",
        BoundKind::OddImproved => "odd r >= 3, large n",
    }
}

fn bound(args: BoundArgs) -> Result<ExitCode, CghError> {
    let kinds = applicable_kinds(args.n, args.r, args.k);
    if kinds.is_empty() {
        return Err(usage("no bound applies; need n >= r >= 2 and k >= 1"));
    }
    if args.json {
        let rows: Vec<serde_json::Value> = kinds
            .iter()
            .map(|&kind| {
                let v = evaluate_bound(kind, args.n, args.r, args.k).expect("applicable");
                serde_json::json!({
                    "kind": kind.label(),
                    "value": v.to_string(),
                    "approx": v.approx(),
                    "asymptotic_only": v.asymptotic_only,
                    "preconditions": precondition_note(kind),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
    } else {
        println!(
            "upper bounds for n = {}, r = {}, k = {}:",
            args.n, args.r, args.k
        );
        for kind in kinds {
            let v = evaluate_bound(kind, args.n, args.r, args.k).expect("applicable");
            println!(
                "  {:<14} {:<24} (~{:.3})  [{}]",
                kind.label(),
                v.to_string(),
                v.approx(),
                precondition_note(kind)
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn search(args: SearchArgs) -> Result<ExitCode, CghError> {
    let geometric = matches!(args.geometry, GeometryArg::Cgh);
    let options = SearchOptions {
        budget: args.budget,
        threads: args.threads,
        canon_cadence: None,
    };
    let result = exact_extremal(args.n, args.r, args.k, args.pattern.into(), geometric, &options)?;
    if let Some(out) = &args.out {
        write_file(out, &result.witness.to_text())?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&result).expect("serializable"));
    } else {
        println!(
            "value {} ({:?}, {} nodes, {:.3}s)",
            result.value, result.certificate, result.nodes_explored, result.wall_time_s
        );
        if args.out.is_none() {
            print!("{}", result.witness.to_text());
        }
    }
    Ok(match result.certificate {
        Certificate::Exhaustive => ExitCode::SUCCESS,
        Certificate::Bounded => ExitCode::from(3),
    })
}

fn verify(args: VerifyArgs) -> Result<ExitCode, CghError> {
    let h = read_hypergraph(&args.input)?;
    let kind: PatternKind = args.pattern.into();
    let family = cgh::search::verify_family(&h, kind, args.k)?;
    // The counting inequalities are stated for even uniformity on geometric
    // hosts; skip them otherwise.
    let counting = if h.is_geometric() && h.r() % 2 == 0 {
        Some(verify_counting(&h, args.kmax.unwrap_or(args.k), &EndMode::Zigzag)?)
    } else {
        None
    };
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "family": family,
                "counting": counting,
            }))
            .expect("serializable")
        );
    } else {
        match &family {
            FamilyCertificate::Free { edge_count } => {
                println!("free of {} with {} edges: {} edges kept", kind.label(), args.k, edge_count);
            }
            FamilyCertificate::Contains { witness } => {
                println!(
                    "contains a {} with {} edges: sequence {}",
                    kind.label(),
                    witness.k,
                    witness
                        .sequence
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
            }
        }
        match &counting {
            Some(report) => {
                println!(
                    "counting ({} mode): |H| = {}, |shadow| = {}",
                    report.mode, report.edge_count, report.shadow_count
                );
                for row in &report.rows {
                    println!(
                        "  k = {}: |S_k| = {} (>= {}), |T_k| = {} (<= {}), |S_k+1| = {} — {}",
                        row.k,
                        row.s_k,
                        row.lower_bound,
                        row.t_k,
                        row.stuck_bound,
                        row.s_next,
                        if row.lower_ok && row.extend_ok && row.stuck_ok {
                            "ok"
                        } else {
                            "VIOLATED"
                        }
                    );
                }
            }
            None => println!("counting: skipped (needs a geometric host of even uniformity)"),
        }
    }
    Ok(if family.is_free() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn experiment(args: ExperimentArgs) -> Result<ExitCode, CghError> {
    let h = read_hypergraph(&args.input)?;
    let report = random_partition_experiment(&h, args.seed, args.trials)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!(
            "{} trials with seed {}: mean |G| = {:.4} (stderr {:.4}), exact E|G| = {:.4}",
            report.trials, report.seed, report.mean_g, report.stderr_g, report.target_g
        );
        for (i, (mean, se)) in report
            .mean_shadow
            .iter()
            .zip(&report.stderr_shadow)
            .enumerate()
        {
            println!(
                "  mean |shadow_{i} G| = {mean:.4} (stderr {se:.4}), bound {:.4}",
                report.bound_shadow
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
