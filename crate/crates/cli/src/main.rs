use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use symsplit::apps::graph::{
    graph_iso, graph_iso_with_plan, AdjacencyMatrix, ConjugationAction, GiResult,
};
use symsplit::splitting::{
    choose_subgroup_params, random_split, PlanKind, SizeTarget, SubgroupCursor, SubgroupSpec,
    TransversalCursor,
};
use symsplit::{verify, Budget, LogMagnitude, PermCursor, Permutation, SplitPlan, Verdict};

const EXIT_FOUND: u8 = 0;
const EXIT_PROVED_NONE: u8 = 1;
const EXIT_EVIDENCE_ONLY: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "symsplit",
    version,
    about = "Splitting sets and meet-in-the-middle search in S_n"
)]
struct Cli {
    /// Extra diagnostics on stderr (timings).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the subgroup/transversal split for S_n.
    Plan {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        /// Natural log of the desired subgroup size (default: half of ln n!).
        #[arg(long)]
        target_log: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Stream one side of the split, one permutation per line.
    Enum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Which::Transversal)]
        which: Which,
        /// Stop after this many lines.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        limit: Option<u64>,
        #[arg(long)]
        target_log: Option<f64>,
    },
    /// Decide whether two graphs are isomorphic.
    Gi {
        first: PathBuf,
        second: PathBuf,
        /// Refuse to build a lookup table larger than this.
        #[arg(long)]
        budget_bytes: Option<u64>,
        /// Store a subgroup of about this many elements (space/time tradeoff).
        #[arg(long, conflicts_with = "randomized")]
        entries: Option<u64>,
        /// Use two seeded random samples of this size instead of a full split.
        #[arg(long)]
        randomized: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Best ratio max(|A|,|B|)/sqrt(n!) for n = 1..max-n and its running mean.
    Table {
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=64))]
        max_n: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Subgroup,
    Transversal,
}

#[derive(Serialize)]
struct PlanRecord {
    n: usize,
    kind: &'static str,
    k: usize,
    ell: usize,
    size_a: String,
    size_b: String,
    ratio: f64,
}

#[derive(Serialize)]
struct GiRecord {
    verdict: &'static str,
    witness: Option<Vec<usize>>,
    verified: bool,
    plan: String,
    stored: u64,
    scanned: u64,
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    k: usize,
    ell: usize,
    ratio: f64,
    running_mean: f64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                eprintln!("\n{}", Cli::command().render_usage());
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = match cli.command {
        Command::Plan {
            n,
            target_log,
            json,
        } => {
            let plan = make_plan(n as usize, target_log)?;
            if json {
                emit_json(&mut out, &plan_record(&plan))?;
            } else {
                writeln!(out, "{plan}").map_err(io_err)?;
            }
            EXIT_FOUND
        }
        Command::Enum {
            n,
            which,
            limit,
            target_log,
        } => {
            let spec = make_spec(n as usize, target_log)?;
            cmd_enum(&mut out, &spec, which, limit)?;
            EXIT_FOUND
        }
        Command::Gi {
            first,
            second,
            budget_bytes,
            entries,
            randomized,
            seed,
            threads,
            json,
        } => {
            let m = read_graph(&first)?;
            let g = read_graph(&second)?;
            let budget = Budget {
                entries,
                memory_cap_bytes: budget_bytes,
                threads,
            };
            let started = std::time::Instant::now();
            let (result, plan_desc) = match randomized {
                Some(count) if m.n() == g.n() => {
                    let plan = random_split(m.n(), count, seed).map_err(|e| e.to_string())?;
                    let res =
                        graph_iso_with_plan(&m, &g, &plan, &budget).map_err(|e| e.to_string())?;
                    (res, plan.to_string())
                }
                _ => {
                    let desc = if m.n() == g.n() {
                        describe_budget_plan(m.n(), entries)
                    } else {
                        "vertex counts differ".to_string()
                    };
                    (graph_iso(&m, &g, &budget).map_err(|e| e.to_string())?, desc)
                }
            };
            if cli.verbose > 0 {
                eprintln!("elapsed: {:.3?}", started.elapsed());
            }
            report_gi(&mut out, &m, &g, &result, plan_desc, json)?
        }
        Command::Table { max_n, json } => {
            cmd_table(&mut out, max_n as usize, json)?;
            EXIT_FOUND
        }
    };
    out.flush().map_err(io_err)?;
    Ok(code)
}

fn io_err(e: io::Error) -> String {
    e.to_string()
}

fn make_spec(n: usize, target_log: Option<f64>) -> Result<SubgroupSpec, String> {
    let target = match target_log {
        Some(x) if !x.is_finite() || x < 0.0 => {
            return Err(format!(
                "--target-log must be a finite non-negative number, got {x}"
            ))
        }
        Some(x) => SizeTarget::Log(LogMagnitude(x)),
        None => SizeTarget::SqrtFactorial,
    };
    choose_subgroup_params(n, target).map_err(|e| e.to_string())
}

fn make_plan(n: usize, target_log: Option<f64>) -> Result<SplitPlan, String> {
    SplitPlan::subgroup_transversal(make_spec(n, target_log)?).map_err(|e| e.to_string())
}

fn describe_budget_plan(n: usize, entries: Option<u64>) -> String {
    match entries {
        Some(m) => match choose_subgroup_params(n, SizeTarget::Count(m.into())) {
            Ok(spec) => SplitPlan::subgroup_transversal(spec)
                .map(|p| p.to_string())
                .unwrap_or_default(),
            Err(_) => String::new(),
        },
        None => SplitPlan::balanced(n)
            .map(|p| p.to_string())
            .unwrap_or_default(),
    }
}

fn plan_record(plan: &SplitPlan) -> PlanRecord {
    let (k, ell) = match plan.kind() {
        PlanKind::SubgroupTransversal(spec) => (spec.k(), spec.ell()),
        PlanKind::Bidirectional { k } => (*k, 0),
        PlanKind::Randomized { .. } => (0, 0),
    };
    PlanRecord {
        n: plan.n(),
        kind: plan.kind().name(),
        k,
        ell,
        size_a: plan.size_a().to_string(),
        size_b: plan.size_b().to_string(),
        ratio: plan.ratio(),
    }
}

fn emit_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Result<(), String> {
    serde_json::to_writer(&mut *out, value).map_err(|e| e.to_string())?;
    writeln!(out).map_err(io_err)
}

fn cmd_enum<W: Write>(
    out: &mut W,
    spec: &SubgroupSpec,
    which: Which,
    limit: Option<u64>,
) -> Result<(), String> {
    let mut cursor: Box<dyn PermCursor> = match which {
        Which::Subgroup => Box::new(SubgroupCursor::new(spec)),
        Which::Transversal => Box::new(TransversalCursor::new(spec).map_err(|e| e.to_string())?),
    };
    let mut emitted = 0u64;
    while limit.is_none_or(|l| emitted < l) {
        let Some(p) = cursor.advance() else { break };
        if let Err(e) = writeln!(out, "{p}") {
            if e.kind() == io::ErrorKind::BrokenPipe {
                return Ok(());
            }
            return Err(e.to_string());
        }
        emitted += 1;
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<AdjacencyMatrix, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    AdjacencyMatrix::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn report_gi<W: Write>(
    out: &mut W,
    m: &AdjacencyMatrix,
    g: &AdjacencyMatrix,
    result: &GiResult,
    plan: String,
    json: bool,
) -> Result<u8, String> {
    let (label, code, witness, verified) = match &result.verdict {
        Verdict::Found(w) => {
            let ok = verify(&ConjugationAction::new(m.n()), m, g, w);
            if !ok {
                return Err("internal error: witness failed verification".into());
            }
            ("found", EXIT_FOUND, Some(w), ok)
        }
        Verdict::NoneProved => ("none_proved", EXIT_PROVED_NONE, None, false),
        Verdict::NoneEvidence => ("none_evidence", EXIT_EVIDENCE_ONLY, None, false),
    };
    if json {
        let rec = GiRecord {
            verdict: label,
            witness: witness.map(Permutation::one_based),
            verified,
            plan,
            stored: result.stored,
            scanned: result.scanned,
        };
        emit_json(out, &rec)?;
    } else {
        match witness {
            Some(w) => {
                writeln!(out, "{w}").map_err(io_err)?;
                writeln!(out, "VERIFIED").map_err(io_err)?;
            }
            None if code == EXIT_PROVED_NONE => {
                writeln!(out, "non-isomorphic (proved by exhaustive split)").map_err(io_err)?
            }
            None => {
                writeln!(out, "unknown (randomized search found no witness)").map_err(io_err)?
            }
        }
        writeln!(out, "stored={} scanned={}", result.stored, result.scanned).map_err(io_err)?;
    }
    Ok(code)
}

fn cmd_table<W: Write>(out: &mut W, max_n: usize, json: bool) -> Result<(), String> {
    let mut sum = 0.0;
    let mut rows = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let plan = SplitPlan::balanced(n).map_err(|e| e.to_string())?;
        let ratio = plan.ratio();
        sum += ratio;
        let rec = plan_record(&plan);
        rows.push(TableRow {
            n,
            k: rec.k,
            ell: rec.ell,
            ratio,
            running_mean: sum / n as f64,
        });
    }
    if json {
        return emit_json(out, &rows);
    }
    writeln!(
        out,
        "{:>3} {:>3} {:>3} {:>9} {:>12}",
        "n", "k", "ell", "ratio", "running_mean"
    )
    .map_err(io_err)?;
    for r in &rows {
        writeln!(
            out,
            "{:>3} {:>3} {:>3} {:>9.4} {:>12.4}",
            r.n, r.k, r.ell, r.ratio, r.running_mean
        )
        .map_err(io_err)?;
    }
    writeln!(out, "average over n=1..{max_n}: {:.4}", sum / max_n as f64).map_err(io_err)?;
    Ok(())
}
