use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wedge_crystal::fock::{
    lattice_and_crystal_match, representation, verify_deltaword_module, verify_highest, verify_polarization,
    verify_relations, FockReport,
};
use wedge_crystal::theorems::{decompose, run_suite, SuiteReport};
use wedge_crystal::{AffineType, Error, KacLabel};
use wedge_crystal_cli::{decomposition_table, graph_document, to_dot, to_json};

#[derive(Parser)]
#[command(name = "wedge-crystal", version, about = "Crystals of level zero fundamental representations on binary matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TypeArgs {
    /// Affine type: B1, C1, D1, A2even, A2evenDagger, A2odd, D2, or a diamond pair such as "2,1".
    #[arg(long = "type")]
    ty: String,
    /// Rank n (at least 2).
    #[arg(long)]
    n: usize,
}

impl TypeArgs {
    fn resolve(&self) -> wedge_crystal::Result<AffineType> {
        AffineType::from_label(&self.ty, self.n)
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum TableFormat {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Export the component of v_{k,l} (or v_k) as DOT or JSON.
    Graph {
        #[command(flatten)]
        ty: TypeArgs,
        /// Column sum k of the starting matrix, or the row count for spin types.
        #[arg(long)]
        k: usize,
        /// Second index of v_{k,l}; required unless k admits a single l.
        #[arg(long)]
        l: Option<usize>,
        /// Divide C(v_{k,n-k}) by the involution varsigma (A2odd, 0 < k < n).
        #[arg(long)]
        quotient: bool,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Connected components with their classical branching.
    Decompose {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: TableFormat,
    },
    /// Run a verification suite.
    Verify {
        /// prop41, thm42, lem44, prop46, thm58, cor57, spin, deltaword, sigma or all.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        ty: TypeArgs,
        /// Restrict to a single k; every admissible k when omitted.
        #[arg(long)]
        k: Option<usize>,
        /// Print the JSON report even when every check passes.
        #[arg(long)]
        json: bool,
    },
    /// Checks on the q-Clifford module.
    Fock {
        #[command(subcommand)]
        command: FockCommand,
    },
}

#[derive(Subcommand)]
enum FockCommand {
    /// Relations, polarization, crystal match and highest vectors; all when no flag is given.
    Verify {
        #[command(flatten)]
        ty: TypeArgs,
        /// Quantum group relations, including Serre relations.
        #[arg(long)]
        relations: bool,
        /// Symmetry of the bilinear form under the generators.
        #[arg(long)]
        polarization: bool,
        /// Modified root operators at qs = 0 against the combinatorial crystal.
        #[arg(long)]
        crystal_match: bool,
        /// Classically highest vectors against the crystal.
        #[arg(long)]
        highest: bool,
        /// Delta word on extremal vectors (A2odd only).
        #[arg(long)]
        deltaword: bool,
        /// Emit the reports as JSON.
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Checks(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownLabel(_)
            | Error::RankTooSmall(_)
            | Error::IndexOutOfRange { .. }
            | Error::VariantMismatch(_)
            | Error::InvalidParameters(_)
            | Error::WrongType(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn summary(r: &SuiteReport) -> String {
    let k = r.k.map(|k| format!(" k={k}")).unwrap_or_default();
    let status = if r.passed { "PASS" } else { "FAIL" };
    format!("{status} {} {} n={}{k}: {} checks\n", r.suite, r.affine_type, r.n, r.checks)
}

fn fock_text(r: &FockReport) -> String {
    let mut out = format!(
        "{} {} {} n={}: {}/{} items pass\n",
        if r.passed { "PASS" } else { "FAIL" },
        r.check,
        r.affine_type,
        r.n,
        r.items.iter().filter(|c| c.passed).count(),
        r.items.len()
    );
    for c in r.failures() {
        out.push_str(&format!("  failed: {}", c.name));
        if let Some(d) = &c.detail {
            out.push_str(&format!(" ({d})"));
        }
        out.push('\n');
    }
    if !r.negative_signs.is_empty() {
        out.push_str(&format!("  {} entries equal -1 at qs=0\n", r.negative_signs.len()));
    }
    out
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Graph { ty, k, l, quotient, format } => {
            let t = ty.resolve()?;
            let doc = graph_document(&t, k, l, quotient)?;
            Ok(match format {
                GraphFormat::Dot => to_dot(&doc),
                GraphFormat::Json => to_json(&doc),
            })
        }
        Command::Decompose { ty, format } => {
            let d = decompose(&ty.resolve()?)?;
            Ok(match format {
                TableFormat::Table => decomposition_table(&d),
                TableFormat::Json => json(&d),
            })
        }
        Command::Verify { suite, ty, k, json: as_json } => {
            let t = ty.resolve()?;
            let report = run_suite(&suite, &t, k)?;
            if !report.passed {
                return Err(Failure::Checks(json(&report)));
            }
            Ok(if as_json { json(&report) } else { summary(&report) })
        }
        Command::Fock { command: FockCommand::Verify { ty, relations, polarization, crystal_match, highest, deltaword, json: as_json } } => {
            let t = ty.resolve()?;
            let none = !(relations || polarization || crystal_match || highest || deltaword);
            let rep = representation(&t);
            let mut reports = Vec::new();
            if relations || none {
                reports.push(verify_relations(&rep));
            }
            if polarization || none {
                reports.push(verify_polarization(&rep));
            }
            if crystal_match || none {
                reports.push(lattice_and_crystal_match(&rep));
            }
            if highest || none {
                reports.push(verify_highest(&rep));
            }
            if deltaword || (none && t.label == KacLabel::A2Odd) {
                for k in 1..t.n {
                    reports.push(verify_deltaword_module(&rep, k)?);
                }
            }
            let passed = reports.iter().all(|r| r.passed);
            let text = if as_json || !passed { json(&reports) } else { reports.iter().map(fock_text).collect() };
            if passed {
                Ok(text)
            } else {
                let human: String = reports.iter().map(fock_text).collect();
                eprint!("{human}");
                Err(Failure::Checks(text))
            }
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("WEDGE_CRYSTAL_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("WEDGE_CRYSTAL_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| run(cli));
    let mut stdout = std::io::stdout().lock();
    match outcome {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(dump)) => {
            let _ = stdout.write_all(dump.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
