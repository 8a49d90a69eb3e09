use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use gcoh::cohomology::cohomology_groups;
use gcoh::forest::{build_forest, to_dot};
use gcoh::graph::{check_prime, WeightedGraph};
use gcoh::io::parse_graph;
use gcoh::tropical::{parse_assignment, z_complete_for, z_complete_symbolic, z_gamma, EnumerationCap};
use gcoh::verify::{self, VerificationConfig};
use gcoh::weights::{oriented_core, oriented_torsion_exponent, weighted_spanning_tree};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {0}: {1}")]
    Read(PathBuf, std::io::Error),
    #[error("cannot write {0}: {1}")]
    Write(PathBuf, std::io::Error),
    #[error(transparent)]
    Core(#[from] gcoh::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read(..) => 2,
            CliError::Write(..) => 1,
            CliError::Core(gcoh::Error::CapExceeded(_)) => 3,
            CliError::Core(gcoh::Error::Invariant(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Verification(_) => 4,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "gcoh", version, about = "Cohomology of vertex-weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H^0 and H^1 with their elementary divisors.
    Cohomology { graph: PathBuf },
    /// Fundamental forest at a prime.
    Forest {
        graph: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Also write a Graphviz file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Torsion of H^1, optionally restricted to one prime.
    Torsion {
        graph: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Tropical formula for the odd torsion exponent.
    Tropical {
        graph: PathBuf,
        /// JSON object of vertex valuations to evaluate at.
        #[arg(long)]
        eval: Option<PathBuf>,
        /// Use the closed formula for complete graphs.
        #[arg(long)]
        complete_formula: bool,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
    /// Oriented core at a prime.
    Core {
        graph: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Weighted spanning tree and the torsion exponent it predicts.
    SpanningTree {
        graph: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Randomized cross-checks against the Smith normal form.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_valuation: u32,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[arg(long)]
        parallelism: Option<usize>,
        /// Write the full JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Write(path.to_path_buf(), e))
}

fn load(path: &Path) -> Result<WeightedGraph> {
    Ok(parse_graph(&read(path)?)?)
}

/// Prints a line, ignoring a closed stdout (e.g. when piped into `head`).
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn print_json<T: Serialize>(v: &T) {
    emit(&serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cohomology { graph } => {
            let g = load(&graph)?;
            let (h0, h1) = cohomology_groups(&g, &g.full());
            print_json(&json!({ "h0": h0, "h1": h1 }));
        }
        Command::Forest { graph, prime, dot } => {
            let g = load(&graph)?;
            let f = build_forest(&g, prime)?;
            if let Some(out) = dot {
                write(&out, &to_dot(&f))?;
            }
            print_json(&f.report());
        }
        Command::Torsion { graph, prime } => {
            let g = load(&graph)?;
            let h1 = cohomology_groups(&g, &g.full()).1;
            let mut report = json!({
                "order": h1.torsion_order().to_string(),
                "divisors": h1.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            });
            if let Some(p) = prime {
                check_prime(p)?;
                report["prime"] = json!(p);
                report["exponents"] = json!(build_forest(&g, p)?.torsion_structure());
            }
            print_json(&report);
        }
        Command::Tropical { graph, eval, complete_formula, max_vertices } => {
            let g = load(&graph)?;
            let expr = if complete_formula {
                emit(&z_complete_symbolic(g.vertex_count())?);
                z_complete_for(&g)?
            } else {
                let cap = EnumerationCap { max_vertices, ..EnumerationCap::from_env()? };
                z_gamma(&g, cap)?
            };
            match eval {
                None => emit(&expr.to_string()),
                Some(path) => {
                    let at = parse_assignment(&read(&path)?)?;
                    if let Some(id) = g.ids().iter().find(|id| !at.contains_key(*id)) {
                        return Err(gcoh::Error::UnboundVariable(id.clone()).into());
                    }
                    emit(&expr.eval(&at)?.to_string());
                }
            }
        }
        Command::Core { graph, prime } => {
            let g = load(&graph)?;
            print_json(&oriented_core(&g, prime)?.report(&g));
        }
        Command::SpanningTree { graph, prime } => {
            let g = load(&graph)?;
            let t = weighted_spanning_tree(&g, &g.full(), prime)?;
            let exponent = oriented_torsion_exponent(&g, &g.full(), prime)?;
            print_json(&json!({ "edges": t.edge_labels(&g), "exponent": exponent }));
        }
        Command::Verify { seed, instances, max_vertices, max_valuation, primes, parallelism, out } => {
            let cfg = VerificationConfig {
                instance_count: instances,
                max_vertices,
                max_valuation,
                primes,
                seed,
                parallelism: parallelism.unwrap_or(VerificationConfig::default().parallelism),
            };
            let report = verify::run(&cfg)?;
            for p in &report.properties {
                let status = if p.passed() { "PASS" } else { "FAIL" };
                emit(&format!(
                    "{status} {:<26} checked {:>4}  skipped {:>4}  failures {}",
                    p.name, p.checked, p.skipped, p.failures
                ));
                if let Some(cx) = &p.counterexample {
                    emit(&format!("  instance {} (p = {:?}): {}", cx.instance, cx.prime, cx.detail));
                    emit(&format!("  {}", serde_json::to_string(&cx.graph).expect("graphs serialize")));
                }
            }
            if let Some(out) = out {
                write(&out, &serde_json::to_string_pretty(&report).expect("reports serialize"))?;
            }
            if !report.passed() {
                let failed: Vec<&str> =
                    report.properties.iter().filter(|p| !p.passed()).map(|p| p.name.as_str()).collect();
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
