//! Command-line front end: load graphs and ideals from JSON, run
//! analyses, emit reports and DOT.
//!
//! Exit codes: 0 success, 1 input error, 2 criterion absent, 3
//! verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use lpa::classify;
use lpa::factor;
use lpa::field::FieldSpec;
use lpa::graph::Graph;
use lpa::ideal::IdealNF;
use lpa::jsonio;
use lpa::oracle;
use lpa::{EngineOpts, Error};

#[derive(Parser)]
#[command(name = "lpa", about = "Ideal arithmetic for Leavitt path algebras of finite graphs")]
struct Cli {
    /// Coefficient field: Q or Fp:<prime> (must match ideal files)
    #[arg(long, global = true)]
    field: Option<String>,
    /// Degree bound for polynomial factorization over Q
    #[arg(long, global = true, default_value_t = lpa::DEFAULT_QDEG_BOUND)]
    qdeg: usize,
    /// Cap on simple-cycle enumeration
    #[arg(long = "max-cycles", global = true, default_value_t = lpa::DEFAULT_CYCLE_CAP)]
    max_cycles: usize,
    /// Seed for randomized subroutines (fixed default for reproducibility)
    #[arg(long, global = true, default_value_t = lpa::DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural report on a graph and its global ideal-theory flags
    Analyze { graph: PathBuf },
    /// Classify or factor a single ideal
    Ideal {
        graph: PathBuf,
        ideal: PathBuf,
        #[arg(value_enum)]
        query: IdealQuery,
    },
    /// Binary ideal operations; prints the normal form (or a boolean)
    Binop {
        graph: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(value_enum)]
        op: BinOp,
    },
    /// Differential test against the matrix or Laurent model
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Graphviz DOT output for a graph, or for a quotient by an ideal's pair
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealQuery {
    Classify,
    Radical,
    FactorPrime,
    FactorSemiprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum BinOp {
    Product,
    Intersect,
    Sum,
    Contains,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::VerificationFailure(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: &Cli) -> lpa::Result<ExitCode> {
    let opts = EngineOpts {
        qdeg_bound: cli.qdeg,
        cycle_cap: cli.max_cycles,
        seed: cli.seed,
    };
    let field = match &cli.field {
        Some(s) => Some(jsonio::parse_field_spec(s)?),
        None => None,
    };
    match &cli.cmd {
        Cmd::Analyze { graph } => {
            let g = load_graph(graph)?;
            analyze(&g, &opts)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Ideal { graph, ideal, query } => {
            let g = load_graph(graph)?;
            let i = load_ideal(ideal, &g, field)?;
            ideal_query(&i, *query, &opts)
        }
        Cmd::Binop { graph, a, b, op } => {
            let g = load_graph(graph)?;
            let a = load_ideal(a, &g, field)?;
            let b = load_ideal(b, &g, field)?;
            match op {
                BinOp::Product => print!("{}", jsonio::emit_ideal(&a.product(&b)?)),
                BinOp::Intersect => print!("{}", jsonio::emit_ideal(&a.intersect(&b)?)),
                BinOp::Sum => print!("{}", jsonio::emit_ideal(&a.sum(&b)?)),
                BinOp::Contains => println!("{}", a.contains(&b)?),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { graph, trials } => {
            let g = load_graph(graph)?;
            let field = field.unwrap_or(FieldSpec::Q);
            let report = oracle::cross_check(&g, field, *trials, cli.seed)?;
            println!(
                "{}",
                serde_json::json!({
                    "model": report.model,
                    "trials": report.trials,
                    "mismatches": report.mismatches,
                })
            );
            if report.ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
        Cmd::ExportDot { graph, ideal } => {
            let g = load_graph(graph)?;
            match ideal {
                None => print!("{}", g.to_dot()),
                Some(path) => {
                    let i = load_ideal(path, &g, field)?;
                    if i.is_whole() {
                        return Err(Error::ImproperIdeal);
                    }
                    print!("{}", g.quotient_graph(i.pair())?.to_dot());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_graph(path: &Path) -> lpa::Result<Arc<Graph>> {
    Ok(Arc::new(jsonio::parse_graph(&std::fs::read_to_string(path)?)?))
}

fn load_ideal(path: &Path, g: &Arc<Graph>, field: Option<FieldSpec>) -> lpa::Result<IdealNF> {
    jsonio::parse_ideal(&std::fs::read_to_string(path)?, g, field)
}

fn names(g: &Graph, pred: impl Fn(usize) -> bool) -> Vec<&str> {
    (0..g.n()).filter(|&v| pred(v)).map(|v| g.vertex_name(v)).collect()
}

fn analyze(g: &Arc<Graph>, opts: &EngineOpts) -> lpa::Result<()> {
    println!("vertices: {}", g.vertex_names().collect::<Vec<_>>().join(", "));
    println!("sinks: {}", names(g, |v| g.is_sink(v)).join(", "));
    println!("regular: {}", names(g, |v| g.is_regular(v)).join(", "));
    println!(
        "infinite emitters: {}",
        names(g, |v| g.is_infinite_emitter(v)).join(", ")
    );
    let (k, bad) = g.condition_k(opts.cycle_cap)?;
    println!("condition (K): {k}");
    if let Some(c) = bad {
        println!("  cycle without (K): {c}");
    }
    println!("condition (L): {}", g.condition_l());
    let tails: Vec<String> = g
        .maximal_tails()
        .iter()
        .map(|t| format!("{{{}}}", g.names_of(t).join(",")))
        .collect();
    println!("maximal tails: {}", tails.join(" "));
    println!(
        "hereditary saturated sets: {}",
        g.hereditary_saturated_sets().len()
    );
    let (chain, _) = g.admissible_pairs_chain();
    println!("admissible pairs form a chain: {chain}");
    let flags = classify::global_flags(g, opts)?;
    println!("every ideal prime: {}", flags.every_prime);
    println!("every ideal semiprime: {}", flags.every_semiprime);
    println!(
        "every ideal a product of primes: {}",
        flags.every_product_of_primes
    );
    println!(
        "every ideal a product of semiprimes: {}",
        flags.every_product_of_semiprimes
    );
    Ok(())
}

fn ideal_query(i: &IdealNF, query: IdealQuery, opts: &EngineOpts) -> lpa::Result<ExitCode> {
    match query {
        IdealQuery::Classify => {
            let prime = classify::is_prime(i, opts)?;
            println!("prime: {}", prime.prime);
            println!("semiprime: {}", classify::is_semiprime(i)?);
            let primary = classify::primary_report(i, opts)?;
            match &primary.witness {
                Some((p, n)) => println!("prime-power: true (P = {p}, n = {n})"),
                None => println!("prime-power: {}", primary.flag),
            }
            Ok(ExitCode::SUCCESS)
        }
        IdealQuery::Radical => {
            print!("{}", jsonio::emit_ideal(&i.radical()?));
            Ok(ExitCode::SUCCESS)
        }
        IdealQuery::FactorPrime => match factor::prime_factorization(i, opts)? {
            Some(cert) => {
                print!("{}", jsonio::emit_cert(&cert));
                Ok(ExitCode::SUCCESS)
            }
            None => {
                eprintln!("absent: the ideal does not satisfy the product-of-primes criterion");
                Ok(ExitCode::from(2))
            }
        },
        IdealQuery::FactorSemiprime => match factor::semiprime_factorization(i, opts)? {
            Some(cert) => {
                print!("{}", jsonio::emit_cert(&cert));
                Ok(ExitCode::SUCCESS)
            }
            None => {
                eprintln!("absent: no semiprime factorization");
                Ok(ExitCode::from(2))
            }
        },
    }
}
