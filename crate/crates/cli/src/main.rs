//! `eigenpoly`: exact eigenvectors of integer/rational matrices as
//! polynomial vectors in the eigenvalue.
//!
//! Exit codes: 0 on success, 2 when some factor needs generalized
//! eigenvectors (reported, not computed), 1 on any error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eigenpoly::annihilator::pseudo_profile;
use eigenpoly::bench::{run_degscale, run_dimscale, run_multiplicity, MULTIPLICITY_CONFIGS};
use eigenpoly::charpoly::characteristic_polynomial;
use eigenpoly::matrixgen::{generate, GenSpec};
use eigenpoly::solver::{solve_all, SolveOptions, StrategyChoice, DEFAULT_SEED};
use eigenpoly::unipoly::{factor_rationals, FactoredCharPoly, UniPoly};
use eigenpoly::{matvec_count, reset_matvec_count, QMatrix, Rational};

use eigenpoly_cli::formats::{
    parse_factor_file, parse_matrix, result_document, truth_document, write_factor_file,
    write_matrix,
};
use eigenpoly_cli::rows_to_csv;

#[derive(Parser)]
#[command(
    name = "eigenpoly",
    about = "Exact eigenvectors of rational matrices as polynomials in the eigenvalue",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute eigenvectors of a matrix file.
    Eigvecs(EigvecsArgs),
    /// Compute the characteristic polynomial of a matrix file.
    Charpoly(CharpolyArgs),
    /// Print the probe-estimated annihilator exponent table.
    Annprofile(AnnprofileArgs),
    /// Generate a test matrix from companion blocks.
    Gen(GenArgs),
    /// Run a benchmark suite and write CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyFlag {
    /// Reduced-basis strategy with certification fallback.
    Auto,
    /// Certify true annihilator exponents first.
    Map,
    /// Raw cofactor-image seeds, rotate on failed verification.
    PseudoQuick,
    /// Reduced-basis seeds, abort and reprobe on failed verification.
    PseudoReduced,
}

impl StrategyFlag {
    fn choice(self) -> StrategyChoice {
        match self {
            StrategyFlag::Auto => StrategyChoice::Auto,
            StrategyFlag::Map => StrategyChoice::TrueMap,
            StrategyFlag::PseudoQuick => StrategyChoice::PseudoQuick,
            StrategyFlag::PseudoReduced => StrategyChoice::PseudoReduced,
        }
    }

    fn name(self) -> &'static str {
        match self {
            StrategyFlag::Auto => "auto",
            StrategyFlag::Map => "map",
            StrategyFlag::PseudoQuick => "pseudo-quick",
            StrategyFlag::PseudoReduced => "pseudo-reduced",
        }
    }
}

#[derive(Args)]
struct EigvecsArgs {
    /// Matrix file (header line n, then n rows of n rationals).
    matrix: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: StrategyFlag,
    /// Seed for probes and tie-breaking randomness.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Optional factorization of the characteristic polynomial
    /// (lines "multiplicity : coefficients lowest-first").
    #[arg(long)]
    factor_file: Option<PathBuf>,
    /// Write the JSON document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Single-line JSON instead of pretty-printed.
    #[arg(long)]
    compact: bool,
}

#[derive(Args)]
struct CharpolyArgs {
    matrix: PathBuf,
}

#[derive(Args)]
struct AnnprofileArgs {
    matrix: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    factor_file: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Output matrix file; ground truth goes to <out>.truth.json and the
    /// factorization to <out>.factors.
    #[arg(long)]
    out: PathBuf,
    /// Monic block polynomial, coefficients lowest-first, comma separated.
    /// Repeat the flag for several blocks; repeats raise multiplicities.
    #[arg(long = "block", required = true, allow_hyphen_values = true)]
    blocks: Vec<String>,
    /// Elementary similarity operations to apply.
    #[arg(long, default_value_t = 0)]
    rounds: usize,
    #[arg(long, default_value_t = 2)]
    entry_bound: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Group sizes in blocks, comma separated; transforms stay per group.
    #[arg(long)]
    groups: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteFlag {
    /// Dimension scaling, fully mixed instances (sizes = dimensions).
    Dimscale,
    /// Annihilator-degree scaling at fixed dimension (sizes = degrees).
    Degscale,
    /// Quick vs reduced strategies on repeated factors
    /// (sizes = configuration indices).
    Multiplicity,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    suite: SuiteFlag,
    /// Per-suite size list: dimensions (dimscale), annihilator degrees
    /// (degscale) or configuration indices (multiplicity).
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Fixed dimension for the degscale suite.
    #[arg(long, default_value_t = 128)]
    dim: usize,
    /// CSV output path.
    #[arg(long)]
    csv: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Eigvecs(args) => cmd_eigvecs(args),
        Command::Charpoly(args) => cmd_charpoly(args),
        Command::Annprofile(args) => cmd_annprofile(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_matrix(path: &PathBuf) -> Result<QMatrix, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_factors(path: &PathBuf) -> Result<FactoredCharPoly, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_factor_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_eigvecs(args: EigvecsArgs) -> Result<ExitCode, String> {
    let a = read_matrix(&args.matrix)?;
    let factorization = args
        .factor_file
        .as_ref()
        .map(read_factors)
        .transpose()?;
    let options = SolveOptions {
        strategy: args.strategy.choice(),
        seed: args.seed,
        factorization,
        ..SolveOptions::default()
    };
    reset_matvec_count();
    let started = Instant::now();
    let report = solve_all(&a, &options).map_err(|e| e.to_string())?;
    let wall = started.elapsed().as_secs_f64();
    let count = matvec_count();
    let doc = result_document(&a, &report, args.strategy.name(), wall, count)
        .map_err(|e| e.to_string())?;
    if doc
        .results
        .iter()
        .any(|r| r.eigenvectors.iter().any(|e| !e.verified))
    {
        return Err("internal: emitted eigenvector failed verification".into());
    }
    let json = if args.compact {
        serde_json::to_string(&doc)
    } else {
        serde_json::to_string_pretty(&doc)
    }
    .map_err(|e| e.to_string())?;
    match &args.output {
        Some(path) => fs::write(path, json + "\n").map_err(|e| e.to_string())?,
        None => println!("{json}"),
    }
    if report.all_supported() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(2))
    }
}

fn cmd_charpoly(args: CharpolyArgs) -> Result<ExitCode, String> {
    let a = read_matrix(&args.matrix)?;
    let started = Instant::now();
    let chi = characteristic_polynomial(&a);
    let wall = started.elapsed().as_secs_f64();
    let coeffs: Vec<String> = chi.coeffs().iter().map(Rational::to_string).collect();
    let doc = serde_json::json!({
        "dimension": a.dim(),
        "coefficients": coeffs,
        "wall_time_s": format!("{wall:.6}"),
    });
    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    Ok(ExitCode::SUCCESS)
}

fn cmd_annprofile(args: AnnprofileArgs) -> Result<ExitCode, String> {
    let a = read_matrix(&args.matrix)?;
    let fac = match &args.factor_file {
        Some(path) => read_factors(path)?,
        None => factor_rationals(&characteristic_polynomial(&a)),
    };
    let profile = pseudo_profile(&a, &fac, args.seed);
    println!("probe seed: {}", args.seed);
    for (p, (f, m)) in fac.factors().iter().enumerate() {
        println!("factor {p}: {f} (multiplicity {m})");
    }
    let header: Vec<String> = (0..fac.len()).map(|p| format!("f{p}")).collect();
    println!("column | {}", header.join(" "));
    for j in 0..a.dim() {
        let row: Vec<String> = (0..fac.len())
            .map(|p| format!("{:>2}", profile.exponent(p, j)))
            .collect();
        println!("{:>6} | {}", j, row.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_block(text: &str) -> Result<UniPoly, String> {
    let coeffs: Vec<Rational> = text
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<Rational>()
                .map_err(|e| format!("bad coefficient '{tok}': {e}"))
        })
        .collect::<Result<_, _>>()?;
    Ok(UniPoly::from_coeffs(coeffs))
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad number '{tok}': {e}"))
        })
        .collect()
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode, String> {
    let block_polys: Vec<UniPoly> = args
        .blocks
        .iter()
        .map(|b| parse_block(b))
        .collect::<Result<_, _>>()?;
    let group_sizes = args
        .groups
        .as_deref()
        .map(parse_usize_list)
        .transpose()?;
    let spec = GenSpec {
        block_polys,
        transform_rounds: args.rounds,
        entry_bound: args.entry_bound,
        seed: args.seed,
        group_sizes,
    };
    let (a, truth) = generate(&spec).map_err(|e| e.to_string())?;
    fs::write(&args.out, write_matrix(&a)).map_err(|e| e.to_string())?;
    let truth_path = args.out.with_extension(
        format!(
            "{}truth.json",
            args.out
                .extension()
                .map(|e| format!("{}.", e.to_string_lossy()))
                .unwrap_or_default()
        ),
    );
    let json = serde_json::to_string_pretty(&truth_document(&truth)).unwrap();
    fs::write(&truth_path, json + "\n").map_err(|e| e.to_string())?;
    let factors_path = args.out.with_extension(
        format!(
            "{}factors",
            args.out
                .extension()
                .map(|e| format!("{}.", e.to_string_lossy()))
                .unwrap_or_default()
        ),
    );
    fs::write(&factors_path, write_factor_file(&truth.factorization))
        .map_err(|e| e.to_string())?;
    eprintln!(
        "wrote {} ({}x{}), {}, {}",
        args.out.display(),
        a.dim(),
        a.dim(),
        truth_path.display(),
        factors_path.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode, String> {
    let sizes = args
        .sizes
        .as_deref()
        .map(parse_usize_list)
        .transpose()?;
    let rows = match args.suite {
        SuiteFlag::Dimscale => {
            let sizes = sizes.unwrap_or_else(|| vec![32, 64, 128]);
            run_dimscale(&sizes, args.seed)
        }
        SuiteFlag::Degscale => {
            let sizes = sizes.unwrap_or_else(|| vec![args.dim / 4, args.dim / 2, args.dim]);
            run_degscale(args.dim, &sizes, args.seed)
        }
        SuiteFlag::Multiplicity => {
            let sizes =
                sizes.unwrap_or_else(|| (0..MULTIPLICITY_CONFIGS.len()).collect());
            run_multiplicity(&sizes, args.seed)
        }
    }
    .map_err(|e| e.to_string())?;
    fs::write(&args.csv, rows_to_csv(&rows)).map_err(|e| e.to_string())?;
    eprintln!("wrote {} ({} rows)", args.csv.display(), rows.len());
    Ok(ExitCode::SUCCESS)
}
