use std::io::{ErrorKind, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use goldie::goldie::{Goldie, GoldieReport};
use goldie::kl::CacheStatus;
use goldie::onedim::{connected_tableau_of, format_complex, stup_solve, StupInput, StupSolution};
use goldie::polynomials::MultiPoly;
use goldie::rs::{column_superstandard, inverse_rs, is_minimal_in_cell, minimal_cell_rep};
use goldie::symgroup::Permutation;
use goldie::tableaux::{Partition, Pyramid, Tableau};
use goldie::verify::{self, Suite, VerifyOptions};
use goldie::weights::Weight;
use goldie::Error;
use serde::Serialize;

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_INTERNAL: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_NUMERIC: u8 = 5;

/// Goldie ranks, Kazhdan-Lusztig data and dimension polynomials for gl_N.
///
/// Arguments that take JSON also accept `@path` to read a file and `-` for stdin.
#[derive(Parser)]
#[command(name = "goldie", version)]
struct Cli {
    /// Largest N for which Kazhdan-Lusztig tables are built.
    #[arg(long, global = true, default_value_t = 7)]
    n_guard: usize,
    /// Reject non-minimal cell representatives instead of substituting them.
    #[arg(long, global = true)]
    strict: bool,
    /// Residual tolerance for the one-dimensional module solver
    /// [default: 1e-9 for onedim, 1e-8 for verify].
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Directory for cached Kazhdan-Lusztig tables [default: ~/.cache/goldie].
    #[arg(long, global = true, env = "GOLDIE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Goldie rank of the primitive ideal with the given weight (CSV like `3,1/2` or a JSON array).
    Rank { weight: String },
    /// Goldie rank polynomial of a permutation (JSON one-line array) or of the
    /// left cell with a given standard recording tableau (tableau JSON).
    Poly { input: String },
    /// Dump the Kazhdan-Lusztig table of S_N, or the polynomial P_{x,y}.
    Kl {
        n: usize,
        /// JSON one-line permutation.
        x: Option<String>,
        y: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        n: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Random instances per sampled check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Solve for the one-dimensional module data `a_{i,j}` from elementary symmetric values.
    Onedim {
        /// `{"row_lengths": [...], "values": [[[re, im], ...], ...]}`
        input: String,
        /// Shift matrix used to emit the column-connected tableau [default: left-justified].
        #[arg(long)]
        shift: Option<String>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    /// Already reported on stdout.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("invalid JSON: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Size(_) | Error::Json(_) | Error::Io(_) | Error::Cache(_) => EXIT_USAGE,
        Error::Domain(_) | Error::Precondition(_) | Error::Guard(_) => EXIT_DOMAIN,
        Error::InternalConsistency(_) => EXIT_INTERNAL,
        Error::Numeric { .. } => EXIT_NUMERIC,
    }
}

fn read_arg(arg: &str) -> std::io::Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
    } else {
        Ok(arg.to_string())
    }
}

fn parse_weight(arg: &str) -> Result<Weight, Failure> {
    let text = read_arg(arg)?;
    let text = text.trim();
    if text.starts_with('[') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(Weight::parse_csv(text)?)
    }
}

fn parse_perm(arg: &str) -> Result<Permutation, Failure> {
    Ok(serde_json::from_str(read_arg(arg)?.trim())?)
}

fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("goldie"))
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn report_cache(g: &Goldie) {
    for event in g.cache_events() {
        match event {
            CacheStatus::Uncached => {}
            CacheStatus::Loaded(p) => eprintln!("loaded {}", p.display()),
            CacheStatus::Built(p) => eprintln!("wrote {}", p.display()),
            CacheStatus::Rebuilt { path, reason } => {
                eprintln!("warning: rebuilt {} ({reason})", path.display())
            }
        }
    }
}

fn print_rank(r: &GoldieReport) {
    println!("weight: {}", r.weight);
    for f in &r.factors {
        let positions: Vec<String> = f.positions.iter().map(|p| p.to_string()).collect();
        println!(
            "factor at positions {} (coset {}): shape {:?}, cell {}, p = {}, rank {}",
            positions.join(","),
            goldie::rational::format(&f.coset_rep),
            f.shape.parts(),
            f.cell_rep,
            f.polynomial,
            f.rank
        );
    }
    println!("rank: {}", r.rank);
    println!("completely prime: {}", if r.completely_prime { "yes" } else { "no" });
    if let Some(d) = &r.induced {
        println!("induced from Levi blocks {:?} with dim F = {}", d.levi_blocks, d.dim_f);
    }
}

#[derive(Serialize)]
struct PolyOutput {
    input: Permutation,
    cell_rep: Permutation,
    polynomial: MultiPoly,
}

fn poly(g: &Goldie, arg: &str) -> Result<PolyOutput, Failure> {
    let text = read_arg(arg)?;
    let text = text.trim();
    let w = if text.starts_with('{') {
        let q: Tableau = serde_json::from_str(text)?;
        if !q.pyramid().is_left_justified() || !q.is_standard() {
            return Err(Error::Domain("expected a standard left-justified tableau".into()).into());
        }
        inverse_rs(&column_superstandard(&q.pyramid().partition()), &q)?
    } else {
        serde_json::from_str(text)?
    };
    let cell_rep = minimal_cell_rep(&w);
    if !is_minimal_in_cell(&w) && !g.is_strict() {
        eprintln!("note: {w} is not minimal in its left cell; using {cell_rep}");
    }
    let polynomial = g.goldie_poly_bform(&w)?;
    Ok(PolyOutput { input: w, cell_rep, polynomial })
}

#[derive(Serialize)]
struct KlRecord<'a> {
    x: &'a Permutation,
    y: &'a Permutation,
    p: &'a goldie::kl::UniPoly,
}

fn kl(g: &Goldie, n: usize, x: Option<&str>, y: Option<&str>, json: bool) -> Result<(), Failure> {
    let table = g.table(n)?;
    report_cache(g);
    match (x, y) {
        (Some(x), Some(y)) => {
            let (x, y) = (parse_perm(x)?, parse_perm(y)?);
            if x.n() != n || y.n() != n {
                return Err(Error::Size(format!("permutations must lie in S_{n}")).into());
            }
            let p = table.poly(&x, &y);
            if json {
                print_json(&KlRecord { x: &x, y: &y, p })?;
            } else {
                println!("{p}");
            }
        }
        (None, None) => {
            let mut records = Vec::new();
            for y in table.perms() {
                for x in table.perms() {
                    let p = table.poly(x, y);
                    if !p.is_zero() {
                        records.push(KlRecord { x, y, p });
                    }
                }
            }
            if json {
                print_json(&records)?;
            } else {
                let mut out = std::io::stdout().lock();
                for r in records {
                    match writeln!(out, "{} {} {}", r.x, r.y, r.p) {
                        Err(e) if e.kind() == ErrorKind::BrokenPipe => break,
                        other => other?,
                    }
                }
            }
        }
        _ => return Err(Failure::Usage("give both x and y, or neither".into())),
    }
    Ok(())
}

#[derive(Serialize)]
struct OnedimOutput {
    solution: StupSolution,
    tableau: Option<Tableau>,
    note: Option<String>,
}

fn onedim(arg: &str, shift: Option<&str>, tol: f64, json: bool) -> Result<(), Failure> {
    let input: StupInput = serde_json::from_str(read_arg(arg)?.trim())?;
    let solution = stup_solve(&input, tol)?;
    let shift = match shift {
        Some(s) => serde_json::from_str(read_arg(s)?.trim())?,
        None => {
            let mut parts = input.row_lengths().to_vec();
            parts.reverse();
            Pyramid::left_justified(&Partition::new(parts)?).shift_matrix().to_vec()
        }
    };
    let (tableau, note) = match connected_tableau_of(&solution, shift, tol) {
        Ok(t) => (Some(t), None),
        Err(e @ Error::Numeric { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let out = OnedimOutput { solution, tableau, note };
    if json {
        return print_json(&out);
    }
    for (i, row) in out.solution.entries.iter().enumerate() {
        let vals: Vec<String> = row.iter().map(format_complex).collect();
        println!("row {}: {}", i + 1, vals.join(", "));
    }
    println!("max residual: {:e}", out.solution.max_residual);
    match (&out.tableau, &out.note) {
        (Some(t), _) => println!("tableau: {}", serde_json::to_string(t)?),
        (None, Some(n)) => println!("no tableau: {n}"),
        (None, None) => {}
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut g = Goldie::new().strict(cli.strict).n_guard(cli.n_guard);
    if let Some(dir) = cli.cache_dir.or_else(default_cache_dir) {
        g = g.with_cache_dir(dir);
    }
    match cli.command {
        Command::Rank { weight } => {
            let report = g.goldie_rank(&parse_weight(&weight)?)?;
            if cli.json {
                print_json(&report)?;
            } else {
                print_rank(&report);
            }
        }
        Command::Poly { input } => {
            let out = poly(&g, &input)?;
            if cli.json {
                print_json(&out)?;
            } else {
                println!("{}", out.polynomial);
            }
        }
        Command::Kl { n, x, y } => kl(&g, n, x.as_deref(), y.as_deref(), cli.json)?,
        Command::Verify { suite, n, seed, samples } => {
            if n > cli.n_guard {
                return Err(Error::Guard(format!("N = {n} exceeds the guard {}", cli.n_guard)).into());
            }
            let opts = VerifyOptions { tol: cli.tol.unwrap_or(VerifyOptions::default().tol), seed, samples };
            let report = verify::run(&g, suite, n, &opts)?;
            if cli.json || !report.passed() {
                print_json(&report)?;
            } else {
                println!("{suite} N={n}: {} checks passed", report.checked);
            }
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
        Command::Onedim { input, shift } => onedim(&input, shift.as_deref(), cli.tol.unwrap_or(goldie::onedim::DEFAULT_TOL), cli.json)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
    }
}
