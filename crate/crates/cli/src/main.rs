//! `metacommute`: enumerate norm-p ideals of a local Eichler order, compute
//! metacommutation permutations, verify the structural properties, and
//! export tree figures.
//!
//! Exit codes: 0 on success, 1 when verification finds a counterexample,
//! 2 on usage or validation errors.

use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use metacommute_core::{
    check_diagrams, export_dot, run_all, sigma_perm, EichlerOrder, IdealLabel, Mat2, VerifyConfig,
};

/// Writes formatted text to stdout, exiting quietly when the consumer has
/// closed the pipe (for example `metacommute enumerate | head`).
fn emit(text: std::fmt::Arguments) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_fmt(text) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!("{}\n", format_args!($($arg)*))) };
}

#[derive(Parser)]
#[command(
    name = "metacommute",
    version,
    about = "Metacommutation of norm-p ideals in local Eichler orders",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the norm-p left ideals of the order with their generators
    Enumerate {
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute the full metacommutation permutation of a unit
    Permute {
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print only the cycle type and the two side cycle lengths
    Cycles {
        #[command(flatten)]
        order: OrderArgs,
        #[command(flatten)]
        omega: OmegaArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every property suite against one order
    Verify {
        #[command(flatten)]
        order: OrderArgs,
        /// Random units sampled per suite
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Additionally sweep every unit residue mod p^K for this exponent
        #[arg(long, value_name = "K")]
        exhaustive_mod: Option<u32>,
    },
    /// Export a neighborhood of the order's tree segment as a DOT graph
    Tree {
        #[command(flatten)]
        order: OrderArgs,
        /// Distance around the order segment to include
        #[arg(long, default_value_t = 1)]
        radius: u32,
        /// Which census segments to mark
        #[arg(long, value_enum, default_value_t = Highlight::All)]
        highlight: Highlight,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Sweep a parameter grid and emit one TSV row per sampled unit
    Scan {
        /// Comma-separated primes, e.g. 2,3,5
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<u64>,
        /// Comma-separated level exponents, e.g. 1,2
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u32>,
        /// Units sampled per (p, n) pair
        #[arg(long, default_value_t = 5)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        precision: Option<u32>,
    },
}

#[derive(Args)]
struct OrderArgs {
    /// Residue characteristic (a prime)
    #[arg(long)]
    p: u64,
    /// Level exponent n of the order, at least 1
    #[arg(long)]
    n: u32,
    /// Working precision K: scalars carry K base-p digits (default n + 12)
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Args)]
struct OmegaArg {
    /// Unit of the order as four integers a,b,c,d for [[a, b], [c, d]]
    #[arg(long, value_parser = parse_omega, allow_hyphen_values = true)]
    omega: OmegaEntries,
}

#[derive(Clone, Copy)]
struct OmegaEntries([i64; 4]);

fn parse_omega(s: &str) -> Result<OmegaEntries, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(format!(
            "expected four comma-separated integers a,b,c,d, got {} value(s)",
            parts.len()
        ));
    }
    let mut entries = [0i64; 4];
    for (slot, part) in entries.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| format!("'{part}' is not an integer"))?;
    }
    Ok(OmegaEntries(entries))
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Dot,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Tsv => "tsv",
            Format::Dot => "dot",
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Highlight {
    All,
    S1,
    S2,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate { order, format } => {
            require_format(format, Format::Json, "enumerate")?;
            let o = build_order(&order)?;
            enumerate(&o);
            Ok(ExitCode::SUCCESS)
        }
        Command::Permute {
            order,
            omega,
            format,
        } => {
            require_format(format, Format::Json, "permute")?;
            let o = build_order(&order)?;
            let w = unit_in_order(&o, omega.omega)?;
            let report = sigma_perm(&o, &w).map_err(|e| e.to_string())?;
            outln!("{}", pretty(&report.to_json()));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cycles {
            order,
            omega,
            format,
        } => {
            require_format(format, Format::Json, "cycles")?;
            let o = build_order(&order)?;
            let w = unit_in_order(&o, omega.omega)?;
            cycles(&o, &w)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            order,
            trials,
            seed,
            exhaustive_mod,
        } => {
            let o = build_order(&order)?;
            if let Some(j) = exhaustive_mod {
                if j < order.n || j > o.precision() {
                    return Err(format!(
                        "--exhaustive-mod must lie between n = {} and the precision K = {}",
                        order.n,
                        o.precision()
                    ));
                }
            }
            let cfg = VerifyConfig {
                trials,
                seed,
                exhaustive_mod,
            };
            verify(&o, &cfg)
        }
        Command::Tree {
            order,
            radius,
            highlight,
            format,
        } => {
            require_format(format, Format::Dot, "tree")?;
            let o = build_order(&order)?;
            let needed = u64::from(order.n) + u64::from(radius) + 2;
            if needed > u64::from(o.precision()) {
                return Err(format!(
                    "radius {radius} reaches vertices beyond the working precision K = {}; \
                     rerun with --precision at least {needed}",
                    o.precision()
                ));
            }
            let labels = highlighted_labels(&o, highlight);
            let dot = export_dot(&o, radius, &labels).map_err(|e| e.to_string())?;
            emit(format_args!("{dot}"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            p_list,
            n_list,
            trials,
            seed,
            precision,
        } => {
            scan(&p_list, &n_list, trials, seed, precision)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn require_format(given: Format, wanted: Format, subcommand: &str) -> Result<(), String> {
    if given == wanted {
        Ok(())
    } else {
        Err(format!(
            "{subcommand} only writes {}; --format {} is not available here",
            wanted.name(),
            given.name()
        ))
    }
}

fn build_order(args: &OrderArgs) -> Result<EichlerOrder, String> {
    match args.precision {
        Some(k) => EichlerOrder::with_precision(args.p, args.n, k),
        None => EichlerOrder::new(args.p, args.n),
    }
    .map_err(|e| e.to_string())
}

/// Reduces the four integers into the order and checks both unit conditions,
/// naming the one that fails.
fn unit_in_order(order: &EichlerOrder, omega: OmegaEntries) -> Result<Mat2, String> {
    let [a, b, c, d] = omega.0;
    let w = Mat2::from_i64(order.modulus(), [[a, b], [c, d]]);
    let inside = order
        .contains(&w)
        .map_err(|e| format!("omega validation failed: {e}"))?;
    if !inside {
        return Err(format!(
            "omega is not in the order: the lower-left entry {c} must be divisible by p^n = {}",
            order.modulus().p_pow(order.level())
        ));
    }
    if !w.det().is_unit() {
        return Err(format!(
            "omega is not a unit of the order: its determinant must not be divisible by p = {}",
            order.p()
        ));
    }
    Ok(w)
}

fn mat_json(m: &Mat2) -> Value {
    json!([
        [m.entry(0, 0).value(), m.entry(0, 1).value()],
        [m.entry(1, 0).value(), m.entry(1, 1).value()],
    ])
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("report JSON serializes")
}

fn enumerate(order: &EichlerOrder) {
    let ideals: Vec<Value> = order
        .ideals()
        .iter()
        .map(|ideal| {
            json!({
                "label": ideal.label.to_string(),
                "generator": mat_json(&ideal.generator),
            })
        })
        .collect();
    let out = json!({
        "p": order.p(),
        "n": order.level(),
        "census_size": order.census_size(),
        "ideals": ideals,
    });
    outln!("{}", pretty(&out));
}

fn cycles(order: &EichlerOrder, w: &Mat2) -> Result<(), String> {
    let report = sigma_perm(order, w).map_err(|e| e.to_string())?;
    let everything = (|_: &IdealLabel| true) as fn(&IdealLabel) -> bool;
    let (ell1, ell2, _) = report.ell_pair();
    let out = json!({
        "cycle_lengths": report.cycle_lengths_on(everything),
        "ell1": ell1,
        "ell2": ell2,
    });
    outln!("{}", pretty(&out));
    Ok(())
}

fn verify(order: &EichlerOrder, cfg: &VerifyConfig) -> Result<ExitCode, String> {
    let results = run_all(order, cfg).map_err(|e| e.to_string())?;
    let mut failed = 0usize;
    let mut checks = 0u64;
    for suite in &results {
        checks += suite.checks;
        let status = if suite.passed() { "ok" } else { "FAILED" };
        outln!(
            "suite {:<14} {:>8} checks   {status}",
            suite.name,
            suite.checks
        );
        if let Some(counterexample) = &suite.counterexample {
            failed += 1;
            outln!("  counterexample: {counterexample}");
        }
    }
    if failed == 0 {
        outln!(
            "verify: p={} n={} all {} suites passed ({checks} checks)",
            order.p(),
            order.level(),
            results.len()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        outln!(
            "verify: p={} n={} {failed} of {} suites failed",
            order.p(),
            order.level(),
            results.len()
        );
        Ok(ExitCode::FAILURE)
    }
}

fn highlighted_labels(order: &EichlerOrder, highlight: Highlight) -> Vec<IdealLabel> {
    order
        .labels()
        .into_iter()
        .filter(|label| match highlight {
            Highlight::All => true,
            Highlight::S1 => label.is_s1(),
            Highlight::S2 => label.is_s2(),
        })
        .collect()
}

fn scan(
    p_list: &[u64],
    n_list: &[u32],
    trials: u64,
    seed: u64,
    precision: Option<u32>,
) -> Result<(), String> {
    outln!("p\tn\tomega\tcensus_size\tell1\tell2\tfixed_s1\tfixed_s2\tdiagrams_ok");
    let mut tuple_index = 0u64;
    for &p in p_list {
        for &n in n_list {
            let order = build_order(&OrderArgs { p, n, precision })?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(tuple_index));
            tuple_index += 1;
            for _ in 0..trials {
                let w = order.random_unit(&mut rng);
                let report = sigma_perm(&order, &w).map_err(|e| e.to_string())?;
                let (a, b, c, d) = (
                    w.entry(0, 0).value(),
                    w.entry(0, 1).value(),
                    w.entry(1, 0).value(),
                    w.entry(1, 1).value(),
                );
                let (ell1, ell2, _) = report.ell_pair();
                let (da, db, dc) = check_diagrams(&order, &w).map_err(|e| e.to_string())?;
                outln!(
                    "{p}\t{n}\t{a},{b},{c},{d}\t{}\t{}\t{}\t{}\t{}\t{}",
                    order.census_size(),
                    opt_str(ell1),
                    opt_str(ell2),
                    report.fixed_s1(),
                    report.fixed_s2(),
                    da && db && dc,
                );
            }
        }
    }
    Ok(())
}

fn opt_str(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}
