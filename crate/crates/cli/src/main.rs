use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use floorgap::acceptance;
use floorgap::am::{am_set, am_sets, coverage_report, render_figure, union, IntervalSet};
use floorgap::exact::{format_sig, AlgNum, Constants, CONSTANTS_ENV};
use floorgap::floorfn::{g_ceil_eval, h_mixed_eval, Param};
use floorgap::irrational::{
    alpha_t, default_family, fractional_window_witness, lower_interval_check, observed_range,
    singleton_range_scan,
};
use floorgap::rational::{
    as_fraction, bezout_witness, minus_fraction_sweep, predicted_range, range_rational,
};
use floorgap::sets::format_set;
use floorgap::Error;

/// Exact evaluation and range analysis of f(n) = floor(a^2 n) - floor(a floor(a n)).
#[derive(Parser)]
#[command(name = "floorgap", version)]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// File of `name=digits` lines replacing the bundled constants.
    #[arg(long, global = true, env = CONSTANTS_ENV)]
    constants: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    /// floor(a^2 n) - floor(a floor(a n))
    F,
    /// ceil(a^2 n) - ceil(a ceil(a n))
    G,
    /// floor(a^2 n) - floor(a ceil(a n))
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one value.
    Eval {
        /// `p/r`, `(p+q*sqrt(d))/r`, or a constant name such as `pi`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Variant::F)]
        variant: Variant,
    },
    /// Exact range for rationals, observed range over n <= N otherwise.
    Range {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
        scan: u64,
    },
    /// Parameter sweeps; exit code 2 when a counterexample or missing value turns up.
    Sweep(SweepArgs),
    /// The sets A_m = {a in (0,1] : f(m) = 1}.
    Am(AmArgs),
    /// Witness searches.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Run the acceptance suite.
    Check,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_enum)]
    which: Sweep,
    /// Largest denominator (c317).
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    bmax: u64,
    /// Largest multiplier (c317).
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    smax: u64,
    /// Largest m in the union (c45).
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..))]
    mmax: u64,
    /// Family: sqrt(k) for non-square k <= kmax (c43, c47).
    #[arg(long, default_value_t = 30)]
    kmax: u64,
    /// Family: (1+sqrt(1+4t))/2 for t <= tmax (c43, c47).
    #[arg(long, default_value_t = 30)]
    tmax: u64,
    /// Scan bound N (c43, c47).
    #[arg(long, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    scan: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sweep {
    /// Range at sb - a/b against s[0,b-1] + (s[1,b-1] - 1).
    C317,
    /// Every value in [1, floor(a)] is attained.
    C43,
    /// Coverage of (0,1) by A_2, ..., A_M.
    C45,
    /// Only the golden ratio has range {1}.
    C47,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AmTarget {
    /// A single A_m.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    m: Option<u64>,
    /// Union of A_2, ..., A_MMAX.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    union: Option<u64>,
}

#[derive(Args)]
struct AmArgs {
    #[command(flatten)]
    target: AmTarget,
    /// Write the figure as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Smallest n with a^2 n = 1 (mod b^2), where f_{a/b}(n) = 1.
    Bezout {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Smallest n <= N with lo < frac(alpha n) < hi.
    Window {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        lo: String,
        #[arg(long)]
        hi: String,
        #[arg(long, default_value_t = 20_000)]
        scan: u64,
    },
}

/// Why a command did not succeed.
enum Failure {
    Error(Error),
    /// A verification found a counterexample or a missing value.
    Finding,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    format: Format,
    constants: Constants,
}

impl Ctx {
    fn records(&self) -> bool {
        self.format == Format::Records
    }

    fn param(&self, text: &str) -> Result<Param, Error> {
        Param::parse(text, &self.constants)
    }
}

fn finding_if(bad: bool) -> Outcome {
    if bad {
        Err(Failure::Finding)
    } else {
        Ok(())
    }
}

fn eval(ctx: &Ctx, alpha: &str, n: u64, variant: Variant) -> Outcome {
    let param = ctx.param(alpha)?;
    let value = match (variant, &param) {
        (Variant::F, p) => p.eval(n)?,
        (Variant::G, Param::Exact(a)) => g_ceil_eval(a, n)?,
        (Variant::H, Param::Exact(a)) => h_mixed_eval(a, n)?,
        (_, Param::Constant(_)) => {
            return Err(Error::BadParameters("variants g and h need an exact alpha".into()).into())
        }
    };
    if ctx.records() {
        println!("alpha={param} n={n} value={value}");
    } else {
        println!("{value}");
    }
    Ok(())
}

fn range(ctx: &Ctx, alpha: &str, scan: u64) -> Outcome {
    let param = ctx.param(alpha)?;
    if let Param::Exact(a) = &param {
        if a.is_rational() {
            let (num, den) = as_fraction(a)
                .ok_or_else(|| Error::BadParameters(format!("{a} is not a positive rational")))?;
            let range = range_rational(num, den)?;
            let predicted = predicted_range(num, den)?;
            if ctx.records() {
                let wit: Vec<String> = range
                    .witnesses
                    .iter()
                    .map(|(v, n)| format!("{v}:{n}"))
                    .collect();
                println!(
                    "alpha={a} range={range} witnesses={} predicted={}",
                    wit.join(","),
                    predicted
                        .as_ref()
                        .map_or("none".into(), |p| format_set(&p.values))
                );
            } else {
                println!("alpha = {a}");
                println!("range = {range} (exact, from n <= {})", den * den - 1);
                for (v, n) in &range.witnesses {
                    println!("  f({n}) = {v}");
                }
                if let Some(p) = predicted {
                    let forms: Vec<String> = p.forms.iter().map(ToString::to_string).collect();
                    println!(
                        "closed form {}: {}",
                        forms.join(", "),
                        format_set(&p.values)
                    );
                }
            }
            return Ok(());
        }
    }
    let report = observed_range(&param, scan)?;
    if ctx.records() {
        println!("{}", report.record());
    } else {
        println!("{report}");
    }
    Ok(())
}

fn family(kmax: u64, tmax: u64) -> Vec<Param> {
    default_family(kmax, tmax)
        .into_iter()
        .map(Param::Exact)
        .collect()
}

fn sweep(ctx: &Ctx, args: &SweepArgs) -> Outcome {
    match args.which {
        Sweep::C317 => {
            let report = minus_fraction_sweep(args.bmax, args.smax)?;
            if ctx.records() {
                report.records().iter().for_each(|l| println!("{l}"));
            } else {
                report
                    .counterexamples()
                    .iter()
                    .for_each(|c| println!("{}", c.record()));
            }
            println!("{}", report.summary());
            finding_if(!report.counterexamples().is_empty())
        }
        Sweep::C43 => {
            let mut incomplete = 0;
            for alpha in family(args.kmax, args.tmax) {
                let r = lower_interval_check(&alpha, args.scan)?;
                if !r.complete() {
                    incomplete += 1;
                }
                if ctx.records() || !r.complete() {
                    println!("{}", r.record());
                }
            }
            println!(
                "{incomplete} parameters with values missing below N = {}",
                args.scan
            );
            finding_if(incomplete > 0)
        }
        Sweep::C45 => {
            let report = coverage_report(args.mmax)?;
            if ctx.records() {
                report.records().iter().for_each(|l| println!("{l}"));
            } else {
                println!(
                    "union of A_2..A_{}: {} intervals",
                    args.mmax,
                    report.union.len()
                );
                report.union.lines().iter().for_each(|l| println!("  {l}"));
                println!(
                    "covered measure {}, uncovered {}",
                    format_sig(report.covered.to_f64(), 5),
                    format_sig(report.uncovered_measure(), 5)
                );
                println!("points 1/b covered: {:?}", report.covered_reciprocals);
            }
            finding_if(!report.covered_reciprocals.is_empty())
        }
        Sweep::C47 => {
            let scan = singleton_range_scan(&family(args.kmax, args.tmax), args.scan)?;
            if ctx.records() {
                scan.records().iter().for_each(|l| println!("{l}"));
            } else {
                println!(
                    "range {{1}} up to N = {}: {}",
                    args.scan,
                    scan.survivors.join(", ")
                );
                println!("{} parameters eliminated", scan.eliminated.len());
            }
            let golden = alpha_t(1)?.alpha.to_string();
            finding_if(scan.survivors != [golden])
        }
    }
}

fn print_set(ctx: &Ctx, label: &str, set: &IntervalSet) {
    for iv in set.intervals() {
        if ctx.records() {
            println!(
                "{label} lo={} hi={} lo_closed={} hi_closed={}",
                iv.lo, iv.hi, iv.lo_closed, iv.hi_closed
            );
        } else {
            println!("{}", iv.line());
        }
    }
}

fn am(ctx: &Ctx, args: &AmArgs) -> Outcome {
    let (sets, shown) = match (args.target.m, args.target.union) {
        (Some(m), _) => {
            let set = am_set(m)?;
            print_set(ctx, &format!("m={m}"), &set);
            (vec![(m, set.clone())], set)
        }
        (None, Some(mmax)) => {
            let sets = am_sets(mmax)?;
            let u = union(sets.iter().map(|(_, s)| s));
            print_set(ctx, &format!("union={mmax}"), &u);
            (sets, u)
        }
        (None, None) => unreachable!("clap requires one of --m, --union"),
    };
    if let Some(path) = &args.svg {
        render_figure(&sets, &shown, path)?;
    }
    Ok(())
}

fn witness(ctx: &Ctx, cmd: &WitnessCommand) -> Outcome {
    match cmd {
        WitnessCommand::Bezout { a, b } => {
            let n = bezout_witness(*a, *b)?;
            if ctx.records() {
                println!("a={a} b={b} n={n}");
            } else {
                println!("{n}");
            }
            Ok(())
        }
        WitnessCommand::Window {
            alpha,
            lo,
            hi,
            scan,
        } => {
            let parse = |s: &str| s.parse::<AlgNum>();
            let alpha = parse(alpha)?;
            let found = fractional_window_witness(&alpha, &parse(lo)?, &parse(hi)?, *scan)?;
            match (found, ctx.records()) {
                (Some(n), true) => println!("alpha={alpha} lo={lo} hi={hi} n={n}"),
                (Some(n), false) => println!("{n}"),
                (None, true) => println!("alpha={alpha} lo={lo} hi={hi} n=none"),
                (None, false) => println!("no n <= {scan} found"),
            }
            finding_if(found.is_none())
        }
    }
}

fn check() -> Outcome {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        println!("{}", o.line());
    }
    finding_if(outcomes.iter().any(|o| !o.passed))
}

fn run(cli: &Cli) -> Outcome {
    let constants = match &cli.constants {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            Constants::parse(&text)?
        }
        None => Constants::bundled(),
    };
    let ctx = Ctx {
        format: cli.format,
        constants,
    };
    match &cli.command {
        Command::Eval { alpha, n, variant } => eval(&ctx, alpha, *n, *variant),
        Command::Range { alpha, scan } => range(&ctx, alpha, *scan),
        Command::Sweep(args) => sweep(&ctx, args),
        Command::Am(args) => am(&ctx, args),
        Command::Witness(cmd) => witness(&ctx, cmd),
        Command::Check => check(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Finding) => ExitCode::from(2),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::PrecisionExhausted(_) => 3,
                _ => 1,
            })
        }
    }
}
