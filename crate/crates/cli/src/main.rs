//! `dzeta`: batch experiments on the Apostol-Vu and Mordell-Tornheim double
//! zeta-functions.
//!
//! Exit status is 0 on success, 2 when the inputs or configuration are at
//! fault and 1 for anything else.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use dzeta::lab::{Evaluator, Target};
use dzeta::{ComplexValue, Constants, ZetaError};

use commands::{Context, EvalTarget};
use config::{parse_complex, Config, Format, Section};

/// Bad flags or configuration values.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

#[derive(Parser)]
#[command(name = "dzeta", version, about = "Double zeta-function evaluation and mean-square experiments")]
struct Cli {
    /// TOML file with defaults for any subcommand (sections [eval], [mean_square], ...)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for the parallel sums
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Heuristic constants file; the built-in one otherwise
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single value
    Eval(EvalArgs),
    /// Integrate |ζ(s1, s2, σ3 + it)|² over [2, T]
    MeanSquare(MeanSquareArgs),
    /// Which mean-square theorem applies at a point
    Regime(RegimeArgs),
    /// Residual of the relation ζ_MT = 2^{-s3}ζ(s1+s2+s3) + ζ_AV(s1,s2,s3) + ζ_AV(s2,s1,s3)
    RelationCheck(RelationArgs),
    /// Montgomery-Vaughan mean value check on Dirichlet polynomials
    MvTest(MvArgs),
}

fn complex(s: &str) -> Result<ComplexValue, String> {
    parse_complex(s)
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    target: Option<EvalTarget>,
    /// `re` or `re,im`
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s1: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s2: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s3: Option<ComplexValue>,
    /// Argument of `zeta`
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s: Option<ComplexValue>,
    /// Weight exponent of the square series
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    x: Option<f64>,
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
}

#[derive(Args)]
struct MeanSquareArgs {
    /// AV or MT
    #[arg(long, value_parser = str::parse::<Target>)]
    target: Option<Target>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s1: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s2: Option<ComplexValue>,
    #[arg(long, allow_hyphen_values = true)]
    sigma3: Option<f64>,
    /// Comma-separated T samples
    #[arg(long = "t", value_delimiter = ',')]
    t_samples: Vec<f64>,
    /// direct or second_approx
    #[arg(long, value_parser = str::parse::<Evaluator>)]
    evaluator: Option<Evaluator>,
    #[arg(long)]
    eps: Option<f64>,
    /// Quadrature panels per unit base length
    #[arg(long)]
    panels: Option<usize>,
    /// Where the JSON sidecar goes (default: next to --out)
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Args)]
struct RegimeArgs {
    #[arg(long, value_parser = str::parse::<Target>)]
    target: Option<Target>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s1: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s2: Option<ComplexValue>,
    #[arg(long, allow_hyphen_values = true)]
    sigma3: Option<f64>,
}

#[derive(Args)]
struct RelationArgs {
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s1: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s2: Option<ComplexValue>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    s3: Option<ComplexValue>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_parser = ["direct", "accelerated", "approx"])]
    route: Option<String>,
}

#[derive(Args)]
struct MvArgs {
    #[arg(long)]
    t_end: Option<f64>,
    /// A term `n:re[:im]` of one polynomial; repeat for more terms
    #[arg(long = "term", value_parser = commands::parse_term, allow_hyphen_values = true)]
    terms: Vec<(u64, ComplexValue)>,
    /// Also check the empty polynomial
    #[arg(long)]
    empty: bool,
    /// Number of random polynomials
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn build_section(cfg: &Config, command: Command) -> (Section, Command) {
    let mut sec;
    match &command {
        Command::Eval(a) => {
            sec = cfg.section("eval");
            sec.set("target", a.target.map(EvalTarget::as_str));
            for (k, v) in [("s1", a.s1), ("s2", a.s2), ("s3", a.s3), ("s", a.s)] {
                sec.set_complex(k, v);
            }
            for (k, v) in [("sigma", a.sigma), ("eps", a.eps), ("x", a.x), ("y", a.y), ("c", a.c)] {
                sec.set(k, v);
            }
        }
        Command::MeanSquare(a) => {
            sec = cfg.section("mean_square");
            sec.set("target", a.target.map(Target::as_str));
            sec.set_complex("s1", a.s1);
            sec.set_complex("s2", a.s2);
            sec.set("sigma3", a.sigma3);
            sec.set_floats("t_samples", &a.t_samples);
            sec.set("evaluator", a.evaluator.map(Evaluator::as_str));
            sec.set("eps", a.eps);
            sec.set_nested("quad", commands::quad_defaults(), "panels", a.panels.map(|p| p as i64));
        }
        Command::Regime(a) => {
            sec = cfg.section("regime");
            sec.set("target", a.target.map(Target::as_str));
            sec.set_complex("s1", a.s1);
            sec.set_complex("s2", a.s2);
            sec.set("sigma3", a.sigma3);
        }
        Command::RelationCheck(a) => {
            sec = cfg.section("relation_check");
            sec.set("eps", a.eps);
            sec.set("route", a.route.clone());
            commands::relation_point(&mut sec, [a.s1, a.s2, a.s3]);
        }
        Command::MvTest(a) => {
            sec = cfg.section("mv_test");
            sec.set("t_end", a.t_end);
            commands::mv_polys(&mut sec, &a.terms, a.empty);
            if let Some(count) = a.random {
                let mut t = toml::Table::new();
                t.insert("count".into(), toml::Value::Integer(count as i64));
                t.insert("seed".into(), toml::Value::Integer(a.seed as i64));
                sec.set("random", Some(t));
            }
        }
    }
    (sec, command)
}

fn run(cli: Cli) -> Result<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    if let Some(n) = cfg.threads(cli.threads) {
        if n == 0 {
            return Err(ConfigError("--threads must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let constants = match cfg.constants(cli.constants.as_deref()) {
        Some(p) => Constants::load(&p)?,
        None => Constants::builtin(),
    };
    let ctx = Context { format: cfg.format(cli.format), out: cfg.out(cli.out.as_deref()), constants };
    let (section, command) = build_section(&cfg, cli.command);
    match command {
        Command::Eval(_) => commands::eval(&ctx, section),
        Command::MeanSquare(a) => commands::mean_square(&ctx, section, a.sidecar),
        Command::Regime(_) => commands::regime(&ctx, section),
        Command::RelationCheck(_) => commands::relation(&ctx, section),
        Command::MvTest(_) => commands::mv_test(&ctx, section),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<ZetaError>() {
        Some(e) if e.is_precondition() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
