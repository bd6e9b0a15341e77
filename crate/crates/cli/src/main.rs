mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use output::{emit, render, Format, Table};
use parse::parse_x;
use xxz_lbf::asymptotics::{coeffs, compare_fig1, lbf_asymptotic, r_from_x, Order};
use xxz_lbf::characters::{
    chi_homogeneous, chi_specialized, chi_specialized_at, normalized_chi_at_x,
};
use xxz_lbf::hp::HpContext;
use xxz_lbf::overlap_fidelity::{lbf, overlap, Route};
use xxz_lbf::verify::{self, Check, Suite};
use xxz_lbf::{Error, Execution};

const MIN_PRECISION: usize = 30;

#[derive(Parser, Debug)]
#[command(
    name = "xxz-lbf",
    version,
    about = "Exact and asymptotic bipartite fidelity of the open XXZ chain at Δ = -1/2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (csv for tables, json for verification reports by default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Decimal digits for high-precision values.
    #[arg(long, global = true, default_value_t = 60)]
    precision: usize,
    /// Seed for randomized identity checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum RouteArg {
    Determinant,
    Contraction,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Determinant => Route::Determinant,
            RouteArg::Contraction => Route::Contraction,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Logarithmic bipartite fidelity of one bipartition.
    Lbf {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, value_parser = parse_x)]
        x: BigRational,
        #[arg(long, value_enum, default_value_t = RouteArg::Determinant)]
        route: RouteArg,
    },
    /// Exact bipartite overlap.
    Overlap {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, value_parser = parse_x)]
        x: BigRational,
        #[arg(long, value_enum, default_value_t = RouteArg::Determinant)]
        route: RouteArg,
    },
    /// Specialized symplectic character χ_N(1,…,1,z) at the point matching x.
    Char {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_x)]
        x: BigRational,
    },
    /// Truncated large-N series of the fidelity.
    Asymptote {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, value_parser = parse_x)]
        x: BigRational,
    },
    /// Exact fidelity against the series for every even N1.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_x)]
        x: BigRational,
    },
    /// Run a verification suite.
    Verify {
        /// qkz, oracle, characters, asymptotics or all.
        #[arg(default_value = "all")]
        suite: String,
        /// Largest total size for the exact oracle.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        /// Boundary parameter of the large-N sweep.
        #[arg(long, value_parser = parse_x)]
        x: Option<BigRational>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Lib(e) => match e {
                Error::Argument(_)
                | Error::IllDefined(..)
                | Error::Unsupported(_)
                | Error::UnsupportedSubstitution(_) => 2,
                _ => 3,
            },
            CliError::Output(_) => 3,
        }
    }
}

/// Echo of the parsed configuration, emitted with JSON output.
#[derive(Debug, Serialize)]
struct RunConfig {
    subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    route: Option<RouteArg>,
    #[serde(skip_serializing_if = "Option::is_none")]
    suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_n: Option<usize>,
    format: Format,
    precision: usize,
    seed: u64,
}

impl RunConfig {
    fn new(subcommand: &'static str, format: Format, cli: &Cli) -> Self {
        RunConfig {
            subcommand,
            n: None,
            n1: None,
            n2: None,
            x: None,
            route: None,
            suite: None,
            max_n: None,
            format,
            precision: cli.precision,
            seed: cli.seed,
        }
    }
}

struct Outcome {
    config: RunConfig,
    table: Table,
    checks: Vec<Check>,
}

fn to_f64(x: &BigRational) -> Result<f64, CliError> {
    x.to_f64()
        .filter(|v| v.is_finite() && *v > 0.0)
        .ok_or_else(|| CliError::Usage(format!("x = {x} is out of floating-point range")))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.precision < MIN_PRECISION {
        return Err(CliError::Usage(format!(
            "--precision must be at least {MIN_PRECISION}, got {}",
            cli.precision
        )));
    }
    let digits = cli.precision;
    let table_format = cli.format.unwrap_or(Format::Csv);
    let exec = Execution::Parallel;
    match &cli.command {
        Command::Lbf { n1, n2, x, route } => {
            let mut hp = HpContext::new(digits)?;
            let v = lbf(*n1, *n2, x, (*route).into(), &mut hp)?;
            let mut t = Table::new(&["N1", "N2", "x", "route", "overlap", "ratio", "F"]);
            t.push(vec![
                (*n1).into(),
                (*n2).into(),
                x.to_string().into(),
                route_name(*route).into(),
                v.overlap.to_string().into(),
                v.ratio.to_string().into(),
                hp.format(&v.value, digits)?.into(),
            ]);
            let mut config = RunConfig::new("lbf", table_format, cli);
            (config.n1, config.n2, config.x, config.route) =
                (Some(*n1), Some(*n2), Some(x.to_string()), Some(*route));
            Ok(Outcome {
                config,
                table: t,
                checks: vec![],
            })
        }
        Command::Overlap { n1, n2, x, route } => {
            let o = overlap(*n1, *n2, x, (*route).into(), exec)?;
            let mut t = Table::new(&["N1", "N2", "x", "route", "overlap"]);
            t.push(vec![
                (*n1).into(),
                (*n2).into(),
                x.to_string().into(),
                route_name(*route).into(),
                o.to_string().into(),
            ]);
            let mut config = RunConfig::new("overlap", table_format, cli);
            (config.n1, config.n2, config.x, config.route) =
                (Some(*n1), Some(*n2), Some(x.to_string()), Some(*route));
            Ok(Outcome {
                config,
                table: t,
                checks: vec![],
            })
        }
        Command::Char { n, x } => {
            let value = chi_specialized_at(*n, x, exec)?;
            let normalized = normalized_chi_at_x(*n, x, exec)?;
            let mut hp = HpContext::new(digits)?;
            let nv = if normalized > BigRational::from_integer(0.into()) {
                let f = hp.rational(&normalized);
                hp.format(&f, digits)?
            } else {
                let f = hp.rational(&-normalized.clone());
                format!("-{}", hp.format(&f, digits)?)
            };
            let formula = if *n <= 40 {
                chi_specialized(*n)?.display()
            } else {
                String::new()
            };
            let mut t = Table::new(&[
                "N",
                "x",
                "chi",
                "chi_at_one",
                "normalized",
                "normalized_value",
                "formula",
            ]);
            t.push(vec![
                (*n).into(),
                x.to_string().into(),
                value.to_string().into(),
                chi_homogeneous(*n).to_string().into(),
                normalized.to_string().into(),
                nv.into(),
                formula.into(),
            ]);
            let mut config = RunConfig::new("char", table_format, cli);
            (config.n, config.x) = (Some(*n), Some(x.to_string()));
            Ok(Outcome {
                config,
                table: t,
                checks: vec![],
            })
        }
        Command::Asymptote { n1, n2, x } => {
            let xf = to_f64(x)?;
            let r = r_from_x(xf)?;
            let c = coeffs(r)?;
            let n = n1 + n2;
            let mut t = Table::new(&[
                "N1", "N2", "N", "x", "r", "xi", "D", "E", "E_bar", "F_log", "F_const", "F_asymp",
            ]);
            t.push(vec![
                (*n1).into(),
                (*n2).into(),
                n.into(),
                x.to_string().into(),
                r.into(),
                (*n1 as f64 / n.max(1) as f64).into(),
                c.d.into(),
                c.e.into(),
                c.e_bar.into(),
                lbf_asymptotic(*n1, *n2, xf, Order::Log)?.into(),
                lbf_asymptotic(*n1, *n2, xf, Order::Constant)?.into(),
                lbf_asymptotic(*n1, *n2, xf, Order::InverseN)?.into(),
            ]);
            let mut config = RunConfig::new("asymptote", table_format, cli);
            (config.n1, config.n2, config.x) = (Some(*n1), Some(*n2), Some(x.to_string()));
            Ok(Outcome {
                config,
                table: t,
                checks: vec![],
            })
        }
        Command::Compare { n, x } => {
            if *n < 8 {
                return Err(CliError::Usage(format!("compare needs --n >= 8, got {n}")));
            }
            to_f64(x)?;
            let rows = compare_fig1(*n, x, digits, exec)?;
            let mut hp = HpContext::new(digits)?;
            let mut t = Table::new(&["N", "N1", "N2", "xi", "F_exact", "F_asymp", "diff"]);
            for r in &rows {
                t.push(vec![
                    r.n.into(),
                    r.n1.into(),
                    r.n2.into(),
                    r.xi.into(),
                    hp.format(&r.exact.value, digits)?.into(),
                    r.f_asymp.into(),
                    r.diff.into(),
                ]);
            }
            let mut config = RunConfig::new("compare", table_format, cli);
            (config.n, config.x) = (Some(*n), Some(x.to_string()));
            Ok(Outcome {
                config,
                table: t,
                checks: vec![],
            })
        }
        Command::Verify { suite, max_n, x } => {
            let s: Suite = suite.parse()?;
            let mut opts = verify::Options {
                max_n: *max_n,
                seed: cli.seed,
                digits,
                exec,
                ..verify::Options::default()
            };
            if let Some(x) = x {
                opts.sweep_x = x.clone();
            }
            let report = verify::run(s, &opts)?;
            let mut config = RunConfig::new("verify", cli.format.unwrap_or(Format::Json), cli);
            (config.suite, config.max_n, config.x) = (
                Some(s.name().into()),
                Some(*max_n),
                Some(opts.sweep_x.to_string()),
            );
            Ok(Outcome {
                config,
                table: Table::new(&[]),
                checks: report.checks,
            })
        }
    }
}

fn route_name(r: RouteArg) -> &'static str {
    match r {
        RouteArg::Determinant => "determinant",
        RouteArg::Contraction => "contraction",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let bytes = match render(
        outcome.config.format,
        &outcome.config,
        &outcome.table,
        &outcome.checks,
    ) {
        Ok(b) => b,
        Err(e) => {
            let e = CliError::Output(e);
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    if let Err(e) = emit(&bytes, cli.out.as_deref()) {
        let e = CliError::from(e);
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let failed: Vec<&Check> = outcome.checks.iter().filter(|c| !c.passed).collect();
    if !failed.is_empty() {
        for c in failed {
            eprintln!("FAILED {}: {}", c.name, c.detail);
        }
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Lib(Error::IllDefined(1, 1)).exit_code(), 2);
        assert_eq!(CliError::Lib(Error::Argument("x".into())).exit_code(), 2);
        assert_eq!(
            CliError::Lib(Error::Degenerate { sites: 4, dim: 2 }).exit_code(),
            3
        );
        assert_eq!(CliError::Lib(Error::Consistency("c".into())).exit_code(), 3);
        assert_eq!(CliError::Usage("u".into()).exit_code(), 2);
    }
}
