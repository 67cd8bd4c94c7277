mod literal;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use invgamma::atlas::{
    branch_boundary, build_atlas, write_csv, AtlasConfig, AtlasDocument, AtlasRequest, CutTarget,
};
use invgamma::complex::{inv_gamma_complex_detailed, Closure};
use invgamma::critical::critical_table;
use invgamma::exec::Execution;
use invgamma::real::{real_gamma_domain, real_inv_gamma, stirling_inverse_approx, SolveConfig};
use invgamma::specfun::ComplexValue;
use invgamma::Error;
use serde_json::json;

use literal::parse_literal;

const TOL_ENV: &str = "INVGAMMA_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "invgamma",
    version,
    about = "Branches of the inverse Gamma function"
)]
struct Cli {
    /// Relative residual tolerance of the solvers [env: INVGAMMA_TOL]
    #[arg(long, global = true, value_parser = parse_literal)]
    tol: Option<f64>,
    /// Iteration cap of the solvers
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    /// Output format; defaults to plain for scalars, csv for tables, json for contours
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of critical points (psi_k, gamma_k) for k = 0 down to KMIN
    Critical {
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        kmin: i64,
    },
    /// Real branch k of the inverse at g
    Inv {
        #[arg(short = 'k', long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        #[arg(allow_hyphen_values = true, value_parser = parse_literal)]
        g: f64,
    },
    /// Complex branch k (0 or -1) of the inverse at re + i im
    InvComplex {
        #[arg(short = 'k', long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        #[arg(allow_hyphen_values = true, value_parser = parse_literal)]
        re: f64,
        #[arg(allow_hyphen_values = true, value_parser = parse_literal)]
        im: f64,
        /// Close branch cuts from below instead of from above
        #[arg(long)]
        below: bool,
    },
    /// Stirling estimate of the principal inverse
    Approx {
        #[arg(allow_hyphen_values = true, value_parser = parse_literal)]
        x: f64,
    },
    /// Real interval holding the solution of Gamma(x) = g on branch k
    Domain {
        #[arg(short = 'k', long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        #[arg(allow_hyphen_values = true, value_parser = parse_literal)]
        g: f64,
    },
    /// Trimmed contours of branch k mapped through Gamma
    Contours {
        #[arg(short = 'k', long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        /// Comma-separated values g on the branch's real range
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_literal)]
        anchors: Option<Vec<f64>>,
        /// Comma-separated real abscissae outside the branch's real range
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_literal)]
        explore: Option<Vec<f64>>,
        /// Also trace each contour downward
        #[arg(long)]
        mirror: bool,
        #[arg(long, default_value_t = 1e-3, value_parser = parse_literal)]
        axis_tol: f64,
        #[arg(long)]
        sequential: bool,
    },
    /// Preimages of the branch cuts of branch k (0 or -1)
    Boundary {
        #[arg(short = 'k', long, default_value_t = 0, allow_hyphen_values = true)]
        branch: i64,
        /// Points per cut segment
        #[arg(long, default_value_t = 64)]
        points: usize,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Solver(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(Error::NonConvergence { .. } | Error::TrimFailure(_)) => 3,
            CliError::Solver(_) | CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

fn tolerance_from_env() -> Result<Option<f64>, CliError> {
    match std::env::var(TOL_ENV) {
        Ok(s) => parse_literal(&s)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("{TOL_ENV}: {e}"))),
        Err(_) => Ok(None),
    }
}

fn solve_config(cli: &Cli, env_tol: Option<f64>) -> Result<SolveConfig, CliError> {
    let mut cfg = SolveConfig::default();
    if let Some(tol) = cli.tol.or(env_tol) {
        cfg.residual_rel_tol = tol;
    }
    if let Some(n) = cli.max_iter {
        cfg.max_iter = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn scalar(x: f64, format: Format) -> String {
    match format {
        Format::Json => json!(x).to_string(),
        _ => format!("{x:.15}"),
    }
}

fn render_document(doc: &AtlasDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(doc, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is ascii"))
        }
        Format::Json => Ok(serde_json::to_string(doc).expect("document serializes")),
        Format::Plain => Err(CliError::Usage("contour output is csv or json".into())),
    }
}

fn run(cli: &Cli, env_tol: Option<f64>) -> Result<String, CliError> {
    let cfg = solve_config(cli, env_tol)?;
    let fmt = |default| cli.format.unwrap_or(default);
    let text = match &cli.command {
        Command::Critical { kmin } => {
            if *kmin > 0 {
                return Err(CliError::Usage(format!("kmin must be <= 0, got {kmin}")));
            }
            let table = critical_table(*kmin)?;
            match fmt(Format::Csv) {
                Format::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .map(|c| json!({"k": c.k.get(), "psi": c.psi, "gamma": c.gamma}))
                        .collect();
                    serde_json::Value::Array(rows).to_string()
                }
                f => {
                    let sep = if f == Format::Csv { "," } else { " " };
                    let mut s = ["k", "psi", "gamma"].join(sep);
                    for c in &table {
                        s.push_str(&format!("\n{}{sep}{:.15}{sep}{:.15}", c.k, c.psi, c.gamma));
                    }
                    s
                }
            }
        }
        Command::Inv { branch, g } => {
            scalar(real_inv_gamma(*g, *branch, &cfg)?, fmt(Format::Plain))
        }
        Command::InvComplex {
            branch,
            re,
            im,
            below,
        } => {
            let closure = if *below {
                Closure::Below
            } else {
                Closure::Above
            };
            let sol =
                inv_gamma_complex_detailed(ComplexValue::new(*re, *im), *branch, closure, &cfg)?;
            let w = sol.w;
            match fmt(Format::Plain) {
                Format::Json => json!({
                    "re": w.re,
                    "im": w.im,
                    "in_strip": sol.in_strip,
                    "reduced_accuracy": sol.reduced_accuracy,
                })
                .to_string(),
                Format::Csv => format!("re,im\n{},{}", w.re, w.im),
                Format::Plain => format!("{:.15} {:.15}", w.re, w.im),
            }
        }
        Command::Approx { x } => scalar(stirling_inverse_approx(*x)?, fmt(Format::Plain)),
        Command::Domain { branch, g } => {
            let iv = real_gamma_domain(*g, *branch)?;
            match fmt(Format::Plain) {
                Format::Json => json!({
                    "lo": iv.lo,
                    "hi": if iv.hi.is_finite() { json!(iv.hi) } else { json!("inf") },
                    "lo_open": iv.lo_open,
                    "hi_open": iv.hi_open,
                })
                .to_string(),
                Format::Csv => format!(
                    "lo,hi,lo_open,hi_open\n{},{},{},{}",
                    iv.lo, iv.hi, iv.lo_open, iv.hi_open
                ),
                Format::Plain => iv.to_string(),
            }
        }
        Command::Contours {
            branch,
            anchors,
            explore,
            mirror,
            axis_tol,
            sequential,
        } => {
            let standard = AtlasRequest::standard(*branch)?;
            let req = AtlasRequest {
                branch: *branch,
                anchors: anchors.clone().unwrap_or(standard.anchors),
                explore: explore.clone().unwrap_or(standard.explore),
            };
            let atlas_cfg = AtlasConfig {
                mirror: *mirror,
                target: CutTarget {
                    axis_tol: *axis_tol,
                    ..CutTarget::default()
                },
                ..AtlasConfig::default()
            };
            let atlas = build_atlas(&req, &atlas_cfg, execution(*sequential))?;
            render_document(&AtlasDocument::from(&atlas), fmt(Format::Json))?
        }
        Command::Boundary {
            branch,
            points,
            sequential,
        } => {
            let curves = branch_boundary(*branch, *points, execution(*sequential))?;
            render_document(
                &AtlasDocument::from_contours(*branch, &curves)?,
                fmt(Format::Json),
            )?
        }
    };
    Ok(text)
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    w.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        w.write_all(b"\n")?;
    }
    w.flush()
}

fn main() -> ExitCode {
    let env_tol = tolerance_from_env();
    let cli = Cli::parse();
    let result = env_tol
        .and_then(|tol| run(&cli, tol))
        .and_then(|text| emit(&text, cli.out.as_ref()).map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
