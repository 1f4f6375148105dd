use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use origami::dyson::XVariant;
use origami::nekrasov::NekContext;
use origami::qseries::QSeries;
use origami::suite::{run_suite, Report, Suite, SuiteConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use origami::zfun::{require_point_independent, Mode, ZRequest};
use origami::{Character, PartitionTuple, Plane, RankVector};

#[derive(Parser, Debug)]
#[command(
    name = "origami",
    version,
    about = "Exact gauge origami partition functions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Rank vector, e.g. `12=1,34=1`.
    #[arg(long)]
    ranks: Option<String>,
    /// Largest instanton number.
    #[arg(long, alias = "max-n")]
    nmax: Option<usize>,
    /// Highest power of q kept.
    #[arg(long)]
    qorder: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Independent evaluation points per equality.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// How x enters the plane-12 framing in the `ds-poly` suite.
    #[arg(long, value_enum, default_value = "first-slot")]
    x_variant: XArg,
    /// Write output to this file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl Common {
    fn ranks(&self) -> Result<Option<RankVector>> {
        self.ranks
            .as_deref()
            .map(|s| {
                s.parse::<RankVector>()
                    .map_err(|e| anyhow!("--ranks {s:?}: {e}"))
            })
            .transpose()
    }

    fn order(&self, default: usize) -> usize {
        self.qorder.or(self.nmax).unwrap_or(default)
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum XArg {
    /// x = v_{12,1}.
    FirstSlot,
    /// Every v_{12,α} shifted by x.
    AllSlots,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum ZMode {
    Cohomological,
    Cy3,
    Diagonal,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Kind {
    V,
    T,
    K,
    N,
    Lambda,
    Tangent,
    Cnorm,
    G4d,
    G3d,
    Tangent3d,
    Half3d,
    Sheaf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// K-theoretic series at seeded random points.
    Zk {
        #[command(flatten)]
        common: Common,
        /// Replace every framing variable w by t_A / w.
        #[arg(long)]
        costable: bool,
    },
    /// Cohomological series, optionally specialized.
    Z {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "cohomological")]
        mode: ZMode,
    },
    /// Print a named character of one fixed point.
    DumpChar {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Partition tuple, e.g. `{12.1:(2,1), 34.1:(1)}`.
        #[arg(long, default_value = "{}")]
        tuple: String,
        /// Plane for the per-plane kinds `T`, `K` and `N`.
        #[arg(long, default_value = "12")]
        plane: String,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

fn emit(common: &Common, text: String) -> Result<()> {
    match &common.out {
        Some(path) => {
            fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => r.context("writing stdout"),
            }
        }
    }
}

fn series_json(s: &QSeries) -> Value {
    json!(s.to_strings())
}

fn run_z(common: &Common, mode: Mode) -> Result<()> {
    let ranks = common.ranks()?.unwrap_or_else(RankVector::zero);
    let order = common.order(4);
    let req = ZRequest {
        ranks,
        order,
        mode,
        seed: common.seed,
        trials: common.trials,
    };
    let series = req.run()?;
    let mut checks = Vec::new();
    if matches!(mode, Mode::Cy3 | Mode::DiagonalModular) {
        let r = require_point_independent(&series);
        checks.push(json!({
            "name": "point independence",
            "pass": r.is_ok(),
            "lhs": r.as_ref().map(|s| s.to_string()).unwrap_or_else(|e| e.to_string()),
            "rhs": series[0].to_string(),
        }));
    }
    if common.json {
        let out = json!({
            "schema": 1,
            "ranks": ranks.to_string(),
            "mode": mode.label(),
            "N": order,
            "seed": common.seed,
            "coefficients": series.iter().map(series_json).collect::<Vec<_>>(),
            "checks": checks,
        });
        emit(common, serde_json::to_string_pretty(&out)?)
    } else {
        let lines: Vec<String> = series
            .iter()
            .enumerate()
            .map(|(k, s)| format!("trial {k}: {s}"))
            .collect();
        emit(common, lines.join("\n"))
    }
}

fn dump_char(common: &Common, kind: Kind, tuple: &str, plane: &str) -> Result<()> {
    let ranks = common.ranks()?.unwrap_or_else(RankVector::zero);
    let tuple = PartitionTuple::parse(ranks, tuple).map_err(|e| anyhow!("--tuple: {e}"))?;
    let plane: Plane = plane.parse().map_err(|e| anyhow!("--plane: {e}"))?;
    let ctx = NekContext::new(&tuple);
    let chi: Character = match kind {
        Kind::V => ctx.v_char()?,
        Kind::T => ctx.big_t(plane),
        Kind::K => ctx.k(plane).clone(),
        Kind::N => ctx.n(plane).clone(),
        Kind::Lambda => ctx.lambda_char(),
        Kind::Tangent => ctx.tangent_ambient(),
        Kind::Cnorm => ctx.c_norm_char(),
        Kind::G4d => ctx.g_4d(),
        Kind::G3d => ctx.g_3d()?,
        Kind::Tangent3d => ctx.tangent_ambient_3d()?,
        Kind::Half3d => ctx.half_3d()?,
        Kind::Sheaf => ctx.sheaf_tangent(),
    };
    if common.json {
        let out = json!({
            "schema": 1,
            "kind": format!("{kind:?}").to_lowercase(),
            "ranks": ranks.to_string(),
            "tuple": tuple.to_string(),
            "rank": chi.rank(),
            "character": chi.to_string(),
        });
        emit(common, serde_json::to_string_pretty(&out)?)
    } else {
        emit(common, chi.to_string())
    }
}

fn report_text(r: &Report) -> String {
    let status = if r.pass() { "PASS" } else { "FAIL" };
    let mut out = format!(
        "{status} {} ({} checks, {} ms)",
        r.suite,
        r.checks.len(),
        r.elapsed_ms
    );
    for c in r.failures() {
        out.push_str(&format!("\n  {}: {} != {}", c.name, c.lhs, c.rhs));
    }
    out
}

/// Exit code of a failing suite: 10 plus its position in the suite list.
fn failure_code(s: Suite) -> u8 {
    10 + s.index() as u8
}

fn verify(name: &str, common: &Common) -> Result<ExitCode> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name
            .parse()
            .map_err(|e| anyhow!("{e}; expected one of {}", suite_names()))?]
    };
    let cfg = SuiteConfig {
        ranks: common.ranks()?,
        nmax: common.nmax,
        qorder: common.qorder,
        seed: common.seed,
        trials: common.trials,
        x_variant: match common.x_variant {
            XArg::FirstSlot => XVariant::FirstSlot,
            XArg::AllSlots => XVariant::AllSlots,
        },
    };
    let reports: Vec<Report> = suites.iter().map(|&s| run_suite(s, &cfg)).collect();
    let text = if common.json {
        if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])?
        } else {
            serde_json::to_string_pretty(&reports)?
        }
    } else {
        reports
            .iter()
            .map(report_text)
            .collect::<Vec<_>>()
            .join("\n")
    };
    emit(common, text)?;
    let first_fail = suites.iter().zip(&reports).find(|(_, r)| !r.pass());
    Ok(match first_fail {
        Some((&s, _)) => ExitCode::from(failure_code(s)),
        None => ExitCode::SUCCESS,
    })
}

fn suite_names() -> String {
    Suite::ALL.map(|s| s.name()).join(", ") + ", all"
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Command::Zk { common, costable } => {
            let mode = if costable {
                Mode::Costable
            } else {
                Mode::KTheory
            };
            run_z(&common, mode)?;
        }
        Command::Z { common, mode } => {
            let mode = match mode {
                ZMode::Cohomological => Mode::Cohomological,
                ZMode::Cy3 => Mode::Cy3,
                ZMode::Diagonal => Mode::DiagonalModular,
            };
            run_z(&common, mode)?;
        }
        Command::DumpChar {
            common,
            kind,
            tuple,
            plane,
        } => dump_char(&common, kind, &tuple, &plane)?,
        Command::Verify { suite, common } => return verify(&suite, &common),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
