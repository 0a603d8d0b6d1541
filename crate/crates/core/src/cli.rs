//! `qmin` command-line front end.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 state-invariant violation,
//! 3 verification failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::channels::{sweep, ChannelKind, SweepRecord};
use crate::error::{Error, Result};
use crate::families::{Family, FamilyParam};
use crate::io::{read_state, write_sweep_csv};
use crate::measures::{measure_report, MeasureReport};
use crate::optimizer::{oracle_report, OracleConfig};
use crate::state::BipartiteState;
use crate::verify::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID_STATE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const FIGURE_POINTS: usize = 201;

#[derive(Debug, Parser)]
#[command(
    name = "qmin",
    version,
    about = "Measurement-induced nonlocality and concurrence of bipartite states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measures of a state read from a JSON state file.
    Measure {
        file: PathBuf,
        /// Also print the report as one JSON object.
        #[arg(long)]
        json: bool,
        /// Oracle seed (used when subsystem a is not a qubit).
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Concurrence, hs_min and f_min of the noisy pure-alpha state along gamma in [0, 1].
    Sweep {
        #[arg(long)]
        channel: ChannelArg,
        #[arg(long)]
        alpha: f64,
        /// Environment parameter of the generalized amplitude damping channel.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = FIGURE_POINTS)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Preset sweeps starting from the Bell state.
    Figure {
        id: FigureId,
        #[arg(long)]
        out: PathBuf,
    },
    /// Oracle value next to the closed form for a named family.
    Named {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Runs the invariant suite.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Multiplies every numeric tolerance; 0 forces failures.
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
        /// Random states per dimension pair.
        #[arg(long, default_value_t = 20)]
        corpus: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelArg {
    Ad,
    Depol,
    Gad,
}

impl From<ChannelArg> for ChannelKind {
    fn from(c: ChannelArg) -> Self {
        match c {
            ChannelArg::Ad => ChannelKind::AmplitudeDamping,
            ChannelArg::Depol => ChannelKind::Depolarizing,
            ChannelArg::Gad => ChannelKind::GeneralizedAmplitudeDamping,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "3a")]
    ThreeA,
    #[value(name = "3b")]
    ThreeB,
}

impl FigureId {
    /// Channel and `p` of the preset; the initial state is always `α = 1/2`.
    pub fn preset(self) -> (ChannelKind, Option<f64>) {
        match self {
            FigureId::One => (ChannelKind::AmplitudeDamping, None),
            FigureId::Two => (ChannelKind::Depolarizing, None),
            FigureId::ThreeA => (ChannelKind::GeneralizedAmplitudeDamping, Some(2.0 / 3.0)),
            FigureId::ThreeB => (ChannelKind::GeneralizedAmplitudeDamping, Some(1.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Isotropic,
    Werner,
    Pure,
}

pub fn figure_rows(id: FigureId) -> Result<Vec<SweepRecord>> {
    let (kind, p) = id.preset();
    sweep(kind, 0.5, p, FIGURE_POINTS)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidState(_) => EXIT_INVALID_STATE,
        _ => EXIT_USAGE,
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.12}"))
}

fn render_report(out: &mut dyn Write, s: &BipartiteState, r: &MeasureReport) -> std::io::Result<()> {
    writeln!(out, "dims: {}x{}", s.dim_a(), s.dim_b())?;
    writeln!(out, "purity: {:.12}", r.purity)?;
    writeln!(out, "concurrence: {}", opt(r.concurrence))?;
    writeln!(out, "hs_min: {:.12}", r.hs_min)?;
    writeln!(out, "f_min: {:.12}", r.f_min)?;
    writeln!(out, "f_min_paper: {}", opt(r.f_min_paper))?;
    writeln!(out, "f_min_upper_bound: {:.12}", r.f_min_upper_bound)
}

fn report_json(s: &BipartiteState, r: &MeasureReport) -> serde_json::Value {
    serde_json::json!({
        "dims": [s.dim_a(), s.dim_b()],
        "purity": r.purity,
        "concurrence": r.concurrence,
        "hs_min": r.hs_min,
        "f_min": r.f_min,
        "f_min_paper": r.f_min_paper,
        "f_min_upper_bound": r.f_min_upper_bound,
    })
}

fn named_param(
    family: FamilyArg,
    m: usize,
    x: Option<f64>,
    alpha: Option<f64>,
) -> std::result::Result<FamilyParam, String> {
    match family {
        FamilyArg::Isotropic => Ok(FamilyParam::isotropic(
            m,
            x.ok_or("--x is required for isotropic")?,
        )),
        FamilyArg::Werner => Ok(FamilyParam::werner(m, x.ok_or("--x is required for werner")?)),
        FamilyArg::Pure => Ok(FamilyParam::pure_alpha(
            alpha.ok_or("--alpha is required for pure")?,
        )),
    }
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Measure { file, json, seed } => {
            let s = read_state(&file)?;
            let r = measure_report(&s, &OracleConfig::with_seed(seed))?;
            if s.dim_a() != 2 {
                writeln!(out, "seed: {seed}")?;
            }
            render_report(out, &s, &r)?;
            if json {
                writeln!(out, "{}", report_json(&s, &r))?;
            }
        }
        Command::Sweep {
            channel,
            alpha,
            p,
            steps,
            out: path,
            seed,
        } => {
            let kind = ChannelKind::from(channel);
            if kind == ChannelKind::GeneralizedAmplitudeDamping && p.is_none() {
                writeln!(err, "error: --p is required for --channel gad")?;
                return Ok(EXIT_USAGE);
            }
            let rows = sweep(kind, alpha, p, steps)?;
            write_sweep_csv(&path, &rows)?;
            writeln!(out, "seed: {seed}")?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        Command::Figure { id, out: path } => {
            let rows = figure_rows(id)?;
            write_sweep_csv(&path, &rows)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
        }
        Command::Named {
            family,
            m,
            x,
            alpha,
            seed,
        } => {
            let param = match named_param(family, m, x, alpha) {
                Ok(p) => p,
                Err(msg) => {
                    writeln!(err, "error: {msg}")?;
                    return Ok(EXIT_USAGE);
                }
            };
            let s = param.state()?;
            let closed = param.fmin_closed_form()?;
            let r = oracle_report(&s, &OracleConfig::with_seed(seed))?;
            writeln!(out, "family: {}", param.family)?;
            match param.family {
                Family::PureAlpha | Family::Bell => writeln!(out, "alpha: {}", param.alpha)?,
                _ => writeln!(out, "m: {}\nx: {}", param.m, param.x)?,
            }
            writeln!(out, "seed: {seed}")?;
            writeln!(out, "f_min_oracle: {:.12}", r.f_min)?;
            writeln!(out, "f_min_closed_form: {closed:.12}")?;
            writeln!(out, "abs_diff: {:.3e}", (r.f_min - closed).abs())?;
            writeln!(out, "hs_min_oracle: {:.12}", r.hs_min)?;
            writeln!(out, "f_min_upper_bound: {:.12}", r.f_min_upper_bound)?;
        }
        Command::Verify {
            seed,
            tolerance_scale,
            corpus,
        } => {
            let cfg = VerifyConfig {
                seed,
                tolerance_scale,
                corpus,
                oracle: OracleConfig::with_seed(seed),
            };
            let report = verify::run(&cfg)?;
            writeln!(out, "{report}")?;
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match run_command(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
