//! Command-line front end.
//!
//! Every option can also come from a key-value file given with `--config`
//! (`key = value` per line, `#` starts a comment, keys are the long flag names
//! without the leading dashes, e.g. `t-end = 20` or `t_end = 20`). Flags win
//! over the file. A file may also name the `command`, in which case the subcommand can
//! be left out.
//!
//! Trajectories go to `--out`, else to `$DRIFTLESS_PK_OUT_DIR/<command>.<ext>`
//! when that variable is set, else to stdout. Reports are always JSON.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | internal error |
//! | 2 | invalid configuration (the message names the field) |
//! | 3 | divergence guard or step-size floor tripped |
//! | 4 | switching radius not reached before `t-end` |
//! | 5 | degenerate attitude (`theta0 = 0` without `--degenerate`) |
//! | 6 | a requested check or certificate failed |
//! | 7 | I/O error |

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use nalgebra::Vector2;
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    asymptotics, brockett_scan, certify_run, rho_positive_config, rho_positive_study_with,
    stability_battery, AsymptoticReport,
};
use crate::closedform::{
    basis_matrix, closed_form_trajectory, degenerate_eval, eval, ClosedFormSolution,
};
use crate::driftless::{norm_sq, StateVector};
use crate::error::Error;
use crate::io::{to_csv_string, to_json_string, write_atomic, Metadata, TOOL_NAME};
use crate::simulate::{
    integrate, offset_system, run_switching, unicycle_system, GainConfig, GuardScope,
    IntegratorConfig, Method, Trajectory,
};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "DRIFTLESS_PK_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Internal = 1,
    InvalidConfig = 2,
    Divergence = 3,
    Timeout = 4,
    DegenerateAttitude = 5,
    CheckFailed = 6,
    Io = 7,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "driftless-pk",
    version,
    about = "Pseudo-kinetic-energy stabilization of the unicycle: simulation, closed form and checks",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    /// Key-value configuration file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<CommandArgs>,

    /// Overrides for a command named in the config file.
    #[command(
        flatten,
        next_help_heading = "Command options (when the config file names the command)"
    )]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// Integrate the closed loop and write the trajectory.
    Simulate(Flags),
    /// Sample the Bessel closed form in the same schema as `simulate`.
    ClosedForm(Flags),
    /// Fit the closed-form constants C1, C2 to an initial state.
    Fit(Flags),
    /// Compare the closed form against the numerical integrator.
    Compare(Flags),
    /// Run certificates and studies (`--what`), emitting a JSON report.
    Analyze(Flags),
    /// Mixed-gain run that switches the attitude gain inside `--epsilon`.
    Switch(Flags),
}

/// Options shared by all subcommands; each command reads the ones it needs.
#[derive(Args, Debug, Default)]
struct Flags {
    /// Initial state `x,y,theta` (meters, meters, radians).
    #[arg(long, value_name = "X,Y,THETA", allow_hyphen_values = true)]
    q0: Option<String>,
    /// Common gain for position and attitude.
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rho_pos: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rho_theta: Option<String>,
    /// Attitude gain after the switch.
    #[arg(long, allow_hyphen_values = true)]
    rho_theta_after: Option<String>,
    /// Switching radius for the position.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<String>,
    /// Fixed step for `rk4`.
    #[arg(long, allow_hyphen_values = true)]
    step: Option<String>,
    /// `rk4` (fixed step) or `rk45` (adaptive).
    #[arg(long, allow_hyphen_values = true)]
    method: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    abs_tol: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rel_tol: Option<String>,
    /// Minimum time between recorded samples.
    #[arg(long, allow_hyphen_values = true)]
    output_interval: Option<String>,
    /// `unicycle` or `offset`.
    #[arg(long, allow_hyphen_values = true)]
    model: Option<String>,
    /// Offset of the controlled point for `--model offset`.
    #[arg(long, allow_hyphen_values = true)]
    offset_a: Option<String>,
    /// Comparison or certificate tolerance.
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Comma-separated analyses: asymptotics, stability, battery, mixed, brockett.
    #[arg(long, allow_hyphen_values = true)]
    what: Option<String>,
    /// Number of battery runs.
    #[arg(long, allow_hyphen_values = true)]
    runs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// `csv` or `json` for trajectories.
    #[arg(long, allow_hyphen_values = true)]
    format: Option<String>,
    /// Allow `theta0 = 0` and use the exact linear solution.
    #[arg(long)]
    degenerate: bool,
}

const KEYS: &[&str] = &[
    "command",
    "q0",
    "rho",
    "rho-pos",
    "rho-theta",
    "rho-theta-after",
    "epsilon",
    "t-end",
    "step",
    "method",
    "abs-tol",
    "rel-tol",
    "output-interval",
    "model",
    "offset-a",
    "tol",
    "what",
    "runs",
    "seed",
    "out",
    "format",
    "degenerate",
];

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, Option<&String>)> {
        vec![
            ("q0", self.q0.as_ref()),
            ("rho", self.rho.as_ref()),
            ("rho-pos", self.rho_pos.as_ref()),
            ("rho-theta", self.rho_theta.as_ref()),
            ("rho-theta-after", self.rho_theta_after.as_ref()),
            ("epsilon", self.epsilon.as_ref()),
            ("t-end", self.t_end.as_ref()),
            ("step", self.step.as_ref()),
            ("method", self.method.as_ref()),
            ("abs-tol", self.abs_tol.as_ref()),
            ("rel-tol", self.rel_tol.as_ref()),
            ("output-interval", self.output_interval.as_ref()),
            ("model", self.model.as_ref()),
            ("offset-a", self.offset_a.as_ref()),
            ("tol", self.tol.as_ref()),
            ("what", self.what.as_ref()),
            ("runs", self.runs.as_ref()),
            ("seed", self.seed.as_ref()),
            ("out", self.out.as_ref()),
            ("format", self.format.as_ref()),
        ]
    }
}

/// A configuration problem tied to one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub field: String,
    pub reason: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid config: `{}`: {}", self.field, self.reason)
    }
}

impl std::error::Error for ConfigError {}

/// Parses `key = value` lines. Keys may use `-` or `_`.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(
                format!("config line {}", i + 1),
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError::new(
                key,
                format!("unknown key on config line {}", i + 1),
            ));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(ConfigError::new(
                key,
                format!("repeated on config line {}", i + 1),
            ));
        }
    }
    Ok(map)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Simulate,
    ClosedForm,
    Fit,
    Compare,
    Analyze,
    Switch,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Simulate => "simulate",
            CommandKind::ClosedForm => "closed-form",
            CommandKind::Fit => "fit",
            CommandKind::Compare => "compare",
            CommandKind::Analyze => "analyze",
            CommandKind::Switch => "switch",
        }
    }

    fn parse(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "simulate" => CommandKind::Simulate,
            "closed-form" => CommandKind::ClosedForm,
            "fit" => CommandKind::Fit,
            "compare" => CommandKind::Compare,
            "analyze" => CommandKind::Analyze,
            "switch" => CommandKind::Switch,
            other => {
                return Err(ConfigError::new(
                    "command",
                    format!("unknown command `{other}`"),
                ))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Model {
    Unicycle,
    Offset { a: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    Asymptotics,
    Stability,
    Battery,
    Mixed,
    Brockett,
}

impl Analysis {
    fn name(self) -> &'static str {
        match self {
            Analysis::Asymptotics => "asymptotics",
            Analysis::Stability => "stability",
            Analysis::Battery => "battery",
            Analysis::Mixed => "mixed",
            Analysis::Brockett => "brockett",
        }
    }
}

/// Fully resolved settings of one invocation.
///
/// Fields left `None` take command-specific defaults when the command runs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub q0: Option<[f64; 3]>,
    pub rho: Option<f64>,
    pub rho_pos: Option<f64>,
    pub rho_theta: Option<f64>,
    pub rho_theta_after: Option<f64>,
    pub epsilon: Option<f64>,
    pub t_end: Option<f64>,
    pub method: Option<Method>,
    pub output_interval: Option<f64>,
    pub model: Model,
    pub tol: Option<f64>,
    pub analyses: Vec<Analysis>,
    pub runs: usize,
    pub seed: u64,
    pub degenerate: bool,
    pub format: Format,
    /// Not echoed into output files, so the same run gives the same bytes anywhere.
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn parse_f64(field: &str, s: &str) -> Result<f64, ConfigError> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| ConfigError::new(field, format!("expected a number, got `{s}`")))?;
    if !v.is_finite() {
        return Err(ConfigError::new(
            field,
            format!("must be finite, got `{s}`"),
        ));
    }
    Ok(v)
}

fn parse_positive(field: &str, s: &str) -> Result<f64, ConfigError> {
    let v = parse_f64(field, s)?;
    if !(v > 0.0) {
        return Err(ConfigError::new(field, format!("must be > 0, got {v}")));
    }
    Ok(v)
}

fn parse_q0(s: &str) -> Result<[f64; 3], ConfigError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(ConfigError::new(
            "q0",
            format!(
                "expected 3 comma-separated numbers x,y,theta, got {}",
                parts.len()
            ),
        ));
    }
    let mut q = [0.0; 3];
    for (slot, p) in q.iter_mut().zip(parts) {
        *slot = parse_f64("q0", p)?;
    }
    Ok(q)
}

fn parse_bool(field: &str, s: &str) -> Result<bool, ConfigError> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(ConfigError::new(
            field,
            format!("expected true or false, got `{other}`"),
        )),
    }
}

impl RunConfig {
    /// Builds the configuration from merged `key -> value` settings.
    pub fn from_settings(
        command: CommandKind,
        settings: &BTreeMap<String, String>,
    ) -> Result<Self, ConfigError> {
        let get = |k: &str| settings.get(k).map(String::as_str);
        let num = |k: &str| get(k).map(|s| parse_f64(k, s)).transpose();
        let pos = |k: &str| get(k).map(|s| parse_positive(k, s)).transpose();

        let q0 = get("q0").map(parse_q0).transpose()?;

        let method = match get("method").unwrap_or("default") {
            "default" => {
                if settings.contains_key("abs-tol") || settings.contains_key("rel-tol") {
                    Some(Method::Rk45Adaptive {
                        abs_tol: pos("abs-tol")?.unwrap_or(1e-12),
                        rel_tol: pos("rel-tol")?.unwrap_or(1e-10),
                    })
                } else {
                    pos("step")?.map(|step| Method::Rk4Fixed { step })
                }
            }
            "rk4" => Some(Method::Rk4Fixed {
                step: pos("step")?.unwrap_or(IntegratorConfig::DEFAULT_STEP),
            }),
            "rk45" => Some(Method::Rk45Adaptive {
                abs_tol: pos("abs-tol")?.unwrap_or(1e-12),
                rel_tol: pos("rel-tol")?.unwrap_or(1e-10),
            }),
            other => {
                return Err(ConfigError::new(
                    "method",
                    format!("expected `rk4` or `rk45`, got `{other}`"),
                ))
            }
        };

        let model = match get("model").unwrap_or("unicycle") {
            "unicycle" => {
                if settings.contains_key("offset-a") {
                    return Err(ConfigError::new(
                        "offset-a",
                        "only valid with `model = offset`",
                    ));
                }
                Model::Unicycle
            }
            "offset" => Model::Offset {
                a: num("offset-a")?
                    .ok_or_else(|| ConfigError::new("offset-a", "required by `model = offset`"))?,
            },
            other => {
                return Err(ConfigError::new(
                    "model",
                    format!("expected `unicycle` or `offset`, got `{other}`"),
                ))
            }
        };

        let analyses = match get("what") {
            None => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|w| match w.trim() {
                    "asymptotics" => Ok(Analysis::Asymptotics),
                    "stability" => Ok(Analysis::Stability),
                    "battery" => Ok(Analysis::Battery),
                    "mixed" => Ok(Analysis::Mixed),
                    "brockett" => Ok(Analysis::Brockett),
                    other => Err(ConfigError::new(
                        "what",
                        format!(
                            "unknown analysis `{other}` (expected asymptotics, stability, battery, mixed or brockett)"
                        ),
                    )),
                })
                .collect::<Result<Vec<_>, _>>()?,
        };

        let format = match get("format").unwrap_or("csv") {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => {
                return Err(ConfigError::new(
                    "format",
                    format!("expected `csv` or `json`, got `{other}`"),
                ))
            }
        };

        let runs = match get("runs") {
            None => 50,
            Some(s) => s
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    ConfigError::new("runs", format!("expected a positive integer, got `{s}`"))
                })?,
        };
        let seed = match get("seed") {
            None => 1,
            Some(s) => s.trim().parse::<u64>().map_err(|_| {
                ConfigError::new("seed", format!("expected an unsigned integer, got `{s}`"))
            })?,
        };

        let cfg = RunConfig {
            command,
            q0,
            rho: num("rho")?,
            rho_pos: num("rho-pos")?,
            rho_theta: num("rho-theta")?,
            rho_theta_after: num("rho-theta-after")?,
            epsilon: pos("epsilon")?,
            t_end: pos("t-end")?,
            method,
            output_interval: pos("output-interval")?,
            model,
            tol: pos("tol")?,
            analyses,
            runs,
            seed,
            degenerate: get("degenerate")
                .map(|s| parse_bool("degenerate", s))
                .transpose()?
                .unwrap_or(false),
            format,
            out: get("out").map(PathBuf::from),
        };
        cfg.check_required()?;
        Ok(cfg)
    }

    fn check_required(&self) -> Result<(), ConfigError> {
        let needs_q0 = match self.command {
            CommandKind::Analyze => self.analyses.iter().any(|a| {
                matches!(
                    a,
                    Analysis::Asymptotics | Analysis::Stability | Analysis::Mixed
                )
            }),
            _ => true,
        };
        if needs_q0 && self.q0.is_none() {
            return Err(ConfigError::new(
                "q0",
                format!("missing; required by `{}`", self.command.name()),
            ));
        }
        if self.command == CommandKind::Analyze && self.analyses.is_empty() {
            return Err(ConfigError::new("what", "missing; required by `analyze`"));
        }
        let model_ok = matches!(self.model, Model::Unicycle)
            || match self.command {
                CommandKind::Simulate => true,
                CommandKind::Analyze => self.analyses.iter().all(|a| *a == Analysis::Stability),
                _ => false,
            };
        if !model_ok {
            return Err(ConfigError::new(
                "model",
                format!("`offset` is not supported by `{}`", self.command.name()),
            ));
        }
        if self.degenerate
            && !matches!(self.command, CommandKind::ClosedForm | CommandKind::Compare)
        {
            return Err(ConfigError::new(
                "degenerate",
                format!(
                    "only meaningful for `closed-form` and `compare`, not `{}`",
                    self.command.name()
                ),
            ));
        }
        if let Some(q0) = self.q0 {
            if self.degenerate && q0[2] != 0.0 {
                return Err(ConfigError::new(
                    "degenerate",
                    format!("requires theta0 = 0, got {}", q0[2]),
                ));
            }
        }
        Ok(())
    }

    fn q0(&self) -> [f64; 3] {
        self.q0.expect("checked by check_required")
    }

    /// Gains for single-gain commands: `rho` (default -1) overridden per column.
    fn gains(&self) -> GainConfig {
        let rho = self.rho.unwrap_or(-1.0);
        GainConfig::mixed(self.rho_pos.unwrap_or(rho), self.rho_theta.unwrap_or(rho))
    }

    /// The closed form needs one negative gain for both columns.
    fn closed_form_rho(&self) -> Result<f64, ConfigError> {
        let g = self.gains();
        if g.rho_pos != g.rho_theta {
            return Err(ConfigError::new(
                "rho-pos",
                format!(
                    "the closed form needs equal gains, got rho-pos = {} and rho-theta = {}",
                    g.rho_pos, g.rho_theta
                ),
            ));
        }
        if !(g.rho_pos < 0.0) {
            return Err(ConfigError::new(
                "rho",
                format!("the closed form needs rho < 0, got {}", g.rho_pos),
            ));
        }
        Ok(g.rho_pos)
    }

    fn integrator(&self, default_method: Method, default_t_end: f64) -> IntegratorConfig {
        IntegratorConfig {
            method: self.method.unwrap_or(default_method),
            t_end: self.t_end.unwrap_or(default_t_end),
            guard: GuardScope::Full,
            guard_factor: IntegratorConfig::DEFAULT_GUARD_FACTOR,
            output_interval: self.output_interval,
        }
    }
}

const RK4_DEFAULT: Method = Method::Rk4Fixed {
    step: IntegratorConfig::DEFAULT_STEP,
};
const RK45_DEFAULT: Method = Method::Rk45Adaptive {
    abs_tol: 1e-12,
    rel_tol: 1e-10,
};

/// Failure of a command, already mapped to its exit status.
#[derive(Debug)]
struct Failure {
    status: ExitStatus,
    message: String,
    /// Whatever should still be written (e.g. the partial trajectory).
    output: Option<Output>,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure {
            status: ExitStatus::InvalidConfig,
            message: e.to_string(),
            output: None,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Argument { .. }
            | Error::Dimension { .. }
            | Error::Domain { .. }
            | Error::Range { .. }
            | Error::Parse(_) => ExitStatus::InvalidConfig,
            Error::Divergence { .. } | Error::StepFloor { .. } => ExitStatus::Divergence,
            Error::SwitchTimeout { .. } => ExitStatus::Timeout,
            Error::DegenerateAttitude => ExitStatus::DegenerateAttitude,
            Error::Inconclusive(_) => ExitStatus::CheckFailed,
            Error::Io(_) => ExitStatus::Io,
            Error::Json(_) | Error::Csv(_) => ExitStatus::Internal,
        };
        Failure {
            status,
            message: e.to_string(),
            output: None,
        }
    }
}

#[derive(Debug)]
struct Output {
    bytes: Vec<u8>,
    extension: &'static str,
}

/// Result of a command that ran to completion.
struct Success {
    output: Output,
    summary: String,
    status: ExitStatus,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. The default output directory is read from
/// [`OUT_DIR_ENV`].
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out_dir = std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    run_with_out_dir(args, out_dir.as_deref(), stdout, stderr)
}

/// [`run`] with an explicit default output directory instead of the environment.
pub fn run_with_out_dir<I, T>(
    args: I,
    out_dir: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                ExitStatus::InvalidConfig.code()
            } else {
                let _ = write!(stdout, "{text}");
                ExitStatus::Success.code()
            };
        }
    };

    let (cfg, result) = match resolve(cli) {
        Ok(cfg) => {
            let result = execute(&cfg);
            (Some(cfg), result)
        }
        Err(f) => (None, Err(f)),
    };

    let (status, output) = match result {
        Ok(s) => {
            let _ = writeln!(stderr, "{}", s.summary);
            (s.status, Some(s.output))
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            (f.status, f.output)
        }
    };

    if let (Some(cfg), Some(output)) = (cfg, output) {
        if let Err(e) = emit(&cfg, &output, out_dir, stdout, stderr) {
            let _ = writeln!(stderr, "error: {e}");
            return ExitStatus::Io.code();
        }
    }
    status.code()
}

fn resolve(cli: Cli) -> Result<RunConfig, Failure> {
    let mut settings = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                status: ExitStatus::Io,
                message: format!("cannot read config file {}: {e}", path.display()),
                output: None,
            })?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    let file_command = settings.remove("command");
    let (command, flags) = match cli.command {
        Some(c) => match c {
            CommandArgs::Simulate(f) => (CommandKind::Simulate, f),
            CommandArgs::ClosedForm(f) => (CommandKind::ClosedForm, f),
            CommandArgs::Fit(f) => (CommandKind::Fit, f),
            CommandArgs::Compare(f) => (CommandKind::Compare, f),
            CommandArgs::Analyze(f) => (CommandKind::Analyze, f),
            CommandArgs::Switch(f) => (CommandKind::Switch, f),
        },
        None => match file_command {
            Some(name) => (CommandKind::parse(&name)?, cli.flags),
            None => {
                return Err(ConfigError::new(
                    "command",
                    "missing; give a subcommand or `command = ...` in the config file",
                )
                .into())
            }
        },
    };
    for (key, value) in flags.pairs() {
        if let Some(v) = value {
            settings.insert(key.to_string(), v.clone());
        }
    }
    if flags.degenerate {
        settings.insert("degenerate".into(), "true".into());
    }
    Ok(RunConfig::from_settings(command, &settings)?)
}

fn emit(
    cfg: &RunConfig,
    output: &Output,
    out_dir: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> crate::error::Result<()> {
    let path = match (&cfg.out, out_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join(format!("{}.{}", cfg.command.name(), output.extension)))
        }
        (None, None) => None,
    };
    match path {
        Some(p) => {
            write_atomic(&p, &output.bytes)?;
            writeln!(stderr, "wrote {}", p.display())?;
        }
        None => stdout.write_all(&output.bytes)?,
    }
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<Success, Failure> {
    match cfg.command {
        CommandKind::Simulate => cmd_simulate(cfg),
        CommandKind::ClosedForm => cmd_closed_form(cfg),
        CommandKind::Fit => cmd_fit(cfg),
        CommandKind::Compare => cmd_compare(cfg),
        CommandKind::Analyze => cmd_analyze(cfg),
        CommandKind::Switch => cmd_switch(cfg),
    }
}

fn config_echo(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

fn trajectory_output(
    cfg: &RunConfig,
    traj: &Trajectory,
    meta: &Metadata,
) -> crate::error::Result<Output> {
    Ok(match cfg.format {
        Format::Csv => Output {
            bytes: to_csv_string(traj)?.into_bytes(),
            extension: "csv",
        },
        Format::Json => Output {
            bytes: to_json_string(traj, meta)?.into_bytes(),
            extension: "json",
        },
    })
}

fn report_output<T: Serialize>(report: &T) -> crate::error::Result<Output> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(Output {
        bytes: s.into_bytes(),
        extension: "json",
    })
}

/// Turns an integration error into a failure that still writes the partial run.
fn with_partial(cfg: &RunConfig, err: Error, extra: impl FnOnce(&mut Metadata)) -> Failure {
    let output = err.partial_trajectory().and_then(|traj| {
        let mut meta = Metadata::new(config_echo(cfg));
        meta.status = err.to_string();
        extra(&mut meta);
        trajectory_output(cfg, traj, &meta).ok()
    });
    Failure {
        output,
        ..Failure::from(err)
    }
}

fn final_summary(traj: &Trajectory) -> String {
    match (traj.final_time(), traj.final_state()) {
        (Some(t), Some(q)) => format!(
            "{} samples, t = {t}, |q| = {:.6e}, energy = {:.6e}",
            traj.len(),
            q.norm(),
            traj.final_energy().unwrap_or(0.0)
        ),
        _ => "empty trajectory".into(),
    }
}

fn cmd_simulate(cfg: &RunConfig) -> Result<Success, Failure> {
    let q0 = StateVector::new(cfg.q0().to_vec()).map_err(Failure::from)?;
    let gains = cfg.gains();
    gains.validate()?;
    let icfg = cfg.integrator(RK4_DEFAULT, 20.0);
    let result = match cfg.model {
        Model::Unicycle => integrate(unicycle_system(&gains), &q0, &icfg),
        Model::Offset { a } => integrate(offset_system(a, &gains)?, &q0, &icfg),
    };
    let traj = result.map_err(|e| with_partial(cfg, e, |_| {}))?;
    let meta = Metadata::new(config_echo(cfg));
    Ok(Success {
        output: trajectory_output(cfg, &traj, &meta)?,
        summary: format!("simulate: {}", final_summary(&traj)),
        status: ExitStatus::Success,
    })
}

fn sample_times(t_end: f64, dt: f64) -> Vec<f64> {
    let n = (t_end / dt).round().max(1.0) as usize;
    (0..=n).map(|i| t_end * i as f64 / n as f64).collect()
}

fn degenerate_trajectory(q0: [f64; 3], rho: f64, times: &[f64]) -> Trajectory {
    let mut traj = Trajectory::default();
    for &t in times {
        let [x, y] = degenerate_eval(q0[0], q0[1], rho, t);
        let q = [x, y, 0.0];
        let energy = (0.5 * rho.abs() * (norm_sq(&q0) - norm_sq(&q))).max(0.0);
        traj.push(t, &q, energy);
    }
    traj
}

fn cmd_closed_form(cfg: &RunConfig) -> Result<Success, Failure> {
    let q0 = cfg.q0();
    let rho = cfg.closed_form_rho()?;
    let times = sample_times(
        cfg.t_end.unwrap_or(20.0),
        cfg.output_interval.unwrap_or(0.01),
    );
    let traj = if cfg.degenerate {
        degenerate_trajectory(q0, rho, &times)
    } else {
        let sol = ClosedFormSolution::fit(Vector2::new(q0[0], q0[1]), q0[2], rho)?;
        closed_form_trajectory(&sol, &times)?
    };
    let meta = Metadata::new(config_echo(cfg));
    Ok(Success {
        output: trajectory_output(cfg, &traj, &meta)?,
        summary: format!("closed-form: {}", final_summary(&traj)),
        status: ExitStatus::Success,
    })
}

#[derive(Serialize)]
struct FitReport {
    theta0: f64,
    rho: f64,
    c1: f64,
    c2: f64,
    basis_determinant: f64,
    asymptotics: AsymptoticReport,
}

fn cmd_fit(cfg: &RunConfig) -> Result<Success, Failure> {
    let q0 = cfg.q0();
    let rho = cfg.closed_form_rho()?;
    let sol = ClosedFormSolution::fit(Vector2::new(q0[0], q0[1]), q0[2], rho)?;
    let report = FitReport {
        theta0: sol.theta0,
        rho,
        c1: sol.c1,
        c2: sol.c2,
        basis_determinant: basis_matrix(sol.theta0)?.determinant(),
        asymptotics: asymptotics(&sol)?,
    };
    Ok(Success {
        output: report_output(&json!({
            "tool": TOOL_NAME,
            "version": env!("CARGO_PKG_VERSION"),
            "fit": report,
        }))?,
        summary: format!("fit: c1 = {:.12e}, c2 = {:.12e}", sol.c1, sol.c2),
        status: ExitStatus::Success,
    })
}

/// Largest deviations between the closed form and the integrator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub samples: usize,
    pub t_end: f64,
    /// Max over samples and columns of the absolute difference.
    pub sup_norm: f64,
    pub max_abs_error: ColumnErrors,
    /// Time at which `sup_norm` is attained.
    pub worst_time: f64,
    pub tol: f64,
    pub degenerate: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnErrors {
    pub x_c: f64,
    pub y_c: f64,
    pub theta: f64,
}

fn cmd_compare(cfg: &RunConfig) -> Result<Success, Failure> {
    let q0 = cfg.q0();
    let rho = cfg.closed_form_rho()?;
    let tol = cfg.tol.unwrap_or(1e-4);
    let sol = if cfg.degenerate {
        None
    } else {
        Some(ClosedFormSolution::fit(
            Vector2::new(q0[0], q0[1]),
            q0[2],
            rho,
        )?)
    };
    let icfg = cfg.integrator(RK4_DEFAULT, 10.0);
    let traj = integrate(
        unicycle_system(&GainConfig::uniform(rho)),
        &StateVector::new(q0.to_vec())?,
        &icfg,
    )
    .map_err(|e| with_partial(cfg, e, |_| {}))?;

    let mut cols = [0.0f64; 3];
    let mut sup = 0.0f64;
    let mut worst_time = 0.0;
    for (&t, q) in traj.times.iter().zip(&traj.states) {
        let exact = match &sol {
            Some(sol) => {
                let p = eval(sol, t)?;
                [p.x[0], p.x[1], p.theta]
            }
            None => {
                let [x, y] = degenerate_eval(q0[0], q0[1], rho, t);
                [x, y, 0.0]
            }
        };
        for i in 0..3 {
            let d = (exact[i] - q[i]).abs();
            cols[i] = cols[i].max(d);
            if d > sup {
                sup = d;
                worst_time = t;
            }
        }
    }
    let report = ComparisonReport {
        samples: traj.len(),
        t_end: icfg.t_end,
        sup_norm: sup,
        max_abs_error: ColumnErrors {
            x_c: cols[0],
            y_c: cols[1],
            theta: cols[2],
        },
        worst_time,
        tol,
        degenerate: cfg.degenerate,
        passed: sup <= tol,
    };
    let status = if report.passed {
        ExitStatus::Success
    } else {
        ExitStatus::CheckFailed
    };
    Ok(Success {
        summary: format!(
            "compare: sup-norm {:.3e} at t = {worst_time} (tol {tol:e}): {}",
            sup,
            if report.passed { "pass" } else { "FAIL" }
        ),
        output: report_output(&json!({
            "tool": TOOL_NAME,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config_echo(cfg),
            "comparison": report,
        }))?,
        status,
    })
}

fn cmd_analyze(cfg: &RunConfig) -> Result<Success, Failure> {
    let tol = cfg.tol.unwrap_or(1e-6);
    let mut results = serde_json::Map::new();
    let mut failed = Vec::new();
    for &analysis in &cfg.analyses {
        let (value, passed) = run_analysis(cfg, analysis, tol)?;
        if !passed {
            failed.push(analysis.name());
        }
        results.insert(
            analysis.name().to_string(),
            json!({ "passed": passed, "report": value }),
        );
    }
    let passed = failed.is_empty();
    Ok(Success {
        output: report_output(&json!({
            "tool": TOOL_NAME,
            "version": env!("CARGO_PKG_VERSION"),
            "config": config_echo(cfg),
            "passed": passed,
            "results": results,
        }))?,
        summary: if passed {
            format!("analyze: all {} passed", cfg.analyses.len())
        } else {
            format!("analyze: failed: {}", failed.join(", "))
        },
        status: if passed {
            ExitStatus::Success
        } else {
            ExitStatus::CheckFailed
        },
    })
}

/// Attitudes and grid used by the `brockett` analysis: 10 x 25 x 4 = 1000 points.
const BROCKETT_THETAS: [f64; 10] = [-3.0, -2.2, -1.4, -0.7, -0.2, 0.2, 0.7, 1.4, 2.2, 3.0];
const BROCKETT_DIRECTIONS: usize = 25;
const BROCKETT_RADII: [f64; 4] = [0.5, 1.0, 2.0, 3.0];

/// Radius of the ball sampled by the `battery` analysis.
const BATTERY_RADIUS: f64 = 5.0;

fn run_analysis(
    cfg: &RunConfig,
    analysis: Analysis,
    tol: f64,
) -> Result<(serde_json::Value, bool), Failure> {
    Ok(match analysis {
        Analysis::Asymptotics => {
            let q0 = cfg.q0();
            let rho = cfg.closed_form_rho()?;
            let sol = ClosedFormSolution::fit(Vector2::new(q0[0], q0[1]), q0[2], rho)?;
            let report = asymptotics(&sol)?;
            // numerical cross-check of the limit point
            let icfg = cfg.integrator(RK4_DEFAULT, 40.0);
            let traj = integrate(
                unicycle_system(&GainConfig::uniform(rho)),
                &StateVector::new(q0.to_vec())?,
                &icfg,
            )?;
            let q_end = traj.final_state().expect("non-empty");
            let distance = (q_end[0] - report.x_infinity[0]).hypot(q_end[1] - report.x_infinity[1]);
            let passed = report.x_infinity[0] == 0.0 && distance <= 1e-6;
            (
                json!({
                    "c1": sol.c1,
                    "c2": sol.c2,
                    "limits": to_value(&report),
                    "numerical_final_position": [q_end[0], q_end[1]],
                    "numerical_horizon": icfg.t_end,
                    "numerical_distance": distance,
                }),
                passed,
            )
        }
        Analysis::Stability => {
            let q0 = StateVector::new(cfg.q0().to_vec())?;
            let gains = cfg.gains();
            gains.validate()?;
            let icfg = cfg.integrator(RK4_DEFAULT, 30.0);
            let (cert, _) = match cfg.model {
                Model::Unicycle => certify_run(unicycle_system(&gains), &q0, &icfg, tol)?,
                Model::Offset { a } => {
                    let field = offset_system(a, &gains)?;
                    certify_run(&field, &q0, &icfg, tol)?
                }
            };
            let passed = cert.passed();
            (to_value(&cert), passed)
        }
        Analysis::Battery => {
            let rho = cfg.closed_form_rho()?;
            let icfg = cfg
                .integrator(RK4_DEFAULT, 30.0)
                .with_output_interval(cfg.output_interval.unwrap_or(0.01));
            let report = stability_battery(cfg.runs, cfg.seed, BATTERY_RADIUS, rho, &icfg, tol)?;
            let passed = report.all_passed;
            (to_value(&report), passed)
        }
        Analysis::Mixed => {
            let q0 = StateVector::new(cfg.q0().to_vec())?;
            let gains = GainConfig::mixed(
                cfg.rho_pos.or(cfg.rho).unwrap_or(-1.0),
                cfg.rho_theta.unwrap_or(1.0),
            );
            let defaults = rho_positive_config(cfg.t_end.unwrap_or(15.0));
            let icfg = IntegratorConfig {
                method: cfg.method.unwrap_or(defaults.method),
                output_interval: cfg.output_interval.or(defaults.output_interval),
                ..defaults
            };
            let report = rho_positive_study_with(&q0, &gains, &icfg)?;
            let passed = !report.position_diverged
                && report.attitude_growing
                && report.x_norm_final < report.x_norm_initial;
            (to_value(&report), passed)
        }
        Analysis::Brockett => {
            let report =
                brockett_scan(&BROCKETT_THETAS, BROCKETT_DIRECTIONS, &BROCKETT_RADII, tol)?;
            let passed = report.single_line;
            (to_value(&report), passed)
        }
    })
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

fn cmd_switch(cfg: &RunConfig) -> Result<Success, Failure> {
    let q0 = StateVector::new(cfg.q0().to_vec())?;
    let gains = GainConfig::switching(
        cfg.rho_pos.or(cfg.rho).unwrap_or(-1.0),
        cfg.rho_theta.unwrap_or(1.0),
        cfg.epsilon.unwrap_or(0.05),
        cfg.rho_theta_after.unwrap_or(-1.0),
    );
    let icfg = cfg
        .integrator(RK45_DEFAULT, 25.0)
        .with_output_interval(cfg.output_interval.unwrap_or(0.01));
    let run = run_switching(&q0, &gains, &icfg).map_err(|e| with_partial(cfg, e, |_| {}))?;
    let mut meta = Metadata::new(config_echo(cfg));
    meta.switch_time = Some(run.switch_time);
    Ok(Success {
        output: trajectory_output(cfg, &run.trajectory, &meta)?,
        summary: format!(
            "switch: switched at t = {:.6}; {}",
            run.switch_time,
            final_summary(&run.trajectory)
        ),
        status: ExitStatus::Success,
    })
}
