// Copyright 2026 The temporal-bell Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Command-line front end: protocol, histories, erasure and Bell
//! experiments with single-angle or swept-α requests, emitted as CSV or
//! JSON. Output is deterministic — identical requests produce identical
//! bytes.

use std::f64::consts::{FRAC_PI_4, PI};
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::erasure::{
    bell_value_direct_with, bell_value_erased_with, delayed_choice_erase, erase_all_outcomes,
    OutcomePair,
};
use crate::error::Error;
use crate::histories::{enumerate_x_histories, enumerate_z_histories, ReadoutBasis};
use crate::protocol::{run_protocol, ProtocolConfig, ProtocolRun, MAX_ENUMERATED_MEMORIES};
use crate::statevector::Spin;

/// Norm drift beyond this aborts a run with exit code 3.
pub const NORM_DRIFT_LIMIT: f64 = 1e-9;

/// Hard cap on the register size accepted over the command line.
pub const MAX_CLI_MEMORIES: usize = 16;

const USAGE: &str = "\
usage: temporal-bell [OPTIONS]

  --mode protocol|histories|erasure|bell   experiment to run (default: bell)
  --alpha RADIANS                          rotation angle per step (default: pi/4)
  --sweep START:STOP:STEPS                 sweep alpha instead of a single value
  --degrees                                interpret --alpha / --sweep in degrees
  --memories N                             memory spins M (default: 4)
  --basis z|x                              readout basis for histories mode (default: z)
  --outcomes ++|+-|-+|--|all               erasure post-selection (default: all)
  --format csv|json                        output format (default: json)
  --out PATH                               write to PATH instead of stdout

exit codes: 0 ok, 2 usage error, 3 numerical invariant breach, 4 I/O error";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Protocol,
    Histories,
    Erasure,
    Bell,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Protocol => "protocol",
            Mode::Histories => "histories",
            Mode::Erasure => "erasure",
            Mode::Bell => "bell",
        }
    }
}

/// A single angle or an inclusive linear sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaSpec {
    Single(f64),
    Sweep { start: f64, stop: f64, steps: usize },
}

impl AlphaSpec {
    /// The angles this request evaluates, in order.
    pub fn values(&self) -> Vec<f64> {
        match *self {
            AlphaSpec::Single(alpha) => vec![alpha],
            AlphaSpec::Sweep { start, stop, steps } => {
                if steps == 1 {
                    vec![start]
                } else {
                    let delta = (stop - start) / (steps - 1) as f64;
                    (0..steps).map(|i| start + i as f64 * delta).collect()
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutcomeSelection {
    All,
    One(OutcomePair),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A validated command-line request.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub mode: Mode,
    pub alpha: AlphaSpec,
    pub memories: usize,
    pub basis: ReadoutBasis,
    pub outcomes: OutcomeSelection,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunRequest {
    fn default() -> Self {
        RunRequest {
            mode: Mode::Bell,
            alpha: AlphaSpec::Single(FRAC_PI_4),
            memories: 4,
            basis: ReadoutBasis::Z,
            outcomes: OutcomeSelection::All,
            format: OutputFormat::Json,
            out: None,
        }
    }
}

/// CLI failure, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invariant(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Invariant(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Invariant(msg) => write!(f, "numerical invariant breached: {msg}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage_err<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn parse_sweep(text: &str) -> Result<AlphaSpec, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return usage_err(format!(
            "malformed sweep '{text}', expected START:STOP:STEPS"
        ));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep start '{}'", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep stop '{}'", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| CliError::Usage(format!("bad sweep step count '{}'", parts[2])))?;
    if !start.is_finite() || !stop.is_finite() {
        return usage_err("sweep bounds must be finite");
    }
    if steps < 1 {
        return usage_err("sweep needs at least one step");
    }
    if start > stop {
        return usage_err(format!("sweep start {start} exceeds stop {stop}"));
    }
    Ok(AlphaSpec::Sweep { start, stop, steps })
}

fn parse_outcomes(text: &str) -> Result<OutcomeSelection, CliError> {
    let pair = |a, b| OutcomeSelection::One(OutcomePair::new(a, b));
    match text {
        "all" => Ok(OutcomeSelection::All),
        "++" => Ok(pair(Spin::Plus, Spin::Plus)),
        "+-" => Ok(pair(Spin::Plus, Spin::Minus)),
        "-+" => Ok(pair(Spin::Minus, Spin::Plus)),
        "--" => Ok(pair(Spin::Minus, Spin::Minus)),
        other => usage_err(format!(
            "unknown outcomes '{other}', expected ++, +-, -+, -- or all"
        )),
    }
}

/// Parses raw arguments (program name excluded) into a validated request.
pub fn parse_request<I>(args: I) -> Result<RunRequest, CliError>
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let mut mode = Mode::Bell;
    let mut alpha: Option<f64> = None;
    let mut sweep: Option<AlphaSpec> = None;
    let mut memories = 4usize;
    let mut basis = ReadoutBasis::Z;
    let mut outcomes = OutcomeSelection::All;
    let mut format = OutputFormat::Json;
    let mut out: Option<PathBuf> = None;
    let mut degrees = false;

    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let arg = arg.as_ref();
        let mut value_for = |flag: &str| -> Result<String, CliError> {
            iter.next()
                .map(|v| v.as_ref().to_string())
                .ok_or_else(|| CliError::Usage(format!("{flag} needs a value")))
        };
        match arg {
            "--mode" => {
                mode = match value_for("--mode")?.as_str() {
                    "protocol" => Mode::Protocol,
                    "histories" => Mode::Histories,
                    "erasure" => Mode::Erasure,
                    "bell" => Mode::Bell,
                    other => return usage_err(format!("unknown mode '{other}'")),
                };
            }
            "--alpha" => {
                let raw = value_for("--alpha")?;
                let parsed: f64 = raw
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad angle '{raw}'")))?;
                if !parsed.is_finite() {
                    return usage_err(format!("angle must be finite, got '{raw}'"));
                }
                alpha = Some(parsed);
            }
            "--sweep" => sweep = Some(parse_sweep(&value_for("--sweep")?)?),
            "--memories" => {
                let raw = value_for("--memories")?;
                memories = raw
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad memory count '{raw}'")))?;
            }
            "--basis" => {
                basis = match value_for("--basis")?.as_str() {
                    "z" | "Z" => ReadoutBasis::Z,
                    "x" | "X" => ReadoutBasis::X,
                    other => return usage_err(format!("unknown basis '{other}'")),
                };
            }
            "--outcomes" => outcomes = parse_outcomes(&value_for("--outcomes")?)?,
            "--format" => {
                format = match value_for("--format")?.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => return usage_err(format!("unknown format '{other}'")),
                };
            }
            "--out" => out = Some(PathBuf::from(value_for("--out")?)),
            "--degrees" => degrees = true,
            other => return usage_err(format!("unknown flag '{other}'")),
        }
    }

    if alpha.is_some() && sweep.is_some() {
        return usage_err("--alpha and --sweep are mutually exclusive");
    }
    let mut alpha_spec = sweep
        .or(alpha.map(AlphaSpec::Single))
        .unwrap_or(AlphaSpec::Single(FRAC_PI_4));
    if degrees {
        let to_rad = PI / 180.0;
        alpha_spec = match alpha_spec {
            AlphaSpec::Single(a) => AlphaSpec::Single(a * to_rad),
            AlphaSpec::Sweep { start, stop, steps } => AlphaSpec::Sweep {
                start: start * to_rad,
                stop: stop * to_rad,
                steps,
            },
        };
    }

    if memories < 1 {
        return usage_err("--memories must be at least 1");
    }
    if memories > MAX_CLI_MEMORIES {
        return usage_err(format!("--memories capped at {MAX_CLI_MEMORIES}"));
    }
    if matches!(mode, Mode::Bell | Mode::Erasure) && memories < 4 {
        return usage_err(format!("{} mode needs at least 4 memories", mode.name()));
    }
    if mode == Mode::Histories && memories > MAX_ENUMERATED_MEMORIES {
        return usage_err(format!(
            "histories mode enumerates 2^M branches, capped at M = {MAX_ENUMERATED_MEMORIES}"
        ));
    }

    Ok(RunRequest {
        mode,
        alpha: alpha_spec,
        memories,
        basis,
        outcomes,
        format,
        out,
    })
}

// -- report rows ------------------------------------------------------------

/// One α point of the Bell experiment; the CSV column order is fixed.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub alpha: f64,
    pub k12: f64,
    pub k23: f64,
    pub k34: f64,
    pub k14_direct: f64,
    pub k14_erased_pp: f64,
    pub bell_direct: f64,
    pub bell_erased: f64,
    /// Whether the erased combination clears the classical bound; the
    /// direct combination provably cannot.
    pub violated: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErasureRow {
    pub alpha: f64,
    pub eps2: i8,
    pub eps3: i8,
    pub probability: f64,
    pub k14: f64,
    /// The undisturbed-rotation reference value for this α.
    pub cos_3alpha: f64,
    /// Only the (+1,+1) branch is expected to match the reference; the
    /// remaining branches are reported as computed.
    pub matches_cos_3alpha: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HistoryRow {
    pub alpha: f64,
    pub basis: char,
    /// Memory readouts as +/− characters, memory 1 first.
    pub readouts: String,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProtocolRow {
    pub alpha: f64,
    pub t1: usize,
    pub t2: usize,
    pub value: f64,
}

#[derive(Debug, Serialize)]
struct SweepEcho {
    start: f64,
    stop: f64,
    steps: usize,
}

#[derive(Debug, Serialize)]
struct Metadata {
    tool: &'static str,
    version: &'static str,
    mode: &'static str,
    memories: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepEcho>,
    basis: char,
    outcomes: String,
}

#[derive(Debug, Serialize)]
struct Document<T: Serialize> {
    metadata: Metadata,
    rows: Vec<T>,
}

fn metadata(request: &RunRequest) -> Metadata {
    let (alpha, sweep) = match request.alpha {
        AlphaSpec::Single(a) => (Some(a), None),
        AlphaSpec::Sweep { start, stop, steps } => (None, Some(SweepEcho { start, stop, steps })),
    };
    Metadata {
        tool: "temporal-bell",
        version: env!("CARGO_PKG_VERSION"),
        mode: request.mode.name(),
        memories: request.memories,
        alpha,
        sweep,
        basis: match request.basis {
            ReadoutBasis::Z => 'z',
            ReadoutBasis::X => 'x',
        },
        outcomes: match request.outcomes {
            OutcomeSelection::All => "all".to_string(),
            OutcomeSelection::One(pair) => pair.to_string(),
        },
    }
}

fn checked_run(config: &ProtocolConfig) -> Result<ProtocolRun, CliError> {
    let run = run_protocol(config)?;
    for snapshot in run.snapshots() {
        let drift = (snapshot.state.norm_sqr() - 1.0).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(CliError::Invariant(format!(
                "norm drift {drift:.3e} after step {} at alpha = {}",
                snapshot.step,
                config.alpha()
            )));
        }
    }
    Ok(run)
}

fn bell_rows(request: &RunRequest) -> Result<Vec<ReportRow>, CliError> {
    let mut rows = Vec::new();
    for alpha in request.alpha.values() {
        let config = ProtocolConfig::new(alpha, request.memories)?;
        checked_run(&config)?;
        let direct = bell_value_direct_with(&config)?;
        let erased = bell_value_erased_with(&config)?;
        rows.push(ReportRow {
            alpha,
            k12: direct.k12,
            k23: direct.k23,
            k34: direct.k34,
            k14_direct: direct.k14,
            k14_erased_pp: erased.k14,
            bell_direct: direct.bell_value,
            bell_erased: erased.bell_value,
            violated: erased.violated,
        });
    }
    Ok(rows)
}

fn erasure_rows(request: &RunRequest) -> Result<Vec<ErasureRow>, CliError> {
    let mut rows = Vec::new();
    for alpha in request.alpha.values() {
        let config = ProtocolConfig::new(alpha, request.memories)?;
        let run = checked_run(&config)?;
        let results = match request.outcomes {
            OutcomeSelection::All => erase_all_outcomes(&run)?,
            OutcomeSelection::One(pair) => vec![delayed_choice_erase(&run, pair)?],
        };
        let reference = (3.0 * alpha).cos();
        for result in results {
            rows.push(ErasureRow {
                alpha,
                eps2: result.outcomes.eps2.value(),
                eps3: result.outcomes.eps3.value(),
                probability: result.probability,
                k14: result.k14,
                cos_3alpha: reference,
                matches_cos_3alpha: (result.k14 - reference).abs() < 1e-10,
            });
        }
    }
    Ok(rows)
}

fn history_rows(request: &RunRequest) -> Result<Vec<HistoryRow>, CliError> {
    let mut rows = Vec::new();
    for alpha in request.alpha.values() {
        let config = ProtocolConfig::new(alpha, request.memories)?;
        checked_run(&config)?;
        let table = match request.basis {
            ReadoutBasis::Z => enumerate_z_histories(&config)?,
            ReadoutBasis::X => enumerate_x_histories(&config)?,
        };
        for entry in &table.entries {
            rows.push(HistoryRow {
                alpha,
                basis: match request.basis {
                    ReadoutBasis::Z => 'z',
                    ReadoutBasis::X => 'x',
                },
                readouts: entry
                    .readouts
                    .iter()
                    .map(|s| if *s == Spin::Plus { '+' } else { '-' })
                    .collect(),
                amplitude_re: entry.amplitude.re,
                amplitude_im: entry.amplitude.im,
                probability: entry.probability,
            });
        }
    }
    Ok(rows)
}

fn protocol_rows(request: &RunRequest) -> Result<Vec<ProtocolRow>, CliError> {
    let mut rows = Vec::new();
    for alpha in request.alpha.values() {
        let config = ProtocolConfig::new(alpha, request.memories)?;
        let run = checked_run(&config)?;
        for corr in run.all_two_time_correlations()? {
            rows.push(ProtocolRow {
                alpha,
                t1: corr.t1,
                t2: corr.t2,
                value: corr.value,
            });
        }
    }
    Ok(rows)
}

// -- rendering ----------------------------------------------------------------

/// 12 significant digits, scientific; keeps CSV output byte-stable.
fn fmt12(v: f64) -> String {
    format!("{:.11e}", v)
}

fn render_csv_bell(rows: &[ReportRow]) -> String {
    let mut out = String::from(
        "alpha,k12,k23,k34,k14_direct,k14_erased_pp,bell_direct,bell_erased,violated\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            fmt12(r.alpha),
            fmt12(r.k12),
            fmt12(r.k23),
            fmt12(r.k34),
            fmt12(r.k14_direct),
            fmt12(r.k14_erased_pp),
            fmt12(r.bell_direct),
            fmt12(r.bell_erased),
            r.violated
        ));
    }
    out
}

fn render_csv_erasure(rows: &[ErasureRow]) -> String {
    let mut out = String::from("alpha,eps2,eps3,probability,k14,cos_3alpha,matches_cos_3alpha\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            fmt12(r.alpha),
            r.eps2,
            r.eps3,
            fmt12(r.probability),
            fmt12(r.k14),
            fmt12(r.cos_3alpha),
            r.matches_cos_3alpha
        ));
    }
    out
}

fn render_csv_histories(rows: &[HistoryRow]) -> String {
    let mut out = String::from("alpha,basis,readouts,amplitude_re,amplitude_im,probability\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt12(r.alpha),
            r.basis,
            r.readouts,
            fmt12(r.amplitude_re),
            fmt12(r.amplitude_im),
            fmt12(r.probability)
        ));
    }
    out
}

fn render_csv_protocol(rows: &[ProtocolRow]) -> String {
    let mut out = String::from("alpha,t1,t2,value\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt12(r.alpha),
            r.t1,
            r.t2,
            fmt12(r.value)
        ));
    }
    out
}

fn render_json<T: Serialize>(request: &RunRequest, rows: Vec<T>) -> Result<String, CliError> {
    let document = Document {
        metadata: metadata(request),
        rows,
    };
    let mut text = serde_json::to_string_pretty(&document)
        .map_err(|e| CliError::Invariant(format!("serialization failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Runs the request and renders the full report as a string.
pub fn execute_to_string(request: &RunRequest) -> Result<String, CliError> {
    match (request.mode, request.format) {
        (Mode::Bell, OutputFormat::Csv) => Ok(render_csv_bell(&bell_rows(request)?)),
        (Mode::Bell, OutputFormat::Json) => render_json(request, bell_rows(request)?),
        (Mode::Erasure, OutputFormat::Csv) => Ok(render_csv_erasure(&erasure_rows(request)?)),
        (Mode::Erasure, OutputFormat::Json) => render_json(request, erasure_rows(request)?),
        (Mode::Histories, OutputFormat::Csv) => Ok(render_csv_histories(&history_rows(request)?)),
        (Mode::Histories, OutputFormat::Json) => render_json(request, history_rows(request)?),
        (Mode::Protocol, OutputFormat::Csv) => Ok(render_csv_protocol(&protocol_rows(request)?)),
        (Mode::Protocol, OutputFormat::Json) => render_json(request, protocol_rows(request)?),
    }
}

/// Runs the request and writes the report to `--out` or stdout.
pub fn execute(request: &RunRequest) -> Result<(), CliError> {
    let report = execute_to_string(request)?;
    match &request.out {
        Some(path) => std::fs::write(path, report)?,
        None => {
            let stdout = std::io::stdout();
            stdout.lock().write_all(report.as_bytes())?;
        }
    }
    Ok(())
}

/// Full CLI entry point; returns the process exit code.
pub fn run<I>(args: I) -> i32
where
    I: IntoIterator,
    I::Item: AsRef<str>,
{
    let args: Vec<String> = args.into_iter().map(|a| a.as_ref().to_string()).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        println!("{USAGE}");
        return 0;
    }
    let request = match parse_request(&args) {
        Ok(request) => request,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{USAGE}");
            return e.exit_code();
        }
    };
    match execute(&request) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
