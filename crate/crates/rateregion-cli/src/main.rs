//! Command-line front end: reads a channel JSON document, runs the library
//! pipelines, and emits CSV or JSON for plotting and CI regression.
//!
//! Exit codes: 0 success, 1 validation error (malformed input, budget
//! exceeded, bad flags), 2 verification failure (`oracle-verify` with a
//! non-empty violation report).

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rateregion::channel::{normalize, rate_tuple, ChannelSpec, NormalizedTwoUser, PowerVector};
use rateregion::curvature::{curvature_report, CurvatureReport, FrontierClass};
use rateregion::frontier2::{two_user_frontier, DEFAULT_SWEEP_RESOLUTION};
use rateregion::nuser::{n_user_frontier_with_budget, DEFAULT_POINT_BUDGET};
use rateregion::oracle::{
    pareto_grid_with_budget, verify_frontier_dominance, verify_pinned_power_property,
    FrontierRef, Violation,
};
use rateregion::timeshare::{ac_timeshare_condition, build_schedule, symmetric_bstar, Segment};

/// Rate regions and frontiers for the n-user interference channel with
/// interference treated as noise.
#[derive(Parser)]
#[command(name = "rateregion", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the per-link rates at one transmit power vector.
    Rates {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated transmit powers, e.g. "0.5,1.0" (default: every
        /// transmitter at p_max; read as dBW when --db is set).
        #[arg(long)]
        powers: Option<String>,
    },
    /// Sample the two-user frontier curves F1/F2 and their convex hull.
    Frontier2 {
        #[command(flatten)]
        io: IoArgs,
        /// Samples per frontier curve [default: 512].
        #[arg(short, long)]
        resolution: Option<usize>,
    },
    /// Classify the curvature of the two-user frontier curves (Q1, Q2).
    Classify {
        #[command(flatten)]
        io: IoArgs,
        /// Suppress the human-readable table on stderr.
        #[arg(short, long)]
        quiet: bool,
    },
    /// Build the optimal time-sharing schedule for a two-user channel.
    Timeshare {
        #[command(flatten)]
        io: IoArgs,
        /// Samples per frontier curve [default: 512].
        #[arg(short, long)]
        resolution: Option<usize>,
        /// Suppress the human-readable summary on stderr.
        #[arg(short, long)]
        quiet: bool,
    },
    /// Sample the n pinned-power frontier surfaces.
    Frontiern {
        #[command(flatten)]
        io: IoArgs,
        /// Grid points per free power dimension [default: 101/26/11 for
        /// n = 2/3/higher].
        #[arg(short, long)]
        resolution: Option<usize>,
        /// Maximum number of evaluated power tuples [default: 2000000; env
        /// RATEREGION_BUDGET overrides].
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check the analytic frontier against the brute-force Pareto oracle.
    OracleVerify {
        #[command(flatten)]
        io: IoArgs,
        /// Oracle grid points per power dimension [default: 101/26/11 for
        /// n = 2/3/higher].
        #[arg(short, long)]
        resolution: Option<usize>,
        /// Rate tolerance for the comparison [default: derived from the
        /// grid resolution and the steepest rate slope].
        #[arg(long)]
        tol: Option<f64>,
        /// Maximum number of evaluated power tuples [default: 2000000; env
        /// RATEREGION_BUDGET overrides].
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Channel JSON path, or '-' for stdin.
    #[arg(short, long, default_value = "-")]
    input: String,
    /// Output format [default: csv for rates/frontier2/frontiern, json for
    /// classify/timeshare/oracle-verify].
    #[arg(short, long, value_enum)]
    format: Option<Format>,
    /// Output path (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Interpret gains, noise power, and p_max in the input as dB and
    /// convert once at this boundary.
    #[arg(long)]
    db: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

// ---------------------------------------------------------------------------
// Input handling
// ---------------------------------------------------------------------------

/// Two-user shorthand: noise-normalized gains with unit noise power.
#[derive(Deserialize)]
struct NormalizedWrapper {
    normalized: NormalizedGains,
}

#[derive(Deserialize)]
struct NormalizedGains {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    p_max: f64,
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn read_channel(io: &IoArgs) -> Result<ChannelSpec> {
    let text = if io.input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading channel JSON from stdin")?;
        buf
    } else {
        fs::read_to_string(&io.input)
            .with_context(|| format!("reading channel JSON from {}", io.input))?
    };

    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("malformed JSON in {}", io.input))?;

    if value.get("normalized").is_some() {
        let wrapper: NormalizedWrapper =
            serde_json::from_value(value).context("malformed normalized channel document")?;
        let g = wrapper.normalized;
        let conv = |v: f64| if io.db { db_to_linear(v) } else { v };
        let ch = NormalizedTwoUser::new(conv(g.a), conv(g.b), conv(g.c), conv(g.d), conv(g.p_max))?;
        return Ok(ch.to_channel_spec());
    }

    if io.db {
        // dB documents may carry zero or negative entries, so convert the
        // raw fields before channel validation sees them.
        #[derive(Deserialize)]
        struct RawDb {
            n: usize,
            gains: Vec<Vec<f64>>,
            noise_power: f64,
            p_max: f64,
        }
        let raw: RawDb = serde_json::from_value(value)
            .with_context(|| format!("malformed channel document in {}", io.input))?;
        if raw.n != raw.gains.len() {
            bail!("n = {} but gains has {} rows", raw.n, raw.gains.len());
        }
        let gains = raw
            .gains
            .into_iter()
            .map(|row| row.into_iter().map(db_to_linear).collect())
            .collect();
        return Ok(ChannelSpec::new(
            gains,
            db_to_linear(raw.noise_power),
            db_to_linear(raw.p_max),
        )?);
    }

    let spec: ChannelSpec = serde_json::from_value(value)
        .with_context(|| format!("malformed channel document in {}", io.input))?;
    Ok(spec)
}

fn two_user(spec: &ChannelSpec) -> Result<NormalizedTwoUser> {
    normalize(spec).context("this subcommand needs a two-user channel")
}

fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("RATEREGION_BUDGET") {
        Ok(text) => text
            .parse::<u64>()
            .with_context(|| format!("RATEREGION_BUDGET = {text:?} is not a number")),
        Err(_) => Ok(DEFAULT_POINT_BUDGET),
    }
}

fn default_grid_resolution(n: usize) -> usize {
    match n {
        0..=2 => 101,
        3 => 26,
        _ => 11,
    }
}

fn check_resolution(r: Option<usize>) -> Result<Option<usize>> {
    if let Some(r) = r {
        if r < 2 {
            bail!("resolution must be at least 2, got {r}");
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Output handling
// ---------------------------------------------------------------------------

struct Output {
    sink: Box<dyn Write>,
}

impl Output {
    fn create(path: &Option<PathBuf>) -> Result<Self> {
        let sink: Box<dyn Write> = match path {
            Some(p) => Box::new(std::io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            )),
            None => Box::new(std::io::BufWriter::new(std::io::stdout().lock())),
        };
        Ok(Self { sink })
    }

    fn json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.sink, value)?;
        writeln!(self.sink)?;
        Ok(())
    }
}

fn csv_num(v: f64) -> String {
    format!("{v:.11e}")
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Rates { io, powers } => cmd_rates(&io, powers.as_deref()),
        Command::Frontier2 { io, resolution } => cmd_frontier2(&io, check_resolution(resolution)?),
        Command::Classify { io, quiet } => cmd_classify(&io, quiet),
        Command::Timeshare {
            io,
            resolution,
            quiet,
        } => cmd_timeshare(&io, check_resolution(resolution)?, quiet),
        Command::Frontiern {
            io,
            resolution,
            budget,
        } => cmd_frontiern(&io, check_resolution(resolution)?, budget),
        Command::OracleVerify {
            io,
            resolution,
            tol,
            budget,
        } => cmd_oracle_verify(&io, check_resolution(resolution)?, tol, budget),
    }
}

fn cmd_rates(io: &IoArgs, powers: Option<&str>) -> Result<u8> {
    let spec = read_channel(io)?;
    let powers = match powers {
        Some(text) => {
            let parsed: Vec<f64> = text
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("parsing --powers {text:?}"))?;
            let parsed = if io.db {
                parsed.into_iter().map(db_to_linear).collect()
            } else {
                parsed
            };
            PowerVector::new(parsed)
        }
        None => PowerVector::new(vec![spec.p_max(); spec.n()]),
    };
    let rates = rate_tuple(&spec, &powers)?;
    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Csv) {
        Format::Json => out.json(&rateregion::channel::OperatingPoint { powers, rates })?,
        Format::Csv => {
            let n = spec.n();
            let mut cols: Vec<String> = (1..=n).map(|i| format!("P_{i}")).collect();
            cols.extend((1..=n).map(|i| format!("C_{i}")));
            writeln!(out.sink, "{}", cols.join(","))?;
            let mut row: Vec<String> = powers.as_slice().iter().map(|&v| csv_num(v)).collect();
            row.extend(rates.as_slice().iter().map(|&v| csv_num(v)));
            writeln!(out.sink, "{}", row.join(","))?;
        }
    }
    out.sink.flush()?;
    Ok(0)
}

fn cmd_frontier2(io: &IoArgs, resolution: Option<usize>) -> Result<u8> {
    let spec = read_channel(io)?;
    let ch = two_user(&spec)?;
    let frontier = two_user_frontier(&ch, resolution.unwrap_or(DEFAULT_SWEEP_RESOLUTION))?;
    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Csv) {
        Format::Json => out.json(&frontier)?,
        Format::Csv => frontier.write_csv(&mut out.sink)?,
    }
    out.sink.flush()?;
    Ok(0)
}

fn class_label(class: &FrontierClass) -> String {
    match class {
        FrontierClass::ConvexFrontier => "convex".into(),
        FrontierClass::ConcaveFrontier => "concave".into(),
        FrontierClass::Inflection { power } => format!("inflection at {power:.6}"),
    }
}

fn print_classification_table(report: &CurvatureReport) {
    let fmt_q = |q: Option<f64>| q.map_or("-".into(), |v| format!("{v:.6}"));
    eprintln!("frontier  Q          class");
    eprintln!(
        "F2        {:<10} {}",
        fmt_q(report.q1),
        class_label(&report.f2_class)
    );
    eprintln!(
        "F1        {:<10} {}",
        fmt_q(report.q2),
        class_label(&report.f1_class)
    );
}

fn cmd_classify(io: &IoArgs, quiet: bool) -> Result<u8> {
    let spec = read_channel(io)?;
    let ch = two_user(&spec)?;
    let report = curvature_report(&ch);
    if !quiet {
        print_classification_table(&report);
    }
    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Json) {
        Format::Json => out.json(&report)?,
        Format::Csv => {
            writeln!(out.sink, "key,value")?;
            writeln!(out.sink, "theta,{}", csv_num(report.theta))?;
            writeln!(out.sink, "beta,{}", csv_num(report.beta))?;
            let q = |v: Option<f64>| v.map(csv_num).unwrap_or_default();
            writeln!(out.sink, "q1,{}", q(report.q1))?;
            writeln!(out.sink, "q2,{}", q(report.q2))?;
            writeln!(out.sink, "f2_class,{}", class_label(&report.f2_class))?;
            writeln!(out.sink, "f1_class,{}", class_label(&report.f1_class))?;
        }
    }
    out.sink.flush()?;
    Ok(0)
}

/// Everything the `timeshare` subcommand reports.
#[derive(Serialize)]
struct TimeshareOutput {
    /// `sqrt(1 + a p_max)/p_max`, present for symmetric channels.
    b_star: Option<f64>,
    /// The A-C versus B closed-form comparison, when defined.
    ac_timeshare_condition: Option<bool>,
    curvature: CurvatureReport,
    schedule: rateregion::timeshare::TimeShareSchedule,
}

fn cmd_timeshare(io: &IoArgs, resolution: Option<usize>, quiet: bool) -> Result<u8> {
    let spec = read_channel(io)?;
    let ch = two_user(&spec)?;
    let report = curvature_report(&ch);
    let frontier = two_user_frontier(&ch, resolution.unwrap_or(DEFAULT_SWEEP_RESOLUTION))?;
    let schedule = build_schedule(&ch, &report, &frontier)?;

    let symmetric = ch.a() == ch.c() && ch.b() == ch.d();
    let output = TimeshareOutput {
        b_star: symmetric.then(|| symmetric_bstar(ch.a(), ch.p_max())),
        ac_timeshare_condition: ac_timeshare_condition(&ch).ok(),
        curvature: report,
        schedule,
    };

    if !quiet {
        for seg in &output.schedule.segments {
            match seg {
                Segment::Curve {
                    pinned_index,
                    c1_start,
                    c1_end,
                    ..
                } => eprintln!("curve F{pinned_index}  c1 in [{c1_start:.6}, {c1_end:.6}]"),
                Segment::Line { from, to } => eprintln!(
                    "chord     ({:.6}, {:.6}) -> ({:.6}, {:.6})",
                    from.rates[0], from.rates[1], to.rates[0], to.rates[1]
                ),
            }
        }
        if let Some(b) = output.b_star {
            eprintln!("symmetric channel: b* = {b:.6}");
        }
    }

    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Json) {
        Format::Json => out.json(&output)?,
        Format::Csv => {
            writeln!(
                out.sink,
                "kind,P1_from,P2_from,C1_from,C2_from,P1_to,P2_to,C1_to,C2_to"
            )?;
            for seg in &output.schedule.segments {
                let (kind, from, to) = match seg {
                    Segment::Curve {
                        pinned_index,
                        start,
                        end,
                        ..
                    } => (format!("curve_f{pinned_index}"), start, end),
                    Segment::Line { from, to } => ("line".to_string(), from, to),
                };
                let fields = [
                    from.powers[0],
                    from.powers[1],
                    from.rates[0],
                    from.rates[1],
                    to.powers[0],
                    to.powers[1],
                    to.rates[0],
                    to.rates[1],
                ];
                let joined: Vec<String> = fields.iter().map(|&v| csv_num(v)).collect();
                writeln!(out.sink, "{kind},{}", joined.join(","))?;
            }
        }
    }
    out.sink.flush()?;
    Ok(0)
}

fn cmd_frontiern(io: &IoArgs, resolution: Option<usize>, budget: Option<u64>) -> Result<u8> {
    let spec = read_channel(io)?;
    let budget = resolve_budget(budget)?;
    let resolution = resolution.unwrap_or_else(|| default_grid_resolution(spec.n()));
    let frontier = n_user_frontier_with_budget(&spec, resolution, budget)?;
    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Csv) {
        Format::Json => out.json(&frontier)?,
        Format::Csv => frontier.write_csv(&mut out.sink)?,
    }
    out.sink.flush()?;
    Ok(0)
}

/// Everything the `oracle-verify` subcommand reports.
#[derive(Serialize)]
struct VerifyOutput {
    grid_resolution: usize,
    frontier_resolution: usize,
    tol: f64,
    rate_lipschitz: f64,
    pareto_points: usize,
    pinned_power_property: bool,
    violations: Vec<Violation>,
    pass: bool,
}

fn cmd_oracle_verify(
    io: &IoArgs,
    resolution: Option<usize>,
    tol: Option<f64>,
    budget: Option<u64>,
) -> Result<u8> {
    let spec = read_channel(io)?;
    let budget = resolve_budget(budget)?;
    let grid_resolution = resolution.unwrap_or_else(|| default_grid_resolution(spec.n()));
    let cloud = pareto_grid_with_budget(&spec, grid_resolution, budget)?;
    let pinned = verify_pinned_power_property(&cloud);

    let (frontier_resolution, report) = if spec.n() == 2 {
        let ch = two_user(&spec)?;
        let frontier = two_user_frontier(&ch, DEFAULT_SWEEP_RESOLUTION)?;
        let report = verify_frontier_dominance(&cloud, FrontierRef::TwoUser(&frontier), tol)?;
        (DEFAULT_SWEEP_RESOLUTION, report)
    } else {
        let frontier = n_user_frontier_with_budget(&spec, grid_resolution, budget)?;
        let report = verify_frontier_dominance(&cloud, FrontierRef::NUser(&frontier), tol)?;
        (grid_resolution, report)
    };

    let output = VerifyOutput {
        grid_resolution,
        frontier_resolution,
        tol: report.tol,
        rate_lipschitz: cloud.rate_lipschitz,
        pareto_points: cloud.points.len(),
        pinned_power_property: pinned,
        pass: pinned && report.is_empty(),
        violations: report.violations,
    };

    let mut out = Output::create(&io.output)?;
    match io.format.unwrap_or(Format::Json) {
        Format::Json => out.json(&output)?,
        Format::Csv => {
            writeln!(out.sink, "key,value")?;
            writeln!(out.sink, "grid_resolution,{}", output.grid_resolution)?;
            writeln!(out.sink, "tol,{}", csv_num(output.tol))?;
            writeln!(out.sink, "pareto_points,{}", output.pareto_points)?;
            writeln!(
                out.sink,
                "pinned_power_property,{}",
                output.pinned_power_property
            )?;
            writeln!(out.sink, "violations,{}", output.violations.len())?;
            writeln!(out.sink, "pass,{}", output.pass)?;
        }
    }
    out.sink.flush()?;
    Ok(if output.pass { 0 } else { 2 })
}
