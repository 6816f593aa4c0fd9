//! `fuzzysched` command line: schedule, compare, infer, rules-check.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or validation error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use fuzzysched::fuzzy::{default_rulebase, parse_rulebase, GeometryConfig};
use fuzzysched::io::{
    emit_report, format_value, parse_workload, render_gantt, GanttFormat, RenderOptions, ReportFormat,
    ScheduleReport, WorkloadDocument, WorkloadFormat,
};
use fuzzysched::{compare, compute_metrics, simulate, FuzzyEngine, Policy, PolicyKind, PrioritySource};

pub const GEOMETRY_ENV: &str = "FUZZYSCHED_GEOMETRY";

#[derive(Debug, Parser)]
#[command(name = "fuzzysched", version, about = "Fuzzy-priority CPU scheduling simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct EngineArgs {
    /// Rule DSL file (default: built-in 25-rule table)
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Variable geometry JSON
    #[arg(long, env = GEOMETRY_ENV)]
    geometry: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one policy and print its Gantt chart and metrics
    Schedule {
        #[arg(long)]
        workload: PathBuf,
        #[arg(long)]
        policy: PolicyKind,
        #[arg(long, value_enum, default_value_t = ScheduleOutput::Table)]
        output: ScheduleOutput,
        /// Use recorded priorities from the workload instead of inferring them
        #[arg(long)]
        replay: bool,
        /// Time units per character (table) or pixel (svg)
        #[arg(long)]
        scale: Option<f64>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Compare policies on one workload
    Compare {
        #[arg(long)]
        workload: PathBuf,
        /// Comma-separated subset (default: priority,sjf,fuzzy_priority,modified_fuzzy)
        #[arg(long, value_delimiter = ',')]
        policies: Vec<PolicyKind>,
        #[arg(long, value_enum, default_value_t = CompareOutput::Table)]
        output: CompareOutput,
        #[arg(long)]
        replay: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Infer a new priority from a priority and an execution time
    #[command(allow_negative_numbers = true)]
    Infer {
        priority: f64,
        exec_time: f64,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Validate a rule DSL file (or `default`) and print the rule count
    RulesCheck {
        file: String,
        #[arg(long, env = GEOMETRY_ENV)]
        geometry: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScheduleOutput {
    Table,
    Ascii,
    Svg,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CompareOutput {
    Table,
    Json,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Runs the CLI. Standard output receives nothing unless the command succeeds.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let mut buf = Vec::new();
    match execute(cli.command, &mut buf) {
        Ok(()) => {
            let _ = out.write_all(&buf);
            0
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_geometry(path: Option<&Path>) -> Result<GeometryConfig, Failure> {
    match path {
        None => Ok(GeometryConfig::default()),
        Some(p) => {
            let text = String::from_utf8(read(p)?)?;
            GeometryConfig::from_json(&text).map_err(|e| Failure(format!("{}: {e}", p.display())))
        }
    }
}

fn load_engine(args: &EngineArgs) -> Result<FuzzyEngine, Failure> {
    let config = load_geometry(args.geometry.as_deref())?;
    let rules = match &args.rules {
        None => default_rulebase(),
        Some(p) => {
            let text = String::from_utf8(read(p)?)?;
            parse_rulebase(&text, &config).map_err(|e| Failure(format!("{}: {e}", p.display())))?
        }
    };
    Ok(FuzzyEngine::new(config, rules)?)
}

fn load_workload(path: &Path) -> Result<(String, WorkloadDocument), Failure> {
    let doc = parse_workload(&read(path)?, WorkloadFormat::from_path(path))
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let name = doc.name.clone().unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    });
    Ok((name, doc))
}

fn source(engine: &Arc<FuzzyEngine>, replay: bool) -> PrioritySource {
    if replay {
        PrioritySource::Recorded
    } else {
        PrioritySource::Engine(engine.clone())
    }
}

fn execute(command: Command, out: &mut Vec<u8>) -> CmdResult {
    match command {
        Command::Schedule { workload, policy, output, replay, scale, engine } => {
            let engine = Arc::new(load_engine(&engine)?);
            let (name, doc) = load_workload(&workload)?;
            let policy = policy.with_source(source(&engine, replay));
            let schedule = simulate(&doc.tasks, &policy)?;
            let metrics = compute_metrics(&schedule)?;
            let options = |format| -> Result<RenderOptions, Failure> {
                let opts = RenderOptions::new(format);
                Ok(match scale {
                    Some(s) => opts.with_scale(s)?,
                    None => opts,
                })
            };
            match output {
                ScheduleOutput::Table => {
                    writeln!(out, "{name} / {}", policy.name())?;
                    out.extend(render_gantt(&schedule, &options(GanttFormat::Ascii)?));
                    writeln!(out)?;
                    writeln!(out, "{:<8} {:>10} {:>10} {:>10}", "task", "completion", "turnaround", "waiting")?;
                    for m in &metrics.per_task {
                        writeln!(
                            out,
                            "{:<8} {:>10} {:>10} {:>10}",
                            m.id,
                            format_value(m.completion),
                            format_value(m.turnaround),
                            format_value(m.waiting)
                        )?;
                    }
                    writeln!(out, "Average Waiting Time: {}", format_value(metrics.avg_waiting))?;
                    writeln!(out, "Average Turn Around Time: {}", format_value(metrics.avg_turnaround))?;
                }
                ScheduleOutput::Ascii => out.extend(render_gantt(&schedule, &options(GanttFormat::Ascii)?)),
                ScheduleOutput::Svg => out.extend(render_gantt(&schedule, &options(GanttFormat::Svg)?)),
                ScheduleOutput::Json => {
                    let report = ScheduleReport {
                        workload: name,
                        policy: policy.name().to_string(),
                        segments: schedule.segments,
                        metrics,
                    };
                    serde_json::to_writer_pretty(&mut *out, &report)?;
                    out.push(b'\n');
                }
            }
        }
        Command::Compare { workload, policies, output, replay, engine } => {
            let engine = Arc::new(load_engine(&engine)?);
            let (name, doc) = load_workload(&workload)?;
            let kinds = if policies.is_empty() { PolicyKind::ALL.to_vec() } else { policies };
            let policies: Vec<Policy> = kinds.iter().map(|k| k.with_source(source(&engine, replay))).collect();
            let report = compare(&name, &doc.tasks, &policies);
            let format = match output {
                CompareOutput::Table => ReportFormat::Table,
                CompareOutput::Json => ReportFormat::Json,
            };
            out.extend(emit_report(&report, format));
            if let Some(e) = report.entries.iter().find_map(|e| e.error.as_ref()) {
                return Err(Failure(e.clone()));
            }
        }
        Command::Infer { priority, exec_time, engine } => {
            let engine = load_engine(&engine)?;
            let np = engine.infer(&[priority, exec_time])?;
            writeln!(out, "{}", format_value(np))?;
        }
        Command::RulesCheck { file, geometry } => {
            let config = load_geometry(geometry.as_deref())?;
            let rules = if file == "default" {
                default_rulebase()
            } else {
                let path = Path::new(&file);
                let text = String::from_utf8(read(path)?)?;
                parse_rulebase(&text, &config).map_err(|e| Failure(format!("{file}: {e}")))?
            };
            let engine = FuzzyEngine::new(config, rules)?;
            writeln!(out, "{} rules OK", engine.rulebase().len())?;
        }
    }
    Ok(())
}
