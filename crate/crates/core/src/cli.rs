//! Command-line interface. [`run`] parses arguments and returns the exit code
//! and output so it can be driven without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::extremal::{self, Statistic};
use crate::graphs::{self, GraphFormat, GraphKind};
use crate::order::{self, DescentSet};
use crate::perm::SignedPermutation;
use crate::verify::{Suite, Verifier};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable read for the default worker count.
pub const JOBS_ENV: &str = "HYPERBRUHAT_JOBS";

#[derive(Debug, Parser)]
#[command(
    name = "hyperbruhat",
    version,
    about = "Strong Bruhat order on signed permutations"
)]
pub struct Cli {
    /// Worker threads for enumeration (default: available parallelism).
    #[arg(long, global = true, env = JOBS_ENV, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,

    /// Line-delimited JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Down, up or total degree of one element.
    Degree {
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, value_enum, default_value_t = StatArg::Down)]
        kind: StatArg,
    },
    /// Elements covered by one element, with their reflection labels.
    Covers {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Strong descent set of one element.
    Descents {
        #[command(flatten)]
        window: WindowArg,
    },
    /// Rebuilds an element from its descent set.
    Reconstruct {
        #[arg(long)]
        n: usize,
        /// Labels `a,b` separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        descents: String,
    },
    /// Exports the weighted degree graph of one element.
    Graph {
        #[command(flatten)]
        window: WindowArg,
        #[arg(long, value_enum, default_value_t = KindArg::Alpha)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Dot)]
        format: FormatArg,
    },
    /// Scans all of B_n.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        stat: StatArg,
        #[command(flatten)]
        mode: EnumerateMode,
    },
    /// Runs verification suites.
    Verify {
        /// Rank to check; the default ranges are used when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Args)]
pub struct WindowArg {
    /// Window such as `[1,2,-4,-3]`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: SignedPermutation,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct EnumerateMode {
    #[arg(long)]
    pub histogram: bool,
    #[arg(long)]
    pub max: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StatArg {
    Down,
    Up,
    Total,
}

impl From<StatArg> for Statistic {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Down => Statistic::Down,
            StatArg::Up => Statistic::Up,
            StatArg::Total => Statistic::Total,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Alpha,
    Beta,
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Alpha => GraphKind::Alpha,
            KindArg::Beta => GraphKind::Beta,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Dot,
    Json,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dot => GraphFormat::Dot,
            FormatArg::Json => GraphFormat::Json,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Bounds,
    Classification,
    Lemmas,
    Oracle,
    All,
}

/// Exit code plus what would be written to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Self {
            exit_code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.to_string(),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::usage(text)
            } else {
                CommandResult::ok(text)
            };
        }
    };
    execute(&cli)
}

/// Executes an already parsed command line.
pub fn execute(cli: &Cli) -> CommandResult {
    let jobs = cli.jobs.map_or_else(extremal::default_jobs, |j| j as usize);
    let mut out = String::new();
    match &cli.command {
        Command::Degree { window, kind } => {
            let p = &window.window;
            let stat = Statistic::from(*kind);
            let value = stat.evaluate(p);
            if cli.json {
                line(
                    &mut out,
                    json!({ "window": p, "kind": stat, "degree": value }),
                );
            } else {
                let _ = writeln!(out, "{value}");
            }
        }
        Command::Covers { window } => {
            let covers = order::covers_down(&window.window);
            for (label, q) in &covers.entries {
                if cli.json {
                    line(
                        &mut out,
                        json!({ "label": [label.a(), label.b()], "covered": q }),
                    );
                } else {
                    let _ = writeln!(out, "u({label}) {q}");
                }
            }
        }
        Command::Descents { window } => {
            let d = order::descent_set(&window.window);
            if cli.json {
                let labels: Vec<[i32; 2]> = d.labels().iter().map(|l| [l.a(), l.b()]).collect();
                line(
                    &mut out,
                    json!({ "window": window.window, "descents": labels }),
                );
            } else {
                let _ = writeln!(out, "{d}");
            }
        }
        Command::Reconstruct { n, descents } => {
            let result = DescentSet::parse(descents, *n)
                .and_then(|d| order::reconstruct_from_descents(&d, *n));
            match result {
                Ok(p) if cli.json => line(&mut out, json!({ "window": p })),
                Ok(p) => {
                    let _ = writeln!(out, "{p}");
                }
                Err(e) => return CommandResult::usage(format!("error: {e}\n")),
            }
        }
        Command::Graph {
            window,
            kind,
            format,
        } => {
            let g = graphs::build_graph(&window.window, (*kind).into());
            let format = if cli.json {
                GraphFormat::Json
            } else {
                (*format).into()
            };
            out.push_str(&graphs::export_graph(&g, format));
            if !out.ends_with('\n') {
                out.push('\n');
            }
        }
        Command::Enumerate { n, stat, mode } => {
            let stat = Statistic::from(*stat);
            if mode.histogram {
                let hist = match extremal::degree_histogram(*n, stat, jobs) {
                    Ok(h) => h,
                    Err(e) => return CommandResult::usage(format!("error: {e}\n")),
                };
                if cli.json {
                    let pairs: Vec<(u32, u64)> = hist.into_iter().collect();
                    line(
                        &mut out,
                        json!({ "n": n, "statistic": stat, "histogram": pairs }),
                    );
                } else {
                    for (value, count) in hist {
                        let _ = writeln!(out, "{value} {count}");
                    }
                }
            } else {
                let report = match extremal::max_statistic(*n, stat, jobs) {
                    Ok(r) => r,
                    Err(e) => return CommandResult::usage(format!("error: {e}\n")),
                };
                if cli.json {
                    line(&mut out, json!(report.to_json(false)));
                } else {
                    let _ = writeln!(out, "max {stat} degree on B_{n}: {}", report.max_value);
                    let _ = writeln!(out, "maximizers: {}", report.maximizers.len());
                    for p in &report.maximizers {
                        let _ = writeln!(out, "{p}");
                    }
                }
            }
        }
        Command::Verify { n, suite } => {
            let mut verifier = Verifier::new(jobs);
            let results = match suite {
                SuiteArg::All => verifier.run_all(*n),
                SuiteArg::Bounds => verifier.run(Suite::Bounds, *n),
                SuiteArg::Classification => verifier.run(Suite::Classification, *n),
                SuiteArg::Lemmas => verifier.run(Suite::Lemmas, *n),
                SuiteArg::Oracle => verifier.run(Suite::Oracle, *n),
            };
            let results = match results {
                Ok(r) => r,
                Err(e) => return CommandResult::usage(format!("error: {e}\n")),
            };
            let failed = results.iter().filter(|r| !r.pass).count();
            for r in &results {
                if cli.json {
                    line(&mut out, json!(r));
                } else {
                    let _ = writeln!(out, "{r}");
                }
            }
            if cli.json {
                line(
                    &mut out,
                    json!({ "summary": { "checks": results.len(), "failed": failed } }),
                );
            } else {
                let _ = writeln!(out, "{} checks, {failed} failed", results.len());
            }
            if failed > 0 {
                return CommandResult {
                    exit_code: EXIT_CHECK_FAILED,
                    stdout: out,
                    stderr: String::new(),
                };
            }
        }
    }
    CommandResult::ok(out)
}

fn line(out: &mut String, value: serde_json::Value) {
    out.push_str(&value.to_string());
    out.push('\n');
}
