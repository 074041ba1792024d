//! Command-line driver for the totality checker.
//!
//! `totality check FILE...` runs every definition group of every file
//! through the core pipeline and prints one verdict line per definition.
//! Exit status: 0 if everything is total, 1 if some definition is unknown,
//! 2 on errors.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use clap::{Args, Parser, Subcommand};
use totality_core::callgraph::ClosureOptions;
use totality_core::ops::Bounds;
use totality_core::pipeline::{analyze, finish, front_end, prepare, GroupReport, PreparedGroup};
use totality_core::{Options, Outcome, Report};

pub use render::{render_json, render_report, render_text};

#[derive(Parser, Debug)]
#[command(name = "totality", version, about = "Totality checker for first-order programs with data and codata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the definitions of one or more source files.
    Check(Config),
}

#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Source files.
    #[arg(required = true, value_name = "FILE")]
    pub files: Vec<PathBuf>,
    /// Weight bound B.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub bound_b: u32,
    /// Depth bound D.
    #[arg(long, default_value_t = 2)]
    pub bound_d: u32,
    /// Machine-readable output.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub dump_priorities: bool,
    #[arg(long)]
    pub dump_callgraph: bool,
    #[arg(long)]
    pub dump_closure: bool,
    /// Keep every call during saturation instead of dropping equivalent ones.
    #[arg(long)]
    pub no_subsumption: bool,
}

impl Config {
    pub fn new<I: IntoIterator<Item = PathBuf>>(files: I) -> Config {
        Config {
            files: files.into_iter().collect(),
            bound_b: 2,
            bound_d: 2,
            json: false,
            dump_priorities: false,
            dump_callgraph: false,
            dump_closure: false,
            no_subsumption: false,
        }
    }

    pub fn options(&self) -> Options {
        Options {
            bounds: Bounds::new(self.bound_b, self.bound_d),
            closure: ClosureOptions { subsumption: !self.no_subsumption, ..ClosureOptions::default() },
        }
    }
}

/// Outcome of one input file.
#[derive(Clone, Debug)]
pub struct FileReport {
    pub path: String,
    pub result: Result<Report, Vec<String>>,
}

impl FileReport {
    pub fn exit_code(&self) -> u8 {
        match &self.result {
            Err(_) => 2,
            Ok(r) => {
                let mut code = 0;
                for v in r.verdicts() {
                    match v.outcome {
                        Outcome::Total => {}
                        Outcome::Unknown(_) => code = code.max(1),
                        Outcome::Error(_) => code = 2,
                    }
                }
                code
            }
        }
    }
}

fn analyze_all(prepared: &[PreparedGroup], opts: &Options) -> Vec<GroupReport> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(prepared.len());
    if workers <= 1 {
        return prepared.iter().map(|g| analyze(g, opts)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<GroupReport>>> = Mutex::new(vec![None; prepared.len()]);
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(g) = prepared.get(i) else { break };
                let r = analyze(g, opts);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("group analyzed")).collect()
}

/// Check one source text.
pub fn check_text(src: &str, opts: &Options) -> Result<Report, Vec<String>> {
    let program = front_end(src).map_err(|e| e.to_string().lines().map(String::from).collect::<Vec<_>>())?;
    let prepared = prepare(&program, opts).map_err(|e| vec![e.to_string()])?;
    let groups = analyze_all(&prepared, opts);
    Ok(finish(&prepared, groups))
}

pub fn check_file(path: &std::path::Path, opts: &Options) -> FileReport {
    let shown = path.display().to_string();
    let result = match std::fs::read_to_string(path) {
        Ok(src) => check_text(&src, opts),
        Err(e) => Err(vec![format!("cannot read file: {e}")]),
    };
    FileReport { path: shown, result }
}

/// Run the command line `args` (program name first) and return the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let Command::Check(config) = cli.command;
    let opts = config.options();
    let reports: Vec<FileReport> = config.files.iter().map(|p| check_file(p, &opts)).collect();
    for r in &reports {
        if let Err(msgs) = &r.result {
            for m in msgs {
                let _ = writeln!(err, "error: {}: {m}", r.path);
            }
        }
    }
    let _ = out.write_all(render_report(&reports, &config).as_bytes());
    reports.iter().map(FileReport::exit_code).max().unwrap_or(0)
}
