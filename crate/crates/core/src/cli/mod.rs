//! The `polydyn` command line.
//!
//! Exit codes: 0 on success, 2 for unreadable or invalid input, 3 when a resource cap
//! is exceeded.

mod dot;
mod random;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use dot::{phase_dot, trajectory_dot, wiring_dot};
pub use random::{mean_indegree, random_network};

use crate::dynamics::{
    analyze, classify, conjunctive_analysis, functional_circuits, phase_space, phase_space_probabilistic,
    steady_states, trajectory, wiring_diagram, AnalysisOptions, Mode, DEFAULT_CIRCUIT_CAP, DEFAULT_EDGE_CHECK_CAP,
    DEFAULT_ENUMERATION_CAP,
};
use crate::error::Error;
use crate::model::{Pds, State, UpdateSchedule};
use crate::translate::{document_to_system, ModelDocument, System};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Phase spaces above this many states are hard to render.
const RENDER_ADVISORY_STATES: usize = 1 << 11;

#[derive(Debug, Parser)]
#[command(
    name = "polydyn",
    version,
    about = "Attractors and structure of polynomial dynamical systems over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steady states and limit cycles.
    Analyze(AnalyzeArgs),
    /// Functional wiring diagram as DOT, with circuits for Boolean systems.
    Wiring(ModelArgs),
    /// Complete phase space as DOT.
    Phase(ModelArgs),
    /// Forward orbit of one state.
    Trajectory(TrajectoryArgs),
    /// Generate random Boolean networks.
    Random(RandomArgs),
    /// Time steady-state analysis on every model file in a directory.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model file.
    pub input: PathBuf,
    /// Sequential update order such as 2,1,3 (overrides the file's SCHEDULE).
    #[arg(long)]
    pub schedule: Option<String>,
    /// Enumeration cap in states (or transitions).
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Write the output here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Longest limit cycle to search for; 1 reports steady states only.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub cycles: u64,
    /// algorithm (Gröbner bases) or simulation (enumeration).
    #[arg(long, default_value = "algorithm")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Initial state as a digit string, e.g. 100.
    #[arg(long)]
    pub init: String,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Number of nodes (the minimum when --n-max is given).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Draw each network's size uniformly from n..=n-max.
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 1.68)]
    pub avg_indegree: f64,
    #[arg(long, default_value_t = 1)]
    pub count: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of model files.
    pub input: PathBuf,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn from_error(context: &str, e: Error) -> Self {
        let code = match e {
            Error::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: format!("{context}: {e}"),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parse `args` (program name first) and run the command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    execute(&cli.command, stdout, stderr)
}

/// Run a parsed command; returns the exit code.
pub fn execute(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match execute_inner(command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn execute_inner(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze(a) => cmd_analyze(a, stdout, stderr),
        Command::Wiring(a) => cmd_wiring(a, stdout),
        Command::Phase(a) => cmd_phase(a, stdout, stderr),
        Command::Trajectory(a) => cmd_trajectory(a, stdout),
        Command::Random(a) => cmd_random(a, stdout),
        Command::Bench(a) => cmd_bench(a, stdout, stderr),
    }
}

fn load(args: &ModelArgs) -> std::result::Result<ModelDocument, Failure> {
    let name = args.input.display().to_string();
    let bytes = fs::read(&args.input).map_err(|e| Failure::input(format!("{name}: {e}")))?;
    let doc = ModelDocument::from_bytes(&bytes).map_err(|e| Failure::from_error(&name, e))?;
    match &args.schedule {
        None => Ok(doc),
        Some(text) => {
            let schedule =
                UpdateSchedule::parse_order(text, doc.nvars()).map_err(|e| Failure::from_error("--schedule", e))?;
            doc.with_schedule(schedule)
                .map_err(|e| Failure::from_error("--schedule", e))
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("standard output: {e}"))),
    }
}

fn deterministic(doc: &ModelDocument, name: &Path, what: &str) -> std::result::Result<Pds, Failure> {
    let context = name.display().to_string();
    match document_to_system(doc)
        .map_err(|e| Failure::from_error(&context, e))?
        .system
    {
        System::Deterministic(f) => Ok(f),
        System::Probabilistic(_) => Err(Failure::input(format!(
            "{context}: {what} is only available for deterministic models"
        ))),
    }
}

/// The report printed by `analyze`.
pub fn format_report(analysis: &crate::dynamics::Analysis, max_cycle_length: usize) -> String {
    let report = &analysis.report;
    let mut s = String::new();
    writeln!(s, "steady states: {}", report.steady_states.len()).unwrap();
    for x in &report.steady_states {
        writeln!(s, "{x}").unwrap();
    }
    if matches!(analysis.translation.system, System::Deterministic(_)) {
        for len in 2..=max_cycle_length {
            let cycles: Vec<_> = report.cycles_of_length(len).collect();
            writeln!(s, "{len}-cycles: {}", cycles.len()).unwrap();
            for c in cycles {
                writeln!(s, "{c}").unwrap();
            }
        }
    }
    s
}

fn cmd_analyze(args: &AnalyzeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let doc = load(&args.model)?;
    let m = usize::try_from(args.cycles).map_err(|_| Failure::input("--cycles is too large"))?;
    let options = AnalysisOptions {
        mode: args.mode,
        max_cycle_length: m,
        schedule: None,
        enumeration_cap: args.model.cap,
    };
    let analysis =
        analyze(&doc, &options).map_err(|e| Failure::from_error(&args.model.input.display().to_string(), e))?;
    for note in &analysis.notes {
        let _ = writeln!(stderr, "note: {note}");
    }
    emit(&args.model.out, &format_report(&analysis, m), stdout)
}

fn cmd_wiring(args: &ModelArgs, stdout: &mut dyn Write) -> Outcome {
    let doc = load(args)?;
    let f = deterministic(&doc, &args.input, "the wiring diagram")?;
    let wiring = wiring_diagram(&f, DEFAULT_EDGE_CHECK_CAP);
    let circuits = if f.field().characteristic() == 2 {
        Some(functional_circuits(&f, DEFAULT_CIRCUIT_CAP).map_err(|e| Failure::from_error("circuits", e))?)
    } else {
        None
    };
    let conjunctive = if classify(&f).is_some() && wiring.is_strongly_connected() {
        conjunctive_analysis(&f, args.cap.min(DEFAULT_ENUMERATION_CAP)).ok()
    } else {
        None
    };
    emit(
        &args.out,
        &wiring_dot(&wiring, circuits.as_ref(), conjunctive.as_ref()),
        stdout,
    )
}

fn cmd_phase(args: &ModelArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let doc = load(args)?;
    let context = args.input.display().to_string();
    let translation = document_to_system(&doc).map_err(|e| Failure::from_error(&context, e))?;
    let ps = match &translation.system {
        System::Deterministic(f) => phase_space(f, args.cap),
        System::Probabilistic(f) => phase_space_probabilistic(f, args.cap),
    }
    .map_err(|e| Failure::from_error(&context, e))?;
    if ps.node_count() > RENDER_ADVISORY_STATES {
        let _ = writeln!(
            stderr,
            "note: {} states; graphs with more than {RENDER_ADVISORY_STATES} nodes are hard to render",
            ps.node_count()
        );
    }
    emit(&args.out, &phase_dot(&ps), stdout)
}

fn cmd_trajectory(args: &TrajectoryArgs, stdout: &mut dyn Write) -> Outcome {
    let doc = load(&args.model)?;
    let f = deterministic(&doc, &args.model.input, "a trajectory")?;
    let x0 = State::from_digits(&args.init, f.field()).map_err(|e| Failure::from_error("--init", e))?;
    let t = trajectory(&f, &x0).map_err(|e| Failure::from_error("--init", e))?;
    if let Some(path) = &args.model.out {
        fs::write(path, trajectory_dot(&t)).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    writeln!(stdout, "{t}").map_err(|e| Failure::input(format!("standard output: {e}")))
}

fn cmd_random(args: &RandomArgs, stdout: &mut dyn Write) -> Outcome {
    let n_max = args.n_max.unwrap_or(args.n);
    if n_max < args.n {
        return Err(Failure::input("--n-max must be at least --n"));
    }
    fs::create_dir_all(&args.out).map_err(|e| Failure::input(format!("{}: {e}", args.out.display())))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let width = args.count.max(1).to_string().len().max(3);
    for k in 0..args.count {
        let n = if n_max == args.n {
            args.n
        } else {
            rand::Rng::gen_range(&mut rng, args.n..=n_max)
        };
        let doc =
            random_network(&mut rng, n as usize, args.avg_indegree).map_err(|e| Failure::from_error("random", e))?;
        let path = args.out.join(format!("net_{k:0width$}.txt"));
        fs::write(&path, doc.to_string()).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        writeln!(stdout, "{}", path.display()).map_err(|e| Failure::input(format!("standard output: {e}")))?;
    }
    Ok(())
}

/// One row of the benchmark table.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub model: String,
    pub n: Option<usize>,
    pub seconds: Option<f64>,
    pub result: std::result::Result<usize, String>,
}

/// Steady-state analysis of one model file, timed from the parsed document.
pub fn bench_file(path: &Path) -> BenchRow {
    let model = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    let doc = match fs::read(path)
        .map_err(|e| e.to_string())
        .and_then(|b| ModelDocument::from_bytes(&b).map_err(|e| e.to_string()))
    {
        Ok(doc) => doc,
        Err(e) => {
            return BenchRow {
                model,
                n: None,
                seconds: None,
                result: Err(e),
            }
        }
    };
    let start = Instant::now();
    let result = document_to_system(&doc).and_then(|t| match t.system {
        System::Deterministic(f) => steady_states(&f),
        System::Probabilistic(f) => crate::dynamics::steady_states_probabilistic(&f),
    });
    BenchRow {
        model,
        n: Some(doc.nvars()),
        seconds: Some(start.elapsed().as_secs_f64()),
        result: result.map(|s| s.len()).map_err(|e| e.to_string()),
    }
}

fn cmd_bench(args: &BenchArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let entries = fs::read_dir(&args.input).map_err(|e| Failure::input(format!("{}: {e}", args.input.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file() && !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
        .collect();
    files.sort();
    let jobs = (args.jobs as usize).min(files.len().max(1));
    let mut rows: Vec<Option<BenchRow>> = vec![None; files.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = rows
            .chunks_mut(files.len().div_ceil(jobs).max(1))
            .zip(files.chunks(files.len().div_ceil(jobs).max(1)))
            .map(|(out, paths)| {
                scope.spawn(move || {
                    for (slot, path) in out.iter_mut().zip(paths) {
                        *slot = Some(bench_file(path));
                    }
                })
            })
            .collect();
        for handle in chunks {
            handle.join().expect("benchmark worker panicked");
        }
    });
    let rows: Vec<BenchRow> = rows.into_iter().map(|r| r.expect("every file benchmarked")).collect();
    let mut csv = String::from("model,n,seconds,steady_states\n");
    for r in &rows {
        let n = r.n.map_or_else(String::new, |n| n.to_string());
        let secs = r.seconds.map_or_else(String::new, |s| format!("{s:.6}"));
        let result = match &r.result {
            Ok(k) => k.to_string(),
            Err(e) => {
                let _ = writeln!(stderr, "error: {}: {e}", r.model);
                "error".to_string()
            }
        };
        writeln!(csv, "{},{n},{secs},{result}", r.model).unwrap();
    }
    emit(&args.out, &csv, stdout)?;
    let times: Vec<f64> = rows
        .iter()
        .filter(|r| r.result.is_ok())
        .filter_map(|r| r.seconds)
        .collect();
    let failures = rows.len() - times.len();
    let mean = if times.is_empty() {
        0.0
    } else {
        times.iter().sum::<f64>() / times.len() as f64
    };
    let max = times.iter().copied().fold(0.0, f64::max);
    let _ = writeln!(
        stderr,
        "{} models, {failures} failed, mean {mean:.4} s, max {max:.4} s, {jobs} worker(s)",
        rows.len()
    );
    Ok(())
}
