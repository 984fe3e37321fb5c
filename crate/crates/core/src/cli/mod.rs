//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a per-line domain/parse failure or a failed
//! verification, 2 usage or I/O error.

pub mod render;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bijections;
use crate::error::Result as SeqResult;
use crate::oracle::{count_class, Oracle, OracleError, SeqFilter, Suite, VerificationReport};
use crate::seq::{IndexSet, SignSeq};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Failures listed per report before the rest are summarized.
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-bijections",
    version,
    about = "Bijections between balanced and zero-free +/- sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a bijection to every input line.
    Map {
        #[arg(long = "map", value_enum)]
        map: MapKind,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print n, sum and class flags for every input line.
    Classify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Compare a closed-form class count with enumeration.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long = "class")]
        class: ClassName,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Run verification suites for every size up to n.
    Verify {
        #[arg(long, value_parser = parse_suite_selection)]
        suite: SuiteSelection,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
        /// Emit one JSON record per report instead of text.
        #[arg(long)]
        json: bool,
        /// Append elapsed milliseconds to text summaries.
        #[arg(long)]
        timing: bool,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Draw every input line as a lattice path.
    Render {
        #[arg(long, value_enum, default_value = "mountain")]
        mode: RenderMode,
        /// Mark peaks (balanced, starting '+') or pivots (positive).
        #[arg(long)]
        annotate_peaks: bool,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file; standard input when absent.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long = "out")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    /// Enumeration cap on n.
    #[arg(long = "max-n")]
    pub max_n: Option<usize>,
}

impl RunArgs {
    fn oracle(&self) -> Oracle {
        let oracle = Oracle::new().with_workers(self.workers as usize);
        match self.max_n {
            Some(max) => oracle.with_max_n(max),
            None => oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapKind {
    Direct,
    DirectInverse,
    Indirect,
    IndirectInverse,
    Full,
    FullInverse,
}

impl MapKind {
    fn apply(self, seq: &SignSeq) -> SeqResult<SignSeq> {
        match self {
            MapKind::Direct => bijections::direct_forward(seq),
            MapKind::DirectInverse => bijections::direct_backward(seq),
            MapKind::Indirect => bijections::indirect_f(seq),
            MapKind::IndirectInverse => bijections::indirect_g(seq),
            MapKind::Full => bijections::full_forward(seq),
            MapKind::FullInverse => bijections::full_backward(seq),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RenderMode {
    Mountain,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassName {
    All,
    Balanced,
    BalancedStartPlus,
    #[value(alias = "zero_free")]
    ZeroFree,
    Positive,
    Negative,
    #[value(alias = "sum2k_start_plus")]
    SumStartPlus,
    #[value(alias = "sum2k_start_minus")]
    SumStartMinus,
    #[value(alias = "P_nk")]
    PositiveSum,
    #[value(alias = "T_nk_plus")]
    TouchingStartPlus,
    WeakBallot,
}

impl ClassName {
    fn filter(self, n: usize, k: Option<i64>) -> Result<SeqFilter, String> {
        let with_k = |make: fn(usize) -> SeqFilter| match k {
            None => Err("--k is required for this class".to_string()),
            Some(k) if k < 0 || k as usize > n => Err(format!(
                "k={k} is out of range for n={n} (need 0 <= k <= n)"
            )),
            Some(k) => Ok(make(k as usize)),
        };
        Ok(match self {
            ClassName::All => SeqFilter::All,
            ClassName::Balanced => SeqFilter::Balanced,
            ClassName::BalancedStartPlus => SeqFilter::BalancedStartPlus,
            ClassName::ZeroFree => SeqFilter::ZeroFree,
            ClassName::Positive => SeqFilter::Positive,
            ClassName::Negative => SeqFilter::Negative,
            ClassName::WeakBallot => SeqFilter::WeakBallot,
            ClassName::SumStartPlus => with_k(SeqFilter::SumStartPlus)?,
            ClassName::SumStartMinus => with_k(SeqFilter::SumStartMinus)?,
            ClassName::PositiveSum => with_k(SeqFilter::PositiveWithSum)?,
            ClassName::TouchingStartPlus => with_k(SeqFilter::TouchingStartPlus)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl SuiteSelection {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteSelection::One(suite) => vec![suite],
            SuiteSelection::All => Suite::ALL.to_vec(),
        }
    }
}

fn parse_suite_selection(s: &str) -> Result<SuiteSelection, String> {
    if s == "all" {
        return Ok(SuiteSelection::All);
    }
    s.parse().map(SuiteSelection::One).map_err(|e| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("{e}; expected one of {}, all", names.join(", "))
    })
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> io::Result<i32> {
    match command {
        Command::Map { map, io } => with_io(&io, stdin, stdout, |input, out| {
            run_map(map, input, out, stderr)
        }),
        Command::Classify { io } => with_io(&io, stdin, stdout, |input, out| {
            run_classify(input, out, stderr)
        }),
        Command::Render {
            mode,
            annotate_peaks,
            io,
        } => with_io(&io, stdin, stdout, |input, out| {
            run_render(mode, annotate_peaks, input, out, stderr)
        }),
        Command::Count {
            n,
            k,
            class,
            run,
            output,
        } => with_output(output.as_ref(), stdout, |out| {
            run_count(&run.oracle(), n, k, class, out, stderr)
        }),
        Command::Verify {
            suite,
            n,
            run,
            json,
            timing,
            output,
        } => with_output(output.as_ref(), stdout, |out| {
            run_verify(&run.oracle(), suite, n, json, timing, out, stderr)
        }),
    }
}

fn with_output(
    path: Option<&PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<i32>,
) -> io::Result<i32> {
    match path {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            let code = body(&mut file)?;
            file.flush()?;
            Ok(code)
        }
        None => {
            let code = body(stdout)?;
            stdout.flush()?;
            Ok(code)
        }
    }
}

fn with_io(
    io_args: &IoArgs,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn BufRead, &mut dyn Write) -> io::Result<i32>,
) -> io::Result<i32> {
    let mut file_input;
    let input: &mut dyn BufRead = match &io_args.input {
        Some(path) => {
            file_input = BufReader::new(File::open(path)?);
            &mut file_input
        }
        None => stdin,
    };
    with_output(io_args.output.as_ref(), stdout, |out| body(input, out))
}

/// Numbered input lines with any trailing `\r` removed.
fn numbered_lines(
    input: &mut dyn BufRead,
) -> impl Iterator<Item = io::Result<(usize, String)>> + '_ {
    input.lines().enumerate().map(|(i, line)| {
        line.map(|mut l| {
            if l.ends_with('\r') {
                l.pop();
            }
            (i + 1, l)
        })
    })
}

pub fn run_map(
    map: MapKind,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut failed = false;
    for line in numbered_lines(input) {
        let (number, text) = line?;
        match text.parse::<SignSeq>().and_then(|s| map.apply(&s)) {
            Ok(image) => writeln!(out, "{image}")?,
            Err(e) => {
                failed = true;
                writeln!(err, "line {number}: {e}")?;
            }
        }
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

pub fn run_classify(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut failed = false;
    for line in numbered_lines(input) {
        let (number, text) = line?;
        match text.parse::<SignSeq>() {
            Ok(seq) => {
                let c = seq.classify();
                let mut record = format!("n={} sum={}", c.n, c.sum);
                for (flag, name) in [
                    (c.balanced, "balanced"),
                    (c.positive, "positive"),
                    (c.negative, "negative"),
                    (c.zero_free, "zero-free"),
                ] {
                    if flag {
                        record.push(' ');
                        record.push_str(name);
                    }
                }
                writeln!(out, "{record}")?;
            }
            Err(e) => {
                failed = true;
                writeln!(err, "line {number}: {e}")?;
            }
        }
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

pub fn run_render(
    mode: RenderMode,
    annotate: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut failed = false;
    let mut first = true;
    for line in numbered_lines(input) {
        let (number, text) = line?;
        let seq = match text.parse::<SignSeq>() {
            Ok(seq) => seq,
            Err(e) => {
                failed = true;
                writeln!(err, "line {number}: {e}")?;
                continue;
            }
        };
        let marks: Option<IndexSet> = if annotate {
            seq.peaks().or_else(|_| seq.pivots()).ok()
        } else {
            None
        };
        match mode {
            RenderMode::Mountain => {
                if !first {
                    writeln!(out)?;
                }
                writeln!(out, "{}", render::mountain(&seq, marks.as_ref()))?;
            }
            RenderMode::Grid => writeln!(out, "{}", render::grid(&seq, marks.as_ref()))?,
        }
        first = false;
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

pub fn run_count(
    oracle: &Oracle,
    n: usize,
    k: Option<i64>,
    class: ClassName,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let filter = match class.filter(n, k) {
        Ok(filter) => filter,
        Err(message) => {
            writeln!(err, "error: {message}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let formula = match count_class(n, filter) {
        Ok(value) => value,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match oracle.count_enumerated(n, filter) {
        Ok(enumerated) => {
            let agree = enumerated == formula;
            writeln!(
                out,
                "formula={formula} enumerated={enumerated} {}",
                if agree { "agree" } else { "disagree" }
            )?;
            Ok(if agree { EXIT_OK } else { EXIT_FAILURE })
        }
        Err(OracleError::LimitExceeded { n, max }) => {
            writeln!(
                out,
                "formula={formula} enumerated=skipped (n={n} exceeds enumeration limit {max})"
            )?;
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

pub fn run_verify(
    oracle: &Oracle,
    selection: SuiteSelection,
    n: usize,
    json: bool,
    timing: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut reports = Vec::new();
    for suite in selection.suites() {
        match suite.run_up_to(oracle, n) {
            Ok(batch) => reports.extend(batch),
            Err(e) => {
                writeln!(err, "error: suite {suite}: {e}")?;
                return Ok(EXIT_USAGE);
            }
        }
    }
    write_reports(&reports, json, timing, out)?;
    Ok(exit_code_for(&reports))
}

/// 0 when every report passed, 1 otherwise.
pub fn exit_code_for(reports: &[VerificationReport]) -> i32 {
    if reports.iter().all(VerificationReport::passed) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

pub fn write_reports(
    reports: &[VerificationReport],
    json: bool,
    timing: bool,
    out: &mut dyn Write,
) -> io::Result<()> {
    if json {
        for report in reports {
            writeln!(out, "{}", report.to_json())?;
        }
        return Ok(());
    }
    for report in reports {
        writeln!(out, "{}", report.summary_line(timing))?;
        for failure in report.failures.iter().take(MAX_LISTED_FAILURES) {
            writeln!(out, "  {}: {}", failure.input, failure.reason)?;
        }
        if report.failures.len() > MAX_LISTED_FAILURES {
            writeln!(
                out,
                "  ... {} more failures",
                report.failures.len() - MAX_LISTED_FAILURES
            )?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "total: {} reports, {} failed", reports.len(), failed)
}
