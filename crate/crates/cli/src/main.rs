//! Command-line front end: one job per invocation.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

use pi1sl2::job::schema::parse_rational;
use pi1sl2::{run_job, JobOptions, JobOutcome};

#[derive(Parser)]
#[command(name = "pi1sl2", version, about = "Exact loops in SL2: certificates, winding numbers, unimodular rows")]
struct Cli {
    /// Ring descriptor: a JSON file, inline JSON, or a bare kind such as `rationals`.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Write the full machine-readable outcome here.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    /// Refine reported root intervals to at most this width, e.g. `1/1000`.
    #[arg(long, global = true)]
    refine_width: Option<String>,
    #[command(subcommand)]
    command: Command,
}

/// Inputs shared by all subcommands. Flags override fields of the job file.
#[derive(Args, Debug, Default)]
struct Input {
    /// JSON job file holding the payload (`-` reads stdin).
    #[arg(long)]
    job: Option<String>,
    /// Plane loop `[f1, f2]`: a JSON file or inline JSON.
    #[arg(long = "loop")]
    loop_: Option<String>,
    /// Matrix `[[a, b], [c, d]]`: a JSON file or inline JSON.
    #[arg(long)]
    matrix: Option<String>,
    /// Loop variable.
    #[arg(long)]
    var: Option<String>,
    /// Oracle grid size.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a matrix is a loop (det 1, identity at both ends).
    VerifyLoop(Input),
    /// Check a homotopy certificate.
    VerifyHomotopy(Input),
    /// Product of two loops (`left`, `right` in the job).
    LoopMul(Input),
    /// Exact winding number of a plane loop.
    Winding(Input),
    /// Winding number of the first column of a rational loop.
    Eta(Input),
    /// Floating-point winding estimate.
    Oracle(Input),
    /// Six-factor elementary decomposition over dual numbers.
    DecomposeNil(Input),
    /// Path from the identity to a matrix congruent to it.
    ConnectIdentity(Input),
    /// Contraction certificate for a loop congruent to the identity.
    ContractNil(Input),
    /// Lift a rational loop to dual numbers.
    LiftNil(Input),
    /// Certificate between two loops agreeing at parameter zero.
    InjectivityHomotopy(Input),
    /// Graded deformation to the degree-zero part.
    SwanWeibel(Input),
    /// Certificate moving the parameter from 1 to itself.
    BasepointShift(Input),
    /// Components of a loop over a product ring.
    ProductSplit(Input),
    /// Product of two unimodular rows.
    GammaMul(Input),
    /// Completion of a unimodular row.
    Complete(Input),
    /// Check an equivalence certificate between unimodular rows.
    GammaEquiv(Input),
    /// Check a splitting over a double localization.
    QuillenCheck(Input),
    /// Degree of a unimodular row over the circle ring.
    CircleDegree(Input),
    /// Re-run every built-in worked example.
    PaperSuite(Input),
}

impl Command {
    fn split(self) -> (&'static str, Input) {
        use Command::*;
        match self {
            VerifyLoop(i) => ("verify-loop", i),
            VerifyHomotopy(i) => ("verify-homotopy", i),
            LoopMul(i) => ("loop-mul", i),
            Winding(i) => ("winding", i),
            Eta(i) => ("eta", i),
            Oracle(i) => ("oracle", i),
            DecomposeNil(i) => ("decompose-nil", i),
            ConnectIdentity(i) => ("connect-identity", i),
            ContractNil(i) => ("contract-nil", i),
            LiftNil(i) => ("lift-nil", i),
            InjectivityHomotopy(i) => ("injectivity-homotopy", i),
            SwanWeibel(i) => ("swan-weibel", i),
            BasepointShift(i) => ("basepoint-shift", i),
            ProductSplit(i) => ("product-split", i),
            GammaMul(i) => ("gamma-mul", i),
            Complete(i) => ("complete", i),
            GammaEquiv(i) => ("gamma-equiv", i),
            QuillenCheck(i) => ("quillen-check", i),
            CircleDegree(i) => ("circle-degree", i),
            PaperSuite(i) => ("paper-suite", i),
        }
    }
}

/// Inline JSON, a bare word, or a path to a JSON file.
fn json_arg(arg: &str, bare_word_ok: bool) -> Result<Value, String> {
    match serde_json::from_str::<Value>(arg) {
        Ok(v) => return Ok(v),
        Err(e) if arg.trim_start().starts_with(['[', '{', '"']) => return Err(format!("inline JSON: {e}")),
        Err(_) => {}
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        return serde_json::from_str(&s).map_err(|e| format!("stdin: {e}"));
    }
    match fs::read_to_string(arg) {
        Ok(s) => serde_json::from_str(&s).map_err(|e| format!("{arg}: {e}")),
        Err(_) if bare_word_ok && arg.chars().all(|c| c.is_ascii_alphabetic()) => Ok(Value::String(arg.into())),
        Err(e) => Err(format!("{arg}: {e}")),
    }
}

fn build(cli_command: &str, input: Input) -> Result<Value, String> {
    let mut job = match &input.job {
        Some(path) => match json_arg(path, false)? {
            Value::Object(m) => m,
            _ => return Err(format!("{path}: a job must be a JSON object")),
        },
        None => Map::new(),
    };
    if let Some(l) = &input.loop_ {
        job.insert("loop".into(), json_arg(l, false)?);
    }
    if let Some(m) = &input.matrix {
        job.insert("matrix".into(), json_arg(m, false)?);
    }
    if let Some(v) = &input.var {
        job.insert("var".into(), Value::String(v.clone()));
        job.insert("loop_var".into(), Value::String(v.clone()));
    }
    if let Some(n) = input.samples {
        job.insert("samples".into(), n.into());
    }
    job.insert("command".into(), Value::String(cli_command.into()));
    Ok(Value::Object(job))
}

fn headline(o: &JobOutcome) -> Option<String> {
    let r = &o.result;
    let key = match o.command.as_str() {
        "winding" => "winding",
        "eta" => "eta",
        "oracle" => "value",
        "circle-degree" => "degree",
        _ => return None,
    };
    r.get(key).map(Value::to_string)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, input) = cli.command.split();
    let usage = |msg: String| {
        eprintln!("error: {msg}");
        ExitCode::from(2)
    };
    let mut opts = JobOptions {
        samples: input.samples,
        ..JobOptions::default()
    };
    if let Some(r) = &cli.ring {
        match json_arg(r, true) {
            Ok(v) => opts.ring = Some(v),
            Err(e) => return usage(e),
        }
    }
    if let Some(w) = &cli.refine_width {
        match parse_rational(w) {
            Ok(q) => opts.refine_width = Some(q),
            Err(e) => return usage(e.to_string()),
        }
    }
    let job = match build(name, input) {
        Ok(j) => j,
        Err(e) => return usage(e),
    };
    let outcome = run_job(&job, &opts);
    if let Some(path) = &cli.json_out {
        let text = serde_json::to_string_pretty(&outcome.to_json()).expect("outcome serializes");
        if let Err(e) = fs::write(path, text + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let shown = match headline(&outcome) {
        Some(h) => Some(h),
        None if !outcome.result.is_null() => Some(outcome.result.to_string()),
        None => None,
    };
    if let Some(text) = shown {
        // a closed pipe is not an error of the job
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    let status = serde_json::to_value(outcome.status).expect("status serializes");
    eprintln!("{name}: {} ({})", status.as_str().unwrap_or("?"), outcome.summary);
    ExitCode::from(outcome.exit_code as u8)
}
