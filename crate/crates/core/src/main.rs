use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use polynum::builtin::{self, BuiltinSpec};
use polynum::partition::{generic_point, partition_file, vector_set};
use polynum::report::{run_pipeline, summary_record, PipelineOptions, Subject};
use polynum::sequences::{self, SequenceMethod};
use polynum::{Error, PointedTriangulation, Polytope, PolytopeFile};

const N_LIMIT: usize = 10_000;

#[derive(Parser)]
#[command(
    name = "polynum",
    version,
    about = "Pointed triangulations and polytope number sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin polytope with its face lattice as JSON.
    Gen(GenArgs),
    /// Run every construction and cross-check; emits NDJSON claim records.
    Pipeline(PipelineArgs),
    /// Print a sequence prefix computed by one method.
    Sequence(SequenceArgs),
    /// Print the pointed triangulation as JSON.
    Triangulate(InputArgs),
    /// Print both visibility partitions for one generic point as JSON.
    Partition(InputArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Simplex,
    Cube,
    Cross,
    Pyramid,
    Prism,
    Bipyramid,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    /// Dimension, for simplex, cube and cross.
    dim: Option<usize>,
    /// Base polytope for pyramid, prism and bipyramid: a JSON file or a builtin spec.
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Builtin such as `cube:3` or `pyramid:square`.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Polytope JSON file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Repeat to sweep several builtins in parallel.
    #[arg(long, conflicts_with = "input")]
    builtin: Vec<String>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "n", default_value_t = 15)]
    n_max: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append an aggregate record.
    #[arg(long)]
    summary: bool,
    /// Also record h-vectors for each attainable choice of global apex.
    #[arg(long)]
    apex_trials: bool,
}

#[derive(Args)]
struct SequenceArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long = "n", default_value_t = 15)]
    n_max: usize,
    /// recursive, simplex-sum, h, k, h-reversed or closed-form.
    #[arg(long, default_value = "recursive")]
    method: String,
    #[arg(long)]
    interior: bool,
}

enum Failure {
    Usage(String),
    Claims,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Pipeline(a) => pipeline(a),
        Command::Sequence(a) => sequence(a),
        Command::Triangulate(a) => triangulate(a),
        Command::Partition(a) => partition(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn json_line<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn read_polytope(path: &Path) -> Result<Polytope, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(PolytopeFile::from_json(&text)?.into_polytope()?)
}

fn subject(builtin: Option<&str>, input: Option<&Path>) -> Result<Subject, Failure> {
    match (builtin, input) {
        (Some(b), None) => Ok(Subject::builtin(b.parse()?)?),
        (None, Some(path)) => Ok(read_polytope(path)?.into()),
        _ => Err(Failure::Usage(
            "exactly one of --builtin or --input is required".into(),
        )),
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n > N_LIMIT {
        return Err(Failure::Usage(format!("--n must be at most {N_LIMIT}")));
    }
    Ok(())
}

fn gen(a: GenArgs) -> Result<(), Failure> {
    let need_dim = || {
        a.dim
            .ok_or_else(|| Failure::Usage("this family needs a dimension".into()))
    };
    let base = || -> Result<Polytope, Failure> {
        let b = a
            .base
            .as_deref()
            .ok_or_else(|| Failure::Usage("this family needs --base".into()))?;
        if Path::new(b).exists() {
            read_polytope(Path::new(b))
        } else {
            Ok(b.parse::<BuiltinSpec>()?.build()?)
        }
    };
    let p = match a.family {
        Family::Simplex => builtin::simplex(need_dim()?)?,
        Family::Cube => builtin::cube(need_dim()?)?,
        Family::Cross => builtin::cross(need_dim()?)?,
        Family::Pyramid => builtin::pyramid(&base()?)?,
        Family::Prism => builtin::prism(&base()?)?,
        Family::Bipyramid => builtin::bipyramid(&base()?)?,
    };
    emit(a.out.as_deref(), &json_line(&p.to_file()))
}

fn pipeline(a: PipelineArgs) -> Result<(), Failure> {
    check_n(a.n_max)?;
    let subjects: Vec<Subject> = if a.builtin.is_empty() {
        vec![subject(None, a.input.as_deref())?]
    } else {
        a.builtin
            .iter()
            .map(|b| subject(Some(b), None))
            .collect::<Result<_, _>>()?
    };
    let opts = PipelineOptions {
        seed: a.seed,
        n_max: a.n_max,
        apex_trials: a.apex_trials,
        ..Default::default()
    };
    let reports: Vec<_> = subjects.par_iter().map(|s| run_pipeline(s, opts)).collect();
    let mut text: String = reports.iter().map(|r| r.to_ndjson()).collect();
    if a.summary {
        text.push_str(&json_line(&summary_record(&reports)));
    }
    emit(a.out.as_deref(), &text)?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

fn sequence(a: SequenceArgs) -> Result<(), Failure> {
    check_n(a.n_max)?;
    let method: SequenceMethod = a.method.parse()?;
    if matches!(
        method,
        SequenceMethod::KDecomposition | SequenceMethod::HReversed
    ) && !a.interior
    {
        return Err(Failure::Usage(format!(
            "--method {} needs --interior",
            a.method
        )));
    }
    let s = subject(a.input.builtin.as_deref(), a.input.input.as_deref())?;
    let result = if method == SequenceMethod::ClosedForm {
        let spec = s
            .spec
            .as_ref()
            .ok_or_else(|| Failure::Usage("closed-form needs --builtin".into()))?;
        sequences::closed_form(spec, a.interior, a.n_max)?
    } else {
        let t = PointedTriangulation::new(&s.polytope, a.input.seed)?;
        let v = vector_set(&t, &generic_point(&t, a.input.seed)?)?;
        sequences::sequence(&t, &v, method, a.interior, a.n_max)?
    };
    emit(a.input.out.as_deref(), &json_line(&result))
}

fn triangulate(a: InputArgs) -> Result<(), Failure> {
    let s = subject(a.builtin.as_deref(), a.input.as_deref())?;
    let t = PointedTriangulation::new(&s.polytope, a.seed)?;
    emit(a.out.as_deref(), &json_line(&t.to_file()))
}

fn partition(a: InputArgs) -> Result<(), Failure> {
    let s = subject(a.builtin.as_deref(), a.input.as_deref())?;
    let t = PointedTriangulation::new(&s.polytope, a.seed)?;
    let x = generic_point(&t, a.seed)?;
    emit(a.out.as_deref(), &json_line(&partition_file(&t, &x)?))
}
