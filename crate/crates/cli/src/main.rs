use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fcat_core::centre::{
    centre_twist, completeness_check, decompose_tube_algebra, eps_xy_family, half_braiding_from_idempotent,
    ModularData,
};
use fcat_core::checks::{self, Check, SuiteOptions, DEFAULT_SEED};
use fcat_core::fusion_data::{builtin_source, CategoryFile};
use fcat_core::linalg::{Mat, C64};
use fcat_core::{tube_hom_dim, CategorySpec, Error, TubeAlgebra};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fcat", version, about = "Fusion categories, tube algebras and centre idempotents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a category file and run the data consistency checks.
    Validate(Common),
    /// Labels, dimensions and fusion rules.
    Info(Common),
    /// Dimension of Hom_TC(X, Y).
    TubeDim(Common),
    /// Basis and structure constants of the tube algebra.
    TubeAlgebra(Common),
    /// Block decomposition of the tube algebra.
    Centre(Common),
    /// S and T matrices and the completeness test.
    Modular(Common),
    /// The full identity suite.
    Check(Common),
}

#[derive(Args)]
struct Common {
    /// Category file; a bundled name (fibonacci, ising, vec_z2, vec_z3) also works.
    file: PathBuf,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated label ids; empty for the unit.
    #[arg(long, default_value = "")]
    x: String,
    #[arg(long, default_value = "")]
    y: String,
    /// Random instances per property in `check`.
    #[arg(long, default_value_t = 20)]
    instances: usize,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    command: &'static str,
    spec: String,
    tol: f64,
    seed: u64,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &Path, tol: Option<f64>) -> Result<CategorySpec, Failure> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => match builtin_source(&path.to_string_lossy()) {
            Some(src) if !path.exists() => src.to_string(),
            _ => return Err(Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        },
    };
    Ok(CategorySpec::from_file(&CategoryFile::from_json(&text)?, tol)?)
}

fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

fn matrix(m: &Mat) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect())).collect())
}

fn info(spec: &CategorySpec) -> Value {
    let labels: Vec<&str> = (0..spec.rank()).map(|a| spec.label_id(a)).collect();
    let mut fusion = Vec::new();
    for a in 0..spec.rank() {
        for b in 0..spec.rank() {
            for k in 0..spec.rank() {
                let n = spec.n(a, b, k);
                if n > 0 {
                    fusion.push(json!([labels[a], labels[b], labels[k], n]));
                }
            }
        }
    }
    json!({
        "labels": labels,
        "unit": labels[spec.unit()],
        "duals": (0..spec.rank()).map(|a| labels[spec.dual(a)]).collect::<Vec<_>>(),
        "dims": (0..spec.rank()).map(|a| complex(spec.dim(a))).collect::<Vec<_>>(),
        "global_dimension": complex(spec.global_dimension()),
        "fusion": fusion,
        "braided": spec.is_braided(),
    })
}

fn centre(spec: &CategorySpec, alg: &TubeAlgebra, seed: u64, out: &mut Vec<Check>) -> Result<Value, Failure> {
    let blocks = decompose_tube_algebra(spec, alg, seed)?;
    let mut rows = Vec::new();
    let mut total = 0;
    for b in &blocks {
        let n = b.size();
        total += n * n;
        let mut row = json!({ "size": n, "mults": b.mults });
        if let Ok(hb) = half_braiding_from_idempotent(spec, b) {
            if let Ok(t) = centre_twist(spec, &hb) {
                row["twist"] = complex(t);
            }
        }
        rows.push(row);
    }
    out.push(Check::count("block_decomposition", total, alg.dim()));
    Ok(json!({ "blocks": rows, "total_dim": total }))
}

fn modular(spec: &CategorySpec, out: &mut Vec<Check>) -> Result<Value, Failure> {
    let md = ModularData::compute(spec)?;
    let fam = eps_xy_family(spec)?;
    let comp = completeness_check(spec, &fam)?;
    let modular = !md.singular;
    out.push(Check::residual("s_symmetric", md.symmetry_residual, spec.tol));
    out.push(Check::residual("modular_dual_strand", md.dual_residual, spec.tol));
    out.push(Check::flag("completeness", comp.complete, modular));
    let t: Vec<Value> = (0..md.t.nrows()).map(|i| complex(md.t[(i, i)])).collect();
    Ok(json!({
        "S": matrix(&md.s),
        "T": t,
        "min_singular_value": md.min_singular_value,
        "singular": md.singular,
        "is_modular": modular,
        "completeness": {
            "lhs": comp.lhs,
            "rhs": comp.rhs,
            "complete": comp.complete,
            "orthogonal": comp.orthogonal,
            "primitive": comp.primitive,
        },
    }))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let start = Instant::now();
    let (name, args) = match &cli.command {
        Command::Validate(a) => ("validate", a),
        Command::Info(a) => ("info", a),
        Command::TubeDim(a) => ("tube-dim", a),
        Command::TubeAlgebra(a) => ("tube-algebra", a),
        Command::Centre(a) => ("centre", a),
        Command::Modular(a) => ("modular", a),
        Command::Check(a) => ("check", a),
    };
    let spec = load(&args.file, args.tol)?;
    let opts = SuiteOptions { seed: args.seed, instances: args.instances };
    let mut checks = Vec::new();
    let result = match cli.command {
        Command::Validate(_) => {
            checks = checks::fusion_checks(&spec);
            Value::Null
        }
        Command::Info(_) => info(&spec),
        Command::TubeDim(_) => {
            let (x, y) = (spec.parse_word(&args.x)?, spec.parse_word(&args.y)?);
            // plain integer, as promised for scripting
            println!("{}", tube_hom_dim(&spec, &x, &y));
            return Ok(ExitCode::SUCCESS);
        }
        Command::TubeAlgebra(_) => {
            let alg = TubeAlgebra::new(&spec);
            checks.push(Check::residual("tube_algebra_associativity", alg.algebra.associativity_residual(), spec.tol));
            alg.to_json(&spec)
        }
        Command::Centre(_) => centre(&spec, &TubeAlgebra::new(&spec), args.seed, &mut checks)?,
        Command::Modular(_) => modular(&spec, &mut checks)?,
        Command::Check(_) => {
            checks = checks::run_suite(&spec, opts);
            Value::Null
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        spec: spec.name.clone(),
        tol: spec.tol,
        seed: args.seed,
        checks,
        result,
        elapsed_ms: args.timing.then(|| start.elapsed().as_millis()),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        // a closed pipe on stdout is not worth a panic
        None => drop(writeln!(std::io::stdout(), "{text}")),
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("fcat: {msg}");
            ExitCode::from(2)
        }
    }
}
