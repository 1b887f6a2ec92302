//! `weightcat`: validate models, inspect objects and complexes, run scenarios.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use weightcat::bench::builtin::by_name;
use weightcat::bench::cxfile::ComplexFile;
use weightcat::bench::{load_complex, load_spec, parse_obj_expr, run_all, run_named, BenchError, RunConfig, ScenarioReport, SuiteReport};
use weightcat::catcore::{CatError, CategorySpec, Obj};
use weightcat::homotopy::{ChainMap, Complex};
use weightcat::numfun::DEFAULT_BOUND;

#[derive(Parser)]
#[command(name = "weightcat", version, about = "Exact checks on numerical quotients and their homotopy categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report as JSON to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Depth of nilpotency and power searches.
    #[arg(long, global = true, env = "WEIGHTCAT_BOUND", default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file against the category axioms.
    Validate { spec: String },
    /// Hom dimensions, traces, ideals and Kimura profile of an object.
    Analyze {
        spec: String,
        /// Object expression, e.g. "one+2*h1".
        #[arg(long)]
        obj: String,
        /// Tensor the object with a second expression.
        #[arg(long)]
        tensor: Option<String>,
    },
    /// Minimal model, weight truncation or length of a complex.
    Complex(ComplexArgs),
    /// The functors π and p on a complex.
    Functor(FunctorArgs),
    /// Run named scenarios.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("op").required(true).multiple(true).args(["minimize", "truncate", "length"])))]
struct ComplexArgs {
    spec: String,
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    minimize: bool,
    /// Cut at weight b.
    #[arg(long, value_name = "b", allow_hyphen_values = true)]
    truncate: Option<i32>,
    #[arg(long)]
    length: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("functor").required(true).args(["pi", "p"])))]
struct FunctorArgs {
    spec: String,
    #[arg(long)]
    file: PathBuf,
    /// The functor to the graded numerical category.
    #[arg(long)]
    pi: bool,
    /// The quotient of the homotopy category by numerical maps.
    #[arg(long)]
    p: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["scenario", "all"])))]
struct VerifyArgs {
    spec: String,
    #[arg(long, value_name = "NAME")]
    scenario: Vec<String>,
    #[arg(long)]
    all: bool,
}

/// Exit codes: check failures, usage errors, I/O.
enum Failure {
    Check(String),
    Usage(String),
    Io(String),
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Io(m) => Failure::Io(m),
            BenchError::UnknownScenario(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<CatError> for Failure {
    fn from(e: CatError) -> Self {
        Failure::Check(e.to_string())
    }
}

/// A file path, or the name of a builtin model when no such file exists.
fn resolve_spec(arg: &str) -> Result<(String, CategorySpec), BenchError> {
    let path = Path::new(arg);
    let name = path.file_stem().map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned());
    if !path.exists() {
        if let Some(spec) = by_name(arg) {
            return Ok((name, spec));
        }
    }
    Ok((name, load_spec(path)?))
}

fn validate(arg: &str) -> Result<ScenarioReport, Failure> {
    let mut rep = ScenarioReport::new("validate");
    let spec = match resolve_spec(arg) {
        Ok((_, s)) => s,
        Err(BenchError::Cat(CatError::IncoherentSpec { axiom, detail })) => {
            rep.check(&axiom, false, detail);
            return Ok(rep);
        }
        Err(e) => return Err(e.into()),
    };
    for c in spec.validation_report().checks {
        rep.check(c.axiom, c.pass, c.detail);
    }
    rep.value("simples", spec.simples.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", "));
    Ok(rep)
}

fn analyze(spec: &CategorySpec, obj: &str, tensor: Option<&str>, bound: usize) -> Result<ScenarioReport, Failure> {
    let mut rep = ScenarioReport::new("analyze");
    let mut x = parse_obj_expr(spec, obj)?;
    if let Some(t) = tensor {
        x = spec.tensor_obj(&x, &parse_obj_expr(spec, t)?)?;
    }
    rep.value("object", x.describe(spec));
    let n = spec.numerical_ideal(&x, &x);
    let r = spec.radical(&x, &x)?;
    rep.value("dim End", spec.hom_dim(&x, &x));
    rep.value("dim numerical ideal", n.dim());
    rep.value("dim radical", r.dim());
    rep.value("trace of identity", spec.trace(&weightcat::catcore::Mor::identity(spec, &x))?);
    for s in 0..spec.n_simples() {
        let simple = Obj::simple(spec, s);
        let name = spec.name(s);
        rep.value(&format!("dim Hom(X, {name})"), spec.hom_dim(&x, &simple));
        rep.value(&format!("dim Hom({name}, X)"), spec.hom_dim(&simple, &x));
        if x.mult(s) > 0 {
            rep.value(&format!("trace table {name}"), format!("{} x {}", x.mult(s), spec.superdim(s)));
        }
    }
    let k = spec.kimura_profile(&x);
    rep.value("kimura even rank", k.even_rank);
    rep.value("kimura odd rank", k.odd_rank);
    for m in 1..=3 {
        rep.value(&format!("sym^{m} rank"), spec.sym_power_rank(&x, m));
        rep.value(&format!("wedge^{m} rank"), spec.wedge_power_rank(&x, m));
    }
    rep.check("radical equals numerical ideal", r.same_span(spec, &n), format!("dim {}", n.dim()));
    let index = spec.nilpotency_index(&x, &n, bound);
    rep.check(
        "numerical ideal is nilpotent",
        index.is_some(),
        index.map_or(format!("not within {bound}"), |i| format!("index {i}")),
    );
    Ok(rep)
}

fn complex_json(spec: &CategorySpec, x: &Complex) -> String {
    ComplexFile::from_complex(spec, x).to_json().split_whitespace().collect::<Vec<_>>().join(" ")
}

fn complex(spec: &CategorySpec, a: &ComplexArgs) -> Result<ScenarioReport, Failure> {
    let mut rep = ScenarioReport::new("complex");
    let x = load_complex(spec, &a.file)?;
    if a.minimize {
        let m = spec.minimize(&x)?;
        rep.value("minimal model", complex_json(spec, &m.complex));
        rep.check("minimal model is minimal", spec.is_minimal(&m.complex), "");
        let back = m.forward.after(spec, &m.backward)?;
        rep.check("F G = id on the minimal model", back == ChainMap::identity(spec, &m.complex), "");
    }
    if let Some(b) = a.truncate {
        let d = spec.weight_truncate(&x, b)?;
        rep.value("low", complex_json(spec, &d.low));
        rep.value("high", complex_json(spec, &d.high));
        rep.check("delta is radical", spec.delta_is_radical(&d)?, "");
        rep.check("cone(delta) is the minimal model", spec.cone(&d.delta)?.complex == d.minimal.complex, "");
    }
    if a.length {
        let l = spec.length(&x)?;
        rep.value("weight window", l.window.map_or("empty".into(), |(lo, hi)| format!("[{lo}, {hi}]")));
        rep.value("length", l.length);
    }
    Ok(rep)
}

fn functor(spec: &CategorySpec, a: &FunctorArgs, bound: usize) -> Result<ScenarioReport, Failure> {
    let x = load_complex(spec, &a.file)?;
    let id = ChainMap::identity(spec, &x);
    if a.pi {
        let mut rep = ScenarioReport::new("functor-pi");
        let px = spec.pi_obj(&x)?;
        rep.value("pi(X)", px.describe(spec));
        let gap = spec.fullness_gap(&x, &x)?;
        rep.value("End image/target", format!("{}/{}", gap.image_dim, gap.target_dim));
        rep.check("π(id) is invertible", spec.pi_mor(&id)?.is_invertible(spec), "");
        let nil = spec.ker_pi_nilpotency(&x, bound)?;
        rep.value("ker π bound", nil.bound);
        rep.check(
            "ker π nilpotent within the bound",
            nil.verified(),
            nil.actual.map_or("not reached".into(), |a| format!("actual {a}")),
        );
        Ok(rep)
    } else {
        let mut rep = ScenarioReport::new("functor-p");
        let q = spec.kb_numerical_ideal(&x, &x)?;
        rep.value("dim End", q.dim());
        rep.value("dim numerical", q.numerical_dim());
        rep.value("dim End after p", q.quotient_dim());
        rep.value("trace of identity", spec.kb_trace(&id)?);
        rep.check("p(id) is invertible", spec.conservativity_check(&id)?.p_invertible, "");
        Ok(rep)
    }
}

fn run(cli: &Cli) -> Result<SuiteReport, Failure> {
    let cfg = RunConfig { seed: cli.seed, bound: cli.bound };
    let single = |model: &str, r: ScenarioReport| SuiteReport::new(model, cfg.seed, cfg.bound, vec![r]);
    Ok(match &cli.command {
        Command::Validate { spec } => {
            let model = Path::new(spec).file_stem().map_or(spec.clone(), |s| s.to_string_lossy().into_owned());
            single(&model, validate(spec)?)
        }
        Command::Analyze { spec, obj, tensor } => {
            let (model, s) = resolve_spec(spec)?;
            single(&model, analyze(&s, obj, tensor.as_deref(), cfg.bound)?)
        }
        Command::Complex(a) => {
            let (model, s) = resolve_spec(&a.spec)?;
            single(&model, complex(&s, a)?)
        }
        Command::Functor(a) => {
            let (model, s) = resolve_spec(&a.spec)?;
            single(&model, functor(&s, a, cfg.bound)?)
        }
        Command::Verify(v) => {
            let (model, s) = resolve_spec(&v.spec)?;
            if v.all {
                run_all(&model, &s, &cfg)
            } else {
                let names: Vec<&str> = v.scenario.iter().map(String::as_str).collect();
                run_named(&model, &s, &cfg, &names)?
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = run(&cli).and_then(|report| {
        print!("{}", report.to_text());
        if let Some(path) = &cli.report {
            std::fs::write(path, report.to_json()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        Ok(report.pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
