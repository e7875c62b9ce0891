//! `qeag`: build modules, apply functors, compute rank varieties and run the
//! check suites from the command line.

mod files;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qeag_core::homol::{head_decompose, is_isomorphic, is_projective_a, omega, omega_inv, projective_cover, stable_reduce};
use qeag_core::io::{ModuleFile, SubmoduleFile, VarietyFile};
use qeag_core::rep::{
    dsum, dual, induce_r, induce_rq, random_module, regular_rep, restrict_to_r, restrict_to_rq, simple, tensor,
    trivial, twist_g,
};
use qeag_core::suites::{run_suites, RunReport, SuiteConfig, DEFAULT_CONFIGS, SUITES};
use qeag_core::variety::{
    carlson_module, orbit_representatives, psi_image, rank_variety, rank_variety_r, rank_variety_rq,
};
use qeag_core::{Char, Error, FieldCtx, Fe, ModuleRep, PPoint};

use files::{load, write_atomic, Loaded};

#[derive(Parser)]
#[command(name = "qeag", version, about = "Rank varieties for quantum elementary abelian groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Characteristic of the base field.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Order of the root of unity q; must divide p - 1.
    #[arg(long, global = true)]
    ell: Option<u32>,
    /// Number of generator pairs.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Extension degrees at which varieties are sampled.
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2")]
    ext_degrees: Vec<u32>,
    /// Number of random modules per check battery.
    #[arg(long, global = true, default_value_t = 20)]
    battery: usize,
    /// Output directory.
    #[arg(long, global = true, env = "QEAG_OUT_DIR", default_value = ".")]
    out: PathBuf,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a module and write it as JSON.
    Build(BuildArgs),
    /// Apply an operation to module files.
    Op(OpArgs),
    /// Compute the rank variety of a module file.
    Variety(VarietyArgs),
    /// Run check suites; exits 1 if any case fails.
    Check(CheckArgs),
    /// Describe a context, or a module file.
    Info(InfoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Trivial,
    Simple,
    Regular,
    Projcover,
    Carlson,
    #[value(name = "induce-R")]
    InduceR,
    Random,
}

#[derive(Args)]
struct BuildArgs {
    kind: BuildKind,
    /// Character exponents, e.g. `1,0`.
    #[arg(long, value_delimiter = ',')]
    chi: Option<Vec<u8>>,
    /// Point coordinates in F_p, e.g. `1,1`.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<u32>>,
    /// R-module file for `induce-R` (an A-module file is restricted first).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Largest dimension for `random`.
    #[arg(long, default_value_t = 20)]
    budget: usize,
    /// Output file (defaults to `<out>/<kind>.json`).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum OpKind {
    Tensor,
    Dual,
    Dsum,
    Omega,
    OmegaInv,
    Reduce,
    Twist,
    #[value(name = "restrict-R")]
    RestrictR,
    #[value(name = "restrict-Rq")]
    RestrictRq,
    #[value(name = "induce-R")]
    InduceR,
    #[value(name = "induce-Rq")]
    InduceRq,
}

#[derive(Args)]
struct OpArgs {
    op: OpKind,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Group element exponents for `twist`, e.g. `1,0`.
    #[arg(long, value_delimiter = ',')]
    g: Option<Vec<u8>>,
    /// Report whether the result is isomorphic to this module file.
    #[arg(long)]
    iso_check: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VarietyArgs {
    input: PathBuf,
    /// Also record the image under λ ↦ λ^ell.
    #[arg(long)]
    emit_psi: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// A suite name or `all`.
    suite: String,
    /// Corrupt one tensor product in the tensor suite.
    #[arg(long)]
    inject_fault: bool,
    /// Use S(g_i) = -g_i^{-1} in the hopf suite.
    #[arg(long)]
    negated_antipode: bool,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InfoArgs {
    input: Option<PathBuf>,
}

/// Errors reported to the user; all map to exit code 2.
#[derive(Debug)]
enum CliError {
    Usage(String),
    Core(Error),
    File(PathBuf, String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::File(path, msg) => write!(f, "{}: {msg}", path.display()),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let g = &cli.global;
    if let Some(0) = g.workers {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    match cli.command {
        Command::Build(args) => build(g, args).map(|_| true),
        Command::Op(args) => op(g, args).map(|_| true),
        Command::Variety(args) => variety(g, args).map(|_| true),
        Command::Check(args) => check(g, args),
        Command::Info(args) => info(g, args).map(|_| true),
    }
}

fn context(g: &Global) -> CliResult<Arc<FieldCtx>> {
    match (g.p, g.ell, g.n) {
        (Some(p), Some(ell), Some(n)) => Ok(FieldCtx::new(p, ell, n)?),
        _ => Err(CliError::Usage("--p, --ell and --n are required".into())),
    }
}

fn workers(g: &Global) -> usize {
    g.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn output_path(g: &Global, explicit: Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit.unwrap_or_else(|| g.out.join(default_name))
}

fn save_module(path: &Path, m: &ModuleRep, label: String) -> CliResult<()> {
    write_atomic(path, &ModuleFile::from_module(m, Some(label)).render())?;
    println!("wrote {} (dim {})", path.display(), m.dim());
    Ok(())
}

fn parse_char(ctx: &FieldCtx, chi: Option<Vec<u8>>) -> CliResult<Char> {
    let chi = chi.ok_or_else(|| CliError::Usage("--chi is required".into()))?;
    if chi.len() != ctx.n() || chi.iter().any(|&c| c as u32 >= ctx.ell()) {
        return Err(CliError::Usage(format!("--chi needs {} exponents in [0, {})", ctx.n(), ctx.ell())));
    }
    Ok(Char(chi))
}

fn parse_point(ctx: &FieldCtx, lambda: Option<Vec<u32>>) -> CliResult<PPoint> {
    let lambda = lambda.ok_or_else(|| CliError::Usage("--lambda is required".into()))?;
    if lambda.len() != ctx.n() || lambda.iter().any(|&c| c >= ctx.p()) {
        return Err(CliError::Usage(format!("--lambda needs {} coordinates in [0, {})", ctx.n(), ctx.p())));
    }
    Ok(PPoint::new(ctx.base(), lambda.into_iter().map(Fe).collect())?)
}

fn build(g: &Global, args: BuildArgs) -> CliResult<()> {
    let (module, name, label) = match args.kind {
        BuildKind::InduceR => {
            let path = args.input.ok_or_else(|| CliError::Usage("induce-R needs --input".into()))?;
            let r = match load(&path)? {
                Loaded::A(m) => restrict_to_r(&m),
                Loaded::R(r) => r,
                Loaded::Rq(_) => return Err(CliError::File(path, "expected an R- or A-module file".into())),
            };
            (induce_r(&r), "induce-R", format!("induce-R {}", path.display()))
        }
        kind => {
            let ctx = context(g)?;
            match kind {
                BuildKind::Trivial => (trivial(&ctx), "trivial", "trivial".into()),
                BuildKind::Simple => {
                    let chi = parse_char(&ctx, args.chi)?;
                    (simple(&ctx, &chi), "simple", format!("simple {:?}", chi.0))
                }
                BuildKind::Regular => (regular_rep(&ctx), "regular", "regular".into()),
                BuildKind::Projcover => {
                    let chi = parse_char(&ctx, args.chi)?;
                    let cover = projective_cover(&simple(&ctx, &chi)).cover;
                    (cover, "projcover", format!("projective cover of simple {:?}", chi.0))
                }
                BuildKind::Carlson => {
                    let lambda = parse_point(&ctx, args.lambda)?;
                    let m = carlson_module(&ctx, &lambda)?;
                    (m, "carlson", format!("carlson {:?}", lambda.codes()))
                }
                BuildKind::Random => {
                    let (recipe, m) = random_module(&ctx, g.seed, args.budget)?;
                    (m, "random", recipe.describe())
                }
                BuildKind::InduceR => unreachable!(),
            }
        }
    };
    save_module(&output_path(g, args.output, &format!("{name}.json")), &module, label)
}

fn expect_a(path: &Path, loaded: Loaded) -> CliResult<ModuleRep> {
    match loaded {
        Loaded::A(m) => Ok(m),
        _ => Err(CliError::File(path.to_path_buf(), "expected an A-module file".into())),
    }
}

fn op(g: &Global, args: OpArgs) -> CliResult<()> {
    let arity = match args.op {
        OpKind::Tensor | OpKind::Dsum => 2,
        _ => 1,
    };
    if args.inputs.len() != arity {
        return Err(CliError::Usage(format!("this operation takes {arity} input file(s)")));
    }
    let mut loaded = Vec::new();
    for p in &args.inputs {
        loaded.push((p.as_path(), load(p)?));
    }
    let (first_path, first) = loaded.remove(0);
    let names: Vec<String> = args.inputs.iter().map(|p| p.display().to_string()).collect();
    let label = format!("{} {}", op_name(args.op), names.join(" "));
    let default_name = format!("{}.json", op_name(args.op));
    let path = output_path(g, args.output, &default_name);

    let result: ModuleRep = match args.op {
        OpKind::Tensor | OpKind::Dsum => {
            let a = expect_a(first_path, first)?;
            let (second_path, second) = loaded.remove(0);
            let b = expect_a(second_path, second)?;
            if args.op == OpKind::Tensor {
                tensor(&a, &b)?
            } else {
                dsum(&a, &b)?
            }
        }
        OpKind::Dual => dual(&expect_a(first_path, first)?),
        OpKind::Omega => omega(&expect_a(first_path, first)?),
        OpKind::OmegaInv => omega_inv(&expect_a(first_path, first)?),
        OpKind::Reduce => stable_reduce(&expect_a(first_path, first)?),
        OpKind::InduceR => match first {
            Loaded::A(m) => induce_r(&restrict_to_r(&m)),
            Loaded::R(r) => induce_r(&r),
            Loaded::Rq(_) => return Err(CliError::File(first_path.into(), "expected an R- or A-module file".into())),
        },
        OpKind::InduceRq => match first {
            Loaded::A(m) => induce_rq(&restrict_to_rq(&m)),
            Loaded::Rq(r) => induce_rq(&r),
            Loaded::R(_) => return Err(CliError::File(first_path.into(), "expected an R_q- or A-module file".into())),
        },
        OpKind::RestrictR => {
            let r = restrict_to_r(&expect_a(first_path, first)?);
            write_atomic(&path, &SubmoduleFile::from_r(&r, Some(label)).render())?;
            println!("wrote {} (R-module, dim {})", path.display(), r.dim());
            return Ok(());
        }
        OpKind::RestrictRq | OpKind::Twist => {
            let mut r = match first {
                Loaded::A(m) => restrict_to_rq(&m),
                Loaded::Rq(r) => r,
                Loaded::R(_) => {
                    return Err(CliError::File(first_path.into(), "expected an R_q- or A-module file".into()))
                }
            };
            if args.op == OpKind::Twist {
                let b = args.g.ok_or_else(|| CliError::Usage("twist needs --g".into()))?;
                if b.len() != r.ctx().n() || b.iter().any(|&x| x as u32 >= r.ctx().ell()) {
                    return Err(CliError::Usage(format!("--g needs {} exponents in [0, {})", r.ctx().n(), r.ctx().ell())));
                }
                r = twist_g(&r, &b);
            }
            write_atomic(&path, &SubmoduleFile::from_rq(&r, Some(label)).render())?;
            println!("wrote {} (R_q-module, dim {})", path.display(), r.dim());
            return Ok(());
        }
    };
    save_module(&path, &result, label)?;
    if let Some(other) = &args.iso_check {
        let target = expect_a(other, load(other)?)?;
        let verdict = is_isomorphic(&result, &target, qeag_core::homol::DEFAULT_ISO_TRIALS)?;
        let word = match verdict {
            qeag_core::homol::Isomorphism::IsoWitness(_) => "yes",
            qeag_core::homol::Isomorphism::NotIso => "no",
            qeag_core::homol::Isomorphism::Undetermined => "undetermined",
        };
        println!("isomorphic to {}: {word}", other.display());
    }
    Ok(())
}

fn op_name(op: OpKind) -> &'static str {
    match op {
        OpKind::Tensor => "tensor",
        OpKind::Dual => "dual",
        OpKind::Dsum => "dsum",
        OpKind::Omega => "omega",
        OpKind::OmegaInv => "omega-inv",
        OpKind::Reduce => "reduce",
        OpKind::Twist => "twist",
        OpKind::RestrictR => "restrict-R",
        OpKind::RestrictRq => "restrict-Rq",
        OpKind::InduceR => "induce-R",
        OpKind::InduceRq => "induce-Rq",
    }
}

fn with_workers<T: Send>(g: &Global, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers(g))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn variety(g: &Global, args: VarietyArgs) -> CliResult<()> {
    let degrees = &g.ext_degrees;
    let loaded = load(&args.input)?;
    let (ctx, v) = with_workers(g, || -> Result<_, Error> {
        Ok(match &loaded {
            Loaded::A(m) => (m.ctx().clone(), rank_variety(m, degrees)?),
            Loaded::R(r) => (r.ctx().clone(), rank_variety_r(r, degrees)?),
            Loaded::Rq(r) => (r.ctx().clone(), rank_variety_rq(r, degrees)?),
        })
    })??;
    let psi = if args.emit_psi { Some(psi_image(&ctx, &v)?) } else { None };
    let stem = args.input.file_stem().map_or("module".into(), |s| s.to_string_lossy().into_owned());
    let path = output_path(g, args.output, &format!("{stem}.variety.json"));
    write_atomic(&path, &VarietyFile::new(&ctx, &v, psi.as_ref()).render())?;
    for (e, set) in v.sets() {
        println!("e={e}: {} orbit(s)", set.len());
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn check(g: &Global, args: CheckArgs) -> CliResult<bool> {
    let names: Vec<&str> = if args.suite == "all" {
        Vec::new()
    } else if SUITES.contains(&args.suite.as_str()) {
        vec![args.suite.as_str()]
    } else {
        return Err(Error::UnknownSuite(args.suite.clone()).into());
    };
    let configs: Vec<(u32, u32, usize)> = match (g.p, g.ell, g.n) {
        (None, None, None) => DEFAULT_CONFIGS.to_vec(),
        _ => {
            let ctx = context(g)?;
            vec![(ctx.p(), ctx.ell(), ctx.n())]
        }
    };
    let workers = workers(g);
    let mut combined = RunReport { passed: true, reports: Vec::new() };
    for (p, ell, n) in configs {
        let mut cfg = SuiteConfig::new(p, ell, n);
        cfg.seed = g.seed;
        cfg.battery = g.battery;
        cfg.degrees = g.ext_degrees.clone();
        cfg.workers = workers;
        cfg.inject_fault = args.inject_fault;
        cfg.negated_antipode = args.negated_antipode;
        let report = run_suites(&cfg, &names)?;
        combined.passed &= report.passed;
        combined.reports.extend(report.reports);
    }
    let json = combined.to_json();
    let text = combined.to_text();
    let stem = format!("check-{}", args.suite);
    write_atomic(&g.out.join(format!("{stem}.json")), &json)?;
    write_atomic(&g.out.join(format!("{stem}.txt")), &text)?;
    for r in &combined.reports {
        for (k, f) in r.failures.iter().enumerate() {
            for m in &f.modules {
                let label = m.label.clone().unwrap_or_default();
                let file = format!(
                    "{}-{}-{}-{}-{k}-{}.json",
                    r.suite,
                    r.p,
                    r.ell,
                    r.n,
                    label.replace(|c: char| !c.is_ascii_alphanumeric(), "_")
                );
                write_atomic(&g.out.join("failures").join(file), &m.render())?;
            }
        }
    }
    if args.json {
        print!("{json}");
    } else {
        print!("{text}");
    }
    Ok(combined.passed)
}

fn info(g: &Global, args: InfoArgs) -> CliResult<()> {
    match args.input {
        None => {
            let ctx = context(g)?;
            println!("p = {}, ell = {}, n = {}, q = {}", ctx.p(), ctx.ell(), ctx.n(), ctx.q().0);
            println!("dim A = {}, |G| = {}", ctx.algebra_dim(), ctx.group_order());
            for &e in &g.ext_degrees {
                let reps = orbit_representatives(&ctx, e)?;
                println!("e={e}: {} orbit(s) on P^{}", reps.len(), ctx.n() - 1);
            }
        }
        Some(path) => match load(&path)? {
            Loaded::A(m) => {
                let ctx = m.ctx();
                println!("A-module over p = {}, ell = {}, n = {}: dim {}", ctx.p(), ctx.ell(), ctx.n(), m.dim());
                let head: Vec<String> =
                    head_decompose(&m).iter().map(|(chi, k)| format!("{k} x S{:?}", chi.0)).collect();
                println!("head: {}", if head.is_empty() { "0".into() } else { head.join(" + ") });
                println!("projective: {}", is_projective_a(&m));
            }
            Loaded::R(r) => println!("R-module: dim {}", r.dim()),
            Loaded::Rq(r) => println!("R_q-module: dim {}", r.dim()),
        },
    }
    Ok(())
}
