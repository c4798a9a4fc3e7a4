//! Command-line front end: build, verify, params, surface.
//!
//! Exit codes: 0 success, 1 verification failure or numeric failure,
//! 2 input polytope not simple, 3 input/parse error.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::interpolant::{
    build_params, epsilon_params, find_k, quantitative_k, EpsilonParams, InterpolantParams,
};
use crate::io::{params_document, polynomials_document, polytope_document, report_document};
use crate::polytope::{
    check_simple, facet_forms, form_scales, metric_params, polytope_from_text, FormMode,
    MetricParams, Polytope,
};
use crate::representation::{
    build_representation, verify_all, verify_cone_separation, verify_membership,
    PolyRepresentation, VerificationReport, VerifyConfig,
};
use crate::surface::{surface_points, write_points};

#[derive(Parser)]
#[command(name = "polyrep", version, about = "Represent a simple d-polytope by d polynomial inequalities")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Normalized,
    Raw,
}

impl From<Mode> for FormMode {
    fn from(m: Mode) -> FormMode {
        match m {
            Mode::Normalized => FormMode::Normalized,
            Mode::Raw => FormMode::Raw,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KPolicy {
    /// Search k = 1, 2, ... up to twice the closed-form bound.
    Search,
    /// Use the closed-form bound directly.
    Direct,
    /// Use the value given by --k.
    Fixed,
}

#[derive(clap::Args)]
struct BuildArgs {
    /// H-representation JSON file.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Normalized)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = KPolicy::Search)]
    k_policy: KPolicy,
    /// Exponent for --k-policy fixed.
    #[arg(long)]
    k: Option<u32>,
    /// Output directory for the generated documents.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(clap::Args)]
struct VerifyArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Normalized)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = KPolicy::Search)]
    k_policy: KPolicy,
    #[arg(long)]
    k: Option<u32>,
    /// Random sample count per verifier.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the sandwich accuracy epsilon.
    #[arg(long)]
    eps: Option<f64>,
    /// Report file; defaults to <input stem>.report.json in the
    /// current directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct SurfaceArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Normalized)]
    mode: Mode,
    /// Grid resolution per axis.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    /// Comma-separated polynomial indices J; the zero set of
    /// min_{j in J} p_j is sampled.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    faces: Vec<usize>,
    /// Output file; defaults to <input stem>.csv (2D) or .obj (3D).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the d polynomials and write parameter/polynomial documents.
    Build(BuildArgs),
    /// Build and run the sampling verifiers; exit 1 on violations.
    Verify(VerifyArgs),
    /// Print the metric parameters, epsilon thresholds, and k bounds.
    Params {
        input: PathBuf,
    },
    /// Sample the zero set of selected polynomials to CSV/OBJ.
    Surface(SurfaceArgs),
}

/// Everything derived from the input polytope that the subcommands
/// share.
struct Prepared {
    p: Polytope,
    mp: MetricParams,
    eps: EpsilonParams,
}

fn prepare(path: &Path) -> Result<Prepared> {
    let text = fs::read_to_string(path)?;
    let p = polytope_from_text(&text)?;
    if !check_simple(&p) {
        return Err(Error::NotSimple);
    }
    let forms = facet_forms(&p, FormMode::Normalized);
    let mp = metric_params(&p, &forms)?;
    let eps = epsilon_params(&mp, p.facets.len(), p.dim)?;
    Ok(Prepared { p, mp, eps })
}

/// Resolve the exponent and weight system per the k policy.
fn resolve_params(
    prep: &Prepared,
    policy: KPolicy,
    fixed_k: Option<u32>,
    seed: u64,
) -> Result<InterpolantParams> {
    let p = &prep.p;
    let forms = facet_forms(p, FormMode::Normalized);
    let lambdas = form_scales(p);
    let bound_k = quantitative_k(&prep.mp, p.dim, p.vertices.len(), None).k();
    match policy {
        KPolicy::Direct => build_params(p, &forms, bound_k, lambdas),
        KPolicy::Fixed => {
            let k = fixed_k.ok_or_else(|| {
                Error::Malformed("--k is required with --k-policy fixed".into())
            })?;
            build_params(p, &forms, k, lambdas)
        }
        KPolicy::Search => {
            let eps3 = prep.eps.eps3;
            find_k(p, &forms, &lambdas, 2 * bound_k, |params| {
                let rep = build_representation(p, FormMode::Normalized, params.clone());
                let mut cfg = VerifyConfig::new(2000, seed, p.diameter);
                cfg.cone_samples_per_vertex = 100;
                let mut report = VerificationReport::default();
                verify_membership(&rep, p, eps3, &cfg, &mut report);
                verify_cone_separation(&rep, p, &cfg, &mut report);
                report.violations.is_empty()
            })
        }
    }
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "polytope".into())
}

fn cmd_build(args: &BuildArgs) -> Result<()> {
    let prep = prepare(&args.input)?;
    let params = resolve_params(&prep, args.k_policy, args.k, 0)?;
    let rep = build_representation(&prep.p, args.mode.into(), params);
    fs::create_dir_all(&args.out)?;
    let base = stem(&args.input);
    let params_path = args.out.join(format!("{base}.params.json"));
    let polys_path = args.out.join(format!("{base}.polynomials.json"));
    let polytope_path = args.out.join(format!("{base}.polytope.json"));
    write_json(&params_path, &params_document(&rep.params, &prep.mp, &prep.eps))?;
    write_json(&polys_path, &polynomials_document(&rep))?;
    write_json(&polytope_path, &polytope_document(&prep.p))?;
    println!(
        "built k = {} representation; wrote {}, {}, {}",
        rep.params.k,
        params_path.display(),
        polys_path.display(),
        polytope_path.display()
    );
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let prep = prepare(&args.input)?;
    let params = resolve_params(&prep, args.k_policy, args.k, args.seed)?;
    let rep = build_representation(&prep.p, args.mode.into(), params);
    let mut cfg = VerifyConfig::new(args.samples, args.seed, prep.p.diameter);
    cfg.cone_samples_per_vertex = 1000.min(args.samples.max(1));
    let mut report = verify_all(&rep, &prep.p, args.eps.unwrap_or(prep.eps.eps3), &cfg);
    report.k = rep.params.k;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.report.json", stem(&args.input))));
    write_json(&out, &report_document(&report))?;
    let ok = report.accepted();
    println!(
        "k = {}; {} inside / {} outside samples; {} violations; report {}",
        report.k,
        report.samples_inside,
        report.samples_outside,
        report.violations.len(),
        out.display()
    );
    Ok(ok)
}

fn cmd_params(input: &Path) -> Result<()> {
    let prep = prepare(input)?;
    let p = &prep.p;
    let bounds = quantitative_k(&prep.mp, p.dim, p.vertices.len(), Some(prep.eps.eps3));
    println!("dim      = {}", p.dim);
    println!("facets   = {}", p.facets.len());
    println!("vertices = {}", p.vertices.len());
    println!("gamma    = {:.6}", prep.mp.gamma);
    println!("alpha    = {:.6}", prep.mp.alpha);
    println!("phi      = {:.6}", prep.mp.phi);
    println!("degP     = {}", prep.mp.deg_p);
    println!("eps1     = {:.6e}", prep.eps.eps1);
    println!("eps2     = {:.6e}", prep.eps.eps2);
    println!("eps3     = {:.6e}", prep.eps.eps3);
    println!("delta    = {:.6e}", prep.eps.delta);
    let rows = [
        ("gamma", bounds.gamma_bound),
        ("vertex-count", Some(bounds.n_bound)),
        ("accuracy", bounds.eps_bound),
        ("cone", Some(bounds.cone_bound)),
    ];
    let max = rows
        .iter()
        .filter_map(|(_, v)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("k bounds:");
    for (name, value) in rows {
        match value {
            Some(v) => println!(
                "  {:<12} {:>12.4}{}",
                name,
                v,
                if v == max { "  <- binding" } else { "" }
            ),
            None => println!("  {:<12} {:>12}", name, "-"),
        }
    }
    println!(
        "k (without accuracy bound) = {}",
        quantitative_k(&prep.mp, p.dim, p.vertices.len(), None).k()
    );
    Ok(())
}

fn cmd_surface(args: &SurfaceArgs) -> Result<()> {
    let prep = prepare(&args.input)?;
    if prep.p.dim > 3 {
        return Err(Error::UnsupportedDim(prep.p.dim));
    }
    let params = resolve_params(&prep, KPolicy::Direct, None, 0)?;
    let rep: PolyRepresentation = build_representation(&prep.p, args.mode.into(), params);
    let points = surface_points(&rep, &prep.p, &args.faces, args.grid)?;
    let ext = if prep.p.dim == 2 { "csv" } else { "obj" };
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.{}", stem(&args.input), ext)));
    let mut file = fs::File::create(&out)?;
    write_points(&mut file, prep.p.dim, &points)?;
    println!("wrote {} points to {}", points.len(), out.display());
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotSimple => 2,
        Error::Malformed(_)
        | Error::ZeroNormal(_)
        | Error::DimTooSmall(_)
        | Error::Unbounded
        | Error::Empty
        | Error::RedundantInequality(_)
        | Error::Degenerate(_)
        | Error::UnsupportedDim(_)
        | Error::Io(_)
        | Error::Json(_) => 3,
        _ => 1,
    }
}

/// Run the CLI; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Build(args) => cmd_build(args).map(|()| true),
        Command::Verify(args) => cmd_verify(args),
        Command::Params { input } => cmd_params(input).map(|()| true),
        Command::Surface(args) => cmd_surface(args).map(|()| true),
    };
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
