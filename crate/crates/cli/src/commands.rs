use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use rayon::prelude::*;
use thiserror::Error;

use pentamap_core::conformal::field::solve_on_grid;
use pentamap_core::conformal::mesh::resolution_for;
use pentamap_core::conformal::{build_quad, solve_field, FieldError, HarmonicField, DEFAULT_MESH_SIZE};
use pentamap_core::hyperbolic::DiskPoint;
use pentamap_core::linkage::paths::{load_path_file, resample};
use pentamap_core::linkage::{evaluate, Frame, PathPreset};
use pentamap_core::render::{render_svg, tiling_json, OutputFormat, RenderMode};
use pentamap_core::tiling::{generate_tiling, TilingBound};
use pentamap_core::verify::{verify_all, VerifyOptions, REFERENCE_MODULUS};

use crate::{CacheCommand, Cli, Command, ModulusArgs, RenderArgs, ServeArgs, VerifyArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("field cache not found at {}; run `pentamap cache build` or pass --build", .0.display())]
    MissingCache(PathBuf),
    #[error("cannot use field cache {}: {source}", path.display())]
    BadCache { path: PathBuf, source: FieldError },
    #[error(transparent)]
    Core(#[from] pentamap_core::Error),
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Service(#[from] pentamap_service::ServiceError),
    #[error("cannot start the async runtime: {0}")]
    Runtime(std::io::Error),
}

pub fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Render(args) => render(&cli.cache, args),
        Command::Modulus(args) => modulus(args),
        Command::Verify(args) => verify(&cli.cache, args),
        Command::Cache { command } => cache(&cli.cache, command),
        Command::Serve(args) => serve(&cli.cache, args),
    }
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write { path: path.to_path_buf(), source })
}

/// Loads the field cache, solving and saving it first when `build` is set.
fn load_field(cache: &Path, build: bool) -> Result<HarmonicField, CliError> {
    let q = build_quad();
    if !cache.exists() {
        if !build {
            return Err(CliError::MissingCache(cache.to_path_buf()));
        }
        eprintln!("building field cache at {} (mesh {DEFAULT_MESH_SIZE})", cache.display());
        let field = solve_field(&q, DEFAULT_MESH_SIZE).map_err(pentamap_core::Error::from)?;
        field
            .save(cache)
            .map_err(|source| CliError::BadCache { path: cache.to_path_buf(), source })?;
        return Ok(field);
    }
    HarmonicField::load(cache, &q).map_err(|source| CliError::BadCache { path: cache.to_path_buf(), source })
}

fn render_points(args: &RenderArgs) -> Result<Vec<DiskPoint>, CliError> {
    let frames = args.frames.map(|f| f as usize);
    match (&args.at, &args.path) {
        (Some(p), None) => Ok(vec![*p; frames.unwrap_or(1)]),
        (None, Some(arg)) => {
            let file = Path::new(arg);
            if file.is_file() {
                let pts = load_path_file(file).map_err(pentamap_core::Error::from)?;
                Ok(match frames {
                    Some(n) => resample(&pts, n),
                    None => pts,
                })
            } else {
                let preset: PathPreset = arg.parse().map_err(|_| {
                    CliError::Usage(format!("--path {arg:?} is neither a readable file nor a preset name"))
                })?;
                Ok(preset.sample(frames.unwrap_or(60)))
            }
        }
        (None, None) => Ok(vec![DiskPoint::ORIGIN; frames.unwrap_or(1)]),
        (Some(_), Some(_)) => Err(CliError::Usage("--at and --path are exclusive".into())),
    }
}

fn render(cache: &Path, args: RenderArgs) -> Result<ExitCode, CliError> {
    let points = render_points(&args)?;
    fs::create_dir_all(&args.out).map_err(|source| CliError::Write { path: args.out.clone(), source })?;
    if args.mode == RenderMode::Tiling && args.format == OutputFormat::Json {
        let tiling = generate_tiling(TilingBound::Radius(args.radius)).map_err(pentamap_core::Error::from)?;
        let path = args.out.join("tiling.json");
        write(&path, to_json(&tiling_json(&tiling)).as_bytes())?;
        println!("{}", path.display());
        return Ok(ExitCode::SUCCESS);
    }
    let field = load_field(cache, args.build.build)?;
    let tiling = matches!(args.mode, RenderMode::Tiling | RenderMode::Overlay)
        .then(|| generate_tiling(TilingBound::Radius(args.radius)))
        .transpose()
        .map_err(pentamap_core::Error::from)?;
    // Frames are computed in parallel and written in order.
    let outputs = points
        .par_iter()
        .map(|&p| {
            let trace = evaluate(p, &field)?;
            Ok(match args.format {
                OutputFormat::Svg => render_svg(args.mode, &trace, tiling.as_ref(), args.size)?,
                OutputFormat::Json => to_json(&Frame::from(&trace)),
            })
        })
        .collect::<Result<Vec<String>, pentamap_core::Error>>()?;
    for (i, text) in outputs.iter().enumerate() {
        let path = args.out.join(format!("frame-{i:04}.{}", args.format.extension()));
        write(&path, text.as_bytes())?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn modulus(args: ModulusArgs) -> Result<ExitCode, CliError> {
    let q = build_quad();
    let fine_n = resolution_for(&q, args.mesh).map_err(pentamap_core::Error::from)?;
    let coarse_n = (fine_n / 2).max(2);
    let coarse = solve_on_grid(&q, coarse_n, 2.0 * args.mesh).map_err(pentamap_core::Error::from)?;
    let fine = solve_on_grid(&q, fine_n, args.mesh).map_err(pentamap_core::Error::from)?;
    // Second-order convergence with mesh ratio r = fine_n / coarse_n.
    let r2 = (fine_n as f64 / coarse_n as f64).powi(2);
    let extrapolated = (r2 * fine.modulus() - coarse.modulus()) / (r2 - 1.0);
    let rows = [coarse.summary(), fine.summary()];
    if args.json {
        let v = serde_json::json!({
            "meshes": rows,
            "richardson": extrapolated,
            "reference": REFERENCE_MODULUS,
            "error": (fine.modulus() - REFERENCE_MODULUS).abs(),
        });
        print!("{}", to_json(&v));
    } else {
        println!("{:>10} {:>6} {:>10} {:>14} {:>8}", "mesh", "n", "triangles", "modulus", "cg iters");
        for s in &rows {
            println!(
                "{:>10.5} {:>6} {:>10} {:>14.10} {:>8}",
                s.mesh_size, s.resolution, s.triangles, s.modulus, s.solver_iterations
            );
        }
        println!("modulus: {:.10}", fine.modulus());
        println!("richardson estimate: {extrapolated:.10}");
        println!("reference: {REFERENCE_MODULUS:.8} (difference {:.2e})", (fine.modulus() - REFERENCE_MODULUS).abs());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cache: &Path, args: VerifyArgs) -> Result<ExitCode, CliError> {
    let field = load_field(cache, args.build.build)?;
    let opts = VerifyOptions { seed: args.seed, recipe_samples: args.samples, ..VerifyOptions::default() };
    let report = verify_all(&field, &opts)?;
    for c in &report.criteria {
        println!("{}", c.line());
        if c.name == "cell-complex" {
            let complex = &c.detail["complex"];
            println!("    euler characteristic: {}, genus: {}", complex["eulerCharacteristic"], complex["genus"]);
        }
    }
    if let Some(path) = &args.report {
        write(path, to_json(&report).as_bytes())?;
    }
    if report.passed {
        println!("all criteria pass");
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("failing criteria: {}", report.failing().join(", "));
        Ok(ExitCode::FAILURE)
    }
}

fn cache(cache: &Path, command: CacheCommand) -> Result<ExitCode, CliError> {
    match command {
        CacheCommand::Build { mesh, out } => {
            let path = out.unwrap_or_else(|| cache.to_path_buf());
            let field = solve_field(&build_quad(), mesh).map_err(pentamap_core::Error::from)?;
            field.save(&path).map_err(|source| CliError::BadCache { path: path.clone(), source })?;
            print!("{}", to_json(&field.summary()));
        }
        CacheCommand::Info => {
            let field = load_field(cache, false)?;
            print!("{}", to_json(&field.summary()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn serve(cache: &Path, args: ServeArgs) -> Result<ExitCode, CliError> {
    let field = load_field(cache, args.build.build)?;
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(CliError::Runtime)?;
    eprintln!("serving on http://{}", args.bind);
    runtime.block_on(pentamap_service::serve(args.bind, pentamap_service::AppState::new(field)))?;
    Ok(ExitCode::SUCCESS)
}
