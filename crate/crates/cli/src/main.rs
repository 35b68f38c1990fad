//! `pentamap`: render pentagons and tilings, compute the modulus, run the
//! acceptance checks, manage the field cache and start the HTTP service.

mod commands;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pentamap_core::conformal::DEFAULT_MESH_SIZE;
use pentamap_core::hyperbolic::DiskPoint;
use pentamap_core::render::{OutputFormat, RenderMode};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "pentamap", version, about = "Hyperbolic parameterization of equilateral pentagons")]
pub struct Cli {
    /// Harmonic field cache file.
    #[arg(long, global = true, env = "PENTAMAP_CACHE", default_value = "pentamap-field.bin")]
    pub cache: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render frames as SVG or JSON.
    Render(RenderArgs),
    /// Solve for the conformal modulus and print a refinement table.
    Modulus(ModulusArgs),
    /// Run every acceptance criterion; exit status 0 iff all pass.
    Verify(VerifyArgs),
    /// Build or inspect the field cache.
    Cache {
        #[command(subcommand)]
        command: CacheCommand,
    },
    /// Serve the JSON protocol over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct BuildFlag {
    /// Solve and save the field if the cache file is missing.
    #[arg(long)]
    pub build: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Control point as `x,y`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true, conflicts_with = "path")]
    pub at: Option<DiskPoint>,
    /// Path file (JSON list of [x, y]) or preset: edge-crossing, vertex-loop, zero-momentum-turn.
    #[arg(long)]
    pub path: Option<String>,
    /// Number of frames (presets default to 60, files to their point count).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=100_000))]
    pub frames: Option<u32>,
    #[arg(long, default_value = "svg", value_parser = parse_format)]
    pub format: OutputFormat,
    #[arg(long, default_value = "pentagon", value_parser = parse_mode)]
    pub mode: RenderMode,
    /// Output directory.
    #[arg(long, default_value = "frames")]
    pub out: PathBuf,
    /// Image height in pixels.
    #[arg(long, default_value_t = 512)]
    pub size: u32,
    /// Euclidean radius of the rendered tiling.
    #[arg(long, default_value_t = 0.95, value_parser = parse_radius)]
    pub radius: f64,
    #[command(flatten)]
    pub build: BuildFlag,
}

#[derive(Debug, Args)]
pub struct ModulusArgs {
    /// Target element edge length along the longest side of Q.
    #[arg(long, default_value_t = DEFAULT_MESH_SIZE, value_parser = parse_mesh)]
    pub mesh: f64,
    /// Print JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Control points for the recipe invariants.
    #[arg(long, default_value_t = pentamap_core::verify::RECIPE_SAMPLES)]
    pub samples: usize,
    #[command(flatten)]
    pub build: BuildFlag,
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    /// Solve the field and write the cache.
    Build {
        #[arg(long, default_value_t = DEFAULT_MESH_SIZE, value_parser = parse_mesh)]
        mesh: f64,
        /// Output file (defaults to the global cache path).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the summary of an existing cache.
    Info,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1:8080")]
    pub bind: SocketAddr,
    #[command(flatten)]
    pub build: BuildFlag,
}

fn parse_point(s: &str) -> Result<DiskPoint, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x coordinate: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y coordinate: {e}"))?;
    DiskPoint::from_xy(x, y).map_err(|e| e.to_string())
}

fn parse_mesh(s: &str) -> Result<f64, String> {
    let h: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if h > 0.0 && h.is_finite() {
        Ok(h)
    } else {
        Err(format!("mesh size must be a positive number, got {s}"))
    }
}

fn parse_radius(s: &str) -> Result<f64, String> {
    let r: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if r > 0.0 && r < 1.0 {
        Ok(r)
    } else {
        Err(format!("radius must lie in (0, 1), got {s}"))
    }
}

fn parse_mode(s: &str) -> Result<RenderMode, String> {
    s.parse().map_err(|e: pentamap_core::render::RenderError| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: pentamap_core::render::RenderError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
