//! `isovist`: isovist fields, lines of longest depth, ridges and skeletons
//! from the command line.
//!
//! Exit codes: 0 success, 1 domain error, 2 I/O error, 64 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use isovist_core::field::{compute_field_with, make_grid, FieldOptions};
use isovist_core::isovist::{DEFAULT_CLUSTER_CAP, DEFAULT_RAYS};
use isovist_core::morphology::{
    default_t_curv, extract_ridges, skeleton, DEFAULT_T_SLOPE, SKELETON_T_SLOPE,
};
use isovist_core::raster::{export_csv, export_raster, import_raster};
use isovist_core::render::{render_svg, Ramp, RenderOptions};
use isovist_core::rope::{rope_extract_with, RopeConfig};
use isovist_core::vector::{export_lines, network_features, parse_lines, ridge_features};
use isovist_core::{load_scene, Error, MeasureKind, Scene};

const EXIT_DOMAIN: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "isovist",
    version,
    about = "Isovist field analysis of 2D open spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a measure at every grid node and write an ASCII grid.
    Field(FieldArgs),
    /// Extract the network of lines of longest depth.
    Rope(RopeArgs),
    /// Trace ridges of an existing raster.
    Ridges(RidgesArgs),
    /// Medial-axis skeleton: ridges of the MRL field.
    Skeleton(SkeletonArgs),
    /// Draw a scene with an optional field and line layers as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct SceneArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// Grid spacing in scene units.
    #[arg(long, value_parser = positive)]
    spacing: f64,
    /// Rays per viewpoint (even, at least 8).
    #[arg(long, default_value_t = DEFAULT_RAYS, value_parser = ray_count)]
    n_rays: usize,
    /// Worker threads (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
}

impl SceneArgs {
    fn threads(&self) -> Option<usize> {
        self.threads.map(usize::from)
    }
}

#[derive(Args)]
struct RenderFlags {
    /// Pixel size of one grid cell in the SVG.
    #[arg(long, default_value_t = 12.0, value_parser = positive)]
    cell_px: f64,
    /// Colour ramp: gray (light = high) or heat.
    #[arg(long, default_value = "gray")]
    ramp: Ramp,
}

impl RenderFlags {
    fn options(&self) -> RenderOptions {
        RenderOptions {
            cell_px: self.cell_px,
            ramp: self.ramp,
        }
    }
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    scene: SceneArgs,
    /// area, perimeter, mrl, mdl, mean-radial, convexity, compactness, drift or clustering.
    #[arg(long)]
    measure: MeasureKind,
    /// Peer cap for the clustering coefficient.
    #[arg(long, default_value_t = DEFAULT_CLUSTER_CAP, value_parser = peer_cap)]
    cap: usize,
    /// Output ASCII grid.
    #[arg(long, value_parser = nonempty_path)]
    out: PathBuf,
    /// Also write the node values as CSV.
    #[arg(long, value_parser = nonempty_path)]
    csv: Option<PathBuf>,
    /// Also render the field as SVG.
    #[arg(long, value_parser = nonempty_path)]
    render: Option<PathBuf>,
    #[command(flatten)]
    look: RenderFlags,
}

#[derive(Args)]
struct RopeArgs {
    #[command(flatten)]
    scene: SceneArgs,
    /// Output GeoJSON line file.
    #[arg(long, value_parser = nonempty_path)]
    out: PathBuf,
}

#[derive(Args)]
struct RidgesArgs {
    /// Input ASCII grid.
    #[arg(long)]
    field: PathBuf,
    /// Gradient below which a node counts as flat.
    #[arg(long, default_value_t = DEFAULT_T_SLOPE, value_parser = non_negative)]
    t_slope: f64,
    /// Curvature tolerance [default: 0.05 / cellsize].
    #[arg(long, value_parser = non_negative)]
    t_curv: Option<f64>,
    /// Output GeoJSON line file.
    #[arg(long, value_parser = nonempty_path)]
    out: PathBuf,
}

#[derive(Args)]
struct SkeletonArgs {
    #[command(flatten)]
    scene: SceneArgs,
    /// Gradient below which a node counts as flat.
    #[arg(long, default_value_t = SKELETON_T_SLOPE, value_parser = non_negative)]
    t_slope: f64,
    /// Curvature tolerance [default: 0.05 / spacing].
    #[arg(long, value_parser = non_negative)]
    t_curv: Option<f64>,
    /// Output GeoJSON line file.
    #[arg(long, value_parser = nonempty_path)]
    out: PathBuf,
    /// Also write the MRL raster, next to --out with extension .mrl.asc.
    #[arg(long)]
    keep_field: bool,
}

#[derive(Args)]
struct RenderArgs {
    /// Scene JSON file.
    #[arg(long)]
    scene: PathBuf,
    /// ASCII grid drawn under the scene.
    #[arg(long)]
    field: Option<PathBuf>,
    /// GeoJSON line layers, drawn in order.
    #[arg(long)]
    lines: Vec<PathBuf>,
    /// Output SVG.
    #[arg(long, value_parser = nonempty_path)]
    out: PathBuf,
    #[command(flatten)]
    look: RenderFlags,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("expected a non-negative number, got `{s}`")),
    }
}

fn ray_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 8 && n % 2 == 0 => Ok(n),
        _ => Err(format!(
            "expected an even ray count of at least 8, got `{s}`"
        )),
    }
}

fn peer_cap(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("expected a peer cap of at least 2, got `{s}`")),
    }
}

fn nonempty_path(s: &str) -> Result<PathBuf, String> {
    if s.is_empty() {
        Err("path must not be empty".into())
    } else {
        Ok(PathBuf::from(s))
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| io_context(e, "read", path))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| io_context(e, "write", path))
}

fn io_context(e: std::io::Error, verb: &str, path: &Path) -> Error {
    Error::Io(std::io::Error::new(
        e.kind(),
        format!("cannot {verb} {}: {e}", path.display()),
    ))
}

fn scene(path: &Path) -> Result<Scene, Error> {
    load_scene(&read(path)?)
}

fn cmd_field(a: &FieldArgs) -> Result<(), Error> {
    let s = scene(&a.scene.scene)?;
    let grid = make_grid(&s, a.scene.spacing)?;
    let opts = FieldOptions {
        n_rays: a.scene.n_rays,
        cluster_cap: a.cap,
        threads: a.scene.threads(),
    };
    let field = compute_field_with(&s, &grid, a.measure, &opts)?;
    write(&a.out, &export_raster(&field))?;
    if let Some(p) = &a.csv {
        write(p, &export_csv(&field))?;
    }
    if let Some(p) = &a.render {
        write(p, &render_svg(&s, Some(&field), &[], &a.look.options())?)?;
    }
    Ok(())
}

fn cmd_rope(a: &RopeArgs) -> Result<(), Error> {
    let s = scene(&a.scene.scene)?;
    let grid = make_grid(&s, a.scene.spacing)?;
    let cfg = RopeConfig {
        n_rays: a.scene.n_rays,
        threads: a.scene.threads(),
        ..Default::default()
    };
    let net = rope_extract_with(&s, &grid, &cfg)?;
    write(&a.out, &export_lines(&network_features(&net)))?;
    println!(
        "lines={} covered={}/{}",
        net.lines.len(),
        net.covered_count(),
        grid.masked_count()
    );
    Ok(())
}

fn cmd_ridges(a: &RidgesArgs) -> Result<(), Error> {
    let field = import_raster(&read(&a.field)?, None)?;
    let t_curv = a
        .t_curv
        .unwrap_or_else(|| default_t_curv(field.grid.spacing));
    let set = extract_ridges(&field, a.t_slope, t_curv)?;
    write(&a.out, &export_lines(&ridge_features(&set)))
}

fn kept_field_path(out: &Path) -> PathBuf {
    out.with_extension("mrl.asc")
}

fn cmd_skeleton(a: &SkeletonArgs) -> Result<(), Error> {
    let s = scene(&a.scene.scene)?;
    let grid = make_grid(&s, a.scene.spacing)?;
    let t_curv = a.t_curv.unwrap_or_else(|| default_t_curv(a.scene.spacing));
    let set = skeleton(&s, &grid, a.scene.n_rays, a.t_slope, t_curv)?;
    write(&a.out, &export_lines(&ridge_features(&set)))?;
    if a.keep_field {
        write(&kept_field_path(&a.out), &export_raster(&set.field))?;
    }
    Ok(())
}

fn cmd_render(a: &RenderArgs) -> Result<(), Error> {
    let s = scene(&a.scene)?;
    let field = match &a.field {
        Some(p) => Some(import_raster(&read(p)?, None)?),
        None => None,
    };
    let layers = a
        .lines
        .iter()
        .map(|p| parse_lines(&read(p)?))
        .collect::<Result<Vec<_>, _>>()?;
    write(
        &a.out,
        &render_svg(&s, field.as_ref(), &layers, &a.look.options())?,
    )
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Rope(a) => cmd_rope(a),
        Command::Ridges(a) => cmd_ridges(a),
        Command::Skeleton(a) => cmd_skeleton(a),
        Command::Render(a) => cmd_render(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_DOMAIN,
            })
        }
    }
}
