//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every entry point takes the scene as JSON text and returns JSON text, so
//! the page needs no generated type definitions. The `*_json` functions are
//! the plain-Rust versions the exports wrap.

use isovist_core::field::{compute_field, make_grid};
use isovist_core::geometry::Point;
use isovist_core::isovist::{exact_isovist, isovist_polygon, measures, radial_profile};
use isovist_core::morphology::{default_t_curv, skeleton, SKELETON_T_SLOPE};
use isovist_core::rope::rope_extract;
use isovist_core::vector::{export_lines, network_features, ridge_features};
use isovist_core::{load_scene, Error, MeasureKind, MeasureRecord, Result};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct FieldView {
    measure: &'static str,
    origin: [f64; 2],
    spacing: f64,
    n_cols: usize,
    n_rows: usize,
    /// Row-major from the south row; `null` outside the open space.
    values: Vec<Option<f64>>,
    min: Option<f64>,
    max: Option<f64>,
}

#[derive(Serialize)]
struct IsovistView {
    viewpoint: [f64; 2],
    polygon: Vec<[f64; 2]>,
    exact_area: f64,
    measures: MeasureRecord,
}

fn xy(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

pub fn field_json(scene: &str, measure: &str, spacing: f64, n_rays: usize) -> Result<String> {
    let scene = load_scene(scene)?;
    let kind: MeasureKind = measure.parse()?;
    let grid = make_grid(&scene, spacing)?;
    let field = compute_field(&scene, &grid, kind, n_rays)?;
    let range = field.range();
    Ok(json(&FieldView {
        measure: kind.name(),
        origin: xy(grid.origin),
        spacing: grid.spacing,
        n_cols: grid.n_cols,
        n_rows: grid.n_rows,
        values: field
            .values
            .iter()
            .map(|v| v.is_finite().then_some(*v))
            .collect(),
        min: range.map(|r| r.0),
        max: range.map(|r| r.1),
    }))
}

pub fn isovist_json(scene: &str, x: f64, y: f64, n_rays: usize) -> Result<String> {
    let scene = load_scene(scene)?;
    let p = Point::new(x, y);
    let profile = radial_profile(&scene, p, n_rays)?;
    Ok(json(&IsovistView {
        viewpoint: [x, y],
        polygon: isovist_polygon(&profile)
            .vertices
            .iter()
            .map(|&v| xy(v))
            .collect(),
        exact_area: exact_isovist(&scene, p)?.area(),
        measures: measures(&profile),
    }))
}

/// `kind` is `rope` (lines of longest depth) or `skeleton` (medial axis).
pub fn lines_json(scene: &str, kind: &str, spacing: f64, n_rays: usize) -> Result<String> {
    let scene = load_scene(scene)?;
    let grid = make_grid(&scene, spacing)?;
    let features = match kind {
        "rope" => network_features(&rope_extract(&scene, &grid, n_rays)?),
        "skeleton" => ridge_features(&skeleton(
            &scene,
            &grid,
            n_rays,
            SKELETON_T_SLOPE,
            default_t_curv(spacing),
        )?),
        other => return Err(Error::Parameter(format!("unknown line kind '{other}'"))),
    };
    Ok(export_lines(&features))
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

/// Measure field over a grid: `{measure, origin, spacing, n_cols, n_rows, values, min, max}`.
#[wasm_bindgen]
pub fn field(
    scene: &str,
    measure: &str,
    spacing: f64,
    n_rays: usize,
) -> std::result::Result<String, JsError> {
    js(field_json(scene, measure, spacing, n_rays))
}

/// Sampled isovist at a point: `{viewpoint, polygon, exact_area, measures}`.
#[wasm_bindgen]
pub fn isovist(scene: &str, x: f64, y: f64, n_rays: usize) -> std::result::Result<String, JsError> {
    js(isovist_json(scene, x, y, n_rays))
}

/// GeoJSON line network: `rope` or `skeleton`.
#[wasm_bindgen]
pub fn lines(
    scene: &str,
    kind: &str,
    spacing: f64,
    n_rays: usize,
) -> std::result::Result<String, JsError> {
    js(lines_json(scene, kind, spacing, n_rays))
}
