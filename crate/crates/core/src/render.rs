//! Static SVG rendering: field cells, scene geometry, and line layers.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{make_grid, MeasureField};
use crate::geometry::Point;
use crate::scene::Scene;
use crate::vector::LineFeature;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ramp {
    /// Dark for low values, light for high.
    Gray,
    /// Black through red and yellow to white.
    Heat,
}

impl FromStr for Ramp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gray" | "grey" => Ok(Ramp::Gray),
            "heat" => Ok(Ramp::Heat),
            _ => Err(Error::Parameter(format!("unknown color ramp '{s}'"))),
        }
    }
}

impl Ramp {
    /// `t` in [0, 1].
    pub fn color(self, t: f64) -> (u8, u8, u8) {
        let t = if t.is_finite() {
            t.clamp(0.0, 1.0)
        } else {
            0.0
        };
        let byte = |v: f64| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
        match self {
            Ramp::Gray => {
                let g = byte(0.15 + 0.85 * t);
                (g, g, g)
            }
            Ramp::Heat => (byte(3.0 * t), byte(3.0 * t - 1.0), byte(3.0 * t - 2.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    /// Pixel size of one raster cell, or of one scene unit without a raster.
    pub cell_px: f64,
    pub ramp: Ramp,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            cell_px: 12.0,
            ramp: Ramp::Gray,
        }
    }
}

const LINE_COLORS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];
const MARGIN: f64 = 10.0;

/// Raster must have been computed on this scene's grid at its own spacing.
pub fn check_grid(scene: &Scene, field: &MeasureField) -> Result<()> {
    let g = &field.grid;
    let (lo, hi) = scene.bbox();
    let expected = make_grid(scene, g.spacing).ok();
    let tol = 1e-6 * g.spacing.max(hi.x - lo.x).max(hi.y - lo.y);
    match expected {
        Some(e) if e.same_geometry(g, tol) => Ok(()),
        _ => Err(Error::GridMismatch(format!(
            "raster {}x{} at ({}, {}) cell {} does not match the scene extent",
            g.n_cols, g.n_rows, g.origin.x, g.origin.y, g.spacing
        ))),
    }
}

pub fn render_svg(
    scene: &Scene,
    field: Option<&MeasureField>,
    layers: &[Vec<LineFeature>],
    opts: &RenderOptions,
) -> Result<String> {
    if let Some(f) = field {
        check_grid(scene, f)?;
    }
    let (lo, hi) = scene.bbox();
    let scale = match field {
        Some(f) => opts.cell_px / f.grid.spacing,
        None => opts.cell_px,
    };
    let width = (hi.x - lo.x) * scale + 2.0 * MARGIN;
    let height = (hi.y - lo.y) * scale + 2.0 * MARGIN;
    let tx = |p: Point| (MARGIN + (p.x - lo.x) * scale, MARGIN + (hi.y - p.y) * scale);
    let path = |pts: &[Point], close: bool| {
        let mut d = String::new();
        for (k, &p) in pts.iter().enumerate() {
            let (x, y) = tx(p);
            let _ = write!(d, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
        }
        if close {
            d.push('Z');
        }
        d.trim_end().to_string()
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    if let Some(f) = field {
        let g = &f.grid;
        let (vmin, vmax) = f.range().unwrap_or((0.0, 1.0));
        let span = if vmax > vmin { vmax - vmin } else { 1.0 };
        let cell = g.spacing * scale;
        let _ = writeln!(svg, r#"<g id="field" shape-rendering="crispEdges">"#);
        for i in g.masked() {
            let (c, r) = g.col_row(i);
            let corner = Point::new(
                g.origin.x + c as f64 * g.spacing,
                g.origin.y + (r + 1) as f64 * g.spacing,
            );
            let (x, y) = tx(corner);
            let (cr, cg, cb) = opts.ramp.color((f.values[i] - vmin) / span);
            let _ = writeln!(
                svg,
                r##"<rect x="{x:.3}" y="{y:.3}" width="{cell:.3}" height="{cell:.3}" fill="#{cr:02x}{cg:02x}{cb:02x}"/>"##
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let _ = writeln!(svg, r#"<g id="scene">"#);
    let _ = writeln!(
        svg,
        r##"<path d="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
        path(scene.bounds().vertices(), true)
    );
    for obs in scene.obstacles() {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="#333333" stroke="#000000" stroke-width="1"/>"##,
            path(obs.vertices(), true)
        );
    }
    let _ = writeln!(svg, "</g>");

    for (k, layer) in layers.iter().enumerate() {
        let color = LINE_COLORS[k % LINE_COLORS.len()];
        let _ = writeln!(svg, r#"<g id="lines-{}">"#, k + 1);
        for feat in layer {
            if feat.coords.len() >= 2 {
                let _ = writeln!(
                    svg,
                    r#"<path d="{}" fill="none" stroke="{color}" stroke-width="2" stroke-linecap="round"/>"#,
                    path(&feat.coords, false)
                );
            }
            let gen = |key: &str| feat.properties.get(key).and_then(|v| v.as_f64());
            if let (Some(x), Some(y)) = (gen("generator_x"), gen("generator_y")) {
                let (cx, cy) = tx(Point::new(x, y));
                let _ = writeln!(
                    svg,
                    r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="#000000"/>"##
                );
            }
        }
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
