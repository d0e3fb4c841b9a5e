//! Dense viewpoint grids and measure fields evaluated over them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::isovist::{
    clustering_coefficient, measures, radial_profile, MeasureKind, DEFAULT_CLUSTER_CAP,
    DEFAULT_RAYS,
};
use crate::parallel;
use crate::scene::{point_in_open_space, Scene};

/// Cell-centred raster of viewpoints; row 0 is the southernmost row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub origin: Point,
    pub spacing: f64,
    pub n_cols: usize,
    pub n_rows: usize,
    /// Row-major, `row * n_cols + col`.
    pub mask: Vec<bool>,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.n_cols * self.n_rows
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.n_cols + col
    }

    pub fn col_row(&self, idx: usize) -> (usize, usize) {
        (idx % self.n_cols, idx / self.n_cols)
    }

    pub fn position(&self, col: usize, row: usize) -> Point {
        Point::new(
            self.origin.x + (col as f64 + 0.5) * self.spacing,
            self.origin.y + (row as f64 + 0.5) * self.spacing,
        )
    }

    pub fn position_of(&self, idx: usize) -> Point {
        let (c, r) = self.col_row(idx);
        self.position(c, r)
    }

    /// Indices of masked nodes in grid order.
    pub fn masked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn masked_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Same raster geometry (origin, spacing, shape) within `tol`.
    pub fn same_geometry(&self, other: &Grid, tol: f64) -> bool {
        self.n_cols == other.n_cols
            && self.n_rows == other.n_rows
            && (self.spacing - other.spacing).abs() <= tol
            && (self.origin.x - other.origin.x).abs() <= tol
            && (self.origin.y - other.origin.y).abs() <= tol
    }
}

/// Covers the bounds' bounding box with cells of side `spacing`.
pub fn make_grid(scene: &Scene, spacing: f64) -> Result<Grid> {
    if !(spacing.is_finite() && spacing > 0.0) {
        return Err(Error::Parameter(format!(
            "spacing must be positive, got {spacing}"
        )));
    }
    let (lo, hi) = scene.bbox();
    let cells = |extent: f64| ((extent / spacing - 1e-9).ceil() as usize).max(1);
    let n_cols = cells(hi.x - lo.x);
    let n_rows = cells(hi.y - lo.y);
    let mut grid = Grid {
        origin: lo,
        spacing,
        n_cols,
        n_rows,
        mask: Vec::new(),
    };
    grid.mask = (0..grid.len())
        .map(|i| point_in_open_space(scene, grid.position_of(i)))
        .collect();
    if grid.masked_count() == 0 {
        return Err(Error::NoNodes);
    }
    Ok(grid)
}

/// One scalar per grid node; NaN where the grid is unmasked.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureField {
    pub grid: Grid,
    pub kind: Option<MeasureKind>,
    pub values: Vec<f64>,
}

impl MeasureField {
    pub fn get(&self, col: usize, row: usize) -> Option<f64> {
        let i = self.grid.index(col, row);
        self.grid.mask[i].then_some(self.values[i])
    }

    /// (min, max) over masked nodes.
    pub fn range(&self) -> Option<(f64, f64)> {
        self.grid
            .masked()
            .into_iter()
            .map(|i| self.values[i])
            .fold(None, |acc, v| {
                Some(match acc {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                })
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldOptions {
    pub n_rays: usize,
    pub cluster_cap: usize,
    /// Worker count; `None` lets the thread pool decide.
    pub threads: Option<usize>,
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self {
            n_rays: DEFAULT_RAYS,
            cluster_cap: DEFAULT_CLUSTER_CAP,
            threads: None,
        }
    }
}

pub fn compute_field(
    scene: &Scene,
    grid: &Grid,
    kind: MeasureKind,
    n_rays: usize,
) -> Result<MeasureField> {
    compute_field_with(
        scene,
        grid,
        kind,
        &FieldOptions {
            n_rays,
            ..Default::default()
        },
    )
}

pub fn compute_field_with(
    scene: &Scene,
    grid: &Grid,
    kind: MeasureKind,
    opts: &FieldOptions,
) -> Result<MeasureField> {
    let nodes = grid.masked();
    if nodes.is_empty() {
        return Err(Error::NoNodes);
    }
    let peers: Vec<Point> = if kind == MeasureKind::Clustering {
        nodes.iter().map(|&i| grid.position_of(i)).collect()
    } else {
        Vec::new()
    };
    let per_node = parallel::map(&nodes, opts.threads, |&i| -> Result<f64> {
        let p = grid.position_of(i);
        if kind == MeasureKind::Clustering {
            return clustering_coefficient(scene, p, &peers, opts.cluster_cap);
        }
        let prof = radial_profile(scene, p, opts.n_rays)?;
        Ok(measures(&prof).get(kind).expect("non-clustering measure"))
    });
    let mut values = vec![f64::NAN; grid.len()];
    for (&i, v) in nodes.iter().zip(per_node) {
        values[i] = v?;
    }
    Ok(MeasureField {
        grid: grid.clone(),
        kind: Some(kind),
        values,
    })
}
