//! Ridge extraction from measure fields by local quadratic surface fitting,
//! and the medial-axis skeleton as the ridge set of the MRL field.
//!
//! Each interior node gets a least-squares fit
//! `z = a x^2 + b y^2 + c xy + d x + e y + f` over its 3x3 window. Sloping
//! nodes are classified by the curvature across the slope line; near-flat
//! nodes by the eigenvalues of the Hessian.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{compute_field, Grid, MeasureField};
use crate::isovist::MeasureKind;
use crate::scene::Scene;

/// Default gradient tolerance (rise over run).
pub const DEFAULT_T_SLOPE: f64 = 0.05;

/// Gradient tolerance for skeletons. The distance transform has unit slope
/// almost everywhere, and a 3x3 fit across a crest that falls between node
/// rows still sees half of it, so the flat threshold has to sit above 0.5.
pub const SKELETON_T_SLOPE: f64 = 0.6;

/// Default curvature tolerance for a given grid spacing.
pub fn default_t_curv(spacing: f64) -> f64 {
    0.05 / spacing
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl QuadCoeffs {
    pub fn slope(&self) -> f64 {
        self.d.hypot(self.e)
    }

    /// Hessian eigenvalues, ascending.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = self.a + self.b;
        let rad = (self.a - self.b).hypot(self.c);
        (mean - rad, mean + rad)
    }

    /// Second derivative along the contour direction (perpendicular to the
    /// gradient). Negative where the surface bulges upward across the slope
    /// line, i.e. on a ridge.
    pub fn cross_curvature(&self) -> f64 {
        let (d, e) = (self.d, self.e);
        2.0 * (self.a * e * e - self.c * d * e + self.b * d * d) / (d * d + e * e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MorphClass {
    Ridge,
    Channel,
    Planar,
    Peak,
    Pit,
    Pass,
    Nodata,
}

/// Least-squares quadratic over the 3x3 window centred on (`col`, `row`).
/// `None` unless all nine nodes carry data.
pub fn fit_quadratic(field: &MeasureField, col: usize, row: usize) -> Option<QuadCoeffs> {
    let g = &field.grid;
    if col == 0 || row == 0 || col + 1 >= g.n_cols || row + 1 >= g.n_rows {
        return None;
    }
    let mut z = [[0.0; 3]; 3];
    for (dy, zrow) in z.iter_mut().enumerate() {
        for (dx, cell) in zrow.iter_mut().enumerate() {
            *cell = field.get(col + dx - 1, row + dy - 1)?;
        }
    }
    Some(fit_window(&z, g.spacing))
}

/// Closed-form fit; `z[dy][dx]` with offsets `dx, dy` in {-1, 0, 1} mapped to
/// indices 0..3, x east and y north.
pub fn fit_window(z: &[[f64; 3]; 3], spacing: f64) -> QuadCoeffs {
    let col = |k: usize| z[0][k] + z[1][k] + z[2][k];
    let row = |k: usize| z[k][0] + z[k][1] + z[k][2];
    let (west, mid_x, east) = (col(0), col(1), col(2));
    let (south, mid_y, north) = (row(0), row(1), row(2));
    let s2 = spacing * spacing;
    let corners = z[0][0] + z[0][2] + z[2][0] + z[2][2];
    let edges = z[0][1] + z[1][0] + z[1][2] + z[2][1];
    QuadCoeffs {
        a: (west + east - 2.0 * mid_x) / (6.0 * s2),
        b: (south + north - 2.0 * mid_y) / (6.0 * s2),
        c: (z[2][2] - z[2][0] - z[0][2] + z[0][0]) / (4.0 * s2),
        d: (east - west) / (6.0 * spacing),
        e: (north - south) / (6.0 * spacing),
        f: (2.0 * edges - corners + 5.0 * z[1][1]) / 9.0,
    }
}

pub fn classify_node(q: &QuadCoeffs, t_slope: f64, t_curv: f64) -> MorphClass {
    if q.slope() > t_slope {
        let chi = q.cross_curvature();
        return if chi <= -t_curv {
            MorphClass::Ridge
        } else if chi >= t_curv {
            MorphClass::Channel
        } else {
            MorphClass::Planar
        };
    }
    let (lo, hi) = q.eigenvalues();
    if hi <= -t_curv {
        MorphClass::Peak
    } else if lo >= t_curv {
        MorphClass::Pit
    } else if lo <= -t_curv && hi >= t_curv {
        MorphClass::Pass
    } else if lo <= -t_curv {
        MorphClass::Ridge
    } else if hi >= t_curv {
        MorphClass::Channel
    } else {
        MorphClass::Planar
    }
}

/// Classified field plus ridge nodes linked into polylines.
#[derive(Debug, Clone, PartialEq)]
pub struct RidgeSet {
    pub field: MeasureField,
    pub classes: Vec<MorphClass>,
    /// RIDGE and PEAK nodes in grid order.
    pub ridge_nodes: Vec<usize>,
    /// Chains of 8-connected ridge nodes (grid indices), each at least two long.
    pub polylines: Vec<Vec<usize>>,
    pub skeleton: bool,
}

impl RidgeSet {
    pub fn grid(&self) -> &Grid {
        &self.field.grid
    }

    /// Principal-axis direction of a polyline in degrees, in [0, 180).
    pub fn orientation(&self, k: usize) -> f64 {
        let pts: Vec<_> = self.polylines[k]
            .iter()
            .map(|&i| self.grid().position_of(i))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.x).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.y).sum::<f64>() / n;
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        for p in &pts {
            sxx += (p.x - mx) * (p.x - mx);
            syy += (p.y - my) * (p.y - my);
            sxy += (p.x - mx) * (p.y - my);
        }
        let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
        theta.to_degrees().rem_euclid(180.0)
    }

    pub fn mean_value(&self, k: usize) -> f64 {
        let chain = &self.polylines[k];
        chain.iter().map(|&i| self.field.values[i]).sum::<f64>() / chain.len() as f64
    }
}

pub fn classify_field(field: &MeasureField, t_slope: f64, t_curv: f64) -> Vec<MorphClass> {
    let g = &field.grid;
    (0..g.len())
        .map(|i| {
            let (c, r) = g.col_row(i);
            match fit_quadratic(field, c, r) {
                Some(q) => classify_node(&q, t_slope, t_curv),
                None => MorphClass::Nodata,
            }
        })
        .collect()
}

pub fn extract_ridges(field: &MeasureField, t_slope: f64, t_curv: f64) -> Result<RidgeSet> {
    let classes = classify_field(field, t_slope, t_curv);
    if classes.iter().all(|&c| c == MorphClass::Nodata) {
        return Err(Error::NoWindow);
    }
    let ridge_nodes: Vec<usize> = (0..classes.len())
        .filter(|&i| matches!(classes[i], MorphClass::Ridge | MorphClass::Peak))
        .collect();
    let polylines = link(&field.grid, &classes, &ridge_nodes);
    Ok(RidgeSet {
        field: field.clone(),
        classes,
        ridge_nodes,
        polylines,
        skeleton: false,
    })
}

/// Medial axis: ridges of the MRL (distance transform) field.
pub fn skeleton(
    scene: &Scene,
    grid: &Grid,
    n_rays: usize,
    t_slope: f64,
    t_curv: f64,
) -> Result<RidgeSet> {
    let mrl = compute_field(scene, grid, MeasureKind::Mrl, n_rays)?;
    let mut set = extract_ridges(&mrl, t_slope, t_curv)?;
    set.skeleton = true;
    Ok(set)
}

// E, N, W, S first so straight axis-aligned steps win ties.
const STEPS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, 1),
    (-1, 1),
    (-1, -1),
    (1, -1),
];

struct Linker<'a> {
    grid: &'a Grid,
    classes: &'a [MorphClass],
    used: Vec<bool>,
}

impl Linker<'_> {
    fn is_ridge(&self, i: usize) -> bool {
        matches!(self.classes[i], MorphClass::Ridge | MorphClass::Peak)
    }

    fn neighbour(&self, i: usize, (dx, dy): (i64, i64)) -> Option<usize> {
        let (c, r) = self.grid.col_row(i);
        let (c, r) = (c as i64 + dx, r as i64 + dy);
        if c < 0 || r < 0 || c >= self.grid.n_cols as i64 || r >= self.grid.n_rows as i64 {
            return None;
        }
        let j = self.grid.index(c as usize, r as usize);
        self.is_ridge(j).then_some(j)
    }

    fn degree(&self, i: usize) -> usize {
        STEPS
            .iter()
            .filter(|&&s| self.neighbour(i, s).is_some())
            .count()
    }

    /// Follows the chain from `start`, preferring the straightest continuation
    /// and never turning by more than 90 degrees. Peaks end a chain and may be
    /// shared by several chains.
    fn walk(&mut self, start: usize, heading: Option<(i64, i64)>, chain: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = start;
        let mut heading = heading;
        loop {
            let mut best: Option<(f64, usize, (i64, i64))> = None;
            for &s in &STEPS {
                let Some(j) = self.neighbour(cur, s) else {
                    continue;
                };
                let peak = self.classes[j] == MorphClass::Peak;
                if (self.used[j] && !peak) || chain.contains(&j) || out.contains(&j) {
                    continue;
                }
                let score = match heading {
                    Some(h) => {
                        let dot = (h.0 * s.0 + h.1 * s.1) as f64;
                        if dot < 0.0 {
                            continue;
                        }
                        let norm = ((h.0 * h.0 + h.1 * h.1) as f64).sqrt()
                            * ((s.0 * s.0 + s.1 * s.1) as f64).sqrt();
                        dot / norm
                    }
                    None => 0.0,
                };
                if best.is_none_or(|(b, _, _)| score > b + 1e-12) {
                    best = Some((score, j, s));
                }
            }
            let Some((_, j, s)) = best else { break };
            out.push(j);
            if self.classes[j] == MorphClass::Peak {
                break;
            }
            self.used[j] = true;
            cur = j;
            heading = Some(s);
        }
        out
    }
}

fn link(grid: &Grid, classes: &[MorphClass], ridge_nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut linker = Linker {
        grid,
        classes,
        used: vec![false; grid.len()],
    };
    let mut seeds: Vec<(usize, usize)> = ridge_nodes
        .iter()
        .filter(|&&i| classes[i] == MorphClass::Ridge)
        .map(|&i| (linker.degree(i), i))
        .filter(|&(d, _)| d > 0)
        .collect();
    seeds.sort_unstable();

    let mut polylines = Vec::new();
    for (_, seed) in seeds {
        if linker.used[seed] {
            continue;
        }
        linker.used[seed] = true;
        let forward = linker.walk(seed, None, &[seed]);
        let mut chain = vec![seed];
        chain.extend(&forward);
        if let Some(&first) = forward.first() {
            if classes[first] != MorphClass::Peak || forward.len() > 1 {
                let (c0, r0) = grid.col_row(seed);
                let (c1, r1) = grid.col_row(first);
                let back = (c0 as i64 - c1 as i64, r0 as i64 - r1 as i64);
                let mut backward = linker.walk(seed, Some(back), &chain);
                backward.reverse();
                backward.extend(chain);
                chain = backward;
            }
        }
        if chain.len() >= 2 {
            polylines.push(chain);
        }
    }
    polylines
}
