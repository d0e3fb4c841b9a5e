//! Rank and overlap elimination: greedy extraction of the network of lines of
//! longest depth.
//!
//! Viewpoints are ranked by MDL. The best remaining viewpoint becomes a
//! generator; every still-active viewpoint inside its isovist is eliminated,
//! which includes the generator itself. This repeats until no
//! viewpoint is left, so the generators see every viewpoint of the grid: they
//! form a (non-minimal) art-gallery guard set.
//!
//! The elimination rule is containment in the generator's isovist. Other
//! readings (eliminating by chord visibility or by overlap area) are possible;
//! containment is the weakest one under which the guard-set property holds.
//! Containment is decided exactly, by an unobstructed sight line: the sampled
//! polygon bulges past occluding corners, and a node eliminated there would
//! not actually be seen by any generator. Sight lines that touch a scene
//! vertex count as blocked.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Grid;
use crate::geometry::Point;
use crate::isovist::{
    clustering_coefficient, measures, radial_profile, MeasureKind, DEFAULT_CLUSTER_CAP,
    DEFAULT_RAYS,
};
use crate::parallel;
use crate::scene::Scene;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DepthLine {
    pub rank: usize,
    pub generator: Point,
    /// Grid index of the generator.
    pub node: usize,
    pub chord: (Point, Point),
    pub mdl: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineNetwork {
    pub lines: Vec<DepthLine>,
    /// Per grid node: rank of the first line whose isovist holds it.
    pub covered: Vec<Option<usize>>,
}

impl LineNetwork {
    pub fn covered_count(&self) -> usize {
        self.covered.iter().filter(|c| c.is_some()).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RopeConfig {
    pub n_rays: usize,
    /// Ranking measure; MDL unless experimenting.
    pub rank_by: MeasureKind,
    pub threads: Option<usize>,
}

impl Default for RopeConfig {
    fn default() -> Self {
        Self {
            n_rays: DEFAULT_RAYS,
            rank_by: MeasureKind::Mdl,
            threads: None,
        }
    }
}

pub fn rope_extract(scene: &Scene, grid: &Grid, n_rays: usize) -> Result<LineNetwork> {
    rope_extract_with(
        scene,
        grid,
        &RopeConfig {
            n_rays,
            ..Default::default()
        },
    )
}

struct Candidate {
    node: usize,
    score: f64,
    mdl: f64,
    chord: (Point, Point),
}

fn score_key(v: f64) -> i64 {
    (v * 1e9).round() as i64
}

pub fn rope_extract_with(scene: &Scene, grid: &Grid, cfg: &RopeConfig) -> Result<LineNetwork> {
    let nodes = grid.masked();
    if nodes.is_empty() {
        return Err(Error::NoNodes);
    }
    let peers: Vec<Point> = if cfg.rank_by == MeasureKind::Clustering {
        nodes.iter().map(|&i| grid.position_of(i)).collect()
    } else {
        Vec::new()
    };

    // (1) per-node measures
    let scored = parallel::map(&nodes, cfg.threads, |&i| -> Result<Candidate> {
        let p = grid.position_of(i);
        let m = measures(&radial_profile(scene, p, cfg.n_rays)?);
        let score = match m.get(cfg.rank_by) {
            Some(v) => v,
            None => clustering_coefficient(scene, p, &peers, DEFAULT_CLUSTER_CAP)?,
        };
        Ok(Candidate {
            node: i,
            score,
            mdl: m.mdl,
            chord: m.mdl_chord,
        })
    });
    let mut ranked = scored.into_iter().collect::<Result<Vec<_>>>()?;

    // (2) best first, ties in grid order (row, col). Scores are compared on a
    // 1e-9 lattice so mirror-image viewpoints tie despite rounding noise.
    ranked.sort_by_key(|c| (std::cmp::Reverse(score_key(c.score)), c.node));

    // (3) select and eliminate
    let mut active = grid.mask.clone();
    let mut covered = vec![None; grid.len()];
    let mut lines = Vec::new();
    for cand in &ranked {
        if !active[cand.node] {
            continue;
        }
        let rank = lines.len() + 1;
        let generator = grid.position_of(cand.node);
        active[cand.node] = false;
        covered[cand.node] = Some(rank);
        for &j in &nodes {
            if active[j] && scene.segment_visible(generator, grid.position_of(j)) {
                active[j] = false;
                covered[j] = Some(rank);
            }
        }
        lines.push(DepthLine {
            rank,
            generator,
            node: cand.node,
            chord: cand.chord,
            mdl: cand.mdl,
        });
    }
    Ok(LineNetwork { lines, covered })
}
