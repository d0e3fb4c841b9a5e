//! Scenes: an outer open-space boundary with obstacle holes, plus the
//! queries every isovist computation is built on.
//!
//! Conventions:
//! - points on any edge are outside the open space;
//! - a ray that passes exactly through a vertex is tested against both
//!   incident edges and stops at the nearer hit.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, locate, Location, Point, Segment, EPS};

#[derive(Debug, Clone, PartialEq)]
pub struct Ring {
    vertices: Vec<Point>,
}

impl Ring {
    pub fn new(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn signed_area(&self) -> f64 {
        geometry::signed_area(&self.vertices)
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn oriented(mut self, ccw: bool) -> Self {
        if (self.signed_area() > 0.0) != ccw {
            self.vertices.reverse();
        }
        self
    }
}

/// Issue codes reported by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IssueCode {
    TooFewVertices,
    NonFinite,
    RepeatedVertex,
    ZeroArea,
    SelfIntersection,
    ObstacleOutside,
    ObstacleOverlap,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::TooFewVertices => "TOO_FEW_VERTICES",
            IssueCode::NonFinite => "NON_FINITE",
            IssueCode::RepeatedVertex => "REPEATED_VERTEX",
            IssueCode::ZeroArea => "ZERO_AREA",
            IssueCode::SelfIntersection => "SELF_INTERSECTION",
            IssueCode::ObstacleOutside => "OBSTACLE_OUTSIDE",
            IssueCode::ObstacleOverlap => "OBSTACLE_OVERLAP",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
    /// 0 is the bounds ring, `k + 1` is obstacle `k`.
    pub ring: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn has(&self, code: IssueCode) -> bool {
        self.issues.iter().any(|i| i.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, issue) in self.issues.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(
                f,
                "{} (ring {}): {}",
                issue.code.as_str(),
                issue.ring,
                issue.message
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Scene {
    bounds: Ring,
    obstacles: Vec<Ring>,
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct SceneFile {
    bounds: Vec<[f64; 2]>,
    #[serde(default)]
    obstacles: Vec<Vec<[f64; 2]>>,
}

fn to_ring(pts: &[[f64; 2]]) -> Ring {
    Ring::new(pts.iter().map(|&[x, y]| Point::new(x, y)).collect())
}

fn from_ring(r: &Ring) -> Vec<[f64; 2]> {
    r.vertices.iter().map(|p| [p.x, p.y]).collect()
}

impl Scene {
    /// Builds a scene without normalizing or validating it.
    pub fn from_rings_unchecked(bounds: Ring, obstacles: Vec<Ring>) -> Self {
        let segments = std::iter::once(&bounds)
            .chain(obstacles.iter())
            .flat_map(|r| r.edges())
            .collect();
        Self {
            bounds,
            obstacles,
            segments,
        }
    }

    /// Normalizes orientation (bounds CCW, obstacles CW) and validates.
    pub fn new(bounds: Ring, obstacles: Vec<Ring>) -> Result<Self> {
        let bounds = bounds.oriented(true);
        let obstacles = obstacles.into_iter().map(|r| r.oriented(false)).collect();
        let scene = Self::from_rings_unchecked(bounds, obstacles);
        let report = validate(&scene);
        if report.ok {
            Ok(scene)
        } else {
            Err(Error::Invalid(report))
        }
    }

    pub fn bounds(&self) -> &Ring {
        &self.bounds
    }

    pub fn obstacles(&self) -> &[Ring] {
        &self.obstacles
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        std::iter::once(&self.bounds)
            .chain(self.obstacles.iter())
            .flat_map(|r| r.vertices.iter().copied())
    }

    /// Axis-aligned bounding box of the bounds ring as (min, max).
    pub fn bbox(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.bounds.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn open_area(&self) -> f64 {
        self.bounds.signed_area().abs()
            - self
                .obstacles
                .iter()
                .map(|o| o.signed_area().abs())
                .sum::<f64>()
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Scene {
        self.map_points(|p| Point::new(p.x + dx, p.y + dy))
    }

    pub fn scaled(&self, k: f64) -> Scene {
        self.map_points(|p| p.scale(k))
    }

    fn map_points(&self, f: impl Fn(Point) -> Point) -> Scene {
        let map = |r: &Ring| Ring::new(r.vertices.iter().map(|&p| f(p)).collect());
        Scene::from_rings_unchecked(map(&self.bounds), self.obstacles.iter().map(map).collect())
    }

    /// Nearest hit along a unit direction, without the open-space check.
    pub(crate) fn cast(&self, origin: Point, dir: Point) -> f64 {
        self.segments
            .iter()
            .filter_map(|s| s.ray_hit(origin, dir))
            .fold(f64::INFINITY, f64::min)
    }

    /// True when the closed segment `p`–`q` touches no scene edge.
    pub fn segment_visible(&self, p: Point, q: Point) -> bool {
        let sight = Segment::new(p, q);
        !self.segments.iter().any(|s| s.intersects(&sight))
    }
}

/// Parses and validates a scene document.
pub fn load_scene(text: &str) -> Result<Scene> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Scene::new(
        to_ring(&file.bounds),
        file.obstacles.iter().map(|o| to_ring(o)).collect(),
    )
}

pub fn serialize(scene: &Scene) -> String {
    let file = SceneFile {
        bounds: from_ring(&scene.bounds),
        obstacles: scene.obstacles.iter().map(from_ring).collect(),
    };
    serde_json::to_string(&file).expect("scene serializes")
}

fn ring_issues(ring: &Ring, idx: usize, issues: &mut Vec<Issue>) -> bool {
    let v = &ring.vertices;
    let mut push = |code, message: String| {
        issues.push(Issue {
            code,
            message,
            ring: idx,
        })
    };
    if v.len() < 3 {
        push(IssueCode::TooFewVertices, format!("{} vertices", v.len()));
        return false;
    }
    if v.iter().any(|p| !p.is_finite()) {
        push(IssueCode::NonFinite, "non-finite coordinate".into());
        return false;
    }
    let n = v.len();
    if let Some(i) = (0..n).find(|&i| v[i].dist(v[(i + 1) % n]) <= EPS) {
        push(IssueCode::RepeatedVertex, format!("vertex {i} repeats"));
        return false;
    }
    let edges: Vec<Segment> = ring.edges().collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let bad = if adjacent {
                // adjacent edges share a vertex; they only conflict by folding back
                let (e1, e2) = if j == i + 1 {
                    (edges[i], edges[j])
                } else {
                    (edges[j], edges[i])
                };
                let d1 = e1.b.sub(e1.a);
                let d2 = e2.b.sub(e2.a);
                d1.cross(d2).abs() <= EPS * d1.norm() * d2.norm() && d1.dot(d2) < 0.0
            } else {
                edges[i].intersects(&edges[j])
            };
            if bad {
                push(
                    IssueCode::SelfIntersection,
                    format!("edges {i} and {j} intersect"),
                );
                return false;
            }
        }
    }
    if ring.signed_area().abs() <= EPS {
        push(IssueCode::ZeroArea, "ring encloses no area".into());
        return false;
    }
    true
}

fn rings_touch(a: &Ring, b: &Ring) -> bool {
    a.edges().any(|e| b.edges().any(|f| e.intersects(&f)))
}

/// Checks ring invariants, obstacle containment and pairwise disjointness.
pub fn validate(scene: &Scene) -> ValidationReport {
    let mut issues = Vec::new();
    let bounds_ok = ring_issues(&scene.bounds, 0, &mut issues);
    let mut good: Vec<usize> = Vec::new();
    for (k, obs) in scene.obstacles.iter().enumerate() {
        if !ring_issues(obs, k + 1, &mut issues) {
            continue;
        }
        if bounds_ok {
            let escapes = rings_touch(obs, &scene.bounds)
                || obs
                    .vertices
                    .iter()
                    .any(|&p| locate(&scene.bounds.vertices, p) != Location::Inside);
            if escapes {
                issues.push(Issue {
                    code: IssueCode::ObstacleOutside,
                    message: format!("obstacle {k} is not strictly inside the bounds"),
                    ring: k + 1,
                });
                continue;
            }
        }
        for &j in &good {
            let other = &scene.obstacles[j];
            let overlap = rings_touch(obs, other)
                || locate(&other.vertices, obs.vertices[0]) != Location::Outside
                || locate(&obs.vertices, other.vertices[0]) != Location::Outside;
            if overlap {
                issues.push(Issue {
                    code: IssueCode::ObstacleOverlap,
                    message: format!("obstacles {j} and {k} overlap"),
                    ring: k + 1,
                });
            }
        }
        good.push(k);
    }
    ValidationReport {
        ok: issues.is_empty(),
        issues,
    }
}

/// Strictly inside the bounds and strictly outside every obstacle.
pub fn point_in_open_space(scene: &Scene, p: Point) -> bool {
    p.is_finite()
        && locate(&scene.bounds.vertices, p) == Location::Inside
        && scene
            .obstacles
            .iter()
            .all(|o| locate(&o.vertices, p) == Location::Outside)
}

fn require_open(scene: &Scene, p: Point) -> Result<()> {
    if point_in_open_space(scene, p) {
        Ok(())
    } else {
        Err(Error::OutsideOpenSpace { x: p.x, y: p.y })
    }
}

/// Distance from `origin` along direction `angle` to the first scene edge.
pub fn ray_cast(scene: &Scene, origin: Point, angle: f64) -> Result<f64> {
    require_open(scene, origin)?;
    let (s, c) = angle.sin_cos();
    Ok(scene.cast(origin, Point::new(c, s)))
}

/// Exact Euclidean distance from `p` to the nearest scene edge.
pub fn distance_to_boundary(scene: &Scene, p: Point) -> Result<f64> {
    require_open(scene, p)?;
    Ok(scene
        .segments
        .iter()
        .map(|s| s.distance_to(p))
        .fold(f64::INFINITY, f64::min))
}

/// Reference scenes used throughout the tests and demos.
pub mod samples {
    use super::*;

    fn ring(pts: &[(f64, f64)]) -> Ring {
        Ring::new(pts.iter().map(|&p| p.into()).collect())
    }

    /// 10 x 10 room.
    pub fn square() -> Scene {
        Scene::new(
            ring(&[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]),
            vec![],
        )
        .expect("valid")
    }

    /// 40 x 10 corridor.
    pub fn rect() -> Scene {
        Scene::new(
            ring(&[(0.0, 0.0), (40.0, 0.0), (40.0, 10.0), (0.0, 10.0)]),
            vec![],
        )
        .expect("valid")
    }

    /// T: a 10-wide stem (x 10..20, y 0..20) under a 30 x 10 bar (y 20..30).
    pub fn t_shape() -> Scene {
        Scene::new(
            ring(&[
                (10.0, 0.0),
                (20.0, 0.0),
                (20.0, 20.0),
                (30.0, 20.0),
                (30.0, 30.0),
                (0.0, 30.0),
                (0.0, 20.0),
                (10.0, 20.0),
            ]),
            vec![],
        )
        .expect("valid")
    }
}
