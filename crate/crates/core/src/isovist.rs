//! Per-viewpoint isovists: sampled radial profiles, the exact visibility
//! polygon used to check them, and the measure suite derived from a profile.
//!
//! Convexity, drift and the clustering coefficient are concrete stand-ins:
//! convexity is isovist area over the area of its convex hull, drift is the
//! distance from the viewpoint to the isovist centroid, and the clustering
//! coefficient is the share of mutually visible pairs among the peers a
//! viewpoint can see.
//!
//! MRL is the exact distance to the nearest boundary edge struck by any ray.
//! The shortest sampled ray alone converges only linearly when the nearest
//! feature is a reflex vertex; the struck-edge distance is exact there and
//! agrees with the shortest ray wherever the nearest point is on an edge.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, orient, Point, Segment, EPS};
use crate::scene::{point_in_open_space, Scene};

/// Default angular resolution: 7200 rays, i.e. 0.05 degree steps.
pub const DEFAULT_RAYS: usize = 7200;

/// Default number of peers sampled by the clustering coefficient.
pub const DEFAULT_CLUSTER_CAP: usize = 64;

/// Angle of ray `i` out of `n`. Every ray direction in the crate comes from here.
#[inline]
pub fn ray_angle(i: usize, n: usize) -> f64 {
    i as f64 * (TAU / n as f64)
}

#[inline]
fn ray_dir(i: usize, n: usize) -> Point {
    let (s, c) = ray_angle(i, n).sin_cos();
    Point::new(c, s)
}

/// Distances to the first obstacle along `n` equally spaced rays.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    viewpoint: Point,
    radii: Vec<f64>,
    /// Distinct scene edges struck by at least one ray.
    seen: Vec<Segment>,
}

impl RadialProfile {
    pub fn viewpoint(&self) -> Point {
        self.viewpoint
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn n_rays(&self) -> usize {
        self.radii.len()
    }

    /// Shortest sampled ray.
    pub fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Exact distance from the viewpoint to the nearest edge any ray struck.
    ///
    /// The nearest boundary point is always visible, so once the sampling is
    /// fine enough to strike its edge this is the exact distance transform,
    /// including at reflex corners where the shortest ray converges only
    /// linearly in the angular step.
    pub fn nearest_edge_distance(&self) -> f64 {
        self.seen
            .iter()
            .map(|s| s.distance_to(self.viewpoint))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn seen_edges(&self) -> &[Segment] {
        &self.seen
    }

    /// Endpoint of ray `i`.
    pub fn hit(&self, i: usize) -> Point {
        self.viewpoint
            .add(ray_dir(i, self.radii.len()).scale(self.radii[i]))
    }

    /// Inclusive containment test against the sampled isovist polygon.
    ///
    /// The polygon is a fan of triangles around the viewpoint, so only the
    /// triangles of the ray sector holding `q` (and its neighbours, for points
    /// on a ray) need checking.
    pub fn covers(&self, q: Point) -> bool {
        let p = self.viewpoint;
        let v = q.sub(p);
        if v.norm() <= EPS {
            return true;
        }
        let n = self.radii.len();
        let phi = v.y.atan2(v.x).rem_euclid(TAU);
        let i0 = ((phi / (TAU / n as f64)) as usize) % n;
        [i0, (i0 + 1) % n, (i0 + n - 1) % n].into_iter().any(|i| {
            let a = self.hit(i);
            let b = self.hit((i + 1) % n);
            left_of(p, a, q) && left_of(a, b, q) && left_of(b, p, q)
        })
    }
}

/// `q` on or left of the directed line a->b, within [`EPS`] distance.
fn left_of(a: Point, b: Point, q: Point) -> bool {
    let len = a.dist(b);
    if len <= EPS {
        return true;
    }
    orient(a, b, q) / len >= -EPS
}

fn check_rays(n_rays: usize) -> Result<()> {
    if n_rays < 4 || !n_rays.is_multiple_of(2) {
        return Err(Error::BadRayCount(n_rays));
    }
    Ok(())
}

/// Casts `n_rays` rays from `p` at angles `i * 2pi / n_rays`.
///
/// Rays are resolved segment by segment: each scene edge only tests the rays
/// inside its angular span (padded by one ray on each side), using the same
/// hit test as [`crate::scene::ray_cast`], so the result is identical to
/// casting every ray against every edge.
pub fn radial_profile(scene: &Scene, p: Point, n_rays: usize) -> Result<RadialProfile> {
    check_rays(n_rays)?;
    if !point_in_open_space(scene, p) {
        return Err(Error::OutsideOpenSpace { x: p.x, y: p.y });
    }
    let n = n_rays;
    let step = TAU / n as f64;
    let dirs: Vec<Point> = (0..n).map(|i| ray_dir(i, n)).collect();
    let mut radii = vec![f64::INFINITY; n];
    let mut owner = vec![usize::MAX; n];
    for (sid, seg) in scene.segments().iter().enumerate() {
        let va = seg.a.sub(p);
        let vb = seg.b.sub(p);
        let pa = va.y.atan2(va.x);
        let pb = vb.y.atan2(vb.x);
        let mut delta = pb - pa;
        if delta > PI {
            delta -= TAU;
        } else if delta <= -PI {
            delta += TAU;
        }
        let start = if delta >= 0.0 { pa } else { pb };
        let lo = (start / step).floor() as i64 - 1;
        let hi = ((start + delta.abs()) / step).ceil() as i64 + 1;
        for k in lo..=hi {
            let i = k.rem_euclid(n as i64) as usize;
            if let Some(t) = seg.ray_hit(p, dirs[i]) {
                if t < radii[i] {
                    radii[i] = t;
                    owner[i] = sid;
                }
            }
        }
    }
    owner.sort_unstable();
    owner.dedup();
    let seen = owner
        .into_iter()
        .filter_map(|sid| scene.segments().get(sid).copied())
        .collect();
    Ok(RadialProfile {
        viewpoint: p,
        radii,
        seen,
    })
}

/// Sampled or exact visibility polygon, counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct IsovistPolygon {
    pub vertices: Vec<Point>,
}

impl IsovistPolygon {
    pub fn area(&self) -> f64 {
        geometry::signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        geometry::perimeter(&self.vertices)
    }
}

pub fn isovist_polygon(profile: &RadialProfile) -> IsovistPolygon {
    IsovistPolygon {
        vertices: (0..profile.n_rays()).map(|i| profile.hit(i)).collect(),
    }
}

/// Exact visibility polygon by angular sweep over the scene vertices.
///
/// Between two consecutive vertex angles the nearest visible edge does not
/// change; it is found with a ray through the middle of the interval and then
/// clipped to the interval's bounding rays. Shadow (window) edges appear where
/// the nearest edge changes across a vertex ray.
pub fn exact_isovist(scene: &Scene, p: Point) -> Result<IsovistPolygon> {
    if !point_in_open_space(scene, p) {
        return Err(Error::OutsideOpenSpace { x: p.x, y: p.y });
    }
    let mut angles: Vec<f64> = scene
        .vertices()
        .map(|v| {
            let d = v.sub(p);
            d.y.atan2(d.x).rem_euclid(TAU)
        })
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup();

    let segs = scene.segments();
    let m = angles.len();
    let mut out: Vec<Point> = Vec::with_capacity(2 * m);
    for k in 0..m {
        let a0 = angles[k];
        let a1 = if k + 1 < m {
            angles[k + 1]
        } else {
            angles[0] + TAU
        };
        let (s, c) = (0.5 * (a0 + a1)).sin_cos();
        let mid = Point::new(c, s);
        let nearest = segs
            .iter()
            .filter_map(|sg| sg.ray_hit(p, mid).map(|t| (t, sg)))
            .min_by(|x, y| x.0.total_cmp(&y.0));
        let Some((_, seg)) = nearest else { continue };
        for ang in [a0, a1] {
            let (s, c) = ang.sin_cos();
            let d = Point::new(c, s);
            let e = seg.b.sub(seg.a);
            let t = seg.a.sub(p).cross(e) / d.cross(e);
            let q = p.add(d.scale(t));
            if out.last().is_none_or(|l| l.dist(q) > 1e-12 * (1.0 + t)) {
                out.push(q);
            }
        }
    }
    if out.len() > 1 && out[0].dist(out[out.len() - 1]) <= 1e-12 * (1.0 + out[0].dist(p)) {
        out.pop();
    }
    Ok(IsovistPolygon { vertices: out })
}

/// The field-computable measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    Area,
    Perimeter,
    Mrl,
    Mdl,
    MeanRadial,
    Convexity,
    Compactness,
    Drift,
    Clustering,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 9] = [
        MeasureKind::Area,
        MeasureKind::Perimeter,
        MeasureKind::Mrl,
        MeasureKind::Mdl,
        MeasureKind::MeanRadial,
        MeasureKind::Convexity,
        MeasureKind::Compactness,
        MeasureKind::Drift,
        MeasureKind::Clustering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Area => "area",
            MeasureKind::Perimeter => "perimeter",
            MeasureKind::Mrl => "mrl",
            MeasureKind::Mdl => "mdl",
            MeasureKind::MeanRadial => "mean-radial",
            MeasureKind::Convexity => "convexity",
            MeasureKind::Compactness => "compactness",
            MeasureKind::Drift => "drift",
            MeasureKind::Clustering => "clustering",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        MeasureKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Parameter(format!("unknown measure '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureRecord {
    pub area: f64,
    pub perimeter: f64,
    pub mrl: f64,
    pub mdl: f64,
    pub mdl_chord: (Point, Point),
    pub mean_radial: f64,
    pub convexity: f64,
    pub compactness: f64,
    pub drift: f64,
}

impl MeasureRecord {
    /// Value for `kind`; `None` for the clustering coefficient, which needs peers.
    pub fn get(&self, kind: MeasureKind) -> Option<f64> {
        Some(match kind {
            MeasureKind::Area => self.area,
            MeasureKind::Perimeter => self.perimeter,
            MeasureKind::Mrl => self.mrl,
            MeasureKind::Mdl => self.mdl,
            MeasureKind::MeanRadial => self.mean_radial,
            MeasureKind::Convexity => self.convexity,
            MeasureKind::Compactness => self.compactness,
            MeasureKind::Drift => self.drift,
            MeasureKind::Clustering => return None,
        })
    }
}

/// Longest chord through the viewpoint as the largest antipodal radius sum.
/// Returns (length, ray index); ties within 1e-9 go to the smallest index.
pub fn max_diametric(profile: &RadialProfile) -> (f64, usize) {
    let r = &profile.radii;
    let half = r.len() / 2;
    let sums = (0..half).map(|i| r[i] + r[i + half]);
    let best = sums.clone().fold(f64::NEG_INFINITY, f64::max);
    let idx = sums.clone().position(|s| s >= best - 1e-9).unwrap_or(0);
    (best, idx)
}

pub fn measures(profile: &RadialProfile) -> MeasureRecord {
    let poly = isovist_polygon(profile);
    let area = poly.area();
    let perimeter = poly.perimeter();
    let r = &profile.radii;
    let mrl = profile.nearest_edge_distance().min(profile.min_radius());
    let mean_radial = r.iter().sum::<f64>() / r.len() as f64;
    let (mdl, i) = max_diametric(profile);
    let mdl_chord = (profile.hit(i), profile.hit(i + r.len() / 2));
    let hull = geometry::convex_hull(&poly.vertices);
    let convexity = area / geometry::signed_area(&hull);
    let compactness = 4.0 * PI * area / (perimeter * perimeter);
    let drift = geometry::centroid(&poly.vertices).dist(profile.viewpoint);
    MeasureRecord {
        area,
        perimeter,
        mrl,
        mdl,
        mdl_chord,
        mean_radial,
        convexity,
        compactness,
        drift,
    }
}

/// Share of mutually visible pairs among the peers visible from `p`.
///
/// Visible peers are kept in the order given. Above `cap` they are thinned to
/// every `ceil(len / cap)`-th one. Fewer than two visible peers yields 1.
pub fn clustering_coefficient(scene: &Scene, p: Point, peers: &[Point], cap: usize) -> Result<f64> {
    if cap < 2 {
        return Err(Error::Parameter(format!(
            "clustering cap must be >= 2, got {cap}"
        )));
    }
    if !point_in_open_space(scene, p) {
        return Err(Error::OutsideOpenSpace { x: p.x, y: p.y });
    }
    let visible: Vec<Point> = peers
        .iter()
        .copied()
        .filter(|&q| q != p && scene.segment_visible(p, q))
        .collect();
    if visible.len() < 2 {
        return Ok(1.0);
    }
    let stride = visible.len().div_ceil(cap);
    let sample: Vec<Point> = visible.into_iter().step_by(stride).collect();
    let k = sample.len();
    if k < 2 {
        return Ok(1.0);
    }
    let mut linked = 0usize;
    for a in 0..k {
        for b in (a + 1)..k {
            if scene.segment_visible(sample[a], sample[b]) {
                linked += 1;
            }
        }
    }
    Ok(linked as f64 / (k * (k - 1) / 2) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::ray_cast;
    use crate::scene::samples::{square, t_shape};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn four_rays_from_square_center() {
        let p = radial_profile(&square(), Point::new(5.0, 5.0), 4).unwrap();
        for r in p.radii() {
            assert!(close(*r, 5.0, 1e-12));
        }
    }

    #[test]
    fn eight_rays_alternate() {
        let p = radial_profile(&square(), Point::new(5.0, 5.0), 8).unwrap();
        for (i, r) in p.radii().iter().enumerate() {
            let want = if i % 2 == 0 { 5.0 } else { 50f64.sqrt() };
            assert!(close(*r, want, 1e-9), "ray {i}: {r}");
        }
    }

    #[test]
    fn t_stem_four_rays() {
        let p = radial_profile(&t_shape(), Point::new(15.0, 10.0), 4).unwrap();
        let want = [5.0, 20.0, 5.0, 10.0];
        for (r, w) in p.radii().iter().zip(want) {
            assert!(close(*r, w, 1e-9), "{:?}", p.radii());
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            radial_profile(&square(), Point::new(5.0, 5.0), 9),
            Err(Error::BadRayCount(9))
        ));
        assert!(matches!(
            radial_profile(&t_shape(), Point::new(5.0, 10.0), 8),
            Err(Error::OutsideOpenSpace { .. })
        ));
    }

    #[test]
    fn sweep_matches_brute_force_casting() {
        let t = t_shape();
        for vp in [
            Point::new(15.0, 25.0),
            Point::new(15.0, 20.0),
            Point::new(11.3, 3.7),
        ] {
            let prof = radial_profile(&t, vp, 720).unwrap();
            for (i, r) in prof.radii().iter().enumerate() {
                let brute = ray_cast(&t, vp, ray_angle(i, 720)).unwrap();
                assert_eq!(r.to_bits(), brute.to_bits(), "ray {i} from {vp:?}");
            }
        }
    }

    #[test]
    fn diamond_from_four_rays() {
        let p = radial_profile(&square(), Point::new(5.0, 5.0), 4).unwrap();
        let poly = isovist_polygon(&p);
        let want = [(10.0, 5.0), (5.0, 10.0), (0.0, 5.0), (5.0, 0.0)];
        for (v, (x, y)) in poly.vertices.iter().zip(want) {
            assert!(close(v.x, x, 1e-9) && close(v.y, y, 1e-9));
        }
    }

    #[test]
    fn dense_square_area_converges() {
        let p = radial_profile(&square(), Point::new(5.0, 5.0), DEFAULT_RAYS).unwrap();
        let poly = isovist_polygon(&p);
        assert_eq!(poly.vertices.len(), DEFAULT_RAYS);
        assert!((poly.area() - 100.0).abs() / 100.0 < 0.005);
    }

    #[test]
    fn exact_isovist_of_convex_and_t() {
        let sq = exact_isovist(&square(), Point::new(5.0, 5.0)).unwrap();
        assert!(close(sq.area(), 100.0, 1e-9));
        assert_eq!(sq.vertices.len(), 4);
        let t = t_shape();
        let full = exact_isovist(&t, Point::new(15.0, 25.0)).unwrap();
        assert!(close(full.area(), 500.0, 1e-9));
        let part = exact_isovist(&t, Point::new(15.0, 5.0)).unwrap();
        assert!(part.area() < 500.0 - 1.0);
    }

    #[test]
    fn exact_isovist_stem_area_by_hand() {
        // From (15,5) the stem (200) is fully visible. In the bar, the shadow
        // boundaries through (10,20) and (20,20) have slope 3 (rise 15 over
        // run 5), reaching y=30 at x=10-10/3 and x=20+10/3; the visible part
        // of the bar is the trapezoid with parallel sides 10 and 10+20/3.
        let part = exact_isovist(&t_shape(), Point::new(15.0, 5.0)).unwrap();
        let bar = 0.5 * (10.0 + 10.0 + 20.0 / 3.0) * 10.0;
        assert!(close(part.area(), 200.0 + bar, 1e-9), "{}", part.area());
    }

    #[test]
    fn square_center_measures() {
        let p = radial_profile(&square(), Point::new(5.0, 5.0), DEFAULT_RAYS).unwrap();
        let m = measures(&p);
        assert!(close(m.mrl, 5.0, 1e-3));
        assert!(close(m.mdl, 200f64.sqrt(), 0.01));
        assert!(close(m.area, 100.0, 0.5));
        assert!(close(m.convexity, 1.0, 1e-3));
        assert!(close(m.drift, 0.0, 1e-3));
        assert!(m.compactness > 0.0 && m.compactness <= 1.0);
        assert!(m.mrl <= m.mean_radial);
    }

    #[test]
    fn mrl_exact_at_reflex_corner() {
        // nearest feature of (12.5,21.5) is the corner (10,20); the shortest
        // ray overshoots by ~2e-3 at 7200 rays
        let t = t_shape();
        let p = Point::new(12.5, 21.5);
        let prof = radial_profile(&t, p, DEFAULT_RAYS).unwrap();
        let exact = crate::scene::distance_to_boundary(&t, p).unwrap();
        assert!(prof.min_radius() - exact > 1e-4);
        assert!((measures(&prof).mrl - exact).abs() < 1e-12);
    }

    #[test]
    fn t_bar_center_mrl() {
        let p = radial_profile(&t_shape(), Point::new(15.0, 25.0), DEFAULT_RAYS).unwrap();
        assert!(close(measures(&p).mrl, 5.0, 1e-3));
    }

    #[test]
    fn chord_tie_goes_to_smallest_index() {
        // in the square center both diagonals tie; ray 900 (45 deg) comes first
        let p = radial_profile(&square(), Point::new(5.0, 5.0), DEFAULT_RAYS).unwrap();
        let (_, idx) = max_diametric(&p);
        assert_eq!(idx, 900);
    }

    #[test]
    fn covers_matches_generic_point_in_polygon() {
        let t = t_shape();
        let prof = radial_profile(&t, Point::new(12.5, 8.0), 360).unwrap();
        let poly = isovist_polygon(&prof);
        for j in 0..60 {
            for i in 0..60 {
                let q = Point::new(0.25 + i as f64 * 0.5, 0.25 + j as f64 * 0.5);
                let generic = geometry::locate(&poly.vertices, q) != geometry::Location::Outside;
                assert_eq!(prof.covers(q), generic, "{q:?}");
            }
        }
    }

    #[test]
    fn clustering_examples() {
        let sq = square();
        let grid: Vec<Point> = (0..10)
            .flat_map(|j| (0..10).map(move |i| Point::new(i as f64 + 0.5, j as f64 + 0.5)))
            .collect();
        let c = clustering_coefficient(&sq, Point::new(3.5, 6.5), &grid, 64).unwrap();
        assert_eq!(c, 1.0);
        let one = clustering_coefficient(&sq, Point::new(5.0, 5.0), &[Point::new(1.0, 1.0)], 64);
        assert_eq!(one.unwrap(), 1.0);
        assert!(clustering_coefficient(&sq, Point::new(5.0, 5.0), &grid, 1).is_err());
    }

    #[test]
    fn measure_kind_names_round_trip() {
        for k in MeasureKind::ALL {
            assert_eq!(k.name().parse::<MeasureKind>().unwrap(), k);
        }
        assert!("volume".parse::<MeasureKind>().is_err());
    }
}
