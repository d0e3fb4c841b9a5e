//! Independent reference computations for the integration tests. Nothing
//! here calls the ray sweep, the isovist measures or the morphology code.
#![allow(dead_code)]

use isovist_core::geometry::{Point, Segment};
use isovist_core::scene::{point_in_open_space, Ring, Scene};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rect_ring(x0: f64, y0: f64, x1: f64, y1: f64) -> Ring {
    Ring::new(vec![
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x1, y1),
        Point::new(x0, y1),
    ])
}

/// Rectangular room with 1-4 axis-aligned rectangular obstacles, kept at
/// least one unit from the walls and from each other. Corners sit on a
/// quarter-unit lattice.
pub fn random_room(seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = |v: f64| (v * 4.0).round() / 4.0;
    let w = q(rng.gen_range(16.0..28.0));
    let h = q(rng.gen_range(12.0..22.0));
    let want = rng.gen_range(1..=4);
    let mut boxes: Vec<(f64, f64, f64, f64)> = Vec::new();
    let mut tries = 0;
    while boxes.len() < want && tries < 500 {
        tries += 1;
        let bw = q(rng.gen_range(1.5..6.0));
        let bh = q(rng.gen_range(1.5..6.0));
        let x0 = q(rng.gen_range(1.25..(w - bw - 1.25)));
        let y0 = q(rng.gen_range(1.25..(h - bh - 1.25)));
        let b = (x0, y0, x0 + bw, y0 + bh);
        let clear = boxes
            .iter()
            .all(|o| b.2 + 1.0 <= o.0 || o.2 + 1.0 <= b.0 || b.3 + 1.0 <= o.1 || o.3 + 1.0 <= b.1);
        if clear {
            boxes.push(b);
        }
    }
    Scene::new(
        rect_ring(0.0, 0.0, w, h),
        boxes
            .iter()
            .map(|b| rect_ring(b.0, b.1, b.2, b.3))
            .collect(),
    )
    .expect("random room is valid")
}

pub fn random_open_point(scene: &Scene, rng: &mut ChaCha8Rng) -> Point {
    let (lo, hi) = scene.bbox();
    loop {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if point_in_open_space(scene, p) {
            return p;
        }
    }
}

/// Exact length of the free chord through `p` with direction angle `phi`:
/// the line is clipped against every edge and the nearest crossing on each
/// side of `p` bounds the chord.
pub fn chord_length(scene: &Scene, p: Point, phi: f64) -> f64 {
    let d = Point::new(phi.cos(), phi.sin());
    let (mut fwd, mut back) = (f64::INFINITY, f64::INFINITY);
    for s in scene.segments() {
        let e = s.b.sub(s.a);
        let den = d.cross(e);
        if den.abs() < 1e-15 {
            continue;
        }
        let w = s.a.sub(p);
        let t = w.cross(e) / den;
        let u = w.cross(d) / den;
        if (-1e-12..=1.0 + 1e-12).contains(&u) {
            if t > 0.0 {
                fwd = fwd.min(t);
            } else {
                back = back.min(-t);
            }
        }
    }
    fwd + back
}

/// Longest chord through `p` by scanning directions at `step_deg`.
pub fn dense_chord_search(scene: &Scene, p: Point, step_deg: f64) -> f64 {
    let n = (180.0 / step_deg).round() as usize;
    (0..n)
        .map(|k| chord_length(scene, p, (k as f64 * step_deg).to_radians()))
        .fold(0.0, f64::max)
}

/// Exact nearest boundary point; ties go to the first edge.
pub fn nearest_boundary_point(scene: &Scene, p: Point) -> Point {
    let mut best = (f64::INFINITY, p);
    for s in scene.segments() {
        let e = s.b.sub(s.a);
        let t = (p.sub(s.a).dot(e) / e.dot(e)).clamp(0.0, 1.0);
        let q = s.a.add(e.scale(t));
        let dd = p.dist(q);
        if dd < best.0 {
            best = (dd, q);
        }
    }
    best.1
}

/// Samples of the medial axis at resolution `h`: the nearest-point map is
/// 1-Lipschitz away from the axis, so a jump larger than `2h` between
/// neighbouring samples means the axis passes between them.
pub fn medial_axis_samples(scene: &Scene, h: f64) -> Vec<Point> {
    let (lo, hi) = scene.bbox();
    let nx = ((hi.x - lo.x) / h).ceil() as usize;
    let ny = ((hi.y - lo.y) / h).ceil() as usize;
    let pos =
        |i: usize, j: usize| Point::new(lo.x + (i as f64 + 0.5) * h, lo.y + (j as f64 + 0.5) * h);
    let near: Vec<Option<Point>> = (0..nx * ny)
        .map(|k| {
            let p = pos(k % nx, k / nx);
            point_in_open_space(scene, p).then(|| nearest_boundary_point(scene, p))
        })
        .collect();
    let mut out = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let Some(q) = near[j * nx + i] else { continue };
            for (di, dj) in [(1, 0), (0, 1)] {
                let (i2, j2) = (i + di, j + dj);
                if i2 >= nx || j2 >= ny {
                    continue;
                }
                if let Some(q2) = near[j2 * nx + i2] {
                    if q.dist(q2) > 2.0 * h {
                        let a = pos(i, j);
                        let b = pos(i2, j2);
                        out.push(Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)));
                    }
                }
            }
        }
    }
    out
}

pub fn distance_to_samples(samples: &[Point], p: Point) -> f64 {
    samples
        .iter()
        .map(|s| s.dist(p))
        .fold(f64::INFINITY, f64::min)
}

/// Analytic medial axis of the axis-aligned rectangle [0,w] x [0,h], w >= h.
pub fn rect_medial_axis(w: f64, h: f64) -> Vec<Segment> {
    let m = h / 2.0;
    vec![
        Segment::new(Point::new(m, m), Point::new(w - m, m)),
        Segment::new(Point::new(0.0, 0.0), Point::new(m, m)),
        Segment::new(Point::new(0.0, h), Point::new(m, m)),
        Segment::new(Point::new(w, 0.0), Point::new(w - m, m)),
        Segment::new(Point::new(w, h), Point::new(w - m, m)),
    ]
}

pub fn distance_to_segments(segs: &[Segment], p: Point) -> f64 {
    segs.iter()
        .map(|s| s.distance_to(p))
        .fold(f64::INFINITY, f64::min)
}

/// Area of the part of `scene` visible from `p`, estimated on a stratified
/// lattice of `n x n` sample points per unit cell of the bounding box.
pub fn lattice_visible_area(scene: &Scene, p: Point, per_unit: usize) -> f64 {
    let (lo, hi) = scene.bbox();
    let h = 1.0 / per_unit as f64;
    let nx = ((hi.x - lo.x) / h).round() as usize;
    let ny = ((hi.y - lo.y) / h).round() as usize;
    let mut seen = 0usize;
    for j in 0..ny {
        for i in 0..nx {
            let q = Point::new(lo.x + (i as f64 + 0.5) * h, lo.y + (j as f64 + 0.5) * h);
            if point_in_open_space(scene, q) && scene.segment_visible(p, q) {
                seen += 1;
            }
        }
    }
    seen as f64 * h * h
}

fn orient3(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_span(a: Point, b: Point, c: Point) -> bool {
    c.x >= a.x.min(b.x) - 1e-12
        && c.x <= a.x.max(b.x) + 1e-12
        && c.y >= a.y.min(b.y) - 1e-12
        && c.y <= a.y.max(b.y) + 1e-12
}

/// Closed segment test, touching included.
fn segments_meet(p: Point, q: Point, a: Point, b: Point) -> bool {
    let (d1, d2) = (orient3(a, b, p), orient3(a, b, q));
    let (d3, d4) = (orient3(p, q, a), orient3(p, q, b));
    let z = |v: f64| v.abs() <= 1e-12;
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (z(d1) && on_span(a, b, p))
        || (z(d2) && on_span(a, b, q))
        || (z(d3) && on_span(p, q, a))
        || (z(d4) && on_span(p, q, b))
}

/// Sight line `p`-`q` touches no ring edge.
pub fn sees(scene: &Scene, p: Point, q: Point) -> bool {
    let rings = std::iter::once(scene.bounds()).chain(scene.obstacles());
    for ring in rings {
        let v = ring.vertices();
        for k in 0..v.len() {
            if segments_meet(p, q, v[k], v[(k + 1) % v.len()]) {
                return false;
            }
        }
    }
    true
}
