//! Planar primitives shared by the scene, isovist and rendering code.

use serde::{Deserialize, Serialize};

/// Coincidence tolerance in scene units.
pub const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[allow(clippy::should_implement_trait)]
impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        self.sub(o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Euclidean distance from `p` to the closest point of the segment.
    pub fn distance_to(&self, p: Point) -> f64 {
        let e = self.b.sub(self.a);
        let len2 = e.dot(e);
        if len2 == 0.0 {
            return p.dist(self.a);
        }
        let t = (p.sub(self.a).dot(e) / len2).clamp(0.0, 1.0);
        p.dist(self.a.add(e.scale(t)))
    }

    /// Distance along the unit-direction ray `origin + t * dir` to this segment,
    /// or `None` when the ray misses. Endpoint hits are accepted within [`EPS`],
    /// so a ray through a shared vertex registers on both incident segments.
    pub fn ray_hit(&self, origin: Point, dir: Point) -> Option<f64> {
        let e = self.b.sub(self.a);
        let w = self.a.sub(origin);
        let denom = dir.cross(e);
        let len = e.norm();
        if denom.abs() <= EPS * len {
            // parallel: only a collinear segment can be hit, at its nearer end
            if w.cross(dir).abs() > EPS {
                return None;
            }
            let ta = w.dot(dir);
            let tb = self.b.sub(origin).dot(dir);
            return match (ta > EPS, tb > EPS) {
                (true, true) => Some(ta.min(tb)),
                (true, false) => Some(ta),
                (false, true) => Some(tb),
                (false, false) => None,
            };
        }
        let t = w.cross(e) / denom;
        let u = w.cross(dir) / denom;
        let tol = EPS / len;
        if t > EPS && u >= -tol && u <= 1.0 + tol {
            Some(t)
        } else {
            None
        }
    }

    /// Closed-segment intersection test, touching included.
    pub fn intersects(&self, o: &Segment) -> bool {
        let d1 = orient(o.a, o.b, self.a);
        let d2 = orient(o.a, o.b, self.b);
        let d3 = orient(self.a, self.b, o.a);
        let d4 = orient(self.a, self.b, o.b);
        if ((d1 > EPS && d2 < -EPS) || (d1 < -EPS && d2 > EPS))
            && ((d3 > EPS && d4 < -EPS) || (d3 < -EPS && d4 > EPS))
        {
            return true;
        }
        (d1.abs() <= EPS && on_segment(o.a, o.b, self.a))
            || (d2.abs() <= EPS && on_segment(o.a, o.b, self.b))
            || (d3.abs() <= EPS && on_segment(self.a, self.b, o.a))
            || (d4.abs() <= EPS && on_segment(self.a, self.b, o.b))
    }
}

/// Twice the signed area of triangle (a, b, c); positive when counter-clockwise.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    b.sub(a).cross(c.sub(a))
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) - EPS
        && p.x <= a.x.max(b.x) + EPS
        && p.y >= a.y.min(b.y) - EPS
        && p.y <= a.y.max(b.y) + EPS
}

/// Signed shoelace area, positive for counter-clockwise rings.
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        s += pts[i].cross(pts[(i + 1) % n]);
    }
    0.5 * s
}

pub fn perimeter(pts: &[Point]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].dist(pts[(i + 1) % n])).sum()
}

/// Area centroid of a simple polygon. Falls back to the vertex mean for
/// degenerate (zero-area) input.
pub fn centroid(pts: &[Point]) -> Point {
    let n = pts.len();
    let (mut cx, mut cy, mut a2) = (0.0, 0.0, 0.0);
    for i in 0..n {
        let p = pts[i];
        let q = pts[(i + 1) % n];
        let w = p.cross(q);
        a2 += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if a2.abs() < f64::MIN_POSITIVE {
        let k = 1.0 / n as f64;
        let s = pts.iter().fold(Point::new(0.0, 0.0), |acc, p| acc.add(*p));
        return s.scale(k);
    }
    Point::new(cx / (3.0 * a2), cy / (3.0 * a2))
}

/// Convex hull by Andrew's monotone chain, counter-clockwise, collinear points dropped.
pub fn convex_hull(pts: &[Point]) -> Vec<Point> {
    let mut p: Vec<Point> = pts.to_vec();
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * p.len());
    for &pt in &p {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let lower = hull.len() + 1;
    for &pt in p.iter().rev().skip(1) {
        while hull.len() >= lower && orient(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0.0 {
            hull.pop();
        }
        hull.push(pt);
    }
    hull.pop();
    hull
}

/// Where `p` sits relative to a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Crossing-number containment with an explicit on-edge check.
pub fn locate(ring: &[Point], p: Point) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if Segment::new(a, b).distance_to(p) <= EPS {
            return Location::Boundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}
