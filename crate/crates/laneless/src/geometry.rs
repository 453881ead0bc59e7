//! Planar geometry kernel.
//!
//! Oriented rectangular footprints, convex polygon overlap via the
//! separating axis test, minimum boundary distance, and circular-sector
//! membership. All region tests treat boundaries as closed: touching counts
//! as intersecting, which biases collision checks toward safety.
//!
//! Everything here is a pure function of its inputs; there is no shared
//! state. Neighbor counts stay small (~10), so brute force over edge pairs
//! is the right tool — no spatial index.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// 2-D point / vector in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing along `heading` (radians).
    pub fn from_angle(heading: f64) -> Self {
        Self::new(heading.cos(), heading.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3-D cross product `self × o`.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// Normalize an angle to `(-pi, pi]`. Exact identity on angles already in
/// range, so repeated normalization never drifts.
pub fn normalize_angle(a: f64) -> f64 {
    if a > -std::f64::consts::PI && a <= std::f64::consts::PI {
        return a;
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let r = a.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r - two_pi
    } else {
        r
    }
}

/// Absolute angular separation of two headings, in `[0, pi]`.
pub fn angle_abs_diff(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

/// Convex polygon with vertices in counter-clockwise order.
///
/// Construction enforces the invariants (at least 3 vertices, strictly
/// convex, positive area), so every `Polygon` value handed to the overlap
/// and distance routines is valid by type.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b - a).cross(c - b);
            if cross <= 0.0 {
                return Err(Error::InvalidPolygon(format!(
                    "vertices not strictly convex counter-clockwise (cross {cross:.3e} at index {i})"
                )));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Edges as (start, end) pairs, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Rigid translation; preserves all invariants, so no re-validation.
    pub fn translated(&self, d: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|&v| v + d).collect(),
        }
    }

    /// Closed point membership: boundary points count as inside.
    pub fn contains(&self, p: Vec2) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) >= 0.0)
    }

    /// Shoelace area (positive for CCW vertices).
    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| a.cross(b)).sum::<f64>()
    }

    /// Arithmetic mean of the vertices. For rectangles this equals the
    /// area centroid.
    pub fn vertex_centroid(&self) -> Vec2 {
        let sum = self
            .vertices
            .iter()
            .fold(Vec2::default(), |acc, &v| acc + v);
        sum * (1.0 / self.vertices.len() as f64)
    }
}

/// Closed circular sector: all points within `radius` of `apex` whose
/// bearing from the apex is within `half_angle` of `axis_heading`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorRegion {
    pub apex: Vec2,
    pub axis_heading: f64,
    pub half_angle: f64,
    pub radius: f64,
}

impl SectorRegion {
    pub fn new(apex: Vec2, axis_heading: f64, half_angle: f64, radius: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle <= std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!(
                "sector half_angle must be in (0, pi], got {half_angle}"
            )));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "sector radius must be positive, got {radius}"
            )));
        }
        Ok(Self {
            apex,
            axis_heading,
            half_angle,
            radius,
        })
    }

    /// Closed membership; the apex itself is inside.
    pub fn contains(&self, p: Vec2) -> bool {
        let rel = p - self.apex;
        let d2 = rel.norm_sq();
        if d2 > self.radius * self.radius {
            return false;
        }
        if d2 == 0.0 {
            return true;
        }
        angle_abs_diff(rel.y.atan2(rel.x), self.axis_heading) <= self.half_angle
    }
}

/// Axis-aligned-in-body rectangle footprint: `length` along `heading`,
/// `width` across it, centered on `center`. Vertices come out CCW starting
/// at the front-left corner.
pub fn rect_footprint(center: Vec2, heading: f64, length: f64, width: f64) -> Result<Polygon> {
    if length <= 0.0 || width <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "rectangle dimensions must be positive (length {length}, width {width})"
        )));
    }
    let (s, c) = heading.sin_cos();
    let hl = 0.5 * length;
    let hw = 0.5 * width;
    let corners = [(hl, hw), (-hl, hw), (-hl, -hw), (hl, -hw)];
    let vertices = corners
        .iter()
        .map(|&(lx, ly)| Vec2::new(center.x + lx * c - ly * s, center.y + lx * s + ly * c))
        .collect();
    // A positive-size rectangle is convex CCW by construction.
    Ok(Polygon { vertices })
}

/// Separating axis test over both polygons' edge normals.
///
/// Boundary contact counts as intersection: a projection overlap of zero
/// width is not a separation.
pub fn polygons_intersect(p: &Polygon, q: &Polygon) -> bool {
    !has_separating_axis(p, q) && !has_separating_axis(q, p)
}

fn has_separating_axis(a: &Polygon, b: &Polygon) -> bool {
    for (v0, v1) in a.edges() {
        let axis = (v1 - v0).perp();
        let (min_a, max_a) = project(a, axis);
        let (min_b, max_b) = project(b, axis);
        if max_a < min_b || max_b < min_a {
            return true;
        }
    }
    false
}

fn project(p: &Polygon, axis: Vec2) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in p.vertices() {
        let t = v.dot(axis);
        lo = lo.min(t);
        hi = hi.max(t);
    }
    (lo, hi)
}

/// Minimum Euclidean distance between the polygon boundaries; zero when the
/// regions overlap or touch.
pub fn min_boundary_distance(p: &Polygon, q: &Polygon) -> f64 {
    if polygons_intersect(p, q) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (a0, a1) in p.edges() {
        for (b0, b1) in q.edges() {
            best = best.min(segment_distance(a0, a1, b0, b1));
        }
    }
    best
}

/// Does the polygon overlap the closed sector?
///
/// Exact decision: a polygon vertex inside the sector, the apex inside the
/// polygon, or a polygon edge crossing the sector boundary (two radial
/// segments plus the arc). For closed regions one of these holds whenever
/// the regions overlap.
pub fn polygon_intersects_sector(p: &Polygon, z: &SectorRegion) -> bool {
    if p.vertices().iter().any(|&v| z.contains(v)) {
        return true;
    }
    if p.contains(z.apex) {
        return true;
    }
    let ray_lo = z.apex + Vec2::from_angle(z.axis_heading - z.half_angle) * z.radius;
    let ray_hi = z.apex + Vec2::from_angle(z.axis_heading + z.half_angle) * z.radius;
    for (a, b) in p.edges() {
        if segments_intersect(a, b, z.apex, ray_lo) || segments_intersect(a, b, z.apex, ray_hi) {
            return true;
        }
        if segment_crosses_arc(a, b, z) {
            return true;
        }
    }
    false
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(a: Vec2, b: Vec2, p: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segment intersection, including touching endpoints and collinear
/// overlap.
fn segments_intersect(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2) -> bool {
    let d1 = orient(q0, q1, p0);
    let d2 = orient(q0, q1, p1);
    let d3 = orient(p0, p1, q0);
    let d4 = orient(p0, p1, q1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(q0, q1, p0))
        || (d2 == 0.0 && on_segment(q0, q1, p1))
        || (d3 == 0.0 && on_segment(p0, p1, q0))
        || (d4 == 0.0 && on_segment(p0, p1, q1))
}

fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segment_distance(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> f64 {
    if segments_intersect(a0, a1, b0, b1) {
        return 0.0;
    }
    // Non-crossing segments attain their minimum at an endpoint of one of them.
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

/// Does segment `ab` cross the sector's arc?
fn segment_crosses_arc(a: Vec2, b: Vec2, z: &SectorRegion) -> bool {
    let d = b - a;
    let f = a - z.apex;
    let qa = d.norm_sq();
    if qa == 0.0 {
        return false;
    }
    let qb = 2.0 * f.dot(d);
    let qc = f.norm_sq() - z.radius * z.radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return false;
    }
    let sq = disc.sqrt();
    for t in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
        if (0.0..=1.0).contains(&t) {
            let rel = (a + d * t) - z.apex;
            if angle_abs_diff(rel.y.atan2(rel.x), z.axis_heading) <= z.half_angle {
                return true;
            }
        }
    }
    false
}
