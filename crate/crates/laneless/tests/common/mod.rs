//! Shared oracles for the integration suites: independent geometric
//! reference computations used to validate the analytic kernels.

use laneless::geometry::{Polygon, SectorRegion, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random strictly convex polygon: sorted random angles on a circle of
/// random radius and center.
pub fn random_convex(rng: &mut ChaCha8Rng) -> Polygon {
    loop {
        let n = rng.gen_range(3..=8);
        let cx = rng.gen_range(-10.0..10.0);
        let cy = rng.gen_range(-10.0..10.0);
        let r = rng.gen_range(0.3..4.0);
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..2.0 * std::f64::consts::PI))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let verts: Vec<Vec2> = angles
            .iter()
            .map(|&a| Vec2::new(cx + r * a.cos(), cy + r * a.sin()))
            .collect();
        if let Ok(p) = Polygon::new(verts) {
            return p;
        }
    }
}

/// Exact point-to-segment distance, written independently of the library.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len_sq = abx * abx + aby * aby;
    if len_sq == 0.0 {
        return ((p.x - a.x).powi(2) + (p.y - a.y).powi(2)).sqrt();
    }
    let mut t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len_sq;
    t = t.clamp(0.0, 1.0);
    let qx = a.x + t * abx;
    let qy = a.y + t * aby;
    ((p.x - qx).powi(2) + (p.y - qy).powi(2)).sqrt()
}

/// Dense-sampling distance oracle: walk `samples` points along the
/// boundary of `p`, take the exact distance to each edge of `q`.
pub fn sampled_boundary_distance(p: &Polygon, q: &Polygon, samples: usize) -> f64 {
    let perimeter: f64 = p
        .edges()
        .map(|(a, b)| ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt())
        .sum();
    let spacing = perimeter / samples as f64;
    let mut best = f64::INFINITY;
    for (a, b) in p.edges() {
        let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        let n = (len / spacing).ceil().max(1.0) as usize;
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let pt = Vec2::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
            for (c, d) in q.edges() {
                best = best.min(point_segment_distance(pt, c, d));
            }
        }
    }
    best
}

/// Independent point-in-convex-polygon test (half-plane signs).
pub fn point_in_polygon(p: &Polygon, pt: Vec2) -> bool {
    p.edges()
        .all(|(a, b)| (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x) >= 0.0)
}

/// Independent sector membership test.
pub fn point_in_sector(z: &SectorRegion, pt: Vec2) -> bool {
    let dx = pt.x - z.apex.x;
    let dy = pt.y - z.apex.y;
    let d2 = dx * dx + dy * dy;
    if d2 > z.radius * z.radius {
        return false;
    }
    if d2 == 0.0 {
        return true;
    }
    let bearing = dy.atan2(dx);
    let mut diff = (bearing - z.axis_heading) % (2.0 * std::f64::consts::PI);
    if diff > std::f64::consts::PI {
        diff -= 2.0 * std::f64::consts::PI;
    }
    if diff < -std::f64::consts::PI {
        diff += 2.0 * std::f64::consts::PI;
    }
    diff.abs() <= z.half_angle
}

/// Draw up to `want` points uniformly inside the polygon (bounding-box
/// rejection).
pub fn sample_inside(p: &Polygon, want: usize, rng: &mut ChaCha8Rng) -> Vec<Vec2> {
    let xs: Vec<f64> = p.vertices().iter().map(|v| v.x).collect();
    let ys: Vec<f64> = p.vertices().iter().map(|v| v.y).collect();
    let x0 = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let x1 = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let y0 = ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let y1 = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out = Vec::with_capacity(want);
    let mut attempts = 0usize;
    while out.len() < want && attempts < want * 40 {
        attempts += 1;
        let pt = Vec2::new(rng.gen_range(x0..=x1), rng.gen_range(y0..=y1));
        if point_in_polygon(p, pt) {
            out.push(pt);
        }
    }
    out
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
