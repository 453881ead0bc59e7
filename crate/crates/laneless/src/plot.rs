//! Minimal self-contained SVG plots of a run log: trajectory, velocity,
//! acceleration, and heading profiles.
//!
//! Output is a single `<svg>` document with inline styling and no external
//! assets. All coordinates are formatted with fixed precision so the same
//! log always produces the same bytes.

use std::fmt::Write as _;

use crate::log::SimLog;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 48.0;
const TICKS: usize = 5;

struct Axis {
    min: f64,
    max: f64,
}

impl Axis {
    fn from_values(values: impl Iterator<Item = f64>) -> Axis {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Axis { min: 0.0, max: 1.0 };
        }
        if hi - lo < 1e-9 {
            // degenerate range: pad symmetrically
            lo -= 1.0;
            hi += 1.0;
        }
        let pad = 0.05 * (hi - lo);
        Axis {
            min: lo - pad,
            max: hi + pad,
        }
    }

    fn to_px(&self, v: f64, px_lo: f64, px_hi: f64) -> f64 {
        px_lo + (v - self.min) / (self.max - self.min) * (px_hi - px_lo)
    }
}

struct Chart<'a> {
    title: &'a str,
    x_label: &'a str,
    y_label: &'a str,
    points: Vec<(f64, f64)>,
    /// Labeled points drawn as circles along the series.
    markers: Vec<(f64, f64, String)>,
    /// Horizontal guide lines in data coordinates (dashed).
    guides_y: Vec<f64>,
}

impl Chart<'_> {
    fn render(&self) -> String {
        let x_axis = Axis::from_values(self.points.iter().map(|p| p.0));
        let y_axis = Axis::from_values(
            self.points
                .iter()
                .map(|p| p.1)
                .chain(self.guides_y.iter().copied()),
        );
        let (px0, px1) = (MARGIN_L, WIDTH - MARGIN_R);
        let (py0, py1) = (HEIGHT - MARGIN_B, MARGIN_T); // y grows upward

        let mut svg = String::with_capacity(8192);
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(
            svg,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
            0.5 * WIDTH,
            self.title
        );

        // axes
        let _ = writeln!(
            svg,
            r#"<line x1="{px0:.1}" y1="{py0:.1}" x2="{px1:.1}" y2="{py0:.1}" stroke="black" stroke-width="1"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{px0:.1}" y1="{py0:.1}" x2="{px0:.1}" y2="{py1:.1}" stroke="black" stroke-width="1"/>"#
        );

        // ticks and labels
        for i in 0..=TICKS {
            let f = i as f64 / TICKS as f64;
            let xv = x_axis.min + f * (x_axis.max - x_axis.min);
            let xp = x_axis.to_px(xv, px0, px1);
            let _ = writeln!(
                svg,
                r#"<line x1="{xp:.1}" y1="{py0:.1}" x2="{xp:.1}" y2="{:.1}" stroke="black" stroke-width="1"/>"#,
                py0 + 4.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{xp:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{xv:.2}</text>"#,
                py0 + 18.0
            );
            let yv = y_axis.min + f * (y_axis.max - y_axis.min);
            let yp = y_axis.to_px(yv, py0, py1);
            let _ = writeln!(
                svg,
                r#"<line x1="{:.1}" y1="{yp:.1}" x2="{px0:.1}" y2="{yp:.1}" stroke="black" stroke-width="1"/>"#,
                px0 - 4.0
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{yv:.2}</text>"#,
                px0 - 8.0,
                yp + 4.0
            );
        }

        // axis labels
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
            0.5 * (px0 + px1),
            HEIGHT - 10.0,
            self.x_label
        );
        let _ = writeln!(
            svg,
            r#"<text x="16" y="{:.1}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            0.5 * (py0 + py1),
            0.5 * (py0 + py1),
            self.y_label
        );

        // guide lines
        for &gy in &self.guides_y {
            let yp = y_axis.to_px(gy, py0, py1);
            let _ = writeln!(
                svg,
                r#"<line x1="{px0:.1}" y1="{yp:.1}" x2="{px1:.1}" y2="{yp:.1}" stroke="gray" stroke-width="1" stroke-dasharray="6 4"/>"#
            );
        }

        // the series
        let mut path = String::with_capacity(self.points.len() * 16);
        for (x, y) in &self.points {
            let xp = x_axis.to_px(*x, px0, px1);
            let yp = y_axis.to_px(*y, py0, py1);
            let _ = write!(path, "{xp:.3},{yp:.3} ");
        }
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f6fb2" stroke-width="2"/>"##,
            path.trim_end()
        );

        // markers
        for (x, y, label) in &self.markers {
            let xp = x_axis.to_px(*x, px0, px1);
            let yp = y_axis.to_px(*y, py0, py1);
            let _ = writeln!(
                svg,
                r##"<circle cx="{xp:.3}" cy="{yp:.3}" r="3.5" fill="#c23b22"/>"##
            );
            let _ = writeln!(
                svg,
                r#"<text x="{xp:.3}" y="{:.3}" font-family="sans-serif" font-size="10" text-anchor="middle">{label}</text>"#,
                yp - 7.0
            );
        }

        svg.push_str("</svg>\n");
        svg
    }
}

/// Time markers along the trajectory every this many seconds.
const MARKER_INTERVAL: f64 = 2.0;

/// Ego path in the plane, with the corridor edges and periodic time markers.
pub fn trajectory_svg(log: &SimLog) -> String {
    let points: Vec<(f64, f64)> = log.records.iter().map(|r| (r.ego.x, r.ego.y)).collect();
    let mut markers = Vec::new();
    let mut next_mark = 0.0;
    for r in &log.records {
        if r.t + 1e-9 >= next_mark {
            markers.push((r.ego.x, r.ego.y, format!("t={:.0}s", r.t)));
            next_mark += MARKER_INTERVAL;
        }
    }
    Chart {
        title: "Ego trajectory",
        x_label: "x [m]",
        y_label: "y [m]",
        points,
        markers,
        guides_y: vec![0.0, log.config.road_width],
    }
    .render()
}

/// Longitudinal velocity profile with the cruise speed as a guide.
pub fn velocity_svg(log: &SimLog) -> String {
    Chart {
        title: "Longitudinal velocity",
        x_label: "time [s]",
        y_label: "v [m/s]",
        points: log.records.iter().map(|r| (r.t, r.ego.v)).collect(),
        markers: Vec::new(),
        guides_y: vec![log.config.planner.cruise_speed],
    }
    .render()
}

/// Applied longitudinal acceleration profile with the actuator bounds.
pub fn acceleration_svg(log: &SimLog) -> String {
    Chart {
        title: "Longitudinal acceleration",
        x_label: "time [s]",
        y_label: "a [m/s^2]",
        points: log.records.iter().map(|r| (r.t, r.a_cmd)).collect(),
        markers: Vec::new(),
        guides_y: vec![log.config.vehicle.a_min, log.config.vehicle.a_max],
    }
    .render()
}

/// Heading angle profile.
pub fn heading_svg(log: &SimLog) -> String {
    Chart {
        title: "Heading angle",
        x_label: "time [s]",
        y_label: "phi [rad]",
        points: log.records.iter().map(|r| (r.t, r.ego.phi)).collect(),
        markers: Vec::new(),
        guides_y: vec![0.0],
    }
    .render()
}
