//! Reference planning: target velocity and virtual reference lane.
//!
//! The velocity reference blends three candidate speeds with a smooth
//! minimum: the cruise speed, a braking speed derived from the stopping
//! distance to frontal traffic, and a curvature speed that keeps
//! centripetal acceleration within bounds. The lateral reference is a
//! virtual lane center synthesized from inverse-distance-weighted neighbor
//! positions and the road edges; it replaces lane markings, which do not
//! exist in this setting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perception::{NeighborObservation, RoadEdges, ZoneSets};
use crate::vehicle::VehicleParams;

/// Floor applied to every inverse-distance weight denominator so a
/// pathological zero-distance neighbor cannot blow up the averages.
pub const MIN_WEIGHT_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlannerConfig {
    /// Nominal cruise speed v_N (m/s).
    pub cruise_speed: f64,
    /// Stand-still headway clearance (m) subtracted before the braking
    /// distance relation.
    pub standstill_clearance: f64,
    /// Lateral offset d_o (m): half nominal body width plus side clearance.
    /// Also used as the road-edge margin.
    pub lateral_offset: f64,
    /// Smooth-minimum parameter; must be negative.
    pub smin_eps: f64,
    /// Offset added to |delta| in the curvature speed to avoid the
    /// straight-driving singularity; must be positive.
    pub curvature_eps: f64,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            cruise_speed: 8.33,
            standstill_clearance: 2.0,
            lateral_offset: 1.25,
            smin_eps: -0.5,
            curvature_eps: 1e-3,
        }
    }
}

impl PlannerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.cruise_speed <= 0.0 {
            return Err(Error::Config(
                "planner.cruise_speed must be positive".into(),
            ));
        }
        if self.standstill_clearance < 0.0 {
            return Err(Error::Config(
                "planner.standstill_clearance must be non-negative".into(),
            ));
        }
        if self.lateral_offset <= 0.0 {
            return Err(Error::Config(
                "planner.lateral_offset must be positive".into(),
            ));
        }
        if self.smin_eps >= 0.0 {
            return Err(Error::Config("planner.smin_eps must be negative".into()));
        }
        if self.curvature_eps <= 0.0 {
            return Err(Error::Config(
                "planner.curvature_eps must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Planner output pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub v_ref: f64,
    pub y_ref: f64,
}

/// Inverse-distance-weighted average of the longitudinal gaps to frontal
/// vehicles. Panics if `front` is empty; callers branch on an empty
/// frontal zone first.
pub fn weighted_headway(front: &[&NeighborObservation]) -> f64 {
    assert!(
        !front.is_empty(),
        "weighted_headway needs at least one frontal vehicle"
    );
    let mut num = 0.0;
    let mut den = 0.0;
    for o in front {
        let w = 1.0 / o.distance.max(MIN_WEIGHT_DISTANCE);
        num += w * o.gap_x;
        den += w;
    }
    num / den
}

/// Speed from which the vehicle can stop within `dx_avg` minus the
/// stand-still clearance at full braking: `sqrt(2 |a_min| max(0, ...))`.
pub fn braking_velocity(dx_avg: f64, cfg: &PlannerConfig, p: &VehicleParams) -> f64 {
    (2.0 * p.a_min.abs() * (dx_avg - cfg.standstill_clearance).max(0.0)).sqrt()
}

/// Speed cap keeping centripetal acceleration `v² tan(delta)/L` within
/// `a_max_lat` at the given steering angle.
pub fn curvature_velocity(delta: f64, cfg: &PlannerConfig, p: &VehicleParams) -> f64 {
    let angle = (delta.abs() + cfg.curvature_eps).min(std::f64::consts::FRAC_PI_2 - 1e-9);
    (p.a_max_lat * p.wheelbase / angle.tan()).sqrt()
}

/// Log-sum-exp soft minimum with negative smoothing parameter:
/// `eps * ln(sum exp(x_i / eps))`.
///
/// Evaluated with a min-shift so the exponents are all non-positive; the
/// result is sandwiched in `[min + eps ln N, min]` and converges to the
/// exact minimum as `eps -> 0⁻`.
pub fn smooth_min(values: &[f64], eps: f64) -> Result<f64> {
    if eps >= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "smoothing parameter must be negative, got {eps}"
        )));
    }
    if values.is_empty() {
        return Err(Error::InvalidArgument("smooth_min of an empty set".into()));
    }
    let m = values.iter().copied().fold(f64::INFINITY, f64::min);
    let sum: f64 = values.iter().map(|&x| ((x - m) / eps).exp()).sum();
    Ok(m + eps * sum.ln())
}

/// Final velocity reference: soft minimum of cruise and curvature speeds,
/// plus the braking speed when frontal traffic exists; floored at zero.
///
/// `prev_delta` is the steering command applied on the previous step; the
/// current command does not exist yet when the reference is formed.
pub fn reference_velocity(
    zones: &ZoneSets,
    obs: &[NeighborObservation],
    prev_delta: f64,
    cfg: &PlannerConfig,
    p: &VehicleParams,
) -> f64 {
    let v_c = curvature_velocity(prev_delta, cfg, p);
    let v = if zones.front.is_empty() {
        smooth_min(&[cfg.cruise_speed, v_c], cfg.smin_eps)
    } else {
        let front: Vec<&NeighborObservation> = zones
            .front
            .iter()
            .filter_map(|&id| obs.iter().find(|o| o.id == id))
            .collect();
        let dx_avg = weighted_headway(&front);
        let v_b = braking_velocity(dx_avg, cfg, p);
        smooth_min(&[cfg.cruise_speed, v_c, v_b], cfg.smin_eps)
    }
    .expect("smin_eps is negative for validated configs");
    v.max(0.0)
}

/// Virtual reference lane: mean of the left and right weighted averages.
///
/// Left-zone neighbors contribute `y_i - d_o` (their right flank, from the
/// ego's perspective), right-zone neighbors `y_i + d_o`, each weighted by
/// inverse center distance; the adjusted road edges contribute with
/// inverse edge distance. Missing neighbors degrade gracefully to the edge
/// terms alone.
pub fn reference_lane(
    zones: &ZoneSets,
    obs: &[NeighborObservation],
    edges: &RoadEdges,
    cfg: &PlannerConfig,
) -> f64 {
    let side_average = |ids: &[usize], offset_sign: f64, edge_y: f64, edge_d: f64| {
        let mut num = 0.0;
        let mut den = 0.0;
        for id in ids {
            if let Some(o) = obs.iter().find(|o| o.id == *id) {
                let w = 1.0 / o.distance.max(MIN_WEIGHT_DISTANCE);
                num += w * (o.state.y + offset_sign * cfg.lateral_offset);
                den += w;
            }
        }
        let w_edge = 1.0 / edge_d.max(MIN_WEIGHT_DISTANCE);
        num += w_edge * edge_y;
        den += w_edge;
        num / den
    };
    let y_left_avg = side_average(&zones.left, -1.0, edges.y_left, edges.d_left);
    let y_right_avg = side_average(&zones.right, 1.0, edges.y_right, edges.d_right);
    0.5 * (y_left_avg + y_right_avg)
}

/// Convenience wrapper producing both references in one call.
pub fn plan(
    zones: &ZoneSets,
    obs: &[NeighborObservation],
    edges: &RoadEdges,
    prev_delta: f64,
    cfg: &PlannerConfig,
    p: &VehicleParams,
) -> Reference {
    Reference {
        v_ref: reference_velocity(zones, obs, prev_delta, cfg, p),
        y_ref: reference_lane(zones, obs, edges, cfg),
    }
}
