//! Zone-based perception: classifies neighbor footprints into frontal,
//! left, and right zones around the ego vehicle and measures road-edge
//! distances.
//!
//! Zones are regions fixed to the ego body frame: a narrow frontal sector
//! of radius `frontal_range` and two side half-disks of radius
//! `side_range`, split by the heading ray. Membership is decided by
//! polygon-region overlap, never by center-point tests, so a vehicle
//! straddling the heading ray lands in both side zones.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, polygon_intersects_sector, Polygon, SectorRegion};
use crate::vehicle::VehicleState;

/// Perception ranges. The frontal range must be strictly smaller than the
/// side range, which makes every frontal vehicle also a side-zone vehicle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ZoneConfig {
    /// Frontal zone radius d_F (m).
    pub frontal_range: f64,
    /// Side zone radius d_S (m).
    pub side_range: f64,
    /// Half-angle of the frontal sector (rad).
    pub frontal_half_angle: f64,
}

impl Default for ZoneConfig {
    fn default() -> Self {
        Self {
            frontal_range: 7.0,
            side_range: 12.0,
            frontal_half_angle: 10.0_f64.to_radians(),
        }
    }
}

impl ZoneConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.frontal_range > 0.0 && self.frontal_range < self.side_range) {
            return Err(Error::Config(
                "zones must satisfy 0 < frontal_range < side_range".into(),
            ));
        }
        if !(self.frontal_half_angle > 0.0 && self.frontal_half_angle <= FRAC_PI_2) {
            return Err(Error::Config(
                "zones.frontal_half_angle must be in (0, pi/2]".into(),
            ));
        }
        Ok(())
    }
}

/// Everything the planner needs to know about one neighbor.
#[derive(Debug, Clone)]
pub struct NeighborObservation {
    pub id: usize,
    pub state: VehicleState,
    pub footprint: Polygon,
    /// Euclidean center distance to the ego (m).
    pub distance: f64,
    /// Bearing of the neighbor center in the ego body frame (rad).
    pub bearing: f64,
    /// Global longitudinal gap `x_i - x_ego` (m); may be negative.
    pub gap_x: f64,
}

/// Zone membership by neighbor id. `front` is always a subset of
/// `left ∪ right` for valid configs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ZoneSets {
    pub front: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl ZoneSets {
    /// Sorted union of the two side zones (the optimizer's obstacle set).
    pub fn sides_union(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.left.iter().chain(self.right.iter()).copied().collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Straight one-way corridor: lateral bounds plus length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoadGeometry {
    pub y_min: f64,
    pub y_max: f64,
    pub length: f64,
}

/// Road edge lines adjusted inward by the lateral margin, with the ego's
/// shortest distances to them. Negative distances mean the adjusted edge
/// has been crossed; downstream costs handle that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoadEdges {
    pub y_left: f64,
    pub y_right: f64,
    pub d_left: f64,
    pub d_right: f64,
}

impl RoadEdges {
    pub fn violated(&self) -> bool {
        self.d_left < 0.0 || self.d_right < 0.0
    }
}

/// Classify neighbors into zones and produce per-neighbor observations.
///
/// Observations are returned for every input neighbor in input order; the
/// zone sets reference them by id.
pub fn classify(
    ego: &VehicleState,
    neighbors: &[(usize, VehicleState, Polygon)],
    cfg: &ZoneConfig,
) -> (ZoneSets, Vec<NeighborObservation>) {
    let apex = ego.position();
    let frontal = SectorRegion {
        apex,
        axis_heading: ego.phi,
        half_angle: cfg.frontal_half_angle,
        radius: cfg.frontal_range,
    };
    let left = SectorRegion {
        apex,
        axis_heading: normalize_angle(ego.phi + FRAC_PI_2),
        half_angle: FRAC_PI_2,
        radius: cfg.side_range,
    };
    let right = SectorRegion {
        apex,
        axis_heading: normalize_angle(ego.phi - FRAC_PI_2),
        half_angle: FRAC_PI_2,
        radius: cfg.side_range,
    };

    let mut zones = ZoneSets::default();
    let mut observations = Vec::with_capacity(neighbors.len());
    for (id, state, footprint) in neighbors {
        let rel = state.position() - apex;
        observations.push(NeighborObservation {
            id: *id,
            state: *state,
            footprint: footprint.clone(),
            distance: rel.norm(),
            bearing: normalize_angle(rel.y.atan2(rel.x) - ego.phi),
            gap_x: state.x - ego.x,
        });
        if polygon_intersects_sector(footprint, &frontal) {
            zones.front.push(*id);
        }
        if polygon_intersects_sector(footprint, &left) {
            zones.left.push(*id);
        }
        if polygon_intersects_sector(footprint, &right) {
            zones.right.push(*id);
        }
    }
    debug_assert!(
        zones
            .front
            .iter()
            .all(|id| zones.left.contains(id) || zones.right.contains(id)),
        "frontal zone must be covered by the side zones when d_F < d_S"
    );
    (zones, observations)
}

/// Measure the margin-adjusted road edges from the ego position.
pub fn detect_edges(ego: &VehicleState, road: &RoadGeometry, margin: f64) -> RoadEdges {
    let y_left = road.y_max - margin;
    let y_right = road.y_min + margin;
    RoadEdges {
        y_left,
        y_right,
        d_left: y_left - ego.y,
        d_right: ego.y - y_right,
    }
}
