//! Kinematic bicycle model with forward-Euler discretization and actuator
//! limits.
//!
//! The same integrator drives both the simulated plant and the optimizer's
//! internal rollouts, so there is no model/plant mismatch by construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{normalize_angle, rect_footprint, Polygon, Vec2};

/// Pose and speed of one vehicle: global position, heading, longitudinal
/// velocity. Heading stays normalized to `(-pi, pi]`; `v` never goes
/// negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleState {
    pub x: f64,
    pub y: f64,
    pub phi: f64,
    pub v: f64,
}

impl VehicleState {
    pub fn new(x: f64, y: f64, phi: f64, v: f64) -> Self {
        Self { x, y, phi, v }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }
}

/// Steering angle (rad) and longitudinal acceleration (m/s²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlInput {
    pub delta: f64,
    pub a: f64,
}

impl ControlInput {
    pub fn new(delta: f64, a: f64) -> Self {
        Self { delta, a }
    }

    pub const ZERO: ControlInput = ControlInput { delta: 0.0, a: 0.0 };
}

/// Physical parameters and actuator bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VehicleParams {
    /// Wheelbase L (m).
    pub wheelbase: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub a_min: f64,
    pub a_max: f64,
    /// Lateral (centripetal) acceleration bound (m/s²).
    pub a_max_lat: f64,
    /// Footprint dimensions; the footprint is centered on the state position.
    pub body_length: f64,
    pub body_width: f64,
}

impl Default for VehicleParams {
    fn default() -> Self {
        Self {
            wheelbase: 2.5,
            delta_min: -std::f64::consts::PI / 12.0,
            delta_max: std::f64::consts::PI / 12.0,
            a_min: -3.0,
            a_max: 3.0,
            a_max_lat: 1.0,
            body_length: 4.5,
            body_width: 1.8,
        }
    }
}

impl VehicleParams {
    pub fn validate(&self) -> Result<()> {
        if self.wheelbase <= 0.0 {
            return Err(Error::Config("vehicle.wheelbase must be positive".into()));
        }
        if !(self.delta_min < 0.0 && 0.0 < self.delta_max) {
            return Err(Error::Config(
                "vehicle steering bounds must satisfy delta_min < 0 < delta_max".into(),
            ));
        }
        if !(self.a_min < 0.0 && 0.0 < self.a_max) {
            return Err(Error::Config(
                "vehicle acceleration bounds must satisfy a_min < 0 < a_max".into(),
            ));
        }
        if self.a_max_lat <= 0.0 {
            return Err(Error::Config("vehicle.a_max_lat must be positive".into()));
        }
        if self.body_length <= 0.0 || self.body_width <= 0.0 {
            return Err(Error::Config(
                "vehicle body dimensions must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Rectangular footprint of a vehicle in this state.
    pub fn footprint(&self, s: &VehicleState) -> Polygon {
        rect_footprint(s.position(), s.phi, self.body_length, self.body_width)
            .expect("validated body dimensions are positive")
    }
}

/// One forward-Euler step of the bicycle model.
///
/// `x' = x + v cos(phi) dt`, `y' = y + v sin(phi) dt`,
/// `phi' = phi + v/L tan(delta) dt` (renormalized),
/// `v' = max(0, v + a dt)`.
pub fn step(
    s: &VehicleState,
    u: &ControlInput,
    dt: f64,
    p: &VehicleParams,
) -> Result<VehicleState> {
    if dt <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "time step must be positive, got {dt}"
        )));
    }
    Ok(integrate(s, u, dt, p))
}

/// Unchecked integrator shared by `step` and the optimizer rollouts.
pub(crate) fn integrate(
    s: &VehicleState,
    u: &ControlInput,
    dt: f64,
    p: &VehicleParams,
) -> VehicleState {
    VehicleState {
        x: s.x + s.v * s.phi.cos() * dt,
        y: s.y + s.v * s.phi.sin() * dt,
        phi: normalize_angle(s.phi + s.v / p.wheelbase * u.delta.tan() * dt),
        v: (s.v + u.a * dt).max(0.0),
    }
}

/// Clip both components to their closed actuator intervals.
pub fn clamp_input(u: &ControlInput, p: &VehicleParams) -> ControlInput {
    ControlInput {
        delta: u.delta.clamp(p.delta_min, p.delta_max),
        a: u.a.clamp(p.a_min, p.a_max),
    }
}
