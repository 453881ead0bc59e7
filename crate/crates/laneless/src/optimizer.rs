//! Predictive layer: constant-velocity neighbor prediction, uniform
//! control-grid rollouts, five-term trajectory scoring, and minimum-cost
//! selection with a feedback fallback.
//!
//! Each candidate holds one `(delta, a)` pair constant over the horizon.
//! Stage costs are summed for steps `h = 1..=H` in a fixed order
//! (road, collision, clearance, feedback deviation, jerk), so the total is
//! reproducible bit-for-bit. Collision is the only hard term: it maps to
//! `+inf` and marks the candidate infeasible. If every candidate is
//! infeasible, the clamped feedback command is returned instead.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{min_boundary_distance, polygons_intersect, Polygon, Vec2};
use crate::perception::{NeighborObservation, RoadEdges, ZoneSets};
use crate::vehicle::{clamp_input, integrate, ControlInput, VehicleParams, VehicleState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CostWeights {
    /// Road-edge proximity weight.
    pub w_road: f64,
    /// Neighbor clearance weight.
    pub w_clearance: f64,
    /// Deviation from the feedback steering / acceleration commands.
    pub w_fb_delta: f64,
    pub w_fb_acc: f64,
    /// Step-to-step command change (jerk surrogate).
    pub w_jerk_delta: f64,
    pub w_jerk_acc: f64,
    /// Softening length (m) added to the road and clearance denominators.
    pub eps_cost: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        Self {
            w_road: 0.5,
            w_clearance: 1.0,
            w_fb_delta: 10.0,
            w_fb_acc: 1.0,
            w_jerk_delta: 5.0,
            w_jerk_acc: 0.5,
            eps_cost: 0.1,
        }
    }
}

impl CostWeights {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("w_road", self.w_road),
            ("w_clearance", self.w_clearance),
            ("w_fb_delta", self.w_fb_delta),
            ("w_fb_acc", self.w_fb_acc),
            ("w_jerk_delta", self.w_jerk_delta),
            ("w_jerk_acc", self.w_jerk_acc),
        ];
        for (name, w) in named {
            if w < 0.0 {
                return Err(Error::Config(format!(
                    "weights.{name} must be non-negative"
                )));
            }
        }
        if self.eps_cost <= 0.0 {
            return Err(Error::Config("weights.eps_cost must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    /// Steering samples across `[delta_min, delta_max]`, endpoints included.
    pub n_delta: usize,
    /// Acceleration samples across `[a_min, a_max]`, endpoints included.
    pub n_acc: usize,
    /// Prediction horizon H in steps.
    pub horizon_steps: usize,
    /// Controller sampling time (s).
    pub dt: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            n_delta: 9,
            n_acc: 7,
            horizon_steps: 10,
            dt: 0.1,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_delta < 2 || self.n_acc < 2 {
            return Err(Error::Config(
                "sampling grid needs at least 2 samples per axis".into(),
            ));
        }
        if self.horizon_steps < 1 {
            return Err(Error::Config(
                "sampling.horizon_steps must be at least 1".into(),
            ));
        }
        if self.dt <= 0.0 {
            return Err(Error::Config("sampling.dt must be positive".into()));
        }
        Ok(())
    }
}

/// One scored candidate: the constant input pair, its rollout, and its cost.
#[derive(Debug, Clone)]
pub struct ScoredTrajectory {
    pub delta: f64,
    pub a: f64,
    /// `horizon_steps + 1` states, index 0 being the current state.
    pub states: Vec<VehicleState>,
    pub cost: f64,
    pub feasible: bool,
}

/// Per-term sums over the horizon for the selected candidate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub road: f64,
    pub collision: f64,
    pub clearance: f64,
    pub feedback: f64,
    pub jerk: f64,
}

/// Outcome of one selection step.
#[derive(Debug, Clone)]
pub struct Decision {
    /// Command to apply; always within actuator bounds.
    pub command: ControlInput,
    /// Total cost of the winner; `+inf` when every candidate collided.
    pub cost: f64,
    /// False when the feedback fallback fired.
    pub feasible: bool,
    /// Term sums of the winner (zeros on fallback).
    pub breakdown: CostBreakdown,
    /// Canonical grid index of the winner, if any.
    pub grid_index: Option<usize>,
    /// The winning rollout; `None` on fallback.
    pub trajectory: Option<ScoredTrajectory>,
}

/// Propagate each observed footprint over the horizon under frozen speed
/// and heading. Index 0 is the current footprint; translation preserves
/// the rectangle exactly since the heading does not change.
pub fn predict_neighbors(obs: &[&NeighborObservation], cfg: &SamplingConfig) -> Vec<Vec<Polygon>> {
    obs.iter()
        .map(|o| {
            let delta = Vec2::new(
                o.state.v * o.state.phi.cos() * cfg.dt,
                o.state.v * o.state.phi.sin() * cfg.dt,
            );
            let mut seq = Vec::with_capacity(cfg.horizon_steps + 1);
            seq.push(o.footprint.clone());
            for h in 0..cfg.horizon_steps {
                let next = seq[h].translated(delta);
                seq.push(next);
            }
            seq
        })
        .collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + i as f64 * (hi - lo) / (n - 1) as f64
            }
        })
        .collect()
}

/// Cartesian product of uniformly spaced steering and acceleration samples,
/// steering-major ascending. The ordering is the canonical tie-break order.
pub fn sample_control_grid(p: &VehicleParams, cfg: &SamplingConfig) -> Vec<(f64, f64)> {
    let deltas = linspace(p.delta_min, p.delta_max, cfg.n_delta);
    let accs = linspace(p.a_min, p.a_max, cfg.n_acc);
    let mut grid = Vec::with_capacity(deltas.len() * accs.len());
    for &d in &deltas {
        for &a in &accs {
            grid.push((d, a));
        }
    }
    grid
}

/// Simulate the ego over the horizon with one constant input pair.
pub fn rollout(
    s0: &VehicleState,
    delta: f64,
    a: f64,
    cfg: &SamplingConfig,
    p: &VehicleParams,
) -> Vec<VehicleState> {
    let u = ControlInput { delta, a };
    let mut states = Vec::with_capacity(cfg.horizon_steps + 1);
    states.push(*s0);
    for h in 0..cfg.horizon_steps {
        let next = integrate(&states[h], &u, cfg.dt, p);
        states.push(next);
    }
    states
}

/// Inverse-square penalty toward both adjusted road edges. A denominator
/// at or past zero (the edge line minus the softening length) maps to
/// `+inf` — out-of-corridor candidates are effectively forbidden.
pub fn road_edge_cost(y: f64, y_left: f64, y_right: f64, w: &CostWeights) -> f64 {
    let term = |gap: f64| {
        if gap <= 0.0 {
            f64::INFINITY
        } else {
            w.w_road / (gap * gap)
        }
    };
    term(y - y_right + w.eps_cost) + term(y_left - y + w.eps_cost)
}

/// `+inf` if the ego footprint intersects any neighbor footprint at this
/// step; boundary contact counts.
pub fn collision_cost<'a>(ego: &Polygon, neighbors: impl IntoIterator<Item = &'a Polygon>) -> f64 {
    for n in neighbors {
        if polygons_intersect(ego, n) {
            return f64::INFINITY;
        }
    }
    0.0
}

/// Inverse-square proximity penalty summed over neighbors.
pub fn clearance_cost<'a>(
    ego: &Polygon,
    neighbors: impl IntoIterator<Item = &'a Polygon>,
    w: &CostWeights,
) -> f64 {
    let mut total = 0.0;
    for n in neighbors {
        let d = min_boundary_distance(ego, n) + w.eps_cost;
        total += w.w_clearance / (d * d);
    }
    total
}

/// Quadratic deviation from the feedback command plus quadratic change
/// from the previously applied command. Constant across the horizon, so
/// the stage sum multiplies it by the step count.
pub fn actuation_costs(
    delta_k: f64,
    a_k: f64,
    fb: ControlInput,
    prev: ControlInput,
    w: &CostWeights,
) -> f64 {
    let (fb_part, jerk_part) = actuation_parts(delta_k, a_k, fb, prev, w);
    fb_part + jerk_part
}

fn actuation_parts(
    delta_k: f64,
    a_k: f64,
    fb: ControlInput,
    prev: ControlInput,
    w: &CostWeights,
) -> (f64, f64) {
    let fb_part = w.w_fb_delta * (delta_k - fb.delta).powi(2) + w.w_fb_acc * (a_k - fb.a).powi(2);
    let jerk_part =
        w.w_jerk_delta * (delta_k - prev.delta).powi(2) + w.w_jerk_acc * (a_k - prev.a).powi(2);
    (fb_part, jerk_part)
}

/// Evaluate the full grid against frozen neighbor predictions and return
/// the minimum-cost command.
///
/// Ties on cost break toward the candidate closest to the feedback command
/// (squared distance over both axes), then toward the lower grid index, so
/// the result is deterministic regardless of evaluation order. When no
/// candidate has finite cost the clamped feedback command is returned with
/// `feasible = false`.
#[allow(clippy::too_many_arguments)]
pub fn select_control(
    s0: &VehicleState,
    zones: &ZoneSets,
    obs: &[NeighborObservation],
    edges: &RoadEdges,
    fb_cmd: ControlInput,
    prev_cmd: ControlInput,
    weights: &CostWeights,
    sampling: &SamplingConfig,
    params: &VehicleParams,
) -> Decision {
    let ids = zones.sides_union();
    let zone_obs: Vec<&NeighborObservation> = ids
        .iter()
        .filter_map(|&id| obs.iter().find(|o| o.id == id))
        .collect();
    let predictions = predict_neighbors(&zone_obs, sampling);
    let grid = sample_control_grid(params, sampling);

    struct Best {
        cost: f64,
        tie: f64,
        index: usize,
        command: ControlInput,
        breakdown: CostBreakdown,
        states: Vec<VehicleState>,
    }
    let mut best: Option<Best> = None;

    for (index, &(delta_k, a_k)) in grid.iter().enumerate() {
        let states = rollout(s0, delta_k, a_k, sampling, params);
        let (fb_part, jerk_part) = actuation_parts(delta_k, a_k, fb_cmd, prev_cmd, weights);
        let mut total = 0.0;
        let mut breakdown = CostBreakdown::default();
        for h in 1..=sampling.horizon_steps {
            let ego_fp = params.footprint(&states[h]);
            let rd = road_edge_cost(states[h].y, edges.y_left, edges.y_right, weights);
            let col = collision_cost(&ego_fp, predictions.iter().map(|seq| &seq[h]));
            let clr = clearance_cost(&ego_fp, predictions.iter().map(|seq| &seq[h]), weights);
            breakdown.road += rd;
            breakdown.collision += col;
            breakdown.clearance += clr;
            breakdown.feedback += fb_part;
            breakdown.jerk += jerk_part;
            total += rd + col + clr + fb_part + jerk_part;
            if total.is_infinite() {
                break;
            }
        }
        if total.is_finite() {
            let tie = (delta_k - fb_cmd.delta).powi(2) + (a_k - fb_cmd.a).powi(2);
            let better = match &best {
                None => true,
                Some(b) => total < b.cost || (total == b.cost && tie < b.tie),
            };
            if better {
                best = Some(Best {
                    cost: total,
                    tie,
                    index,
                    command: ControlInput {
                        delta: delta_k,
                        a: a_k,
                    },
                    breakdown,
                    states,
                });
            }
        }
    }

    match best {
        Some(b) => Decision {
            command: b.command,
            cost: b.cost,
            feasible: true,
            breakdown: b.breakdown,
            grid_index: Some(b.index),
            trajectory: Some(ScoredTrajectory {
                delta: b.command.delta,
                a: b.command.a,
                states: b.states,
                cost: b.cost,
                feasible: true,
            }),
        },
        None => Decision {
            command: clamp_input(&fb_cmd, params),
            cost: f64::INFINITY,
            feasible: false,
            breakdown: CostBreakdown::default(),
            grid_index: None,
            trajectory: None,
        },
    }
}
