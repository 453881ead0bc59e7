//! Closed-loop scenario engine: seeded spawning on a one-way corridor,
//! a simple non-reactive neighbor motion policy, the full
//! perceive → plan → feedback → optimize → actuate loop, and step-level
//! collision auditing.
//!
//! Runs are deterministic functions of the configuration: all randomness
//! flows from one ChaCha8 stream seeded with `seed` (a portable, fully
//! specified generator, so seeds reproduce across platforms). Collisions
//! are logged, never fatal, so post-collision behavior stays observable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feedback::{lateral_command, longitudinal_command, ControllerState, Gains};
use crate::geometry::{min_boundary_distance, Polygon};
use crate::log::{RunSummary, SimLog, StepRecord, LOG_SCHEMA_JSON};
use crate::optimizer::{select_control, CostWeights, Decision, SamplingConfig};
use crate::perception::{
    classify, detect_edges, NeighborObservation, RoadEdges, RoadGeometry, ZoneConfig, ZoneSets,
};
use crate::planner::{reference_lane, reference_velocity, PlannerConfig};
use crate::vehicle::{clamp_input, integrate, ControlInput, VehicleParams, VehicleState};

/// Explicit neighbor placement for scripted scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeighborSpawn {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
    pub speed: f64,
}

/// Everything a run depends on. Serializable so logs can echo it back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScenarioConfig {
    pub seed: u64,
    pub road_width: f64,
    pub road_length: f64,
    pub n_neighbors: usize,
    /// Nominal neighbor speed (m/s).
    pub neighbor_speed_nominal: f64,
    /// Half-width of the neighbor speed band around nominal (m/s).
    pub neighbor_speed_jitter: f64,
    /// Half-width of the neighbor heading band around zero (rad).
    pub neighbor_heading_jitter: f64,
    /// Run duration (s); steps = round(duration / sampling.dt).
    pub duration: f64,
    /// Ego start state; default is rear-center of the corridor at rest.
    pub ego_start: Option<VehicleState>,
    /// When set, replaces random spawning entirely.
    pub scripted_neighbors: Option<Vec<NeighborSpawn>>,
    /// Audit threshold on |v² tan(delta)/L| (m/s²); exceedance is flagged
    /// in the summary, never fatal.
    pub lat_accel_audit_threshold: f64,
    pub vehicle: VehicleParams,
    pub zones: ZoneConfig,
    pub planner: PlannerConfig,
    pub gains: Gains,
    pub weights: CostWeights,
    pub sampling: SamplingConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            road_width: 10.0,
            road_length: 200.0,
            n_neighbors: 10,
            neighbor_speed_nominal: 8.33,
            neighbor_speed_jitter: 0.5,
            neighbor_heading_jitter: 0.02,
            duration: 10.0,
            ego_start: None,
            scripted_neighbors: None,
            lat_accel_audit_threshold: 3.0,
            vehicle: VehicleParams::default(),
            zones: ZoneConfig::default(),
            planner: PlannerConfig::default(),
            gains: Gains::default(),
            weights: CostWeights::default(),
            sampling: SamplingConfig::default(),
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.road_width <= 0.0 || self.road_length <= 0.0 {
            return Err(Error::Config("road dimensions must be positive".into()));
        }
        if self.duration <= 0.0 {
            return Err(Error::Config("duration must be positive".into()));
        }
        if self.neighbor_speed_nominal < 0.0
            || self.neighbor_speed_jitter < 0.0
            || self.neighbor_heading_jitter < 0.0
        {
            return Err(Error::Config(
                "neighbor speed and jitter must be non-negative".into(),
            ));
        }
        if self.lat_accel_audit_threshold <= 0.0 {
            return Err(Error::Config(
                "lat_accel_audit_threshold must be positive".into(),
            ));
        }
        self.vehicle.validate()?;
        self.zones.validate()?;
        self.planner.validate()?;
        self.gains.validate()?;
        self.weights.validate()?;
        self.sampling.validate()?;
        Ok(())
    }

    pub fn road(&self) -> RoadGeometry {
        RoadGeometry {
            y_min: 0.0,
            y_max: self.road_width,
            length: self.road_length,
        }
    }

    /// Default ego start: rear-center of the corridor, at rest.
    pub fn ego_start_state(&self) -> VehicleState {
        self.ego_start.unwrap_or(VehicleState {
            x: 5.0_f64.min(0.5 * self.road_length),
            y: 0.5 * self.road_width,
            phi: 0.0,
            v: 0.0,
        })
    }
}

/// Everything the controller consumed and decided on one step, exposed to
/// observers for logging and independent re-evaluation.
pub struct StepContext<'a> {
    pub step: usize,
    pub t: f64,
    pub ego: &'a VehicleState,
    pub zones: &'a ZoneSets,
    pub observations: &'a [NeighborObservation],
    pub edges: &'a RoadEdges,
    pub fb_cmd: ControlInput,
    pub prev_cmd: ControlInput,
    pub decision: &'a Decision,
    pub applied: ControlInput,
}

const MAX_SPAWN_REJECTIONS: u32 = 10_000;
/// Per-step random-walk increment as a fraction of the jitter band.
const WALK_FRACTION: f64 = 0.2;

fn uniform_jitter(rng: &mut ChaCha8Rng, half_width: f64) -> f64 {
    if half_width > 0.0 {
        rng.gen_range(-half_width..=half_width)
    } else {
        0.0
    }
}

/// Lateral half-extent of a rotated rectangular footprint.
fn lateral_half_extent(p: &VehicleParams, phi: f64) -> f64 {
    0.5 * (p.body_length * phi.sin().abs() + p.body_width * phi.cos().abs())
}

/// Seeded rejection-sampled spawn: uniform positions in the corridor ahead
/// of and around the ego, headings and speeds jittered around nominal, no
/// footprint overlap with each other or with the ego.
pub fn spawn(cfg: &ScenarioConfig) -> Result<Vec<VehicleState>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    spawn_with_rng(cfg, &mut rng)
}

fn spawn_with_rng(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Vec<VehicleState>> {
    if let Some(list) = &cfg.scripted_neighbors {
        return Ok(list
            .iter()
            .map(|n| VehicleState::new(n.x, n.y, n.heading, n.speed))
            .collect());
    }
    let p = &cfg.vehicle;
    let ego = cfg.ego_start_state();
    let ego_fp = p.footprint(&ego);
    let he_max = lateral_half_extent(p, cfg.neighbor_heading_jitter);
    let x_lo = ego.x;
    let x_hi = (cfg.road_length - 0.5 * p.body_length).min(ego.x + 100.0);
    let y_lo = he_max;
    let y_hi = cfg.road_width - he_max;
    if x_hi <= x_lo || y_hi <= y_lo {
        return Err(Error::Config(
            "corridor too small for the spawn window; increase road dimensions".into(),
        ));
    }

    let mut placed: Vec<(VehicleState, Polygon)> = Vec::with_capacity(cfg.n_neighbors);
    for _ in 0..cfg.n_neighbors {
        let mut rejections = 0u32;
        loop {
            let x = rng.gen_range(x_lo..=x_hi);
            let y = rng.gen_range(y_lo..=y_hi);
            let heading = uniform_jitter(rng, cfg.neighbor_heading_jitter);
            let speed = (cfg.neighbor_speed_nominal
                + uniform_jitter(rng, cfg.neighbor_speed_jitter))
            .max(0.0);
            let state = VehicleState::new(x, y, heading, speed);
            let fp = p.footprint(&state);
            let clear = min_boundary_distance(&fp, &ego_fp) > 0.0
                && placed
                    .iter()
                    .all(|(_, q)| min_boundary_distance(&fp, q) > 0.0);
            if clear {
                placed.push((state, fp));
                break;
            }
            rejections += 1;
            if rejections >= MAX_SPAWN_REJECTIONS {
                return Err(Error::SpawnFailure {
                    attempts: rejections,
                });
            }
        }
    }
    Ok(placed.into_iter().map(|(s, _)| s).collect())
}

/// One step of the non-reactive neighbor policy: bounded random walks on
/// speed (within nominal ± jitter) and heading (within ± heading jitter),
/// constant-heading kinematics, lateral clamp to keep the footprint inside
/// the corridor. A clamped vehicle has its heading zeroed so it does not
/// keep pushing into the wall. Scripted neighbors skip the walk and hold
/// their scripted speed and heading.
pub fn neighbor_step(n: &VehicleState, cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> VehicleState {
    let p = &cfg.vehicle;
    let dt = cfg.sampling.dt;
    let (v, mut phi) = if cfg.scripted_neighbors.is_some() {
        (n.v, n.phi)
    } else {
        let v = (n.v + uniform_jitter(rng, WALK_FRACTION * cfg.neighbor_speed_jitter)).clamp(
            (cfg.neighbor_speed_nominal - cfg.neighbor_speed_jitter).max(0.0),
            cfg.neighbor_speed_nominal + cfg.neighbor_speed_jitter,
        );
        let phi = (n.phi + uniform_jitter(rng, WALK_FRACTION * cfg.neighbor_heading_jitter))
            .clamp(-cfg.neighbor_heading_jitter, cfg.neighbor_heading_jitter);
        (v, phi)
    };
    let x = n.x + v * phi.cos() * dt;
    let mut y = n.y + v * phi.sin() * dt;
    let he = lateral_half_extent(p, phi);
    let y_lo = he;
    let y_hi = cfg.road_width - he;
    if y < y_lo || y > y_hi {
        y = y.clamp(y_lo, y_hi);
        phi = 0.0;
    }
    VehicleState::new(x, y, phi, v)
}

/// Run a scenario to completion.
pub fn run(cfg: &ScenarioConfig) -> Result<SimLog> {
    run_with_observer(cfg, |_| {})
}

/// Run a scenario, calling `observer` once per step after the control
/// decision and before the state advances.
pub fn run_with_observer(
    cfg: &ScenarioConfig,
    mut observer: impl FnMut(&StepContext<'_>),
) -> Result<SimLog> {
    cfg.validate()?;
    let p = cfg.vehicle;
    let dt = cfg.sampling.dt;
    let road = cfg.road();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut neighbors = spawn_with_rng(cfg, &mut rng)?;
    let mut ego = cfg.ego_start_state();
    let mut ctrl = ControllerState::new();
    let mut prev_cmd = ControlInput::ZERO;

    let n_steps = (cfg.duration / dt).round().max(1.0) as usize;
    let mut records = Vec::with_capacity(n_steps);
    let mut min_clearance: Option<f64> = None;
    let mut fallback_steps = 0usize;
    let mut max_lat_accel = 0.0f64;

    for step in 0..n_steps {
        let t = step as f64 * dt;

        let triples: Vec<(usize, VehicleState, Polygon)> = neighbors
            .iter()
            .enumerate()
            .map(|(id, s)| (id, *s, p.footprint(s)))
            .collect();
        let (zones, observations) = classify(&ego, &triples, &cfg.zones);
        let edges = detect_edges(&ego, &road, cfg.planner.lateral_offset);
        let v_ref = reference_velocity(&zones, &observations, prev_cmd.delta, &cfg.planner, &p);
        let y_ref = reference_lane(&zones, &observations, &edges, &cfg.planner);

        let a_fb = longitudinal_command(ego.v, v_ref, &mut ctrl, &cfg.gains, dt);
        let delta_fb = lateral_command(&ego, y_ref, &mut ctrl, &cfg.gains, dt);
        let fb_cmd = ControlInput::new(delta_fb, a_fb);

        let decision = select_control(
            &ego,
            &zones,
            &observations,
            &edges,
            fb_cmd,
            prev_cmd,
            &cfg.weights,
            &cfg.sampling,
            &p,
        );
        let applied = clamp_input(&decision.command, &p);
        if !decision.feasible {
            fallback_steps += 1;
        }

        // ground-truth audit, independent of the optimizer's predictions
        let ego_fp = p.footprint(&ego);
        let mut step_clearance: Option<f64> = None;
        for (_, _, fp) in &triples {
            let d = min_boundary_distance(&ego_fp, fp);
            step_clearance = Some(step_clearance.map_or(d, |c| c.min(d)));
        }
        let collision = step_clearance.is_some_and(|d| d == 0.0);
        if let Some(d) = step_clearance {
            min_clearance = Some(min_clearance.map_or(d, |c| c.min(d)));
        }
        let lat_accel = (ego.v * ego.v * applied.delta.tan() / p.wheelbase).abs();
        max_lat_accel = max_lat_accel.max(lat_accel);

        records.push(StepRecord {
            t,
            ego,
            v_ref,
            y_ref,
            delta_fb,
            a_fb,
            delta_cmd: applied.delta,
            a_cmd: applied.a,
            cost: decision.feasible.then_some(decision.cost),
            feasible: decision.feasible,
            n_front: zones.front.len(),
            n_left: zones.left.len(),
            n_right: zones.right.len(),
            collision,
        });

        observer(&StepContext {
            step,
            t,
            ego: &ego,
            zones: &zones,
            observations: &observations,
            edges: &edges,
            fb_cmd,
            prev_cmd,
            decision: &decision,
            applied,
        });

        ego = integrate(&ego, &applied, dt, &p);
        for n in neighbors.iter_mut() {
            *n = neighbor_step(n, cfg, &mut rng);
        }
        prev_cmd = applied;
    }

    let collision_steps = records.iter().filter(|r| r.collision).count();
    let summary = RunSummary {
        steps: records.len(),
        collision_steps,
        collision_free: collision_steps == 0,
        min_clearance,
        v_min: records
            .iter()
            .map(|r| r.ego.v)
            .fold(f64::INFINITY, f64::min),
        v_max: records
            .iter()
            .map(|r| r.ego.v)
            .fold(f64::NEG_INFINITY, f64::max),
        a_cmd_min: records
            .iter()
            .map(|r| r.a_cmd)
            .fold(f64::INFINITY, f64::min),
        a_cmd_max: records
            .iter()
            .map(|r| r.a_cmd)
            .fold(f64::NEG_INFINITY, f64::max),
        delta_cmd_abs_max: records
            .iter()
            .map(|r| r.delta_cmd.abs())
            .fold(0.0, f64::max),
        fallback_steps,
        max_lat_accel,
        lat_accel_exceeded: max_lat_accel > cfg.lat_accel_audit_threshold,
    };

    Ok(SimLog {
        schema: LOG_SCHEMA_JSON.to_string(),
        config: cfg.clone(),
        records,
        summary,
    })
}
