//! Deterministic 2-D lane-less traffic simulation with a hybrid
//! feedback-predictive ego-vehicle controller.
//!
//! The control stack mirrors how it runs, module by module:
//!
//! - [`geometry`] — convex polygon overlap, boundary distances, sector
//!   membership; the kernel under perception and cost evaluation.
//! - [`vehicle`] — kinematic bicycle model, forward-Euler step, actuator
//!   clamping.
//! - [`perception`] — frontal/left/right zone classification of neighbor
//!   footprints and road-edge measurement.
//! - [`planner`] — reference velocity (soft minimum of cruise, braking,
//!   and curvature speeds) and the virtual reference lane.
//! - [`feedback`] — PD longitudinal and lateral laws plus a linearized
//!   gain-stability validator.
//! - [`optimizer`] — constant-velocity neighbor prediction, control-grid
//!   rollouts, five-term cost, minimum-cost selection with feedback
//!   fallback.
//! - [`sim`] — seeded closed-loop scenario engine with ground-truth
//!   collision auditing.
//! - [`log`] / [`plot`] — structured run logs (CSV, JSON) and
//!   self-contained SVG profile plots.
//! - [`cli`] — run / sweep / validate-gains drivers used by the `laneless`
//!   binary.
//!
//! # Quick start
//!
//! ```
//! use laneless::sim::{self, ScenarioConfig};
//!
//! let cfg = ScenarioConfig { seed: 7, ..ScenarioConfig::default() };
//! let log = sim::run(&cfg).unwrap();
//! assert_eq!(log.records.len(), 100);
//! println!("collision-free: {}", log.summary.collision_free);
//! ```
//!
//! # Runnable examples
//!
//! One example per major capability, under `examples/`:
//!
//! ```text
//! cargo run --release -p laneless --example empty_road      # convergence to cruise + centerline
//! cargo run --release -p laneless --example dense_traffic   # 10-neighbor seeded scenario
//! cargo run --release -p laneless --example overtake        # virtual lane steering around a slow leader
//! cargo run --release -p laneless --example boxed_in        # feedback fallback when every rollout collides
//! cargo run --release -p laneless --example gain_stability  # stability validator across speeds
//! cargo run --release -p laneless --example seed_sweep      # collision-free rate over many seeds
//! cargo run --release -p laneless --example plot_run        # emit the four profile SVGs
//! ```
//!
//! Every run is a pure function of its [`sim::ScenarioConfig`], including
//! the seed; logs and plots are byte-reproducible.

pub mod cli;
pub mod error;
pub mod feedback;
pub mod geometry;
pub mod log;
pub mod optimizer;
pub mod perception;
pub mod planner;
pub mod plot;
pub mod sim;
pub mod vehicle;

pub use error::{Error, Result};
