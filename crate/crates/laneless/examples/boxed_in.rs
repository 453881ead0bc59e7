//! Boxed-in scenario: a stationary wall ahead, cars on both flanks, and a
//! fast vehicle closing from behind. Every sampled rollout collides within
//! the horizon, so the optimizer falls back to the clamped feedback
//! command.

use laneless::sim::{self, NeighborSpawn, ScenarioConfig};
use laneless::vehicle::VehicleState;

fn main() {
    let cfg = ScenarioConfig {
        duration: 2.0,
        scripted_neighbors: Some(vec![
            // wall ahead spanning the corridor
            NeighborSpawn {
                x: 11.0,
                y: 2.0,
                heading: 0.0,
                speed: 0.0,
            },
            NeighborSpawn {
                x: 11.0,
                y: 5.0,
                heading: 0.0,
                speed: 0.0,
            },
            NeighborSpawn {
                x: 11.0,
                y: 8.0,
                heading: 0.0,
                speed: 0.0,
            },
            // flankers
            NeighborSpawn {
                x: 5.0,
                y: 7.5,
                heading: 0.0,
                speed: 0.0,
            },
            NeighborSpawn {
                x: 5.0,
                y: 2.5,
                heading: 0.0,
                speed: 0.0,
            },
            // chaser closing fast from behind
            NeighborSpawn {
                x: -2.0,
                y: 5.0,
                heading: 0.0,
                speed: 10.0,
            },
        ]),
        ego_start: Some(VehicleState::new(5.0, 5.0, 0.0, 0.0)),
        ..ScenarioConfig::default()
    };
    let log = sim::run(&cfg).expect("scenario runs");

    println!("t[s]   feasible  delta_cmd  a_cmd    delta_fb   a_fb_clamped");
    for r in &log.records {
        let a_fb_clamped = r.a_fb.clamp(cfg.vehicle.a_min, cfg.vehicle.a_max);
        let d_fb_clamped = r
            .delta_fb
            .clamp(cfg.vehicle.delta_min, cfg.vehicle.delta_max);
        println!(
            "{:>4.1}   {:>5}    {:>8.4}  {:>6.3}   {:>8.4}  {:>6.3}{}",
            r.t,
            r.feasible,
            r.delta_cmd,
            r.a_cmd,
            d_fb_clamped,
            a_fb_clamped,
            if !r.feasible { "   << fallback" } else { "" }
        );
    }
    println!();
    println!(
        "fallback fired on {} of {} steps",
        log.summary.fallback_steps, log.summary.steps
    );
}
