//! Dense seeded scenario: 10 neighbors with wide speed and heading jitter
//! on a 10 m corridor, and the ego launched at cruise speed right into the
//! pack, so it has to weave between slower vehicles.

use laneless::sim::{self, ScenarioConfig};
use laneless::vehicle::VehicleState;

fn main() {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let cfg = ScenarioConfig {
        seed,
        n_neighbors: 10,
        neighbor_speed_jitter: 3.0,
        neighbor_heading_jitter: 0.05,
        ego_start: Some(VehicleState::new(5.0, 5.0, 0.0, 8.33)),
        ..ScenarioConfig::default()
    };
    let log = sim::run(&cfg).expect("scenario runs");

    println!("t[s]   v[m/s]  y[m]    zones(F/L/R)  clearance-critical");
    for r in log.records.iter().step_by(5) {
        println!(
            "{:>4.1}  {:>6.3}  {:>6.3}   {}/{}/{}          {}",
            r.t,
            r.ego.v,
            r.ego.y,
            r.n_front,
            r.n_left,
            r.n_right,
            if r.collision { "COLLISION" } else { "" }
        );
    }
    let s = &log.summary;
    println!();
    println!("steps:            {}", s.steps);
    println!("collision steps:  {}", s.collision_steps);
    println!("min clearance:    {:?} m", s.min_clearance);
    println!("speed range:      {:.2} .. {:.2} m/s", s.v_min, s.v_max);
    println!(
        "accel range:      {:.2} .. {:.2} m/s^2",
        s.a_cmd_min, s.a_cmd_max
    );
    println!("fallback steps:   {}", s.fallback_steps);
    println!("peak lat accel:   {:.3} m/s^2", s.max_lat_accel);
}
