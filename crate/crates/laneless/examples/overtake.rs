//! Scripted overtake: a slow vehicle ahead pulls the braking reference
//! down while the virtual lane shifts around it, so the ego swings out,
//! passes, and returns toward the center.

use laneless::sim::{self, NeighborSpawn, ScenarioConfig};
use laneless::vehicle::VehicleState;

fn main() {
    let cfg = ScenarioConfig {
        duration: 14.0,
        scripted_neighbors: Some(vec![NeighborSpawn {
            x: 30.0,
            y: 5.0,
            heading: 0.0,
            speed: 3.0,
        }]),
        ego_start: Some(VehicleState::new(5.0, 5.0, 0.0, 8.0)),
        ..ScenarioConfig::default()
    };
    let log = sim::run(&cfg).expect("scenario runs");

    println!("t[s]   ego x   ego y   v[m/s]  y_ref   front-zone");
    for r in log.records.iter().step_by(5) {
        println!(
            "{:>4.1}  {:>6.2}  {:>6.3}  {:>6.3}  {:>6.3}  {}",
            r.t,
            r.ego.x,
            r.ego.y,
            r.ego.v,
            r.y_ref,
            if r.n_front > 0 { "occupied" } else { "clear" }
        );
    }
    let s = &log.summary;
    let max_offset = log
        .records
        .iter()
        .map(|r| (r.ego.y - 5.0).abs())
        .fold(0.0f64, f64::max);
    println!();
    println!("collision-free:      {}", s.collision_free);
    println!("min clearance:       {:?} m", s.min_clearance);
    println!("max lateral offset:  {max_offset:.3} m from the slow vehicle's lane");
}
