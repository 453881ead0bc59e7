//! Empty-corridor baseline: with no traffic the ego accelerates to the
//! cruise reference and holds the corridor centerline.

use laneless::sim::{self, ScenarioConfig};

fn main() {
    let cfg = ScenarioConfig {
        n_neighbors: 0,
        seed: 1,
        ..ScenarioConfig::default()
    };
    let log = sim::run(&cfg).expect("empty-road scenario runs");

    println!("step  t[s]   x[m]    y[m]    v[m/s]  v_ref   y_ref");
    for r in log.records.iter().step_by(10) {
        println!(
            "{:>4}  {:>4.1}  {:>6.2}  {:>6.3}  {:>6.3}  {:>6.3}  {:>6.3}",
            (r.t / cfg.sampling.dt).round() as usize,
            r.t,
            r.ego.x,
            r.ego.y,
            r.ego.v,
            r.v_ref,
            r.y_ref
        );
    }
    let last = log.records.last().unwrap();
    println!();
    println!(
        "final speed {:.3} m/s (cruise {:.2}), centerline offset {:.4} m",
        last.ego.v,
        cfg.planner.cruise_speed,
        (last.ego.y - 0.5 * cfg.road_width).abs()
    );
}
