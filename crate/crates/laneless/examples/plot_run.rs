//! Run one scenario and emit the four profile SVGs (trajectory, velocity,
//! acceleration, heading) into ./plots.

use std::fs;

use laneless::cli::plot_set;
use laneless::sim::{self, ScenarioConfig};

fn main() {
    let cfg = ScenarioConfig {
        seed: 7,
        neighbor_speed_jitter: 2.0,
        ..ScenarioConfig::default()
    };
    let log = sim::run(&cfg).expect("scenario runs");

    let dir = std::path::Path::new("plots");
    fs::create_dir_all(dir).expect("create output directory");
    for (name, svg) in plot_set(&log) {
        let path = dir.join(name);
        fs::write(&path, svg).expect("write svg");
        println!("wrote {}", path.display());
    }
}
