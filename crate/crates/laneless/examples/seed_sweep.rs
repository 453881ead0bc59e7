//! Seed sweep: run many independent seeded scenarios in parallel and
//! aggregate the collision-free rate.

use laneless::cli::{cmd_sweep, SweepOptions};

fn main() {
    let out_dir = std::env::temp_dir().join("laneless_seed_sweep");
    let report = cmd_sweep(&SweepOptions {
        config: None,
        out_dir: out_dir.clone(),
        seeds: (1, 50),
        overrides: vec![
            // spread neighbor speeds so the ego has to work for it
            ("neighbor_speed_jitter".into(), "2.0".into()),
            ("neighbor_heading_jitter".into(), "0.04".into()),
        ],
        allow_unstable: false,
    })
    .expect("sweep runs");

    println!("seed  collisions  min_clearance[m]  fallbacks");
    for row in &report.rows {
        match &row.status {
            Ok(m) => println!(
                "{:>4}  {:>10}  {:>16.3}  {:>9}",
                row.seed,
                m.collisions,
                m.min_clearance.unwrap_or(f64::INFINITY),
                m.fallbacks
            ),
            Err(e) => println!("{:>4}  error: {e}", row.seed),
        }
    }
    println!();
    println!(
        "collision-free rate: {:.1}% over {} seeds",
        100.0 * report.collision_free_rate,
        report.rows.len()
    );
    println!("report written to {}", report.report_path.display());
}
