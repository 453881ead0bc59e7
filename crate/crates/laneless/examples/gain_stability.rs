//! Gain stability: evaluate the linearized closed-loop lateral dynamics
//! across operating speeds, for the default gains and for a deliberately
//! broken set.

use laneless::feedback::{validate_gains, Gains};
use laneless::vehicle::VehicleParams;

fn report(label: &str, g: &Gains, p: &VehicleParams) {
    println!("{label}");
    println!("  v*      k1        k2        Re(l1)    Re(l2)    stable");
    let mut all = true;
    for i in 1..=10 {
        let v_star = 8.33 * i as f64 / 10.0;
        let v = validate_gains(g, v_star, p).unwrap();
        all &= v.stable;
        println!(
            "  {v_star:>5.2}  {:>8.4}  {:>8.4}  {:>8.4}  {:>8.4}  {}",
            v.k1, v.k2, v.eig_re[0], v.eig_re[1], v.stable
        );
    }
    println!("  verdict: {}", if all { "PASS" } else { "FAIL" });
    println!();
}

fn main() {
    let p = VehicleParams::default();
    report("default gains", &Gains::default(), &p);
    report(
        "negative heading gain (unstable)",
        &Gains {
            kphi_p: -1.0,
            kdy_p: 0.01,
            kdy_d: 0.0,
            kphi_d: 0.0,
            ..Gains::default()
        },
        &p,
    );
}
