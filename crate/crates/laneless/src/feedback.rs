//! PD feedback layer and the executable gain-stability validator.
//!
//! Longitudinal control is a PD law on the velocity error; lateral control
//! is a PD law on the lookahead lateral error and the heading error toward
//! a lookahead-projected reference heading. Outputs are intentionally left
//! unclamped: clamping happens once at actuation so the predictive layer
//! can compare candidates against the raw feedback intent.
//!
//! The validator linearizes the lateral loop around straight driving at a
//! constant speed and checks the closed-loop eigenvalues; it is a local
//! result only, valid for small perturbations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vehicle::{VehicleParams, VehicleState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Gains {
    /// Longitudinal proportional / derivative gains.
    pub kv_p: f64,
    pub kv_d: f64,
    /// Lateral-offset proportional / derivative gains.
    pub kdy_p: f64,
    pub kdy_d: f64,
    /// Heading proportional / derivative gains.
    pub kphi_p: f64,
    pub kphi_d: f64,
    /// Lookahead distance d_LA (m).
    pub lookahead: f64,
}

impl Default for Gains {
    fn default() -> Self {
        Self {
            kv_p: 1.0,
            kv_d: 0.1,
            kdy_p: 0.2,
            kdy_d: 0.05,
            kphi_p: 1.0,
            kphi_d: 0.1,
            lookahead: 5.0,
        }
    }
}

impl Gains {
    pub fn validate(&self) -> Result<()> {
        if self.lookahead <= 0.0 {
            return Err(Error::Config("gains.lookahead must be positive".into()));
        }
        Ok(())
    }
}

/// Previous-step errors for the backward-difference derivative terms.
/// Derivatives are zero on the first step for each channel.
#[derive(Debug, Clone, Default)]
pub struct ControllerState {
    prev_e_v: Option<f64>,
    prev_e_dy: Option<f64>,
    prev_e_phi: Option<f64>,
}

impl ControllerState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

fn backward_difference(e: f64, prev: &mut Option<f64>, dt: f64) -> f64 {
    let de = match *prev {
        Some(p) => (e - p) / dt,
        None => 0.0,
    };
    *prev = Some(e);
    de
}

/// PD acceleration command on the velocity error; unclamped.
pub fn longitudinal_command(
    v: f64,
    v_ref: f64,
    st: &mut ControllerState,
    g: &Gains,
    dt: f64,
) -> f64 {
    debug_assert!(dt > 0.0);
    let e = v_ref - v;
    let de = backward_difference(e, &mut st.prev_e_v, dt);
    g.kv_p * e + g.kv_d * de
}

/// Heading is clamped inside the lookahead projection so its cosine stays
/// positive and bounded away from zero.
const HEADING_CLAMP: f64 = std::f64::consts::FRAC_PI_2 - 0.01;

/// PD steering command from lookahead lateral error and heading error;
/// unclamped.
pub fn lateral_command(
    s: &VehicleState,
    y_ref: f64,
    st: &mut ControllerState,
    g: &Gains,
    dt: f64,
) -> f64 {
    debug_assert!(dt > 0.0);
    let phi_c = s.phi.clamp(-HEADING_CLAMP, HEADING_CLAMP);
    let phi_ref = ((y_ref - s.y) / (g.lookahead * phi_c.cos())).atan();
    let e_dy = y_ref - (s.y + g.lookahead * s.phi.sin());
    let e_phi = phi_ref - s.phi;
    let de_dy = backward_difference(e_dy, &mut st.prev_e_dy, dt);
    let de_phi = backward_difference(e_phi, &mut st.prev_e_phi, dt);
    g.kdy_p * e_dy + g.kdy_d * de_dy + g.kphi_p * e_phi + g.kphi_d * de_phi
}

/// Lookahead lateral error (the quantity the decay criteria are stated in).
pub fn lateral_error(s: &VehicleState, y_ref: f64, g: &Gains) -> f64 {
    y_ref - (s.y + g.lookahead * s.phi.sin())
}

/// Outcome of the linearized stability check at one operating speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainValidation {
    pub k1: f64,
    pub k2: f64,
    /// Real parts of the two closed-loop eigenvalues, ascending.
    pub eig_re: [f64; 2],
    pub lateral_stable: bool,
    pub longitudinal_stable: bool,
    /// Both subsystems locally asymptotically stable.
    pub stable: bool,
}

/// Evaluate the linearized closed-loop lateral dynamics
/// `[[0, v*], [v* k1 / L, v* k2 / L]]` at speed `v_star` and check both
/// eigenvalue real parts, plus the longitudinal condition
/// `kv_p > 0, kv_d > -1`.
pub fn validate_gains(g: &Gains, v_star: f64, p: &VehicleParams) -> Result<GainValidation> {
    if v_star <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "operating speed must be positive, got {v_star}"
        )));
    }
    let den = 1.0 + v_star / p.wheelbase * (g.kdy_d * g.lookahead + g.kphi_d);
    let k1 = -(g.kdy_p + g.kphi_p / g.lookahead) / den;
    let k2 =
        -(g.kdy_p * g.lookahead + g.kphi_p + g.kdy_d * v_star + g.kphi_d * v_star / g.lookahead)
            / den;

    // eigenvalues of [[0, b], [c, d]] solve l^2 - d*l - b*c = 0
    let b = v_star;
    let c = v_star * k1 / p.wheelbase;
    let d = v_star * k2 / p.wheelbase;
    let disc = d * d + 4.0 * b * c;
    let eig_re = if disc >= 0.0 {
        let s = disc.sqrt();
        [(d - s) / 2.0, (d + s) / 2.0]
    } else {
        [d / 2.0, d / 2.0]
    };
    let lateral_stable = eig_re[0] < 0.0 && eig_re[1] < 0.0;
    let longitudinal_stable = g.kv_p > 0.0 && g.kv_d > -1.0;
    Ok(GainValidation {
        k1,
        k2,
        eig_re,
        lateral_stable,
        longitudinal_stable,
        stable: lateral_stable && longitudinal_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vehicle::{clamp_input, step, ControlInput};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn longitudinal_zero_error_zero_output() {
        let g = Gains::default();
        let mut st = ControllerState::new();
        assert_eq!(longitudinal_command(5.0, 5.0, &mut st, &g, 0.1), 0.0);
        assert_eq!(longitudinal_command(5.0, 5.0, &mut st, &g, 0.1), 0.0);
    }

    #[test]
    fn longitudinal_first_step_is_proportional_only() {
        let g = Gains {
            kv_p: 1.0,
            kv_d: 0.7,
            ..Gains::default()
        };
        let mut st = ControllerState::new();
        assert_eq!(longitudinal_command(3.0, 5.0, &mut st, &g, 0.1), 2.0);
    }

    #[test]
    fn longitudinal_constant_error_drops_derivative() {
        let g = Gains::default();
        let mut st = ControllerState::new();
        let a1 = longitudinal_command(3.0, 5.0, &mut st, &g, 0.1);
        let a2 = longitudinal_command(3.0, 5.0, &mut st, &g, 0.1);
        assert_eq!(a1, g.kv_p * 2.0);
        assert_eq!(a2, g.kv_p * 2.0);
    }

    #[test]
    fn lateral_zero_errors_zero_output() {
        let g = Gains::default();
        let mut st = ControllerState::new();
        let s = VehicleState::new(0.0, 3.0, 0.0, 5.0);
        assert_eq!(lateral_command(&s, 3.0, &mut st, &g, 0.1), 0.0);
    }

    #[test]
    fn lateral_hand_computed_first_step() {
        let g = Gains {
            kdy_p: 0.2,
            kdy_d: 0.0,
            kphi_p: 1.0,
            kphi_d: 0.0,
            lookahead: 5.0,
            ..Gains::default()
        };
        let mut st = ControllerState::new();
        let s = VehicleState::new(0.0, 0.0, 0.0, 5.0);
        let delta = lateral_command(&s, 1.0, &mut st, &g, 0.1);
        let expect = 0.2 * 1.0 + 1.0 * 0.2_f64.atan();
        assert!((delta - expect).abs() < 1e-12);
        assert!((delta - 0.3974).abs() < 1e-4);
    }

    #[test]
    fn lateral_command_is_odd_under_mirror() {
        let g = Gains::default();
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..200 {
            let y = rng.gen_range(-3.0..3.0);
            let phi = rng.gen_range(-1.0..1.0);
            let y_ref = rng.gen_range(-3.0..3.0);
            let s = VehicleState::new(0.0, y, phi, 5.0);
            let m = VehicleState::new(0.0, -y, -phi, 5.0);
            let mut st1 = ControllerState::new();
            let mut st2 = ControllerState::new();
            let d1 = lateral_command(&s, y_ref, &mut st1, &g, 0.1);
            let d2 = lateral_command(&m, -y_ref, &mut st2, &g, 0.1);
            assert!((d1 + d2).abs() < 1e-12);
        }
    }

    #[test]
    fn proportional_only_controller_is_memoryless() {
        let g = Gains {
            kv_d: 0.0,
            kdy_d: 0.0,
            kphi_d: 0.0,
            ..Gains::default()
        };
        let s = VehicleState::new(0.0, 1.0, 0.2, 4.0);
        let mut fresh = ControllerState::new();
        let mut warmed = ControllerState::new();
        // warm up with unrelated errors
        let decoy = VehicleState::new(0.0, -2.0, -0.4, 1.0);
        lateral_command(&decoy, 3.0, &mut warmed, &g, 0.1);
        longitudinal_command(1.0, 7.0, &mut warmed, &g, 0.1);
        assert_eq!(
            lateral_command(&s, 2.0, &mut fresh, &g, 0.1),
            lateral_command(&s, 2.0, &mut warmed, &g, 0.1)
        );
        assert_eq!(
            longitudinal_command(4.0, 6.0, &mut fresh, &g, 0.1),
            longitudinal_command(4.0, 6.0, &mut warmed, &g, 0.1)
        );
    }

    #[test]
    fn positive_gains_are_stable() {
        let p = VehicleParams::default();
        let v = validate_gains(&Gains::default(), 8.33, &p).unwrap();
        assert!(v.k1 < 0.0 && v.k2 < 0.0);
        assert!(v.stable);
    }

    #[test]
    fn zero_proportional_gains_are_marginal() {
        let p = VehicleParams::default();
        let g = Gains {
            kdy_p: 0.0,
            kphi_p: 0.0,
            kdy_d: 0.0,
            kphi_d: 0.0,
            ..Gains::default()
        };
        let v = validate_gains(&g, 5.0, &p).unwrap();
        assert_eq!(v.k1, 0.0);
        assert_eq!(v.k2, 0.0);
        assert!(!v.lateral_stable);
        assert!(!v.stable);
    }

    #[test]
    fn validator_rejects_non_positive_speed() {
        let p = VehicleParams::default();
        assert!(validate_gains(&Gains::default(), 0.0, &p).is_err());
        assert!(validate_gains(&Gains::default(), -1.0, &p).is_err());
    }

    #[test]
    fn k_terms_negative_over_positive_gain_grid() {
        let p = VehicleParams::default();
        let mut count = 0;
        for i in 0..10 {
            for j in 0..10 {
                for k in 0..10 {
                    let g = Gains {
                        kdy_p: 0.05 + 0.3 * i as f64,
                        kphi_p: 0.05 + 0.3 * j as f64,
                        kdy_d: 0.01 * k as f64,
                        kphi_d: 0.02 * k as f64,
                        lookahead: 1.0 + 2.0 * (k as f64),
                        ..Gains::default()
                    };
                    let v_star = 0.5 + 2.0 * (i as f64 % 4.0);
                    let v = validate_gains(&g, v_star, &p).unwrap();
                    assert!(v.k1 < 0.0 && v.k2 < 0.0, "grid point {i},{j},{k}");
                    count += 1;
                }
            }
        }
        assert_eq!(count, 1000);
    }

    #[test]
    fn closed_loop_lateral_offset_decays() {
        // nonlinear desk test: bicycle + this controller, no optimizer
        let p = VehicleParams::default();
        let g = Gains::default();
        let mut st = ControllerState::new();
        let dt = 0.1;
        let v_star = 5.0;
        let y_ref = 0.0;
        let mut s = VehicleState::new(0.0, -1.0, 0.0, v_star);
        let mut errors = Vec::with_capacity(100);
        for _ in 0..100 {
            let delta = lateral_command(&s, y_ref, &mut st, &g, dt);
            let a = longitudinal_command(s.v, v_star, &mut st, &g, dt);
            let u = clamp_input(&ControlInput::new(delta, a), &p);
            s = step(&s, &u, dt, &p).unwrap();
            errors.push(lateral_error(&s, y_ref, &g));
        }
        let last_breach = errors.iter().rposition(|e| e.abs() >= 0.05);
        match last_breach {
            None => {}
            Some(k) => assert!(
                k + 1 < errors.len() && (k as f64) * dt < 8.0,
                "lateral error still >= 0.05 m at t={:.1}s",
                (k as f64 + 1.0) * dt
            ),
        }
    }
}
