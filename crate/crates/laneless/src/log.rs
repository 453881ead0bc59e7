//! Structured run logs: one record per control step plus a run summary,
//! serializable to CSV (fixed column order) and JSON (schema-versioned,
//! with the full configuration echoed back).

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::sim::ScenarioConfig;
use crate::vehicle::VehicleState;

/// Schema tag embedded in the JSON document.
pub const LOG_SCHEMA_JSON: &str = "laneless-log/1";
/// Schema tag on the first line of the CSV output.
pub const LOG_SCHEMA_CSV: &str = "laneless-log-csv/1";

/// CSV column order, fixed for the schema version above.
pub const CSV_HEADER: &str =
    "t,x,y,phi,v,v_ref,y_ref,delta_fb,a_fb,delta_cmd,a_cmd,cost,feasible,n_front,n_left,n_right,collision";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Simulation time at the start of the step (s).
    pub t: f64,
    pub ego: VehicleState,
    pub v_ref: f64,
    pub y_ref: f64,
    /// Raw (unclamped) feedback commands.
    pub delta_fb: f64,
    pub a_fb: f64,
    /// Applied commands after selection and clamping.
    pub delta_cmd: f64,
    pub a_cmd: f64,
    /// Winner cost; `None` when the feedback fallback fired.
    pub cost: Option<f64>,
    pub feasible: bool,
    pub n_front: usize,
    pub n_left: usize,
    pub n_right: usize,
    /// Ground-truth ego/neighbor footprint overlap at time `t`.
    pub collision: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub steps: usize,
    /// Number of steps flagged as colliding.
    pub collision_steps: usize,
    pub collision_free: bool,
    /// Minimum ego/neighbor boundary distance over the run; `None` with no
    /// neighbors.
    pub min_clearance: Option<f64>,
    pub v_min: f64,
    pub v_max: f64,
    pub a_cmd_min: f64,
    pub a_cmd_max: f64,
    pub delta_cmd_abs_max: f64,
    /// Steps on which the feedback fallback was applied.
    pub fallback_steps: usize,
    /// Peak |v² tan(delta)/L| over the run.
    pub max_lat_accel: f64,
    /// Peak lateral acceleration exceeded the configured audit threshold.
    pub lat_accel_exceeded: bool,
}

/// Complete log of one scenario run. A pure function of the configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimLog {
    pub schema: String,
    pub config: ScenarioConfig,
    pub records: Vec<StepRecord>,
    pub summary: RunSummary,
}

impl SimLog {
    /// Fixed-order CSV with a schema comment line and header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 160 + 256);
        out.push_str("# schema: ");
        out.push_str(LOG_SCHEMA_CSV);
        out.push('\n');
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let cost = match r.cost {
                Some(c) => format!("{c}"),
                None => "inf".to_string(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.t,
                r.ego.x,
                r.ego.y,
                r.ego.phi,
                r.ego.v,
                r.v_ref,
                r.y_ref,
                r.delta_fb,
                r.a_fb,
                r.delta_cmd,
                r.a_cmd,
                cost,
                r.feasible as u8,
                r.n_front,
                r.n_left,
                r.n_right,
                r.collision as u8,
            ));
        }
        out
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<SimLog> {
        Ok(serde_json::from_str(s)?)
    }
}
