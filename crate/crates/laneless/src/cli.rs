//! Command front-end: scenario runs, seed sweeps, and gain validation,
//! with JSON configuration files and `key=value` overrides.
//!
//! The configuration file is a single JSON document with one section per
//! subsystem (`vehicle`, `zones`, `planner`, `gains`, `weights`,
//! `sampling`) plus top-level scenario fields; every field has a default,
//! so partial files and an absent file are both valid. Overrides accept
//! dotted paths (`planner.cruise_speed=5`) or bare field names when the
//! name is unambiguous (`n_neighbors=0`).
//!
//! All artifacts are written atomically (write to a temp name, then
//! rename), so interrupted sweeps never leave corrupt reports behind.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::feedback::{validate_gains, GainValidation};
use crate::log::SimLog;
use crate::plot;
use crate::sim::{self, ScenarioConfig};

/// What `cmd_run` produced.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config_path: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub artifacts: Vec<PathBuf>,
    pub collision_free: bool,
    pub collision_steps: usize,
    pub fallback_steps: usize,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    pub overrides: Vec<(String, String)>,
    pub plots: bool,
    pub allow_unstable: bool,
}

/// Load, override, and validate a scenario configuration.
///
/// `--seed` wins over both the file and `--set` overrides.
pub fn load_config(
    path: Option<&Path>,
    overrides: &[(String, String)],
    seed: Option<u64>,
) -> Result<ScenarioConfig> {
    let mut value: Value = match path {
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("{}: {e}", p.display())))?
        }
        None => serde_json::to_value(ScenarioConfig::default())?,
    };
    if !value.is_object() {
        return Err(Error::Config("config root must be a JSON object".into()));
    }
    for (key, raw) in overrides {
        apply_override(&mut value, key, raw)?;
    }
    let mut cfg: ScenarioConfig = serde_json::from_value(value)
        .map_err(|e| Error::Config(format!("config does not match the schema: {e}")))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Set one field by dotted path or unique bare name. The raw value is
/// parsed as JSON when possible, else taken as a string.
fn apply_override(root: &mut Value, key: &str, raw: &str) -> Result<()> {
    let parsed: Value = serde_json::from_str(raw).unwrap_or(Value::String(raw.to_string()));
    if key.contains('.') {
        let mut cursor = &mut *root;
        let segments: Vec<&str> = key.split('.').collect();
        for seg in &segments[..segments.len() - 1] {
            cursor = cursor.get_mut(seg).ok_or_else(|| {
                Error::Config(format!("unknown config section '{seg}' in '{key}'"))
            })?;
        }
        let last = segments[segments.len() - 1];
        let obj = cursor
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("'{key}' does not address an object field")))?;
        if !obj.contains_key(last) {
            return Err(Error::Config(format!("unknown config key '{key}'")));
        }
        obj.insert(last.to_string(), parsed);
        return Ok(());
    }
    // bare name: must match exactly one field anywhere in the tree
    let mut paths = Vec::new();
    find_key_paths(root, key, String::new(), &mut paths);
    match paths.len() {
        0 => Err(Error::Config(format!("unknown config key '{key}'"))),
        1 => {
            set_by_path(root, &paths[0], parsed);
            Ok(())
        }
        _ => Err(Error::Config(format!(
            "ambiguous config key '{key}' (matches {}); use a dotted path",
            paths.join(", ")
        ))),
    }
}

fn find_key_paths(value: &Value, key: &str, prefix: String, out: &mut Vec<String>) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            let path = if prefix.is_empty() {
                k.clone()
            } else {
                format!("{prefix}.{k}")
            };
            if k == key {
                out.push(path.clone());
            }
            find_key_paths(v, key, path, out);
        }
    }
}

fn set_by_path(root: &mut Value, path: &str, new: Value) {
    let mut cursor = root;
    let segments: Vec<&str> = path.split('.').collect();
    for seg in &segments[..segments.len() - 1] {
        cursor = cursor.get_mut(seg).expect("path discovered by traversal");
    }
    cursor
        .as_object_mut()
        .expect("parent is an object")
        .insert(segments[segments.len() - 1].to_string(), new);
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn check_gains(cfg: &ScenarioConfig, allow_unstable: bool) -> Result<()> {
    let v = validate_gains(&cfg.gains, cfg.planner.cruise_speed, &cfg.vehicle)?;
    if !v.stable && !allow_unstable {
        return Err(Error::Config(format!(
            "gains fail the stability check at v*={} (k1={:.4}, k2={:.4}); pass --allow-unstable to run anyway",
            cfg.planner.cruise_speed, v.k1, v.k2
        )));
    }
    Ok(())
}

/// Run one scenario and write its artifacts (CSV + JSON logs, optionally
/// the four profile SVGs).
pub fn cmd_run(opts: &RunOptions) -> Result<RunManifest> {
    let cfg = load_config(opts.config.as_deref(), &opts.overrides, opts.seed)?;
    check_gains(&cfg, opts.allow_unstable)?;
    let log = sim::run(&cfg)?;

    fs::create_dir_all(&opts.out_dir)?;
    let mut artifacts = Vec::new();
    let csv_path = opts.out_dir.join("log.csv");
    write_atomic(&csv_path, log.to_csv().as_bytes())?;
    artifacts.push(csv_path);
    let json_path = opts.out_dir.join("log.json");
    write_atomic(&json_path, log.to_json_string()?.as_bytes())?;
    artifacts.push(json_path);

    if opts.plots {
        for (name, svg) in plot_set(&log) {
            let path = opts.out_dir.join(name);
            write_atomic(&path, svg.as_bytes())?;
            artifacts.push(path);
        }
    }

    for a in &artifacts {
        debug_assert!(a.exists());
    }
    Ok(RunManifest {
        config_path: opts.config.clone(),
        out_dir: opts.out_dir.clone(),
        artifacts,
        collision_free: log.summary.collision_free,
        collision_steps: log.summary.collision_steps,
        fallback_steps: log.summary.fallback_steps,
    })
}

/// The four standard profile plots for a log.
pub fn plot_set(log: &SimLog) -> Vec<(&'static str, String)> {
    vec![
        ("trajectory.svg", plot::trajectory_svg(log)),
        ("velocity.svg", plot::velocity_svg(log)),
        ("acceleration.svg", plot::acceleration_svg(log)),
        ("heading.svg", plot::heading_svg(log)),
    ]
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub config: Option<PathBuf>,
    pub out_dir: PathBuf,
    /// Inclusive seed range.
    pub seeds: (u64, u64),
    pub overrides: Vec<(String, String)>,
    pub allow_unstable: bool,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub seed: u64,
    pub status: std::result::Result<SweepMetrics, String>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepMetrics {
    pub collisions: usize,
    pub min_clearance: Option<f64>,
    pub v_min: f64,
    pub v_max: f64,
    pub a_min: f64,
    pub a_max: f64,
    pub fallbacks: usize,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Fraction of all rows that completed with zero collisions.
    pub collision_free_rate: f64,
    pub report_path: PathBuf,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("seed,status,collisions,min_clearance,v_min,v_max,a_min,a_max,fallbacks\n");
        for row in &self.rows {
            match &row.status {
                Ok(m) => {
                    let clearance = match m.min_clearance {
                        Some(c) => format!("{c}"),
                        None => "inf".into(),
                    };
                    out.push_str(&format!(
                        "{},ok,{},{},{},{},{},{},{}\n",
                        row.seed,
                        m.collisions,
                        clearance,
                        m.v_min,
                        m.v_max,
                        m.a_min,
                        m.a_max,
                        m.fallbacks
                    ));
                }
                Err(e) => out.push_str(&format!(
                    "{},error:{},,,,,,,\n",
                    row.seed,
                    e.replace([',', '\n'], ";")
                )),
            }
        }
        let free = self
            .rows
            .iter()
            .filter(|r| matches!(&r.status, Ok(m) if m.collisions == 0))
            .count();
        out.push_str(&format!(
            "# collision_free_rate: {:.4} ({free}/{})\n",
            self.collision_free_rate,
            self.rows.len()
        ));
        out
    }
}

/// Run every seed in the range independently (in parallel) and write one
/// report CSV. Per-seed failures are recorded and the sweep continues.
/// Rows are ordered by seed, so the report bytes do not depend on the
/// execution schedule.
pub fn cmd_sweep(opts: &SweepOptions) -> Result<SweepReport> {
    let base = load_config(opts.config.as_deref(), &opts.overrides, None)?;
    check_gains(&base, opts.allow_unstable)?;
    let (lo, hi) = opts.seeds;
    if hi < lo {
        return Err(Error::InvalidArgument(format!(
            "empty seed range {lo}..{hi}"
        )));
    }
    let mut rows: Vec<SweepRow> = (lo..=hi)
        .into_par_iter()
        .map(|seed| {
            let cfg = ScenarioConfig {
                seed,
                ..base.clone()
            };
            let status = match sim::run(&cfg) {
                Ok(log) => Ok(SweepMetrics {
                    collisions: log.summary.collision_steps,
                    min_clearance: log.summary.min_clearance,
                    v_min: log.summary.v_min,
                    v_max: log.summary.v_max,
                    a_min: log.summary.a_cmd_min,
                    a_max: log.summary.a_cmd_max,
                    fallbacks: log.summary.fallback_steps,
                }),
                Err(e) => Err(e.to_string()),
            };
            SweepRow { seed, status }
        })
        .collect();
    rows.sort_by_key(|r| r.seed);

    let free = rows
        .iter()
        .filter(|r| matches!(&r.status, Ok(m) if m.collisions == 0))
        .count();
    let report = SweepReport {
        collision_free_rate: free as f64 / rows.len() as f64,
        report_path: opts.out_dir.join("sweep_report.csv"),
        rows,
    };
    fs::create_dir_all(&opts.out_dir)?;
    write_atomic(&report.report_path, report.to_csv().as_bytes())?;
    Ok(report)
}

#[derive(Debug, Clone)]
pub struct GainsReport {
    pub rows: Vec<(f64, GainValidation)>,
    pub pass: bool,
}

impl GainsReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("v_star,k1,k2,eig_re_1,eig_re_2,stable\n");
        for (v, g) in &self.rows {
            out.push_str(&format!(
                "{v:.3},{:.6},{:.6},{:.6},{:.6},{}\n",
                g.k1, g.k2, g.eig_re[0], g.eig_re[1], g.stable
            ));
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Number of operating-speed grid points checked by `cmd_validate_gains`.
const GAIN_GRID_POINTS: usize = 20;

/// Evaluate the configured gains over a grid of operating speeds spanning
/// (0, cruise_speed].
pub fn cmd_validate_gains(
    config: Option<&Path>,
    overrides: &[(String, String)],
) -> Result<GainsReport> {
    let cfg = load_config(config, overrides, None)?;
    let mut rows = Vec::with_capacity(GAIN_GRID_POINTS);
    let mut pass = true;
    for i in 1..=GAIN_GRID_POINTS {
        let v_star = cfg.planner.cruise_speed * i as f64 / GAIN_GRID_POINTS as f64;
        let validation = validate_gains(&cfg.gains, v_star, &cfg.vehicle)?;
        pass &= validation.stable;
        rows.push((v_star, validation));
    }
    Ok(GainsReport { rows, pass })
}
