//! Report assembly and CSV/metadata emission.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use safrel::{catalog_hash, save_policy, PolicyMeta, QTable};

use crate::config::{Scenario, ScenarioConfig};
use crate::error::HarnessError;

/// One per-SUT record (or per-episode record for the initial-convergence
/// scenario, where `sut_id` is the episode index).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SutRow {
    pub sut_id: usize,
    pub program: String,
    pub sen_c: f64,
    pub sen_m: f64,
    pub sen_d: f64,
    pub rt_req_ms: f64,
    pub sim_prev1: Option<f64>,
    pub sim_prev2: Option<f64>,
    pub epsilon_used: f64,
    pub trials: usize,
    pub reached: bool,
    pub baseline_trials: Option<usize>,
}

/// Aggregate line; sweep runs emit one per grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub epsilon_mode: String,
    pub safrel_mean: f64,
    pub baseline_mean: Option<f64>,
    pub improvement_pct: Option<f64>,
    pub frac_below_baseline_mean: Option<f64>,
}

/// Full outcome of one scenario run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    pub epsilon_mode: String,
    pub rows: Vec<SutRow>,
    pub summaries: Vec<SummaryRow>,
    /// Learned table, when the scenario produces a single policy.
    pub policy: Option<QTable>,
}

/// Computes the aggregate line from per-SUT rows; the single source of truth
/// for means, improvement percentage and the below-baseline fraction.
pub fn summarize(scenario: &str, epsilon_mode: &str, rows: &[SutRow]) -> SummaryRow {
    let n = rows.len().max(1) as f64;
    let safrel_mean = rows.iter().map(|r| r.trials as f64).sum::<f64>() / n;
    let baseline: Vec<f64> = rows
        .iter()
        .filter_map(|r| r.baseline_trials.map(|t| t as f64))
        .collect();
    let (baseline_mean, improvement_pct, frac_below) =
        if baseline.len() == rows.len() && !rows.is_empty() {
            let bm = baseline.iter().sum::<f64>() / n;
            let improvement = (bm - safrel_mean) / bm * 100.0;
            let frac = rows.iter().filter(|r| (r.trials as f64) < bm).count() as f64 / n;
            (Some(bm), Some(improvement), Some(frac))
        } else {
            (None, None, None)
        };
    SummaryRow {
        scenario: scenario.to_string(),
        epsilon_mode: epsilon_mode.to_string(),
        safrel_mean,
        baseline_mean,
        improvement_pct,
        frac_below_baseline_mean: frac_below,
    }
}

/// Paths written by [`emit_report`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunArtifacts {
    pub per_sut_csv: PathBuf,
    pub summary_csv: PathBuf,
    pub metadata: PathBuf,
    pub policy: Option<PathBuf>,
}

/// Writes the per-SUT CSV, summary CSV, run metadata, and (when present) the
/// learned policy into the configured output directory.
pub fn emit_report(
    report: &ScenarioReport,
    config: &ScenarioConfig,
) -> Result<RunArtifacts, HarnessError> {
    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| HarnessError::Io(dir.display().to_string(), e))?;

    let per_sut_csv = dir.join("per_sut.csv");
    write_csv(&per_sut_csv, &report.rows)?;
    let summary_csv = dir.join("summary.csv");
    write_csv(&summary_csv, &report.summaries)?;
    let metadata = dir.join("run_metadata.txt");
    fs::write(&metadata, metadata_text(report, config))
        .map_err(|e| HarnessError::Io(metadata.display().to_string(), e))?;

    let policy = match &report.policy {
        Some(q) => {
            let path = dir.join("policy.txt");
            let meta = PolicyMeta {
                alpha: config.learning.alpha,
                gamma: config.learning.gamma,
                catalog_hash: catalog_hash(&config.catalog),
            };
            save_policy(&path, q, &meta)?;
            Some(path)
        }
        None => None,
    };

    Ok(RunArtifacts {
        per_sut_csv,
        summary_csv,
        metadata,
        policy,
    })
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), HarnessError> {
    let at = || path.display().to_string();
    let mut writer = csv::Writer::from_path(path).map_err(|e| HarnessError::Csv(at(), e))?;
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| HarnessError::Csv(at(), e))?;
    }
    writer.flush().map_err(|e| HarnessError::Io(at(), e))?;
    Ok(())
}

/// Reads back a per-SUT CSV written by [`emit_report`].
pub fn read_per_sut_csv(path: impl AsRef<Path>) -> Result<Vec<SutRow>, HarnessError> {
    read_csv(path.as_ref())
}

/// Reads back a summary CSV written by [`emit_report`].
pub fn read_summary_csv(path: impl AsRef<Path>) -> Result<Vec<SummaryRow>, HarnessError> {
    read_csv(path.as_ref())
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let at = || path.display().to_string();
    let mut reader = csv::Reader::from_path(path).map_err(|e| HarnessError::Csv(at(), e))?;
    reader
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(|e| HarnessError::Csv(at(), e))
}

fn metadata_text(report: &ScenarioReport, config: &ScenarioConfig) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    line(
        "tool",
        format!("safrel-harness {}", env!("CARGO_PKG_VERSION")),
    );
    line("scenario", config.scenario.name().to_string());
    line("seed", config.seed.to_string());
    line("sut_count", config.sut_count.to_string());
    line("episodes", config.episodes.to_string());
    line("alpha", config.learning.alpha.to_string());
    line("gamma", config.learning.gamma.to_string());
    line("epsilon_mode", report.epsilon_mode.clone());
    line("initial_epsilon", config.initial_epsilon.to_string());
    line("beta", config.reward.beta.to_string());
    line(
        "max_trials_per_episode",
        config.learning.max_trials_per_episode.to_string(),
    );
    line(
        "floor",
        format!(
            "cpu={} mem={} disk={}",
            config.floor.cpu, config.floor.mem, config.floor.disk
        ),
    );
    let rt = &config.memberships.rt;
    let util = &config.memberships.util;
    line(
        "membership_rt",
        format!(
            "low_shoulder={} apex={} high_shoulder={}",
            rt.low_shoulder, rt.apex, rt.high_shoulder
        ),
    );
    line(
        "membership_util",
        format!(
            "high_shoulder={} low_shoulder={}",
            util.high_shoulder, util.low_shoulder
        ),
    );
    line("catalog_sha256", catalog_hash(&config.catalog));
    line("catalog_programs", config.catalog.len().to_string());
    out
}
