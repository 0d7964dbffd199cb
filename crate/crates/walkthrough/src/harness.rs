//! Batch runs of simulated episodes and their success-rate reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use walkthrough_core::guidance::HintType;
use walkthrough_core::sim::{run_episode, Agent, Condition, EpisodeResult, Policy};

use crate::corpus::{Corpus, TaskSet};
use crate::formats::{self, FormatError};

pub const DEFAULT_BUDGET: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange {
    pub start: u64,
    pub count: u32,
}

impl SeedRange {
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        self.start..self.start + u64::from(self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl ReportFormat {
    pub const fn extension(self) -> &'static str {
        match self {
            ReportFormat::Table => "txt",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

/// What to run. Relative paths resolve against the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<PathBuf>,
    #[serde(default)]
    pub task_sets: Vec<TaskSet>,
    /// Extra task ids on top of the sets.
    #[serde(default)]
    pub tasks: Vec<String>,
    pub conditions: Vec<Condition>,
    pub agents: Vec<Policy>,
    pub seeds: SeedRange,
    #[serde(default = "default_budget")]
    pub budget: u32,
    /// Report path without extension; one file per format.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub formats: Vec<ReportFormat>,
    /// Optional line-delimited JSON dump of every episode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub episodes: Option<PathBuf>,
}

fn default_budget() -> u32 {
    DEFAULT_BUDGET
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("task {0} is not in the fixture corpus")]
    UnknownTask(String),
    #[error("{task}: {message}")]
    Episode { task: String, message: String },
}

impl ExperimentConfig {
    /// Task ids in run order: sets first, then extra tasks, without repeats.
    pub fn task_ids(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let ids = self.task_sets.iter().flat_map(|s| s.tasks().iter().map(|t| t.to_string()));
        for id in ids.chain(self.tasks.iter().cloned()) {
            if !out.contains(&id) {
                out.push(id);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let fail = |m: &str| Err(HarnessError::Config(m.into()));
        if self.conditions.is_empty() {
            return fail("no conditions");
        }
        if self.agents.is_empty() {
            return fail("no agents");
        }
        if self.task_ids().is_empty() {
            return fail("no tasks");
        }
        if self.seeds.count == 0 {
            return fail("seed count is zero");
        }
        if self.budget == 0 {
            return fail("budget is zero");
        }
        for agent in &self.agents {
            if let Policy::Fallible { error_rate, .. } = agent {
                if !(0.0..=1.0).contains(error_rate) {
                    return fail("error_rate must lie in [0, 1]");
                }
            }
        }
        Ok(())
    }

    /// Resolve relative paths against `base`.
    pub fn rebase(mut self, base: &Path) -> Self {
        let fix = |p: &mut Option<PathBuf>| {
            if let Some(path) = p.as_mut().filter(|p| p.is_relative()) {
                *path = base.join(&*path);
            }
        };
        fix(&mut self.fixtures);
        fix(&mut self.output);
        fix(&mut self.episodes);
        self
    }
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    let config: ExperimentConfig = formats::load_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let config = config.rebase(base);
    config.validate()?;
    Ok(config)
}

/// Aggregates for one (task, condition, agent) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub task_id: String,
    pub condition: Condition,
    pub agent: String,
    pub seed_count: u32,
    pub success_rate: f64,
    pub mean_actions: f64,
    pub hints: [u64; 9],
    pub deviations: u64,
    pub recoveries: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub condition: Condition,
    pub episodes: u64,
    pub success_rate: f64,
    pub mean_actions: f64,
    pub hints_total: u64,
    pub deviations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub budget: u32,
    pub seeds: SeedRange,
    pub rows: Vec<ReportRow>,
    pub conditions: Vec<ConditionSummary>,
}

impl ExperimentReport {
    pub fn row(&self, task: &str, condition: Condition, agent: &str) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|r| r.task_id == task && r.condition == condition && r.agent == agent)
    }
}

struct Job<'a> {
    task: &'a str,
    condition: Condition,
    policy: Policy,
    seed: u64,
}

/// Run every episode of `config` over `corpus` in parallel. Results are
/// reduced in job order, so the report does not depend on scheduling.
pub fn run_experiment_on(config: &ExperimentConfig, corpus: &Corpus) -> Result<(ExperimentReport, Vec<EpisodeResult>), HarnessError> {
    config.validate()?;
    let tasks = config.task_ids();
    for t in &tasks {
        if corpus.task(t).is_none() {
            return Err(HarnessError::UnknownTask(t.clone()));
        }
    }
    let mut jobs = Vec::new();
    for task in &tasks {
        for &condition in &config.conditions {
            for &policy in &config.agents {
                for seed in config.seeds.iter() {
                    jobs.push(Job { task, condition, policy, seed });
                }
            }
        }
    }
    let results: Vec<EpisodeResult> = jobs
        .par_iter()
        .map(|job| {
            let (pkg, app) = corpus.task(job.task).expect("checked above");
            let mut agent = Agent::new(job.policy.with_seed(job.seed));
            run_episode(pkg, app, &mut agent, config.budget, job.condition).map_err(|e| HarnessError::Episode {
                task: job.task.to_string(),
                message: e.to_string(),
            })
        })
        .collect::<Result<_, _>>()?;

    let per_cell = config.seeds.count as usize;
    let mut rows = Vec::new();
    for (cell, chunk) in results.chunks(per_cell).enumerate() {
        let job = &jobs[cell * per_cell];
        rows.push(aggregate(job.task, job.condition, &job.policy, chunk));
    }
    let conditions = config
        .conditions
        .iter()
        .map(|&c| summarize_condition(c, results.iter().filter(|r| r.condition == c)))
        .collect();
    let report = ExperimentReport { budget: config.budget, seeds: config.seeds, rows, conditions };
    Ok((report, results))
}

/// Load the fixtures named by `config` and run it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    let dir = config.fixtures.clone().unwrap_or_else(crate::corpus::default_fixtures_dir);
    let ids = config.task_ids();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let corpus = Corpus::load(&dir, &refs)?;
    let (report, episodes) = run_experiment_on(config, &corpus)?;
    if let Some(path) = &config.episodes {
        write_text(path, &formats::to_json_lines(&episodes))?;
    }
    Ok(report)
}

fn aggregate(task: &str, condition: Condition, policy: &Policy, runs: &[EpisodeResult]) -> ReportRow {
    let n = runs.len().max(1) as f64;
    let mut hints = [0u64; 9];
    for r in runs {
        for (total, h) in hints.iter_mut().zip(r.hints_by_type) {
            *total += u64::from(h);
        }
    }
    ReportRow {
        task_id: task.to_string(),
        condition,
        agent: policy.family(),
        seed_count: runs.len() as u32,
        success_rate: runs.iter().filter(|r| r.success).count() as f64 / n,
        mean_actions: runs.iter().map(|r| f64::from(r.actions_used)).sum::<f64>() / n,
        hints,
        deviations: runs.iter().map(|r| u64::from(r.deviations)).sum(),
        recoveries: runs.iter().map(|r| u64::from(r.recoveries)).sum(),
    }
}

fn summarize_condition<'a>(condition: Condition, runs: impl Iterator<Item = &'a EpisodeResult>) -> ConditionSummary {
    let (mut episodes, mut successes, mut actions, mut hints, mut deviations) = (0u64, 0u64, 0u64, 0u64, 0u64);
    for r in runs {
        episodes += 1;
        successes += u64::from(r.success);
        actions += u64::from(r.actions_used);
        hints += u64::from(r.hints_total);
        deviations += u64::from(r.deviations);
    }
    let n = episodes.max(1) as f64;
    ConditionSummary {
        condition,
        episodes,
        success_rate: successes as f64 / n,
        mean_actions: actions as f64 / n,
        hints_total: hints,
        deviations,
    }
}

pub const CSV_HEADER: [&str; 16] = [
    "task_id",
    "condition",
    "agent",
    "seed_count",
    "success_rate",
    "mean_actions",
    "hints_A",
    "hints_B",
    "hints_C",
    "hints_D",
    "hints_E",
    "hints_F",
    "hints_G",
    "hints_H",
    "hints_I",
    "deviations",
];

/// Render `report` in `format`. Output is fully determined by the report.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => formats::to_canonical(report),
        ReportFormat::Csv => csv_text(report),
        ReportFormat::Table => table_text(report),
    }
}

fn csv_text(report: &ExperimentReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory writer");
    for r in &report.rows {
        let mut record = vec![
            r.task_id.clone(),
            r.condition.name().to_string(),
            r.agent.clone(),
            r.seed_count.to_string(),
            format!("{:.4}", r.success_rate),
            format!("{:.2}", r.mean_actions),
        ];
        record.extend(r.hints.iter().map(u64::to_string));
        record.push(r.deviations.to_string());
        w.write_record(&record).expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

fn table_text(report: &ExperimentReport) -> String {
    let mut out = String::new();
    let hint_cols: String = HintType::ALL.iter().map(|h| format!("{:>5}", h.letter())).collect();
    let _ = writeln!(
        out,
        "{:<6} {:<9} {:<16} {:>5} {:>8} {:>8}{} {:>5}",
        "task", "condition", "agent", "seeds", "success", "actions", hint_cols, "devs"
    );
    for r in &report.rows {
        let hints: String = r.hints.iter().map(|h| format!("{h:>5}")).collect();
        let _ = writeln!(
            out,
            "{:<6} {:<9} {:<16} {:>5} {:>8.3} {:>8.1}{} {:>5}",
            r.task_id,
            r.condition.name(),
            r.agent,
            r.seed_count,
            r.success_rate,
            r.mean_actions,
            hints,
            r.deviations
        );
    }
    let _ = writeln!(out);
    for c in &report.conditions {
        let _ = writeln!(
            out,
            "{:<9} episodes {:>6}  success {:.3}  mean actions {:.1}  hints {}  deviations {}",
            c.condition.name(),
            c.episodes,
            c.success_rate,
            c.mean_actions,
            c.hints_total,
            c.deviations
        );
    }
    out
}

fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| FormatError::Io { path: dir.to_path_buf(), source })?;
    }
    std::fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

/// Write one file per format next to `base` (extension replaced).
pub fn write_reports(report: &ExperimentReport, base: &Path, formats: &[ReportFormat]) -> Result<Vec<PathBuf>, FormatError> {
    let mut written = Vec::new();
    for &format in formats {
        let path = base.with_extension(format.extension());
        write_text(&path, &emit_report(report, format))?;
        written.push(path);
    }
    Ok(written)
}
