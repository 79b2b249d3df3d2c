//! Repeated learning trials against a known automaton, aggregated per sample size.

use std::fmt::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automaton::{equivalent, Pdfa};
use crate::characteristic::is_characteristic;
use crate::error::{Error, Result};
use crate::learner::learn_pdfa;
use crate::oracle::generate::{generate_sample, GenerationConfig};
use crate::prefix_tree::build_prefix_tree;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub counts: Vec<usize>,
    pub trials: usize,
    pub fraction: f64,
    pub stop_probability: f64,
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            counts: vec![50, 100, 200, 300, 400, 500, 600, 700],
            trials: 10,
            fraction: 1.0 / 3.0,
            stop_probability: 0.25,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub words: usize,
    pub trial: usize,
    pub characteristic: bool,
    /// Which of the four characteristic conditions failed.
    pub violated: [bool; 4],
    /// The learned automaton is complete, equivalent to the truth, and no larger.
    pub canonical: bool,
    /// Prefix tree construction plus learning.
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub words: usize,
    pub characteristic: usize,
    /// Trials violating each condition.
    pub violations: [usize; 4],
    pub canonical: usize,
    pub mean_seconds: f64,
}

/// Runs one trial; the generator stream is fixed by `(seed, words, trial)`.
pub fn run_trial(
    truth: &Pdfa,
    cfg: &ExperimentConfig,
    words: usize,
    trial: usize,
) -> Result<TrialResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(((words as u64) << 32) | trial as u64);
    let gen = GenerationConfig {
        word_count: words,
        stop_probability: cfg.stop_probability,
        comparison_fraction: cfg.fraction,
        seed: cfg.seed,
    };
    let sample = generate_sample(truth, &gen, &mut rng)?;
    let report = is_characteristic(truth, &sample)?;
    let start = Instant::now();
    let learned = learn_pdfa(&build_prefix_tree(&sample)?)?;
    let seconds = start.elapsed().as_secs_f64();
    let canonical = match learned.to_pdfa() {
        Ok(a) => a.num_states() == truth.num_states() && equivalent(&a, truth)?.is_equivalent(),
        Err(_) => false,
    };
    Ok(TrialResult {
        words,
        trial,
        characteristic: report.is_characteristic(),
        violated: std::array::from_fn(|i| !report.conditions[i].passed()),
        canonical,
        seconds,
    })
}

/// All trials, run in parallel, ordered by word count then trial index.
pub fn run_trials(truth: &Pdfa, cfg: &ExperimentConfig) -> Result<Vec<TrialResult>> {
    if cfg.trials == 0 || cfg.counts.is_empty() {
        return Err(Error::InvalidConfig(
            "need at least one count and one trial".into(),
        ));
    }
    let jobs: Vec<(usize, usize)> = cfg
        .counts
        .iter()
        .flat_map(|&c| (0..cfg.trials).map(move |t| (c, t)))
        .collect();
    jobs.into_par_iter()
        .map(|(c, t)| run_trial(truth, cfg, c, t))
        .collect()
}

pub fn aggregate(trials: &[TrialResult], counts: &[usize]) -> Vec<ExperimentRow> {
    counts
        .iter()
        .map(|&words| {
            let rows: Vec<&TrialResult> = trials.iter().filter(|t| t.words == words).collect();
            ExperimentRow {
                words,
                characteristic: rows.iter().filter(|t| t.characteristic).count(),
                violations: std::array::from_fn(|i| rows.iter().filter(|t| t.violated[i]).count()),
                canonical: rows.iter().filter(|t| t.canonical).count(),
                mean_seconds: rows.iter().map(|t| t.seconds).sum::<f64>()
                    / rows.len().max(1) as f64,
            }
        })
        .collect()
}

pub fn run_experiment(truth: &Pdfa, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    Ok(aggregate(&run_trials(truth, cfg)?, &cfg.counts))
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(
        "words,characteristic,viol_c1,viol_c2,viol_c3,viol_c4,canonical,time_seconds\n",
    );
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6}",
            r.words,
            r.characteristic,
            r.violations[0],
            r.violations[1],
            r.violations[2],
            r.violations[3],
            r.canonical,
            r.mean_seconds
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_run_is_reproducible() {
        let cfg = ExperimentConfig {
            counts: vec![20, 60],
            trials: 3,
            ..Default::default()
        };
        let truth = fixtures::garden_pdfa();
        let a = run_trials(&truth, &cfg).unwrap();
        let b = run_trials(&truth, &cfg).unwrap();
        let strip = |ts: &[TrialResult]| -> Vec<(usize, usize, bool, bool)> {
            ts.iter()
                .map(|t| (t.words, t.trial, t.characteristic, t.canonical))
                .collect()
        };
        assert_eq!(strip(&a), strip(&b));
        let rows = aggregate(&a, &cfg.counts);
        assert_eq!(rows.len(), 2);
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("words,characteristic,viol_c1"));
        for t in &a {
            assert!(!t.characteristic || t.canonical);
        }
    }
}
