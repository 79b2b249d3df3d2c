//! Acceptance criteria. Runs without the libtest harness so each criterion prints
//! exactly one PASS/FAIL line; exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use pdfa_core::fixtures::{parity_pdfa, parity_sample, garden_pdfa};
use pdfa_core::learner::AttemptOutcome;
use pdfa_core::oracle::experiment::{run_trial, run_trials, ExperimentConfig};
use pdfa_core::oracle::generate::{
    generate_sample, grow_characteristic_sample, letters, random_canonical_pdfa, GenerationConfig,
};
use pdfa_core::oracle::reduction::{brute_force_mcdfa, reduce_mcdfa, McdfaInstance};
use pdfa_core::oracle::search::min_consistent_pdfa;
use pdfa_core::{
    build_prefix_tree, close_sample, equivalent, is_consistent, learn_pdfa, Pdfa, PreferenceSample,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{has_conflict, naive_closure, random_sample, random_word, rule_violations};

const SEED: u64 = 20_240_601;
const FIG3_LIMIT: Duration = Duration::from_secs(1);
const RANDOM_TARGETS: usize = 100;
const SMALL_TARGETS: usize = 20;
const RANDOM_LIMIT: Duration = Duration::from_secs(300);
const MCDFA_INSTANCES: usize = 50;
const GARDEN_TRIALS: usize = 10;
const GARDEN_LIMIT: Duration = Duration::from_secs(60);
const CLOSURE_TRIPLES: usize = 10_000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// A random canonical target with a sample grown until characteristic for it.
struct Target {
    truth: Pdfa,
    sample: PreferenceSample,
    fallback: bool,
}

const GROW_FALLBACK_ROUND: usize = 8;

fn targets() -> &'static (Vec<Target>, Duration) {
    static CELL: OnceLock<(Vec<Target>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let cfg = GenerationConfig {
            word_count: 20,
            comparison_fraction: 0.5,
            ..Default::default()
        };
        let mut out: Vec<Target> = Vec::new();
        while out.len() < RANDOM_TARGETS
            || out.iter().filter(|t| t.truth.num_states() <= 3).count() < SMALL_TARGETS
        {
            let symbols = rng.gen_range(1..=3);
            let truth = random_canonical_pdfa(&mut rng, 5, symbols, 4);
            let (sample, round) =
                grow_characteristic_sample(&truth, &cfg, GROW_FALLBACK_ROUND, &mut rng).unwrap();
            out.push(Target {
                truth,
                sample,
                fallback: round >= GROW_FALLBACK_ROUND,
            });
        }
        (out, start.elapsed())
    })
}

fn running_example_recovered() -> Outcome {
    let start = Instant::now();
    let learned = learn_pdfa(&build_prefix_tree(&parity_sample()).unwrap()).unwrap();
    let elapsed = start.elapsed();
    let expected = vec![
        vec!["eps", "a.a", "b.b", "a.a.b.b"],
        vec!["a", "a.b.b"],
        vec!["b", "a.a.b", "a.b.a", "b.a.a", "b.b.b"],
        vec!["a.b", "b.a", "a.b.a.a", "a.b.b.b"],
    ];
    let blocks_ok = learned.block_words() == expected;
    let equiv = learned.to_pdfa().is_ok_and(|a| {
        a.num_states() == 4 && equivalent(&a, &parity_pdfa()).unwrap().is_equivalent()
    });
    outcome(
        blocks_ok && equiv && elapsed < FIG3_LIMIT,
        format!("blocks match: {blocks_ok}, equivalent: {equiv}, {elapsed:.2?}"),
    )
}

fn running_example_trace() -> Outcome {
    let learned = learn_pdfa(&build_prefix_tree(&parity_sample()).unwrap()).unwrap();
    let lines = learned.trace_lines();
    let expected = [
        "i=1 u_i=a tried=[eps] accepted=none",
        "i=2 u_i=b tried=[eps,a] accepted=none",
        "i=3 u_i=a.a tried=[eps] accepted=eps",
    ];
    let lines_ok = lines.len() >= 3 && lines[..3] == expected;
    let label = |q| learned.tree.label(q);
    let cascade: Vec<(String, String)> = match learned.trace.get(2).and_then(|it| it.accepted()) {
        Some(a) => match &a.outcome {
            AttemptOutcome::Accepted { cascade } => {
                cascade.iter().map(|&(p, q)| (label(p), label(q))).collect()
            }
            _ => Vec::new(),
        },
        None => Vec::new(),
    };
    let want = vec![
        ("b".to_string(), "a.a.b".to_string()),
        ("b.b".into(), "a.a.b.b".into()),
    ];
    outcome(
        lines_ok && cascade == want,
        format!("first three lines match: {lines_ok}, cascade {cascade:?}"),
    )
}

fn random_targets_identified() -> Outcome {
    let (ts, elapsed) = targets();
    let learned = ts
        .iter()
        .filter(|t| {
            let l = learn_pdfa(&build_prefix_tree(&t.sample).unwrap()).unwrap();
            l.to_pdfa()
                .is_ok_and(|a| equivalent(&a, &t.truth).unwrap().is_equivalent())
        })
        .count();
    let fallbacks = ts.iter().filter(|t| t.fallback).count();
    outcome(
        ts.len() >= RANDOM_TARGETS && learned == ts.len() && *elapsed < RANDOM_LIMIT,
        format!(
            "{learned}/{} identified, {fallbacks} needed the fallback round, sampling {elapsed:.1?}",
            ts.len()
        ),
    )
}

fn small_targets_minimal() -> Outcome {
    let small: Vec<&Target> = targets()
        .0
        .iter()
        .filter(|t| t.truth.num_states() <= 3)
        .collect();
    let minimal = small
        .iter()
        .filter(|t| {
            let n = t.truth.num_states();
            let found = min_consistent_pdfa(&t.sample, n, 4).unwrap();
            let fewer = min_consistent_pdfa(&t.sample, n - 1, 4).unwrap();
            found.is_some_and(|a| {
                a.num_states() == n && is_consistent(&a, &t.sample).unwrap().is_consistent()
            }) && fewer.is_none()
        })
        .count();
    outcome(
        small.len() >= SMALL_TARGETS && minimal == small.len(),
        format!(
            "{minimal}/{} with at most 3 states are minimal",
            small.len()
        ),
    )
}

fn reduction_agrees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let (mut agree, mut yes) = (0, 0);
    for _ in 0..MCDFA_INSTANCES {
        let x = loop {
            let pos: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| random_word(&mut rng, 2, 3))
                .collect();
            let neg: Vec<_> = (0..rng.gen_range(1..=3))
                .map(|_| random_word(&mut rng, 2, 3))
                .collect();
            if let Ok(x) = McdfaInstance::new(letters(2), pos, neg, rng.gen_range(1..=3)) {
                break x;
            }
        };
        let (sample, k) = reduce_mcdfa(&x);
        let expected = brute_force_mcdfa(&x);
        yes += usize::from(expected);
        if min_consistent_pdfa(&sample, k, k).unwrap().is_some() == expected {
            agree += 1;
        }
    }
    outcome(
        agree == MCDFA_INSTANCES,
        format!("{agree}/{MCDFA_INSTANCES} agree ({yes} solvable)"),
    )
}

fn learned_is_consistent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut samples: Vec<PreferenceSample> = targets().0.iter().map(|t| t.sample.clone()).collect();
    for t in &targets().0 {
        let cfg = GenerationConfig {
            word_count: rng.gen_range(3..=15),
            ..Default::default()
        };
        samples.push(generate_sample(&t.truth, &cfg, &mut rng).unwrap());
    }
    while samples.len() < 3 * RANDOM_TARGETS {
        let s = random_sample(&mut rng, 8, 3);
        if close_sample(&s).is_ok() {
            samples.push(s);
        }
    }
    let bad = samples
        .iter()
        .filter(|s| {
            let l = learn_pdfa(&build_prefix_tree(s).unwrap()).unwrap();
            !l.automaton.is_deterministic()
                || !is_consistent(&l.automaton, s).unwrap().is_consistent()
        })
        .count();
    outcome(
        bad == 0,
        format!("{} samples, {bad} inconsistent outputs", samples.len()),
    )
}

fn garden_experiment() -> Outcome {
    let truth = garden_pdfa();
    let mut details = Vec::new();
    let mut pass = true;
    for fraction in [1.0 / 3.0, 0.5] {
        let cfg = ExperimentConfig {
            counts: vec![50, 700],
            trials: GARDEN_TRIALS,
            fraction,
            seed: SEED,
            ..Default::default()
        };
        let trials = run_trials(&truth, &cfg).unwrap();
        let chars = |n| {
            trials
                .iter()
                .filter(|t| t.words == n && t.characteristic)
                .count()
        };
        let (low, high) = (chars(50), chars(700));
        let sound = trials.iter().all(|t| !t.characteristic || t.canonical);
        pass &= high > low && sound;
        details.push(format!("f={fraction:.2}: characteristic {low}/{GARDEN_TRIALS} at 50, {high}/{GARDEN_TRIALS} at 700, sound {sound}"));
    }
    let cfg = ExperimentConfig {
        fraction: 0.5,
        seed: SEED,
        ..Default::default()
    };
    let start = Instant::now();
    run_trial(&truth, &cfg, 700, 0).unwrap();
    let elapsed = start.elapsed();
    pass &= elapsed < GARDEN_LIMIT;
    details.push(format!("700-word run {elapsed:.2?}"));
    outcome(pass, details.join("; "))
}

fn closure_rules() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let (mut triples, mut samples, mut closed_ok, mut bad) = (0, 0, 0, 0);
    while triples < CLOSURE_TRIPLES {
        let n = rng.gen_range(1..=8);
        let s = random_sample(&mut rng, n, 2);
        triples += n;
        samples += 1;
        let naive = naive_closure(&s);
        match close_sample(&s) {
            Err(_) => bad += usize::from(!has_conflict(&naive)),
            Ok(closed) => {
                closed_ok += 1;
                let w = closed.words();
                let ours = closed
                    .triples()
                    .into_iter()
                    .map(|(i, j, l)| (w[i].clone(), w[j].clone(), l))
                    .collect();
                let again = close_sample(&closed.to_sample()).unwrap();
                if has_conflict(&naive)
                    || ours != naive
                    || rule_violations(&s.words(), &ours) > 0
                    || again.triples() != closed.triples()
                {
                    bad += 1;
                }
            }
        }
    }
    outcome(
        bad == 0,
        format!(
            "{triples} triples in {samples} samples ({closed_ok} closable), {bad} disagreements"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("running example is learned exactly", running_example_recovered),
        ("running example trace and cascade", running_example_trace),
        (
            "random targets identified from characteristic samples",
            random_targets_identified,
        ),
        (
            "target size equals the exhaustive minimum",
            small_targets_minimal,
        ),
        ("minimum consistent DFA reduction", reduction_agrees),
        ("learned automaton is consistent", learned_is_consistent),
        ("garden experiment", garden_experiment),
        ("closure rules and idempotence", closure_rules),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| outcome(false, "panicked".into()));
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {} ({name}): {status}: {}", i + 1, result.detail);
        failed += usize::from(!result.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion/criteria failed");
        ExitCode::FAILURE
    }
}
