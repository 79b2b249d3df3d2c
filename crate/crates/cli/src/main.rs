use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use pdfa_core::automaton::PreferenceModel;
use pdfa_core::dot::to_dot;
use pdfa_core::format::{parse_automaton, write_automaton, write_pdfa};
use pdfa_core::oracle::experiment::{run_experiment, to_csv, ExperimentConfig};
use pdfa_core::oracle::generate::{generate_sample, GenerationConfig};
use pdfa_core::oracle::reduction::{reduce_mcdfa, McdfaInstance};
use pdfa_core::oracle::search::min_consistent_pdfa;
use pdfa_core::{
    build_prefix_tree, close_sample, compare_words, equivalent, is_characteristic, is_consistent,
    learn_pdfa, rank_partition, validate_sample, Alphabet, Pdfa, Pnfa, PreferenceSample, Word,
};

#[derive(Parser)]
#[command(
    name = "pdfa",
    version,
    about = "Learn preference automata from pairwise comparisons"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn an automaton from a sample.
    Learn {
        #[arg(long)]
        sample: PathBuf,
        /// Print one line per merge iteration.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Report label conflicts, foreign symbols and closure problems in a sample.
    Validate {
        #[arg(long)]
        sample: PathBuf,
    },
    /// Check whether a sample is characteristic for an automaton.
    CheckCharacteristic {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(long)]
        sample: PathBuf,
    },
    /// Compare two words under an automaton.
    Compare {
        #[arg(long)]
        pdfa: PathBuf,
        first: String,
        second: String,
    },
    /// List the comparisons of a sample an automaton disagrees with.
    Consistent {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(long)]
        sample: PathBuf,
    },
    /// Decide whether two automata encode the same preorder.
    Equiv {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(long)]
        pdfa2: PathBuf,
    },
    /// Draw random words and label them with an automaton.
    Generate {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(long)]
        words: usize,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        fraction: f64,
        #[arg(long, default_value_t = 0.25)]
        stop: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a smallest consistent automaton (tiny inputs only).
    Oracle {
        #[arg(long)]
        sample: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        ranks: usize,
    },
    /// Turn a minimum consistent DFA instance into a preference sample.
    Reduce {
        #[arg(long)]
        positive: PathBuf,
        #[arg(long)]
        negative: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run repeated learning trials and write per-size counts as CSV.
    Experiment {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "50,100,200,300,400,500,600,700"
        )]
        counts: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1.0 / 3.0)]
        fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export an automaton as Graphviz DOT.
    Dot {
        #[arg(long)]
        pdfa: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_sample(path: &Path) -> Result<PreferenceSample> {
    PreferenceSample::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_automaton(path: &Path) -> Result<Pnfa> {
    parse_automaton(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_pdfa(path: &Path) -> Result<Pdfa> {
    load_automaton(path)?
        .to_pdfa()
        .map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// A word list: an `alphabet:` header, then one word per non-blank line.
fn load_words(path: &Path) -> Result<(Alphabet, Vec<Word>)> {
    let text = read(path)?;
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().unwrap_or_default();
    let tokens = header
        .strip_prefix("alphabet:")
        .ok_or_else(|| anyhow!("{}: expected an `alphabet:` header", path.display()))?;
    let alphabet = Alphabet::new(tokens.split_whitespace())?;
    let words = lines
        .map(|l| alphabet.parse_word(l))
        .collect::<pdfa_core::Result<Vec<_>>>()
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok((alphabet, words))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Learn {
            sample,
            trace,
            out,
            dot,
        } => {
            let s = load_sample(&sample)?;
            let tree = build_prefix_tree(&s).map_err(|e| anyhow!("{}: {e}", sample.display()))?;
            let learned = learn_pdfa(&tree)?;
            if trace {
                for line in learned.trace_lines() {
                    println!("{line}");
                }
            }
            for w in &learned.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &write_automaton(&learned.automaton))?;
            if let Some(d) = dot {
                emit(Some(&d), &to_dot(&learned.automaton))?;
            }
        }
        Command::Validate { sample } => {
            let (s, mut diagnostics) = PreferenceSample::parse_lenient(&read(&sample)?)
                .map_err(|e| anyhow!("{}: {e}", sample.display()))?;
            diagnostics.extend(validate_sample(&s));
            for d in &diagnostics {
                println!("{}: {d}", sample.display());
            }
            if !diagnostics.is_empty() {
                bail!(
                    "{}: {} problem(s) found",
                    sample.display(),
                    diagnostics.len()
                );
            }
            let blocks = rank_partition(&s).map_err(|e| anyhow!("{}: {e}", sample.display()))?;
            let closed = close_sample(&s).map_err(|e| anyhow!("{}: {e}", sample.display()))?;
            println!(
                "ok: {} comparisons, {} words, {} closed triples, {} rank blocks",
                s.len(),
                closed.words().len(),
                closed.len(),
                blocks.len()
            );
        }
        Command::CheckCharacteristic { pdfa, sample } => {
            let report = is_characteristic(&load_pdfa(&pdfa)?, &load_sample(&sample)?)?;
            print!("{report}");
        }
        Command::Compare {
            pdfa,
            first,
            second,
        } => {
            let a = load_automaton(&pdfa)?;
            let w1 = a.alphabet().parse_word(&first)?;
            let w2 = a.alphabet().parse_word(&second)?;
            println!("{}", compare_words(&a, &w1, &w2)?);
        }
        Command::Consistent { pdfa, sample } => {
            let a = load_automaton(&pdfa)?;
            let s = load_sample(&sample)?;
            let report = is_consistent(&a, &s)?;
            for v in &report.violations {
                let c = &s.comparisons()[v.index];
                println!(
                    "{}:{}: {} {} {} but the automaton says {}",
                    sample.display(),
                    v.line.map_or("?".into(), |l| l.to_string()),
                    s.alphabet().display(&c.left),
                    c.label.token(),
                    s.alphabet().display(&c.right),
                    v.found
                );
            }
            if report.is_consistent() {
                println!("consistent ({} undetermined)", report.undetermined.len());
            } else {
                println!("inconsistent: {} violation(s)", report.violations.len());
            }
        }
        Command::Equiv { pdfa, pdfa2 } => {
            let (a, b) = (load_pdfa(&pdfa)?, load_pdfa(&pdfa2)?);
            let res = equivalent(&a, &b)?;
            match &res.counterexample {
                None => {
                    println!("equivalent");
                    for (p, q) in &res.correspondence {
                        println!("  {} <-> {}", a.state_name(*p), b.state_name(*q));
                    }
                }
                Some((w1, w2)) => {
                    println!(
                        "not equivalent: ({}, {}) is {} in the first and {} in the second",
                        a.alphabet().display(w1),
                        a.alphabet().display(w2),
                        compare_words(&a, w1, w2)?,
                        compare_words(&b, w1, w2)?
                    );
                }
            }
        }
        Command::Generate {
            pdfa,
            words,
            fraction,
            stop,
            seed,
            out,
        } => {
            let a = load_pdfa(&pdfa)?;
            let cfg = GenerationConfig {
                word_count: words,
                stop_probability: stop,
                comparison_fraction: fraction,
                seed,
            };
            let s = generate_sample(&a, &cfg, &mut cfg.rng())?;
            emit(out.as_deref(), &s.to_text())?;
        }
        Command::Oracle { sample, k, ranks } => {
            match min_consistent_pdfa(&load_sample(&sample)?, k, ranks)? {
                Some(a) => print!("{}", write_pdfa(&a)),
                None => println!("none"),
            }
        }
        Command::Reduce {
            positive,
            negative,
            k,
            out,
        } => {
            let (alphabet, pos) = load_words(&positive)?;
            let (other, neg) = load_words(&negative)?;
            alphabet.ensure_same(&other)?;
            let (s, k) = reduce_mcdfa(&McdfaInstance::new(alphabet, pos, neg, k)?);
            emit(out.as_deref(), &s.to_text())?;
            eprintln!("bound: {k}");
        }
        Command::Experiment {
            pdfa,
            counts,
            trials,
            fraction,
            seed,
            csv,
        } => {
            let cfg = ExperimentConfig {
                counts,
                trials,
                fraction,
                seed,
                ..Default::default()
            };
            let rows = run_experiment(&load_pdfa(&pdfa)?, &cfg)?;
            emit(csv.as_deref(), &to_csv(&rows))?;
        }
        Command::Dot { pdfa, out } => {
            emit(out.as_deref(), &to_dot(&load_automaton(&pdfa)?))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
