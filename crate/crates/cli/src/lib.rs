//! Verification driver for brick polytopes and cluster algebras of finite type.

pub mod checks;
pub mod config;
pub mod counterexamples;
pub mod display;
pub mod fixtures;
pub mod plot;
pub mod report;
pub mod scan;

use std::time::Instant;

use brickforge::coxeter::{build_cartan, CartanType, CoxeterWord, Family};
use rayon::prelude::*;

use crate::checks::Outcome;
use crate::config::{Check, RunConfig};
use crate::report::{Record, Report, Status};

#[derive(Debug, Clone)]
enum Task {
    Instance { t: CartanType, c: CoxeterWord, check: Check },
    Counterexamples,
    Scan { t: CartanType },
}

fn tasks(config: &RunConfig) -> Vec<Task> {
    let mut out = Vec::new();
    for &check in &config.checks {
        match check {
            Check::Counterexamples => out.push(Task::Counterexamples),
            Check::Scan => {
                if config.scan_length > 0 {
                    out.extend(config.types.iter().map(|&t| Task::Scan { t }));
                }
            }
            _ => {
                for &t in &config.types {
                    let opt_out = config.default_batch && !config.include_f4_tropical;
                    if check == Check::Tropical && t.family == Family::F && opt_out {
                        continue;
                    }
                    for c in config.coxeter_words(t) {
                        out.push(Task::Instance { t, c, check });
                    }
                }
            }
        }
    }
    out
}

fn record(t: &str, word: &str, check: &str, outcome: Outcome, millis: u64) -> Record {
    Record {
        cartan_type: t.to_string(),
        coxeter_word: word.to_string(),
        check: check.to_string(),
        status: outcome.status,
        witness: outcome.witness,
        millis,
        details: outcome.details,
    }
}

fn or_error(result: brickforge::Result<Outcome>) -> Outcome {
    result.unwrap_or_else(|e| Outcome::fail(format!("error: {e}"), vec![]))
}

fn execute(task: &Task, config: &RunConfig) -> Vec<Record> {
    let start = Instant::now();
    let dir = config.fixtures.as_deref();
    let outcomes: Vec<(String, String, String, Outcome)> = match task {
        Task::Instance { t, c, check } => {
            let (ts, cs) = (t.to_string(), c.to_string());
            match check {
                Check::Tables => match checks::tables(*t, c, dir, config.seed_budget) {
                    Ok(list) => {
                        list.into_iter().map(|(name, o)| (ts.clone(), cs.clone(), name.to_string(), o)).collect()
                    }
                    Err(e) => vec![(ts, cs, "tables".into(), Outcome::fail(format!("error: {e}"), vec![]))],
                },
                Check::Typecone => vec![(ts, cs, "typecone".into(), or_error(checks::typecone(*t, c)))],
                Check::Newton => vec![(ts, cs, "newton".into(), or_error(checks::newton(*t, c, config.seed_budget)))],
                Check::Tropical => {
                    let o = checks::tropical(*t, c, dir, config.seed, config.seed_budget);
                    vec![(ts, cs, "tropical".into(), or_error(o))]
                }
                Check::Properties => {
                    vec![(ts, cs, "properties".into(), or_error(checks::properties(*t, c, config.seed_budget)))]
                }
                Check::Plot => vec![(ts, cs, "plot".into(), or_error(plot::plot_data(*t, c, config.seed_budget)))],
                Check::Counterexamples | Check::Scan => unreachable!("not instance checks"),
            }
        }
        Task::Counterexamples => {
            let text = match fixtures::lookup(dir, "counterexamples.txt") {
                Ok(Some(text)) => text,
                Ok(None) => String::new(),
                Err(e) => {
                    let o = Outcome::fail(format!("reading counterexample fixture: {e}"), vec![]);
                    return vec![record("-", "-", "counterexamples", o, 0)];
                }
            };
            match counterexamples::parse_fixture(&text) {
                Ok(list) => list
                    .iter()
                    .map(|f| {
                        let o = counterexamples::check_word(f);
                        (f.cartan_type.to_string(), f.word.to_string(), "counterexamples".into(), o)
                    })
                    .collect(),
                Err(e) => vec![("-".into(), "-".into(), "counterexamples".into(), Outcome::fail(e, vec![]))],
            }
        }
        Task::Scan { t } => {
            let result = scan::scan(&build_cartan(*t), config.scan_length);
            vec![(
                t.to_string(),
                format!("length<={}", config.scan_length),
                "scan".into(),
                Outcome::pass(result.lines()),
            )]
        }
    };
    let millis = if config.timing { start.elapsed().as_millis() as u64 } else { 0 };
    outcomes.into_iter().map(|(t, c, check, o)| record(&t, &c, &check, o, millis)).collect()
}

fn skipped(task: &Task) -> Record {
    let (t, c, check) = match task {
        Task::Instance { t, c, check } => (t.to_string(), c.to_string(), check.name().to_string()),
        Task::Counterexamples => ("-".into(), "-".into(), "counterexamples".into()),
        Task::Scan { t } => (t.to_string(), "-".into(), "scan".into()),
    };
    let o = Outcome { status: Status::Skipped, witness: Some("time budget exhausted".into()), details: vec![] };
    record(&t, &c, &check, o, 0)
}

/// Runs every selected check; records come back in task order.
pub fn run(config: &RunConfig) -> Report {
    let tasks = tasks(config);
    let start = Instant::now();
    let work = || -> Vec<Vec<Record>> {
        tasks
            .par_iter()
            .map(|task| match config.budget {
                Some(b) if start.elapsed() > b => vec![skipped(task)],
                _ => execute(task, config),
            })
            .collect()
    };
    let nested = match config.threads {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build().expect("thread pool").install(work),
        None => work(),
    };
    Report { records: nested.into_iter().flatten().collect() }
}
