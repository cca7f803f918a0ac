//! Runs named checks over a graph stream on a worker pool.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_connected, enumerate_connected_bipartite, fixtures, sample_connected, CorpusError};
use crate::format::to_graph6;
use crate::graph::Graph;

/// Result of one check on one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckVerdict {
    Agree,
    Disagree(String),
    /// The graph lacks the structure the check is about.
    NotApplicable,
}

pub trait Check: Sync {
    fn name(&self) -> &str;
    fn run(&self, g: &Graph) -> CheckVerdict;
}

/// A check built from a plain function.
pub struct FnCheck {
    pub name: &'static str,
    pub run: fn(&Graph) -> CheckVerdict,
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        self.name
    }

    fn run(&self, g: &Graph) -> CheckVerdict {
        (self.run)(g)
    }
}

/// Which graphs to feed the checks.
#[derive(Clone, Debug)]
pub enum Generator {
    /// Every connected labeled graph with `min_n <= n <= max_n`.
    Connected {
        min_n: usize,
        max_n: usize,
    },
    /// Every connected bipartite labeled graph with `min_n <= n <= max_n`.
    ConnectedBipartite {
        min_n: usize,
        max_n: usize,
    },
    Sample {
        n: usize,
        count: usize,
        seed: u64,
    },
    Fixtures,
    Graphs(Vec<Graph>),
}

impl Generator {
    fn stream(&self) -> Result<Box<dyn Iterator<Item = Graph> + '_>, CorpusError> {
        Ok(match self {
            Generator::Connected { min_n, max_n } => {
                let parts = (*min_n..=*max_n)
                    .map(enumerate_connected)
                    .collect::<Result<Vec<_>, _>>()?;
                Box::new(parts.into_iter().flatten())
            }
            Generator::ConnectedBipartite { min_n, max_n } => {
                let parts = (*min_n..=*max_n)
                    .map(enumerate_connected_bipartite)
                    .collect::<Result<Vec<_>, _>>()?;
                Box::new(parts.into_iter().flatten())
            }
            Generator::Sample { n, count, seed } => Box::new(sample_connected(*n, *count, *seed).into_iter()),
            Generator::Fixtures => Box::new(fixtures::catalogue().into_iter().map(|(_, g)| g)),
            Generator::Graphs(gs) => Box::new(gs.iter().cloned()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    /// Position of the graph in the generator's stream.
    pub index: usize,
    pub graph6: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub graphs_tested: usize,
    pub agreements: usize,
    pub skipped: usize,
    pub disagreement_count: usize,
    /// The first [`MAX_REPORTED`] disagreements in stream order.
    pub disagreements: Vec<Disagreement>,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub checks: Vec<CheckReport>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.disagreement_count == 0)
    }

    pub fn total_disagreements(&self) -> usize {
        self.checks.iter().map(|c| c.disagreement_count).sum()
    }
}

pub const MAX_REPORTED: usize = 25;
const CHUNK: usize = 2048;

fn run_one(gen: &Generator, check: &dyn Check) -> Result<CheckReport, CorpusError> {
    let start = Instant::now();
    let mut report = CheckReport {
        name: check.name().to_string(),
        graphs_tested: 0,
        agreements: 0,
        skipped: 0,
        disagreement_count: 0,
        disagreements: Vec::new(),
        wall_ms: 0,
    };
    let mut stream = gen.stream()?.enumerate();
    loop {
        let chunk: Vec<(usize, Graph)> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        // Collecting an indexed parallel iterator keeps stream order.
        let verdicts: Vec<CheckVerdict> = chunk.par_iter().map(|(_, g)| check.run(g)).collect();
        for ((index, g), verdict) in chunk.iter().zip(verdicts) {
            report.graphs_tested += 1;
            match verdict {
                CheckVerdict::Agree => report.agreements += 1,
                CheckVerdict::NotApplicable => report.skipped += 1,
                CheckVerdict::Disagree(detail) => {
                    report.disagreement_count += 1;
                    if report.disagreements.len() < MAX_REPORTED {
                        report.disagreements.push(Disagreement {
                            index: *index,
                            graph6: to_graph6(g),
                            detail,
                        });
                    }
                }
            }
        }
    }
    report.wall_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Runs every check over the generator's graphs. Disagreements are data, so
/// the only error is an invalid generator.
pub fn crosscheck(gen: &Generator, checks: &[&dyn Check]) -> Result<CrosscheckReport, CorpusError> {
    let checks = checks.iter().map(|c| run_one(gen, *c)).collect::<Result<_, _>>()?;
    Ok(CrosscheckReport { checks })
}
