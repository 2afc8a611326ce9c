//! Exhaustive verification: syndrome injectivity and decode round trip over
//! the whole correctable class.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Correction, LinearCode};
use crate::error::DecodeError;
use crate::lattice::{enumerate_patterns, ErrorPattern, Position};
use crate::pipeline::{redundancy_report, AnyCode, RedundancyReport, TableDecoder};
use crate::syndrome::Syndrome;

/// Failures kept in full; the rest are only counted.
const MAX_LISTED: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub pattern: Vec<Position>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    /// `None` is the no-error event.
    pub first: Option<Vec<Position>>,
    pub second: Vec<Position>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub code: String,
    pub shape: String,
    /// Correctable patterns plus the no-error event.
    pub class_size: usize,
    pub patterns_tested: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
    pub injective: bool,
    pub collisions: Vec<Collision>,
    pub redundancy: RedundancyReport,
    pub wall_clock_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.injective
    }
}

/// Verify with the code's own decoder.
pub fn verify(code: &AnyCode, jobs: Option<usize>) -> VerifyReport {
    verify_with(code, &|s| code.decode_syndrome(s), jobs)
}

/// Verify with a substitute decoder.
pub fn verify_with(
    code: &AnyCode,
    decoder: &(dyn Fn(&Syndrome) -> Result<Correction, DecodeError> + Sync),
    jobs: Option<usize>,
) -> VerifyReport {
    let run = || run_verify(code, decoder);
    match jobs {
        Some(j) if j > 0 => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        _ => run(),
    }
}

fn describe(r: &Result<Correction, DecodeError>, code: &AnyCode) -> String {
    match r {
        Ok(Correction::NoError) => "no error".into(),
        Ok(Correction::Pattern(p)) => format!("{:?}", positions(p, code)),
        Err(e) => e.to_string(),
    }
}

fn positions(p: &ErrorPattern, code: &AnyCode) -> Vec<Vec<usize>> {
    p.positions(code.dims()).into_iter().map(|q| q.0).collect()
}

fn run_verify(
    code: &AnyCode,
    decoder: &(dyn Fn(&Syndrome) -> Result<Correction, DecodeError> + Sync),
) -> VerifyReport {
    let start = Instant::now();
    let dims = code.dims();
    let patterns = enumerate_patterns(dims, &code.shape());
    let zero = decoder(&Syndrome::zeros(code.redundancy()));
    let mut failures: Vec<Failure> = Vec::new();
    if zero != Ok(Correction::NoError) {
        failures.push(Failure { pattern: Vec::new(), expected: "no error".into(), got: describe(&zero, code) });
    }
    let bad: Vec<Failure> = patterns
        .par_iter()
        .filter_map(|p| {
            let got = decoder(&code.syndrome_of(p));
            let want = Ok(Correction::Pattern(p.clone()));
            (got != want).then(|| Failure {
                pattern: p.positions(dims),
                expected: describe(&want, code),
                got: describe(&got, code),
            })
        })
        .collect();
    failures.extend(bad);
    let failure_count = failures.len();
    failures.truncate(MAX_LISTED);

    let table = TableDecoder::build(code);
    let collisions = table
        .collisions()
        .iter()
        .take(MAX_LISTED)
        .map(|(a, b)| Collision { first: a.as_ref().map(|p| p.positions(dims)), second: b.positions(dims) })
        .collect();
    VerifyReport {
        code: code.name(),
        shape: code.shape().to_string(),
        class_size: patterns.len() + 1,
        patterns_tested: patterns.len() + 1,
        failure_count,
        failures,
        injective: table.is_injective(),
        collisions,
        redundancy: redundancy_report(code, true),
        wall_clock_ms: start.elapsed().as_millis(),
    }
}
