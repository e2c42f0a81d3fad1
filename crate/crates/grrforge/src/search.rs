//! Parallel drivers over independent certifications.
//!
//! Work is split into fixed chunks processed in order, so reports do not
//! depend on the number of threads.

use std::time::{Duration, Instant};

use grrforge_core::grr::{candidates, certify, GrrVerdict, SearchReport, Shape};
use grrforge_core::table::ElementTable;
use grrforge_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::budget::Limits;

const CHUNK: usize = 256;

/// A verdict with its wall time.
#[derive(Debug, Clone)]
pub struct Timed {
    pub verdict: GrrVerdict,
    pub elapsed: Duration,
}

pub fn certify_timed(table: &ElementTable, s: &[u32], limits: Limits) -> Result<Timed> {
    let start = Instant::now();
    let verdict = certify(table, s, &mut limits.start())?;
    Ok(Timed {
        verdict,
        elapsed: start.elapsed(),
    })
}

/// The sets {x, x⁻¹, y} for every involution y.
pub fn mixed_with_x(table: &ElementTable, x: u32) -> Result<Vec<Vec<u32>>> {
    let xi = table.inv(x);
    if x == 0 || xi == x {
        return Err(Error::InvalidConnectionSet("x must have order greater than 2".into()));
    }
    Ok(table.involutions().iter().map(|&y| vec![x, xi, y]).collect())
}

/// Certify every set; stops after the chunk holding the first witness when `first_only`.
pub fn search_sets(
    table: &ElementTable,
    shape: Shape,
    sets: &[Vec<u32>],
    first_only: bool,
    limits: Limits,
) -> Result<SearchReport> {
    let mut report = SearchReport {
        shape,
        candidates: sets.len() as u64,
        examined: 0,
        generating: 0,
        witnesses: Vec::new(),
        unknown: 0,
        complete: true,
    };
    for chunk in sets.chunks(CHUNK) {
        let verdicts: Vec<GrrVerdict> = chunk
            .par_iter()
            .map(|s| certify(table, s, &mut limits.start()))
            .collect::<Result<_>>()?;
        for v in verdicts {
            report.examined += 1;
            report.generating += v.generates as u64;
            if v.budget_exceeded {
                report.unknown += 1;
            }
            if v.is_grr {
                report.witnesses.push(v.connection);
                if first_only {
                    // a witness settles existence even if earlier sets were undecided
                    report.complete = true;
                    return Ok(report);
                }
            }
        }
    }
    report.complete = report.unknown == 0;
    Ok(report)
}

pub fn search_shape(table: &ElementTable, shape: Shape, first_only: bool, limits: Limits) -> Result<SearchReport> {
    search_sets(table, shape, &candidates(table, shape), first_only, limits)
}

/// Empirical P(x) over all involutions, or over `samples` uniform ones drawn from `seed`.
#[derive(Debug, Clone)]
pub struct EstimateRun {
    pub successes: u64,
    pub trials: u64,
    pub involutions: u64,
    pub exhaustive: bool,
}

pub fn estimate(table: &ElementTable, x: u32, samples: Option<u64>, seed: u64, limits: Limits) -> Result<EstimateRun> {
    let xi = table.inv(x);
    if x == 0 || xi == x {
        return Err(Error::InvalidConnectionSet("x must have order greater than 2".into()));
    }
    let ys: Vec<u32> = match samples {
        None => table.involutions().to_vec(),
        Some(0) => return Err(Error::OutOfRange("sample size must be positive".into())),
        Some(n) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| table.sample_involution(&mut rng))
                .collect::<Result<_>>()?
        }
    };
    let verdicts: Vec<GrrVerdict> = ys
        .par_iter()
        .map(|&y| certify(table, &[x, xi, y], &mut limits.start()))
        .collect::<Result<_>>()?;
    let unknown = verdicts.iter().filter(|v| v.budget_exceeded).count() as u64;
    if unknown > 0 {
        return Err(Error::BudgetExceeded(format!(
            "{unknown} certifications ran out of budget"
        )));
    }
    Ok(EstimateRun {
        successes: verdicts.iter().filter(|v| v.is_grr).count() as u64,
        trials: ys.len() as u64,
        involutions: table.involutions().len() as u64,
        exhaustive: samples.is_none(),
    })
}
