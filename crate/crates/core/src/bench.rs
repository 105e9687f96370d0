//! Doubling benchmark for the full pipeline.

use std::fmt::Write;
use std::time::Instant;

use crate::error::Result;
use crate::solver::solve;
use crate::testkit::gen_random_instance;

pub const MIN_REPETITIONS: usize = 5;
const EXTENT: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    /// Total point count `N`; the instance has `n = m = N / 2`.
    pub size: usize,
    pub median_ns: u64,
    /// `median_ns` over the previous row's, absent on the first row.
    pub ratio_vs_prev: Option<f64>,
}

/// Seed of the instance used for size `size`.
pub fn instance_seed(seed: u64, size: usize) -> u64 {
    seed ^ (size as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Times `solve` on one seeded random instance per size; sizes should be
/// ascending. Repetitions run sequentially and at least
/// [`MIN_REPETITIONS`] times.
pub fn bench(sizes: &[usize], seed: u64, repetitions: usize) -> Result<Vec<BenchRow>> {
    let repetitions = repetitions.max(MIN_REPETITIONS);
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let half = (size / 2).max(1);
        let instance = gen_random_instance(half, half, EXTENT, instance_seed(seed, size))?;
        let mut samples = Vec::with_capacity(repetitions);
        for _ in 0..repetitions {
            let (p, s) = instance.clone().into_parts();
            let start = Instant::now();
            let report = solve(p, s)?;
            samples.push(start.elapsed().as_nanos() as u64);
            std::hint::black_box(report);
        }
        samples.sort_unstable();
        let median_ns = samples[samples.len() / 2];
        let ratio_vs_prev = rows.last().map(|prev| median_ns as f64 / prev.median_ns as f64);
        rows.push(BenchRow {
            size,
            median_ns,
            ratio_vs_prev,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("N,median_ns,ratio_vs_prev\n");
    for row in rows {
        let ratio = row.ratio_vs_prev.map(|r| format!("{r:.4}")).unwrap_or_default();
        let _ = writeln!(out, "{},{},{}", row.size, row.median_ns, ratio);
    }
    out
}
