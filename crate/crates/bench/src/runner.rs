//! Wall-clock measurement of serialize and parse over the in-memory path.

use std::time::Instant;

use wirepack::{from_bytes, to_bytes, Serializable};

use crate::report::BenchRow;
use crate::workload::{BenchError, Workload, WorkloadData};

/// Runs one workload: verifies the round trip once, then times `reps`
/// serialize and parse passes and reports the medians. Generation and the
/// verification pass are excluded from the timings; buffer allocation is
/// included, since it is part of what a caller pays.
pub fn run_benchmark(workload: &Workload, reps: u32) -> Result<BenchRow, BenchError> {
    assert!(reps >= 1, "repetitions must be at least 1");
    let kind = workload.spec.kind();
    let data = workload.generate()?;
    let (size_bytes, serialize_s, parse_s) = match &data {
        WorkloadData::DoubleArray(v) => measure(v, reps, kind.name(), true)?,
        WorkloadData::SparseMatrix(v) => measure(v, reps, kind.name(), true)?,
        WorkloadData::HashMap(v) => measure(v, reps, kind.name(), false)?,
    };
    Ok(BenchRow {
        kind: kind.name().to_string(),
        params: workload.spec.canonical_params(workload.seed),
        size_bytes,
        serialize_s,
        parse_s,
        reps,
    })
}

fn measure<T: Serializable + PartialEq>(
    value: &T,
    reps: u32,
    kind: &'static str,
    ordered: bool,
) -> Result<(u64, f64, f64), BenchError> {
    // A benchmark of a broken codec is meaningless: check correctness once,
    // outside the timed region.
    let wire = to_bytes(value)?;
    let back: T = from_bytes(&wire)?;
    if back != *value {
        return Err(BenchError::RoundTrip { kind });
    }
    let size_bytes = wire.len() as u64;
    drop(wire);
    drop(back);

    let mut serialize_times = Vec::with_capacity(reps as usize);
    let mut parse_times = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let start = Instant::now();
        let wire = to_bytes(value)?;
        serialize_times.push(start.elapsed().as_secs_f64());

        if ordered {
            assert_eq!(wire.len() as u64, size_bytes, "size varied across reps");
        }

        let start = Instant::now();
        let parsed: T = from_bytes(&wire)?;
        parse_times.push(start.elapsed().as_secs_f64());
        std::hint::black_box(&parsed);
    }
    Ok((size_bytes, median(&mut serialize_times), median(&mut parse_times)))
}

fn median(samples: &mut [f64]) -> f64 {
    samples.sort_by(|a, b| a.total_cmp(b));
    let mid = samples.len() / 2;
    if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2.0
    }
}

/// One line of host context for reading reports later; not a report column.
pub fn host_description() -> String {
    let cpus = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    format!(
        "{}-{} {cpus} cpu{}",
        std::env::consts::ARCH,
        std::env::consts::OS,
        if cpus == 1 { "" } else { "s" }
    )
}
