//! Benchmark harness for wirepack: generates three reference workloads —
//! a double array, a sparse matrix in row-list form, and a string-to-double
//! hash map — measures serialize time, parse time, and message size, and
//! emits machine-readable reports.

pub mod report;
pub mod runner;
pub mod workload;

pub use report::{emit_report, BenchRow, ReportFormat};
pub use runner::{host_description, run_benchmark};
pub use workload::{BenchError, SparseRow, Workload, WorkloadData, WorkloadKind, WorkloadSpec};
