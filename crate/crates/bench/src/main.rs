//! CLI entry point for the benchmark harness.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use wirepack_bench::{
    emit_report, host_description, run_benchmark, BenchRow, ReportFormat, Workload, WorkloadKind,
    WorkloadSpec,
};

#[derive(Parser)]
#[command(
    name = "bench",
    about = "Measure wirepack serialize/parse time and message size on reference workloads",
    after_help = "EXAMPLES:\n    \
        bench --all\n    \
        bench --kind double_array --params n=1000000 --reps 5\n    \
        bench --kind sparse_matrix --params rows=10000,nnz=100 --format jsonlines\n    \
        bench --kind hash_map --dump map.bin    # write the wire bytes for the inspector"
)]
struct Cli {
    /// Run all three workloads at their default sizes
    #[arg(long, conflicts_with_all = ["kind", "params", "dump"])]
    all: bool,

    /// Workload to run
    #[arg(long, value_enum)]
    kind: Option<KindArg>,

    /// Size parameters as key=value pairs, e.g. "n=1000000" or
    /// "rows=10000,nnz=100,cols=20000" or "entries=100000,keylen=16"
    #[arg(long, default_value = "", requires = "kind")]
    params: String,

    /// Timed repetitions per workload (median is reported)
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    reps: u32,

    /// RNG seed for workload generation
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Skip timing: serialize the generated workload to this file,
    /// consumable by the inspector
    #[arg(long, value_name = "PATH", requires = "kind")]
    dump: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum KindArg {
    DoubleArray,
    SparseMatrix,
    HashMap,
}

impl From<KindArg> for WorkloadKind {
    fn from(kind: KindArg) -> WorkloadKind {
        match kind {
            KindArg::DoubleArray => WorkloadKind::DoubleArray,
            KindArg::SparseMatrix => WorkloadKind::SparseMatrix,
            KindArg::HashMap => WorkloadKind::HashMap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Jsonlines,
}

impl From<FormatArg> for ReportFormat {
    fn from(format: FormatArg) -> ReportFormat {
        match format {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Jsonlines => ReportFormat::JsonLines,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Box<dyn std::error::Error>> {
    let specs: Vec<WorkloadSpec> = if cli.all {
        WorkloadKind::ALL
            .iter()
            .map(|kind| WorkloadSpec::default_for(*kind))
            .collect()
    } else if let Some(kind) = cli.kind {
        vec![WorkloadSpec::parse(kind.into(), &cli.params)?]
    } else {
        // Not a runtime failure: the invocation itself is incomplete.
        clap::error::Error::<clap::error::DefaultFormatter>::raw(
            clap::error::ErrorKind::MissingRequiredArgument,
            "one of --all or --kind is required\n",
        )
        .exit();
    };

    if let Some(path) = &cli.dump {
        let workload = Workload::new(specs[0].clone(), cli.seed);
        let wire = workload.generate()?.to_wire()?;
        fs::write(path, wire.as_bytes())?;
        eprintln!(
            "wrote {} bytes ({}, {})",
            wire.len(),
            specs[0].kind().name(),
            specs[0].canonical_params(cli.seed)
        );
        return Ok(());
    }

    eprintln!("host: {}", host_description());
    let mut rows: Vec<BenchRow> = Vec::with_capacity(specs.len());
    for spec in specs {
        let name = spec.kind().name();
        eprintln!("running {name} ({})...", spec.canonical_params(cli.seed));
        rows.push(run_benchmark(&Workload::new(spec, cli.seed), cli.reps)?);
    }

    let text = emit_report(&rows, cli.format.into());
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
