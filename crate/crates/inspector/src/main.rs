//! CLI entry point: decode wire bytes against a schema expression and print
//! the annotated value tree.
//!
//! Exit codes: 0 on success, 1 on decode or input errors, 2 on usage errors
//! (including malformed schema or hex text).

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use wirepack_inspect::{inspect, parse_hex, parse_schema, render_json, render_tree};

#[derive(Parser)]
#[command(
    name = "inspect",
    about = "Decode tag-free wire bytes into a value tree using a schema expression",
    after_help = "SCHEMA GRAMMAR:\n    \
        scalars: u8 u16 u32 u64 i8 i16 i32 i64 f32 f64 bool str\n    \
        containers: seq<T>  set<T>  map<K,V>  pair<A,B>  record{name:T, ...}\n\n\
        EXAMPLES:\n    \
        inspect --schema 'seq<u32>' --hex '02 16 cd 02'\n    \
        inspect --schema 'record{n:u32,from:set<u32>,to:set<u32>}' --in msg.bin\n    \
        cat msg.bin | inspect --schema 'map<str,f64>' --format json"
)]
struct Cli {
    /// Schema expression describing the message shape
    #[arg(long, value_name = "EXPR")]
    schema: String,

    /// Inline hex input: pairs of hex digits, any case, whitespace ignored
    #[arg(long, value_name = "TEXT", conflicts_with = "input")]
    hex: Option<String>,

    /// Read raw bytes from this file (default: raw bytes from stdin)
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Tree)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tree,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let schema = match parse_schema(&cli.schema) {
        Ok(schema) => schema,
        Err(err) => {
            eprintln!("error: invalid --schema: {err}");
            return ExitCode::from(2);
        }
    };

    let bytes = match read_input(&cli) {
        Ok(bytes) => bytes,
        Err((message, code)) => {
            eprintln!("error: {message}");
            return ExitCode::from(code);
        }
    };

    match inspect(&schema, &bytes) {
        Ok(tree) => {
            match cli.format {
                Format::Tree => print!("{}", render_tree(&schema, &tree)),
                Format::Json => println!("{}", render_json(&schema, &tree)),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn read_input(cli: &Cli) -> Result<Vec<u8>, (String, u8)> {
    if let Some(hex) = &cli.hex {
        return parse_hex(hex).map_err(|e| (format!("invalid --hex: {e}"), 2));
    }
    if let Some(path) = &cli.input {
        return fs::read(path).map_err(|e| (format!("cannot read {}: {e}", path.display()), 1));
    }
    let mut bytes = Vec::new();
    std::io::stdin()
        .read_to_end(&mut bytes)
        .map_err(|e| (format!("cannot read stdin: {e}"), 1))?;
    Ok(bytes)
}
