use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hkcourant::courant::verify_axioms;
use hkcourant::report::all_pass;
use hkcourant::run::{emit, run, to_json, Format, RunConfig};
use hkcourant::sample::SuiteOptions;
use hkcourant::structure::{parse_structure_path, Example};

#[derive(Parser)]
#[command(name = "hkcourant", version, about = "Exact verification of hypercomplex structures on TM ⊕ T*M")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleArg {
    FlatQuaternionic,
    HolomorphicSymplectic,
    Nonintegrable,
}

impl From<ExampleArg> for Example {
    fn from(e: ExampleArg) -> Example {
        match e {
            ExampleArg::FlatQuaternionic => Example::FlatQuaternionic,
            ExampleArg::HolomorphicSymplectic => Example::HolomorphicSymplectic,
            ExampleArg::Nonintegrable => Example::Nonintegrable,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the Courant algebroid axioms on random polynomial sections.
    VerifyAxioms {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Run the suites selected in a structure file.
    Check {
        file: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[arg(long)]
        parallel: bool,
        /// Record wall time per suite.
        #[arg(long)]
        timings: bool,
    },
    /// Print or write a built-in example structure file.
    Examples {
        #[arg(value_enum)]
        name: ExampleArg,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), ExitCode> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(2)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::VerifyAxioms {
            dim,
            degree,
            trials,
            seed,
            parallel,
        } => {
            if dim == 0 {
                eprintln!("error: --dim must be at least 1");
                return ExitCode::from(2);
            }
            let opts = SuiteOptions {
                trials,
                degree,
                seed,
                parallel,
            };
            let reports = verify_axioms(dim, &opts);
            let code = if all_pass(&reports) { 0 } else { 1 };
            write_or_print(None, &to_json(&reports)).map(|_| code)
        }
        Command::Check {
            file,
            report,
            format,
            parallel,
            timings,
        } => {
            let (sf, bytes) = match parse_structure_path(&file) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let id = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "input".into());
            let rep = run(&sf, &id, &bytes, &RunConfig { parallel, timings });
            let (text, code) = emit(&rep, format.into());
            write_or_print(report.as_deref(), &text).map(|_| code)
        }
        Command::Examples { name, emit } => {
            let example: Example = name.into();
            write_or_print(emit.as_deref(), &example.to_json()).map(|_| 0)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(code) => code,
    }
}
