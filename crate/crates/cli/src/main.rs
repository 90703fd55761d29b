use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use powmon_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 for --help
    let cli = Cli::parse();
    if cli.common.parallelism > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.parallelism)
            .build_global()
        {
            eprintln!("powmon: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let outcome = run(&cli);
    if let Some(e) = outcome.metadata.get("error") {
        eprintln!("powmon: {}", e.as_str().unwrap_or_default());
    } else {
        eprintln!("# metadata {}", outcome.metadata);
    }
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("powmon: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.code as u8)
}
