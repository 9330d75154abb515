use std::process::ExitCode;

use brickforge_cli::config::{Cli, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match RunConfig::from_command(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let report = brickforge_cli::run(&config);
    print!("{}", report.render(config.format));
    ExitCode::from(report.exit_code() as u8)
}
