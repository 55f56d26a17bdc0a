use std::io;
use std::process::ExitCode;

use clap::Parser;
use smallcancel_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = run(cli, &mut io::stdout().lock(), &mut io::stderr());
    ExitCode::from(status as u8)
}
