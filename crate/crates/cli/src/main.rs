use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use paley_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run(cli, &mut out);
    let _ = out.flush();
    ExitCode::from(code)
}
