use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use ptengine::report::{cli::Cli, run};

fn main() -> ExitCode {
    let spec = Cli::parse().into_spec();
    let out = run(&spec);
    eprint!("{}", out.stderr);
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(&out.stdout).and_then(|()| stdout.flush()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(out.code as u8)
}
