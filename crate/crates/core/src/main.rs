use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = coherent_realize::cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(outcome.code as u8)
}
