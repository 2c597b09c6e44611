use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = belief_markov_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let _ = stdout.write_all(result.stdout.as_bytes());
    let _ = stderr.write_all(result.stderr.as_bytes());
    ExitCode::from(result.code as u8)
}
