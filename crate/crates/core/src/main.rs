use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = arcfilt::cli::run(std::env::args_os());
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    let _ = handle.write_all(outcome.stdout().as_bytes());
    let _ = handle.flush();
    for message in &outcome.messages {
        eprintln!("{message}");
    }
    ExitCode::from(outcome.exit_code)
}
