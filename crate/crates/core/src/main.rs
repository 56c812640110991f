use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = treeseries::cli::run(std::env::args_os());
    if !outcome.text.is_empty() {
        // a closed pipe is not an error worth reporting
        let _ = if outcome.status == 2 {
            writeln!(std::io::stderr(), "{}", outcome.text)
        } else {
            writeln!(std::io::stdout(), "{}", outcome.text)
        };
    }
    ExitCode::from(outcome.status as u8)
}
