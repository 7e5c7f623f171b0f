use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, diagnostic) = spalperin_cli::run_args(std::env::args_os());
    if let Some(text) = diagnostic {
        eprint!("{text}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(output.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(spalperin_cli::EXIT_IO as u8);
    }
    ExitCode::from(output.code as u8)
}
