use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let res = delpezzo_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(res.stdout.as_bytes());
    let _ = std::io::stderr().write_all(res.stderr.as_bytes());
    ExitCode::from(res.exit_code as u8)
}
