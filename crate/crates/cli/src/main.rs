use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let result = phi_graph_cli::run(&argv, &mut io::stdin().lock());
    let _ = io::stdout().write_all(result.stdout.as_bytes());
    let _ = io::stderr().write_all(result.stderr.as_bytes());
    ExitCode::from(result.exit_code as u8)
}
