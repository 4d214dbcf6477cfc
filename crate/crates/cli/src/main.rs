use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = cli::run_cli(std::env::args_os(), &mut out, &mut io::stderr());
    let flushed = out.flush().is_ok();
    ExitCode::from(if flushed { code as u8 } else { 3 })
}
