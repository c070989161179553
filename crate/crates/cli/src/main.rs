use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = Vec::new();
    let code = orl_cli::dispatch(&args, &mut out);
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = stdout.write_all(&out).and_then(|()| stdout.flush());
    ExitCode::from(code)
}
