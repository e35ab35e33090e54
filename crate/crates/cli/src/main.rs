use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = patchscope_cli::init_threads() {
        let _ = writeln!(std::io::stderr(), "error: {e}");
        return ExitCode::from(1);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = patchscope_cli::run(std::env::args_os(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    ExitCode::from(code as u8)
}
