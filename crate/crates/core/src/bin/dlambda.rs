use std::io;
use std::process::ExitCode;

use dlambda::cli::{main_with, HARD_CAP_ENV};

fn main() -> ExitCode {
    let cap = std::env::var(HARD_CAP_ENV).ok();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = main_with(
        std::env::args_os(),
        cap.as_deref(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    ExitCode::from(code as u8)
}
