use std::process::ExitCode;

use depridge::cli;

fn main() -> ExitCode {
    if let Some(n) = std::env::var(cli::THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // ignore failure: a global pool can only be installed once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = cli::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code as u8)
}
