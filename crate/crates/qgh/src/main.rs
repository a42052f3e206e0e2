use std::process::ExitCode;

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("QGH_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        } else {
            eprintln!("error: QGH_THREADS must be a positive integer");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(qgh::cli::run(std::env::args()) as u8)
}
