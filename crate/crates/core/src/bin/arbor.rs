use std::io::Write;

fn main() {
    if let Ok(threads) = std::env::var("THREADS") {
        match threads.parse::<usize>() {
            Ok(t) if t > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => {
                eprintln!("usage error: THREADS must be a positive integer, got '{threads}'");
                std::process::exit(arbor_eigen::cli::EXIT_USAGE);
            }
        }
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = arbor_eigen::cli::main_with_args(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
