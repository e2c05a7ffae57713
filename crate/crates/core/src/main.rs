use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report, message) = symgen::cli::run_args(std::env::args_os());
    if let Some(m) = message {
        eprint!("{m}");
    }
    if let Some(r) = report {
        eprintln!("{}: {} ({} ms)", r.command, r.status, r.timing_ms);
        println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    }
    ExitCode::from(code as u8)
}
