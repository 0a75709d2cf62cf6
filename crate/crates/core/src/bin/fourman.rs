use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, out) = fourman::cli::run(std::env::args_os());
    let stream = if code == fourman::cli::EXIT_USAGE {
        eprint!("{out}");
        None
    } else {
        Some(std::io::stdout().write_all(out.as_bytes()))
    };
    if let Some(Err(e)) = stream {
        eprintln!("fourman: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
