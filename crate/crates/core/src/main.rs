use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match ncprob::cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.exit as u8)
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit as u8)
        }
    }
}
