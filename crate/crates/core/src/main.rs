use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wkam::cli::run(std::env::args_os()) as u8)
}
