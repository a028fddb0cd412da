use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(spin_recovery::experiments::cli_main(std::env::args_os()) as u8)
}
