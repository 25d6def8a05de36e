use std::process::ExitCode;

fn main() -> ExitCode {
    let code = rde_lab::cli::run(std::env::args_os());
    ExitCode::from(code)
}
