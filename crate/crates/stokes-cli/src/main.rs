use std::process::ExitCode;

fn main() -> ExitCode {
    let code = stokes_cli::run(std::env::args_os().skip(1), &mut std::io::stdout().lock());
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
