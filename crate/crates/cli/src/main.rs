use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    ExitCode::from(hilburch_cli::run(
        args.iter().map(String::as_str),
        &mut out,
        &mut err,
    ))
}
