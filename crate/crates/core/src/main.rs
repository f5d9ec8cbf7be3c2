use std::process::ExitCode;

fn main() -> ExitCode {
    nucc::cli::main_with_args(std::env::args_os())
}
