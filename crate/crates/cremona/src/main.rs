use std::process::ExitCode;

fn main() -> ExitCode {
    cremona::cli::main()
}
