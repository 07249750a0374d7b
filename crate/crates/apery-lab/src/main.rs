use std::process::ExitCode;

fn main() -> ExitCode {
    apery_lab::cli::main_entry()
}
