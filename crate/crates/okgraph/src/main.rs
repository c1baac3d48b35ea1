use std::process::ExitCode;

fn main() -> ExitCode {
    okgraph::cli::main_entry()
}
