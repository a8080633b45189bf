use std::io;

fn main() {
    let outcome =
        turan_core::cli::dispatch(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(outcome.code);
}
