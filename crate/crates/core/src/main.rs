use std::io;

fn main() {
    let code = positroid::cli::main_with(std::env::args(), &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr());
    std::process::exit(code);
}
