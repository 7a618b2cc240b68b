//! `ballspace` command-line tool; see [`ballspace::cli`].

fn main() {
    let code = ballspace::cli::run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
