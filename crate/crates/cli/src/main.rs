fn main() {
    std::process::exit(polyprime_cli::run(std::env::args_os()));
}
