fn main() {
    std::process::exit(ab_kuramoto_cli::run(std::env::args_os()));
}
