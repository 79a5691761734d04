fn main() {
    std::process::exit(clothoid_hermite::cli::run_cli(std::env::args_os()));
}
