fn main() {
    std::process::exit(levy_spectral::cli::run(std::env::args_os()));
}
