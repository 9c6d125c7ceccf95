fn main() {
    std::process::exit(correlation_probe::cli::run(std::env::args_os()));
}
