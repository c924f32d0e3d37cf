fn main() {
    std::process::exit(tricone::cli::run(std::env::args_os()));
}
