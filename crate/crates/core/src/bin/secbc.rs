fn main() {
    std::process::exit(secbc::cli::run(std::env::args_os()));
}
