fn main() {
    std::process::exit(chainqc::cli::run(std::env::args_os()));
}
