fn main() {
    std::process::exit(hgs::cli::run(std::env::args_os()));
}
