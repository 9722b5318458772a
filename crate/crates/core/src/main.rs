fn main() {
    std::process::exit(rcc::cli::run(std::env::args_os()));
}
