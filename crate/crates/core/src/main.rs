fn main() {
    std::process::exit(pwl_market::cli::run(std::env::args_os()));
}
