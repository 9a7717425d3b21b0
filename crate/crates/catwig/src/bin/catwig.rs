fn main() {
    std::process::exit(catwig::cli::run(std::env::args_os()));
}
