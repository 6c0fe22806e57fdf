fn main() {
    std::process::exit(trajedi::cli::run(std::env::args_os()));
}
