fn main() {
    std::process::exit(halfcube::cli::run(std::env::args_os()));
}
