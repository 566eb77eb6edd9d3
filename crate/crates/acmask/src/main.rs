fn main() {
    std::process::exit(acmask::cli::run(std::env::args_os()));
}
