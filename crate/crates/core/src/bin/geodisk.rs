fn main() {
    std::process::exit(geodisk::cli::run(std::env::args_os()));
}
