fn main() {
    std::process::exit(lensmatch::cli::run(std::env::args_os()));
}
