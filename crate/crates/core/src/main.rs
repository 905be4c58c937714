fn main() {
    std::process::exit(monochrome::cli::main_with_args(std::env::args_os()));
}
