fn main() {
    std::process::exit(transflow::cli::main_with_args(std::env::args_os()));
}
