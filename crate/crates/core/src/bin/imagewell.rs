fn main() {
    std::process::exit(imagewell::cli::main_with_args(std::env::args_os()));
}
