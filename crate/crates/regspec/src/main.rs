fn main() {
    std::process::exit(regspec::cli::main_with_args(std::env::args_os()));
}
