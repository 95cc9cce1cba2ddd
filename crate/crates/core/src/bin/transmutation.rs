fn main() {
    std::process::exit(transmutation::cli::main_with_args(std::env::args_os()));
}
