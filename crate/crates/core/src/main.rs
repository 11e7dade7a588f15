fn main() {
    std::process::exit(relfm::cli::main_with_args(std::env::args_os()));
}
