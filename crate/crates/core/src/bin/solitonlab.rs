fn main() {
    std::process::exit(solitonlab::cli::main_with_args(std::env::args_os()));
}
