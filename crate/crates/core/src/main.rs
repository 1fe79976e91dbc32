fn main() {
    std::process::exit(quiverbox::cli::main_with_args(std::env::args_os()));
}
