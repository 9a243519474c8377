fn main() {
    std::process::exit(qtard_cli::main_with_args(std::env::args_os()));
}
