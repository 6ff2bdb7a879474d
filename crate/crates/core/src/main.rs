fn main() {
    std::process::exit(twistkit::cli::main_with_args(std::env::args_os()));
}
