fn main() {
    std::process::exit(ptcrit::cli::main_with(std::env::args_os()));
}
