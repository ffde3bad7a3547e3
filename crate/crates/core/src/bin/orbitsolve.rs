fn main() {
    std::process::exit(orbitsolve::cli::main_with(std::env::args_os()));
}
