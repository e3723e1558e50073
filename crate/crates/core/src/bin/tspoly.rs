fn main() {
    std::process::exit(tspoly::cli::main_with_args(std::env::args()));
}
