fn main() {
    std::process::exit(slowcolor::cli::main());
}
