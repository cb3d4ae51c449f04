fn main() {
    std::process::exit(nilred::cli::main());
}
