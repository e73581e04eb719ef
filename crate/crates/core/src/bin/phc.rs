fn main() {
    std::process::exit(canonical_ramsey::cli::main());
}
