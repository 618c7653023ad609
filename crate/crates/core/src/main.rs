fn main() {
    std::process::exit(homlevel::cli::main());
}
