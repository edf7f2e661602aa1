fn main() {
    std::process::exit(lpsem::cli::main());
}
