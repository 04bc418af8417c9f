fn main() {
    std::process::exit(z2z2::cli::main());
}
