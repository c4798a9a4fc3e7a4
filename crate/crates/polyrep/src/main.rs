fn main() {
    std::process::exit(polyrep::cli::run());
}
