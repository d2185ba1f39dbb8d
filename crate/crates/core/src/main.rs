fn main() {
    std::process::exit(fper::cli::run());
}
