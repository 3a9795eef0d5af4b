fn main() {
    std::process::exit(ifcap::cli::run());
}
