fn main() {
    std::process::exit(surface_census::cli::main());
}
