fn main() {
    std::process::exit(pilotwave::cli::main());
}
