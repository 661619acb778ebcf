fn main() {
    std::process::exit(petitlab::cli::main_entry());
}
