fn main() {
    std::process::exit(dirac_coulomb::cli::main_entry());
}
