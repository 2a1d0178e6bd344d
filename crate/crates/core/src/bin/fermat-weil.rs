fn main() {
    std::process::exit(fermat_weil::cli::main_from_env());
}
