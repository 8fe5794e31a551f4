fn main() {
    std::process::exit(pointspec::cli::run_from_env());
}
