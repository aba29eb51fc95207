fn main() {
    std::process::exit(zs_core::cli::run(std::env::args_os()));
}
