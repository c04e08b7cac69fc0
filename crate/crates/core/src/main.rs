fn main() {
    std::process::exit(hg_core::cli::run(std::env::args_os()));
}
