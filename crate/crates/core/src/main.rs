fn main() {
    std::process::exit(fuchsian_codes::cli::run(std::env::args_os()));
}
