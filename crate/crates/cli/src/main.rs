fn main() {
    std::process::exit(polaris_cli::run(std::env::args_os()));
}
