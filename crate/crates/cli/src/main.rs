fn main() {
    std::process::exit(pml_cli::run(std::env::args_os()));
}
