fn main() {
    std::process::exit(dini_cli::run(std::env::args_os()));
}
