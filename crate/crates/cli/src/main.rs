fn main() {
    std::process::exit(relosc_cli::run(std::env::args_os()));
}
