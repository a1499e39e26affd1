fn main() {
    std::process::exit(adr_currency::cli::run(std::env::args_os()));
}
