fn main() {
    std::process::exit(statespace::cli::run(std::env::args_os()));
}
