fn main() {
    std::process::exit(crepant::cli::run(std::env::args_os()));
}
