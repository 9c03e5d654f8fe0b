fn main() {
    std::process::exit(ffstat_cli::run(std::env::args_os()));
}
