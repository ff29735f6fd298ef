fn main() {
    std::process::exit(reeb_spectrum::cli::run(std::env::args_os()));
}
