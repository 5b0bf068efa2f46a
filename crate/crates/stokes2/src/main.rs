fn main() {
    std::process::exit(stokes2::cli::run(std::env::args_os()));
}
