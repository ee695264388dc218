fn main() {
    std::process::exit(wedge_spectra::cli::run(std::env::args_os()));
}
