fn main() {
    std::process::exit(docfreq::cli::run(std::env::args_os()));
}
