fn main() {
    std::process::exit(penner_hull::cli::run(std::env::args_os()));
}
