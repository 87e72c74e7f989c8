fn main() {
    std::process::exit(qf::cli::run(std::env::args_os()));
}
