fn main() {
    std::process::exit(knotskein::cli::run(std::env::args_os()));
}
