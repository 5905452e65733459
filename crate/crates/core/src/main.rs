fn main() {
    std::process::exit(skein::cli::run(std::env::args_os()));
}
