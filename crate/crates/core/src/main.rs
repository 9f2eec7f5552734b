fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(dowling_core::cli::run(&argv));
}
