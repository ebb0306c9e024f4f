fn main() {
    std::process::exit(cotpoison::cli::run());
}
