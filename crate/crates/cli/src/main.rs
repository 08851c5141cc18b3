fn main() {
    std::process::exit(gfwigner_cli::run(std::env::args_os()));
}
