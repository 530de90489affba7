fn main() {
    let code = quadfactor::cli::run(std::env::args_os());
    std::process::exit(code);
}
