fn main() {
    std::process::exit(swipt_mpe::cli::main_with_args(std::env::args_os()));
}
