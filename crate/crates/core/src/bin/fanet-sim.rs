fn main() {
    std::process::exit(fanet_sim::cli::main_with_args(std::env::args_os()));
}
