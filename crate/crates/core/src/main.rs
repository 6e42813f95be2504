fn main() {
    std::process::exit(spanner_lab::cli::main_with(std::env::args_os()));
}
