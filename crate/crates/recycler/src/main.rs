fn main() {
    std::process::exit(recycler::cli::main_with(std::env::args_os()));
}
