fn main() {
    std::process::exit(prodform_geo::cli::main_with_args(std::env::args_os()));
}
