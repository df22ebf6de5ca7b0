fn main() {
    std::process::exit(tumour_bvp::cli::run(std::env::args_os()));
}
