fn main() {
    std::process::exit(heatinv::cli::dispatch(std::env::args_os()));
}
