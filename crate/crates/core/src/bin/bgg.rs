fn main() -> std::process::ExitCode {
    bgg_core::cli::main_with_args(std::env::args_os())
}
