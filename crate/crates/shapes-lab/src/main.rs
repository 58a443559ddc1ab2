fn main() -> std::process::ExitCode {
    shapes_lab::cli::run(std::env::args_os())
}
