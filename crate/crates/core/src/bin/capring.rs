fn main() -> std::process::ExitCode {
    capring::cli::run(std::env::args_os())
}
