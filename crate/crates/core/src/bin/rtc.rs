fn main() -> std::process::ExitCode {
    runtime_complexity::cli::main()
}
