fn main() -> std::process::ExitCode {
    rackxmod::cli::main()
}
