fn main() -> std::process::ExitCode {
    chernkit::cli::main()
}
