fn main() -> std::process::ExitCode {
    morava_s2::cli::main_exit()
}
