fn main() -> std::process::ExitCode {
    topos_lens::cli::run()
}
