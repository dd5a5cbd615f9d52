fn main() -> std::process::ExitCode {
    boundary_particle::cli::app::main()
}
