fn main() {
    let env_seed = std::env::var(robust_qphase_cli::SEED_ENV).ok();
    std::process::exit(robust_qphase_cli::main_with(std::env::args_os(), env_seed.as_deref()));
}
