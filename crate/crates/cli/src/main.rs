fn main() {
    let seed = std::env::var("RDL_SEED").ok();
    let code = rdl_cli::run(std::env::args_os(), seed.as_deref(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
