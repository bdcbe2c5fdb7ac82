fn main() {
    let outcome = livsic::cli::run_args(std::env::args_os());
    println!("{}", outcome.render());
    std::process::exit(outcome.code);
}
