fn main() {
    std::process::exit(bandit_lab::run_cli(std::env::args_os()));
}
