fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = inventory_game::cli::run(std::env::args().skip(1), &mut stdout);
    std::process::exit(code);
}
