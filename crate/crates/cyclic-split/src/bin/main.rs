use std::process::exit;

fn main() {
    exit(cyclic_split::cli::run());
}
