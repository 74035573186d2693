fn main() { std::process::exit(poisson_er_core::cli::run()); }
