fn main() { std::process::exit(vogan::cli::main()) }
