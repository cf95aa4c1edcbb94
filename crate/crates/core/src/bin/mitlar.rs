fn main() {
    std::process::exit(mitlar::harness::run(std::env::args_os()));
}
