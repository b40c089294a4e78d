fn main() {
    let r = oddsl2::cli::run(std::env::args_os());
    if r.status == 0 {
        println!("{}", r.payload);
    } else {
        eprintln!("{}", r.payload);
    }
    std::process::exit(r.status);
}
