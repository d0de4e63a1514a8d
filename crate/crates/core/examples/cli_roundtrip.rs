//! Drives the command-line front end in-process.

fn main() {
    let code = sumsetlab::cli::run(["sumsetlab", "verify", "simplex_formula", "--d", "2..3", "--N", "5", "--k", "1..3", "--format", "csv"]);
    println!("exit code {code}");
}
