//! Driving the command-line front end from code.

use toric_codes::cli::run;

fn main() {
    for line in [
        "toric catalog --k 4",
        "toric enumerator --class P6_1 --q 7 --format json",
        "toric classify --polygon [[0,0],[4,0],[2,1]]",
        "toric distance --class P6_14 --q 7",
        "toric verify --table props --q 7",
    ] {
        println!("$ {line}");
        match run(line.split_whitespace()) {
            Ok((out, _)) => print!("{out}"),
            Err(e) => println!("error: {e}"),
        }
        println!();
    }
}
