//! Driving the pipeline from configuration text, as the `bgg` binary does.

use bgg_core::cli::{run, Command};
use bgg_core::config::parse_config;

fn main() {
    let text = "algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [2]\nrep.highest_weight = [1, 0]\n";
    let cfg = parse_config(text).expect("valid config");
    let out = run(Command::Homology, &cfg);
    println!("exit {} betti {}", out.exit_code, out.report["homology"]["betti"]);

    match parse_config("algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [3]\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
}
