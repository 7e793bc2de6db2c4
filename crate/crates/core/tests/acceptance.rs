//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use bgg_core::cli::{run, Command, EXIT_OK};
use bgg_core::config::RunConfig;
use bgg_core::report::{render, without_timing};
use bgg_core::suite::CRITERIA;

const TOLERANCES: [(u32, &str); 10] = [
    (1, "exact rational, zero deviation"),
    (2, "exact, 200 seeded cochains per case"),
    (3, "exact multiset equality"),
    (4, "exact"),
    (5, "exact kernel dimension n+1, D=6"),
    (6, "exact"),
    (7, "exact"),
    (8, "exact rank identities, 20 seeded characters"),
    (9, "numeric: singular values >= 1e-6, N=16; central character exact"),
    (10, "byte-identical outside timing"),
];

fn tolerance(id: u32) -> &'static str {
    TOLERANCES.iter().find(|(i, _)| *i == id).map(|(_, t)| *t).unwrap_or("")
}

fn line(id: u32, title: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {verdict} {title} [{}] {detail}", tolerance(id));
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let t = Instant::now();
    let first = run(Command::Selftest, &cfg);
    let second = run(Command::Selftest, &cfg);
    let mut all = true;
    for (id, title) in CRITERIA {
        let c = &first.report["criteria"][id.to_string()];
        let passed = c["passed"].as_bool() == Some(true);
        let detail = match c["failure"].as_str() {
            Some(f) => f.to_string(),
            None => format!("({} cases)", c["cases"]),
        };
        all &= passed;
        line(id, title, passed, &detail);
    }
    let a = render(&without_timing(&first.report));
    let b = render(&without_timing(&second.report));
    let same = a == b && first.exit_code == second.exit_code;
    all &= same;
    line(10, "selftest determinism", same, &format!("({} bytes)", a.len()));
    all &= first.exit_code == EXIT_OK;
    println!("acceptance {} in {:.1}s", if all { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
