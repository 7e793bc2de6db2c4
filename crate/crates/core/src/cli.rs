//! `bgg <command> --config <path> [--out <path>]`.

use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::config::{parse_config, RunConfig, Target, Value as ConfigValue};
use crate::error::Error;
use crate::flatmodel::analyze_flat;
use crate::kostant::analyze;
use crate::liealg::{apply_parabolic_grading, chevalley_basis, LieAlgebra};
use crate::repn::{irrep, weyl_dimension, HighestWeightModule};
use crate::report::{self, REPORT_VERSION};
use crate::rockland::rockland_report;
use crate::rootsys::{build_root_system, ParabolicChoice};
use crate::suite::{check_block_diagonal, run_suite, SuiteParams, KERNEL_SAMPLES};

pub const USAGE: &str = "usage: bgg <inspect|homology|bgg|rockland|selftest> --config <path> [--out <path>]";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Inspect,
    Homology,
    Bgg,
    Rockland,
    Selftest,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "inspect" => Command::Inspect,
            "homology" => Command::Homology,
            "bgg" => Command::Bgg,
            "rockland" => Command::Rockland,
            "selftest" => Command::Selftest,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Inspect => "inspect",
            Command::Homology => "homology",
            Command::Bgg => "bgg",
            Command::Rockland => "rockland",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub command: Command,
    pub config: Option<String>,
    pub out: Option<String>,
}

pub fn parse_args(args: &[String]) -> Result<Invocation, String> {
    let mut it = args.iter();
    let command = it.next().ok_or("missing command")?;
    let command = Command::parse(command).ok_or_else(|| format!("unknown command {command:?}"))?;
    let (mut config, mut out) = (None, None);
    while let Some(flag) = it.next() {
        let slot = match flag.as_str() {
            "--config" => &mut config,
            "--out" => &mut out,
            other => return Err(format!("unknown argument {other:?}")),
        };
        if slot.is_some() {
            return Err(format!("{flag} given twice"));
        }
        *slot = Some(it.next().ok_or_else(|| format!("{flag} needs a path"))?.clone());
    }
    if config.is_none() && command != Command::Selftest {
        return Err("--config is required".into());
    }
    Ok(Invocation { command, config, out })
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: Value,
    pub exit_code: i32,
    /// First failing identity, or the input error.
    pub failure: Option<String>,
}

impl RunOutput {
    pub fn rendered(&self) -> String {
        report::render(&self.report)
    }
}

/// Input rejected by a constructor rather than a failed identity.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::UnsupportedAlgebra(_)
            | Error::InvalidParabolic(_)
            | Error::NotDominant(_)
            | Error::DimensionCap(_)
            | Error::JetSpaceTooLarge(_)
            | Error::InvalidArgument(_)
    )
}

fn config_echo(cfg: &RunConfig) -> Value {
    let int = |v: i128| i64::try_from(v).map(Value::from).or_else(|_| u64::try_from(v).map(Value::from)).unwrap_or_else(|_| v.to_string().into());
    let m: Map<String, Value> = cfg
        .entries
        .iter()
        .map(|(k, v)| {
            let v = match v {
                ConfigValue::Int(i) => int(*i),
                ConfigValue::List(l) => l.iter().map(|&i| int(i)).collect(),
                ConfigValue::Str(s) => s.clone().into(),
            };
            (k.clone(), v)
        })
        .collect();
    Value::Object(m)
}

fn build_target(t: &Target) -> crate::error::Result<(LieAlgebra, HighestWeightModule)> {
    let rs = build_root_system(t.kind, t.rank)?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::new(&rs, &t.crossed_nodes)?);
    let module = irrep(&alg, &t.highest_weight)?;
    Ok((alg, module))
}

struct Stage {
    body: Map<String, Value>,
    numeric: Option<Value>,
    timing: Map<String, Value>,
    /// Set when the report is complete but records a failed check.
    failure: Option<(i32, String)>,
}

type StageResult = Result<Stage, (i32, String)>;

fn fail(e: Error) -> (i32, String) {
    (if is_input_error(&e) { EXIT_CONFIG } else { EXIT_VERIFY }, e.to_string())
}

fn timed<T>(timing: &mut Map<String, Value>, name: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let out = f();
    timing.insert(format!("{name}_ms"), json!(t.elapsed().as_secs_f64() * 1e3));
    out
}

fn stage_inspect(alg: &LieAlgebra, module: &HighestWeightModule, timing: Map<String, Value>) -> StageResult {
    alg.rs.verify().map_err(fail)?;
    alg.verify().map_err(fail)?;
    module.verify_homomorphism(alg).map_err(fail)?;
    module.verify_filtration(alg).map_err(fail)?;
    let weyl = weyl_dimension(&alg.rs, &module.highest_weight).map_err(fail)?;
    if weyl as usize != module.dim() {
        return Err((EXIT_VERIFY, format!("module dimension {} differs from Weyl dimension {weyl}", module.dim())));
    }
    let mut body = Map::new();
    body.insert("algebra".into(), report::algebra(alg));
    body.insert("module".into(), report::module(module));
    Ok(Stage { body, numeric: None, timing, failure: None })
}

fn execute(command: Command, cfg: &RunConfig) -> StageResult {
    let mut timing = Map::new();
    if command == Command::Selftest {
        let params = SuiteParams {
            degree_cap: cfg.degree_cap,
            seed: cfg.seed,
            samples: cfg.samples,
            truncation: cfg.truncation,
            kernel_samples: KERNEL_SAMPLES,
        };
        let outcome = timed(&mut timing, "suite", || run_suite(&params));
        for (k, ms) in &outcome.timings_ms {
            timing.insert(format!("{k}_ms"), json!(ms));
        }
        let criteria: Map<String, Value> = outcome
            .criteria
            .iter()
            .map(|c| {
                (c.id.to_string(), json!({"title": c.title, "cases": c.cases, "passed": c.passed(), "failure": c.failure}))
            })
            .collect();
        let mut body = Map::new();
        body.insert("criteria".into(), Value::Object(criteria));
        body.insert("cases".into(), json!(outcome.cases));
        let failure = outcome.first_failure().map(|f| (EXIT_VERIFY, f));
        return Ok(Stage { body, numeric: Some(outcome.numeric), timing, failure });
    }
    let target = cfg.target.as_ref().ok_or((EXIT_CONFIG, "algebra.type and algebra.rank are required".to_string()))?;
    let (alg, module) = timed(&mut timing, "build", || build_target(target)).map_err(fail)?;
    let mut stage = stage_inspect(&alg, &module, timing)?;
    match command {
        Command::Inspect | Command::Selftest => {}
        Command::Homology => {
            let (_, r) = timed(&mut stage.timing, "homology", || analyze(&alg, &module, KERNEL_SAMPLES, cfg.seed)).map_err(fail)?;
            stage.body.insert("homology".into(), report::kostant(&r));
        }
        Command::Bgg => {
            let (_, _, r) = timed(&mut stage.timing, "bgg", || analyze_flat(&alg, &module, cfg.degree_cap)).map_err(fail)?;
            stage.body.insert("bgg".into(), report::flat(&r, cfg.degree_cap));
        }
        Command::Rockland => {
            let verdict = timed(&mut stage.timing, "symbols", || rockland_report(&alg, &module, cfg.samples, cfg.seed, cfg.truncation))
                .map_err(fail)?;
            let block = timed(&mut stage.timing, "block_diagonal", || {
                let (jc, ops, _) = analyze_flat(&alg, &module, cfg.degree_cap).map_err(fail)?;
                check_block_diagonal(&jc, &ops).map_err(|m| (EXIT_VERIFY, m))
            });
            block?;
            if let Some(f) = verdict.first_failure() {
                return Err((EXIT_VERIFY, f));
            }
            let (exact, numeric) = report::rockland(&verdict);
            let mut r = exact.as_object().cloned().unwrap_or_default();
            r.insert("block_diagonal".into(), json!({"degree_cap": cfg.degree_cap, "passed": true}));
            stage.body.insert("rockland".into(), Value::Object(r));
            stage.numeric = numeric;
        }
    }
    Ok(stage)
}

/// Run a command on a validated configuration.
pub fn run(command: Command, cfg: &RunConfig) -> RunOutput {
    let start = Instant::now();
    let result = execute(command, cfg);
    let mut top = Map::new();
    top.insert("report_version".into(), json!(REPORT_VERSION));
    top.insert("command".into(), json!(command.name()));
    top.insert("config".into(), config_echo(cfg));
    top.insert(
        "provenance".into(),
        json!({
            "package": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "seed": cfg.seed,
            "samples": cfg.samples,
            "degree_cap": cfg.degree_cap,
            "truncation": cfg.truncation,
        }),
    );
    let (exit_code, failure, mut timing) = match result {
        Ok(stage) => {
            top.extend(stage.body);
            if let Some(n) = stage.numeric {
                top.insert("numeric".into(), n);
            }
            match stage.failure {
                Some((code, msg)) => (code, Some(msg), stage.timing),
                None => (EXIT_OK, None, stage.timing),
            }
        }
        Err((code, msg)) => (code, Some(msg), Map::new()),
    };
    top.insert("verification".into(), json!({"passed": exit_code == EXIT_OK, "first_failure": failure}));
    timing.insert("total_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
    top.insert("timing".into(), Value::Object(timing));
    RunOutput { report: Value::Object(top), exit_code, failure }
}

fn configure_threads() -> Result<(), String> {
    let threads = match std::env::var("BGG_THREADS") {
        Err(_) => 1,
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(format!("BGG_THREADS must be a positive integer, found {s:?}")),
        },
    };
    // a pool built earlier in the same process is kept
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Full front end: arguments, files, exit code.
pub fn main_with_args(args: &[String]) -> i32 {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    let inv = match parse_args(args) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}\n{USAGE}");
            return EXIT_CONFIG;
        }
    };
    let cfg = match &inv.config {
        None => RunConfig::default(),
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {path}: {e}");
                    return EXIT_CONFIG;
                }
            };
            match parse_config(&text) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {path}: {e}");
                    return EXIT_CONFIG;
                }
            }
        }
    };
    let out = run(inv.command, &cfg);
    let text = out.rendered();
    match inv.out.as_ref().or(cfg.output_path.as_ref()) {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {path}: {e}");
                return EXIT_CONFIG;
            }
        }
        None => print!("{text}"),
    }
    if let Some(f) = &out.failure {
        let kind = if out.exit_code == EXIT_CONFIG { "input rejected" } else { "verification failed" };
        eprintln!("{kind}: {f}");
    }
    out.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn argument_parsing() {
        let inv = parse_args(&args("homology --config a.cfg --out r.json")).unwrap();
        assert_eq!(inv, Invocation { command: Command::Homology, config: Some("a.cfg".into()), out: Some("r.json".into()) });
        assert!(parse_args(&args("selftest")).is_ok());
        assert!(parse_args(&args("homology")).is_err());
        assert!(parse_args(&args("frobnicate --config a")).is_err());
        assert!(parse_args(&args("bgg --config")).is_err());
        assert!(parse_args(&args("bgg --config a --config b")).is_err());
    }

    #[test]
    fn homology_report_for_a2_borel() {
        let cfg = parse_config("algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [1, 2]\n").unwrap();
        let out = run(Command::Homology, &cfg);
        assert_eq!(out.exit_code, EXIT_OK, "{:?}", out.failure);
        assert_eq!(out.report["homology"]["betti"], json!([1, 2, 2, 1]));
        assert_eq!(out.report["report_version"], json!(1));
        assert!(out.rendered().ends_with("}\n"));
    }

    #[test]
    fn input_errors_exit_one() {
        let cfg = parse_config("algebra.type = A\nalgebra.rank = 2\nrep.highest_weight = [20, 20]\n").unwrap();
        let out = run(Command::Inspect, &cfg);
        assert_eq!(out.exit_code, EXIT_CONFIG);
        assert_eq!(run(Command::Inspect, &RunConfig::default()).exit_code, EXIT_CONFIG);
    }
}
