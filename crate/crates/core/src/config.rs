//! Run configuration: flat `key = value` text with dotted keys.
//!
//! ```text
//! # comment
//! algebra.type = A
//! algebra.rank = 2
//! parabolic.crossed_nodes = [1, 2]
//! rep.highest_weight = [0, 0]
//! flat_model.degree_cap = 4
//! rockland.seed = 0xB66
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::flatmodel::DEFAULT_DEGREE_CAP;
use crate::rockland::{DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRUNCATION};
use crate::rootsys::{build_root_system, CartanType, ParabolicChoice};

pub const KEYS: [&str; 9] = [
    "algebra.type",
    "algebra.rank",
    "parabolic.crossed_nodes",
    "rep.highest_weight",
    "flat_model.degree_cap",
    "rockland.seed",
    "rockland.samples",
    "heisenberg.truncation",
    "output.path",
];

/// Largest accepted jet degree cap.
pub const MAX_DEGREE_CAP: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.line {
            write!(f, "line {l}: ")?;
        }
        if let Some(k) = &self.field {
            write!(f, "{k}: ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i128),
    List(Vec<i128>),
    Str(String),
}

impl Value {
    fn describe(&self) -> &'static str {
        match self {
            Value::Int(_) => "an integer",
            Value::List(_) => "an integer list",
            Value::Str(_) => "a string",
        }
    }
}

/// Algebra, grading and module; absent for `selftest`-only configs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub kind: CartanType,
    pub rank: usize,
    pub crossed_nodes: Vec<usize>,
    pub highest_weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub target: Option<Target>,
    pub degree_cap: u32,
    pub seed: u64,
    pub samples: usize,
    pub truncation: usize,
    pub output_path: Option<String>,
    /// Raw entries in key order, echoed into reports.
    pub entries: BTreeMap<String, Value>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            target: None,
            degree_cap: DEFAULT_DEGREE_CAP,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            truncation: DEFAULT_TRUNCATION,
            output_path: None,
            entries: BTreeMap::new(),
        }
    }
}

fn err(line: Option<usize>, field: Option<&str>, message: impl Into<String>) -> ConfigError {
    ConfigError { line, field: field.map(str::to_string), message: message.into() }
}

fn parse_int(s: &str) -> Option<i128> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let body = body.replace('_', "");
    let v = if let Some(hex) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        i128::from_str_radix(hex, 16).ok()?
    } else {
        body.parse::<i128>().ok()?
    };
    Some(if neg { -v } else { v })
}

fn parse_value(raw: &str) -> Option<Value> {
    let raw = raw.trim();
    if let Some(inner) = raw.strip_prefix('[') {
        let inner = inner.strip_suffix(']')?.trim();
        if inner.is_empty() {
            return Some(Value::List(Vec::new()));
        }
        return inner.split(',').map(parse_int).collect::<Option<Vec<_>>>().map(Value::List);
    }
    if let Some(inner) = raw.strip_prefix('"') {
        let inner = inner.strip_suffix('"')?;
        return (!inner.contains('"')).then(|| Value::Str(inner.to_string()));
    }
    if let Some(i) = parse_int(raw) {
        return Some(Value::Int(i));
    }
    if !raw.is_empty() && raw.chars().all(|c| c.is_ascii_alphanumeric() || "._-/".contains(c)) {
        return Some(Value::Str(raw.to_string()));
    }
    None
}

fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Syntax pass: every non-blank line is `known.key = value`, keys unique.
pub fn parse_entries(text: &str) -> Result<(BTreeMap<String, Value>, BTreeMap<String, usize>), ConfigError> {
    let mut entries = BTreeMap::new();
    let mut lines = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(line).trim();
        if line.is_empty() {
            continue;
        }
        let (key, raw) = line.split_once('=').ok_or_else(|| err(Some(n), None, "expected `key = value`"))?;
        let key = key.trim();
        if !KEYS.contains(&key) {
            return Err(err(Some(n), Some(key), "unknown key"));
        }
        if lines.contains_key(key) {
            return Err(err(Some(n), Some(key), format!("duplicate key (first set on line {})", lines[key])));
        }
        let value = parse_value(raw).ok_or_else(|| err(Some(n), Some(key), format!("cannot parse value {:?}", raw.trim())))?;
        entries.insert(key.to_string(), value);
        lines.insert(key.to_string(), n);
    }
    Ok((entries, lines))
}

struct Fields<'a> {
    entries: &'a BTreeMap<String, Value>,
    lines: &'a BTreeMap<String, usize>,
}

impl Fields<'_> {
    fn fail(&self, key: &str, message: impl Into<String>) -> ConfigError {
        err(self.lines.get(key).copied(), Some(key), message)
    }

    fn int(&self, key: &str, lo: i128, hi: i128) -> Result<Option<i128>, ConfigError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(Value::Int(v)) if (lo..=hi).contains(v) => Ok(Some(*v)),
            Some(Value::Int(v)) => Err(self.fail(key, format!("value {v} outside {lo}..={hi}"))),
            Some(other) => Err(self.fail(key, format!("expected an integer, found {}", other.describe()))),
        }
    }

    fn list(&self, key: &str) -> Result<Option<&[i128]>, ConfigError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(Value::List(v)) => Ok(Some(v)),
            Some(Value::Int(v)) => Ok(Some(std::slice::from_ref(v))),
            Some(other) => Err(self.fail(key, format!("expected an integer list, found {}", other.describe()))),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(Value::Str(s)) => Ok(Some(s.clone())),
            Some(other) => Err(self.fail(key, format!("expected a string, found {}", other.describe()))),
        }
    }
}

/// Parse and fully validate a configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let (entries, lines) = parse_entries(text)?;
    let f = Fields { entries: &entries, lines: &lines };
    let mut cfg = RunConfig::default();

    let kind = f.string("algebra.type")?;
    let rank = f.int("algebra.rank", 1, 64)?;
    cfg.target = match (kind, rank) {
        (None, None) => {
            for key in ["parabolic.crossed_nodes", "rep.highest_weight"] {
                if entries.contains_key(key) {
                    return Err(f.fail(key, "requires algebra.type and algebra.rank"));
                }
            }
            None
        }
        (None, Some(_)) => return Err(err(None, Some("algebra.type"), "missing")),
        (Some(_), None) => return Err(err(None, Some("algebra.rank"), "missing")),
        (Some(letter), Some(rank)) => {
            let kind = CartanType::from_letter(&letter).map_err(|e| f.fail("algebra.type", e.to_string()))?;
            let rank = rank as usize;
            let rs = build_root_system(kind, rank).map_err(|e| f.fail("algebra.rank", e.to_string()))?;
            let crossed_nodes = match f.list("parabolic.crossed_nodes")? {
                None => ParabolicChoice::borel(&rs).crossed_nodes,
                Some(nodes) => {
                    if nodes.is_empty() {
                        return Err(f.fail("parabolic.crossed_nodes", "at least one node must be crossed"));
                    }
                    if let Some(bad) = nodes.iter().find(|&&n| n < 1 || n > rank as i128) {
                        return Err(f.fail("parabolic.crossed_nodes", format!("node index out of range: {bad} (rank {rank})")));
                    }
                    let mut v: Vec<usize> = nodes.iter().map(|&n| n as usize).collect();
                    v.sort_unstable();
                    if v.windows(2).any(|w| w[0] == w[1]) {
                        return Err(f.fail("parabolic.crossed_nodes", "repeated node"));
                    }
                    v
                }
            };
            let highest_weight = match f.list("rep.highest_weight")? {
                None => vec![0; rank],
                Some(w) => {
                    if w.len() != rank {
                        return Err(f.fail("rep.highest_weight", format!("expected {rank} Dynkin labels, found {}", w.len())));
                    }
                    if w.iter().any(|&c| !(0..=64).contains(&c)) {
                        return Err(f.fail("rep.highest_weight", "labels must be integers in 0..=64"));
                    }
                    w.iter().map(|&c| c as i64).collect()
                }
            };
            Some(Target { kind, rank, crossed_nodes, highest_weight })
        }
    };
    if let Some(d) = f.int("flat_model.degree_cap", 0, MAX_DEGREE_CAP as i128)? {
        cfg.degree_cap = d as u32;
    }
    if let Some(s) = f.int("rockland.seed", 0, u64::MAX as i128)? {
        cfg.seed = s as u64;
    }
    if let Some(s) = f.int("rockland.samples", 1, 10_000)? {
        cfg.samples = s as usize;
    }
    if let Some(n) = f.int("heisenberg.truncation", 4, 256)? {
        cfg.truncation = n as usize;
    }
    cfg.output_path = f.string("output.path")?;
    cfg.entries = entries;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_round_trip() {
        let cfg = parse_config(
            "algebra.type = B\nalgebra.rank = 2 # rank\nparabolic.crossed_nodes = [2]\nrep.highest_weight = [1, 0]\n\
             flat_model.degree_cap = 3\nrockland.seed = 0xB66\nrockland.samples = 5\nheisenberg.truncation = 8\noutput.path = \"out.json\"\n",
        )
        .unwrap();
        let t = cfg.target.unwrap();
        assert_eq!((t.kind, t.rank, t.crossed_nodes, t.highest_weight), (CartanType::B, 2, vec![2], vec![1, 0]));
        assert_eq!((cfg.degree_cap, cfg.seed, cfg.samples, cfg.truncation), (3, 0xB66, 5, 8));
        assert_eq!(cfg.output_path.as_deref(), Some("out.json"));
    }

    #[test]
    fn defaults_apply() {
        let cfg = parse_config("algebra.type = A\nalgebra.rank = 2\n").unwrap();
        let t = cfg.target.unwrap();
        assert_eq!(t.crossed_nodes, vec![1, 2]);
        assert_eq!(t.highest_weight, vec![0, 0]);
        assert_eq!((cfg.degree_cap, cfg.samples, cfg.truncation, cfg.seed), (4, 20, 16, 0xB66));
        assert!(parse_config("").unwrap().target.is_none());
    }

    #[test]
    fn errors_name_line_and_field() {
        let e = parse_config("algebra.type = A\nalgebra.rank = 2\nparabolic.crossed_nodes = [3]\n").unwrap_err();
        assert_eq!((e.line, e.field.as_deref()), (Some(3), Some("parabolic.crossed_nodes")));
        assert!(e.to_string().contains("node index out of range"));
        let e = parse_config("algebra.type = A\nalgebra.colour = 2\n").unwrap_err();
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("unknown key"));
        assert!(parse_config("algebra.type = A\nalgebra.type = B\n").unwrap_err().message.contains("duplicate"));
        assert!(parse_config("algebra.type = A\n").is_err());
        assert!(parse_config("algebra.type = E\nalgebra.rank = 6\n").is_err());
        assert!(parse_config("algebra.type = A\nalgebra.rank = 2\nrep.highest_weight = [1]\n").is_err());
        assert!(parse_config("heisenberg.truncation = 2\n").is_err());
        assert!(parse_config("just words\n").is_err());
    }
}
