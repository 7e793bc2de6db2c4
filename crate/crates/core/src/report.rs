//! Canonical JSON rendering of pipeline results.
//!
//! Object keys are sorted (the default `serde_json` map is ordered) and
//! rationals are strings `"p/q"`, so identical inputs give identical bytes.

use serde_json::{json, Map, Value};

use crate::flatmodel::FlatReport;
use crate::kostant::{KostantReport, Multiplicities};
use crate::liealg::LieAlgebra;
use crate::linalg::Rat;
use crate::repn::HighestWeightModule;
use crate::rockland::{AbelianSample, HeisenbergSample, RocklandVerdict};

pub const REPORT_VERSION: u64 = 1;

/// Always `p/q` with `q > 0`, including integers.
pub fn rat_str(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rats(v: &[Rat]) -> Value {
    v.iter().map(|q| Value::String(rat_str(q))).collect()
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialise");
    s.push('\n');
    s
}

/// Drop the `timing` key so reports can be compared across runs.
pub fn without_timing(v: &Value) -> Value {
    let mut v = v.clone();
    if let Value::Object(m) = &mut v {
        m.remove("timing");
    }
    v
}

pub fn multiplicities(m: &Multiplicities) -> Value {
    m.iter()
        .map(|degree| degree.iter().map(|(w, n)| json!({"highest_weight": w, "multiplicity": n})).collect::<Vec<_>>())
        .collect()
}

pub fn algebra(alg: &LieAlgebra) -> Value {
    let neg = alg.negative_part();
    let graded: Map<String, Value> = alg.graded_dims().into_iter().map(|(j, d)| (j.to_string(), json!(d))).collect();
    json!({
        "type": alg.rs.kind.to_string(),
        "rank": alg.rs.rank,
        "label": alg.rs.label(),
        "dimension": alg.dim(),
        "cartan_matrix": alg.rs.cartan,
        "positive_roots": alg.rs.positive_roots,
        "crossed_nodes": alg.parabolic.as_ref().map(|p| p.crossed_nodes.clone()),
        "grading_element": rats(&alg.grading_element),
        "graded_dimensions": graded,
        "depth": alg.depth(),
        "negative_part": {
            "dimension": neg.dim(),
            "abelian": neg.is_abelian(),
            "depths": neg.depths,
            "roots": neg.roots,
        },
    })
}

pub fn module(m: &HighestWeightModule) -> Value {
    json!({
        "highest_weight": m.highest_weight,
        "dimension": m.dim(),
        "strata_dimensions": m.strata_dims(),
    })
}

pub fn kostant(r: &KostantReport) -> Value {
    let spectra: Vec<Value> = r
        .spectra
        .iter()
        .map(|s| s.iter().map(|(l, m)| json!({"eigenvalue": rat_str(l), "multiplicity": m})).collect())
        .collect();
    json!({
        "betti": r.betti,
        "euler_characteristic": {"cochains": r.euler.0, "cohomology": r.euler.1},
        "hodge": r.hodge_dims.iter().map(|(a, h, b)| json!({"image_del": a, "harmonic": h, "image_delstar": b})).collect::<Vec<_>>(),
        "multiplicities": multiplicities(&r.multiplicities),
        "laplacian_spectrum": spectra,
        "kernel_property": {"samples": r.kernel_property.samples, "premise_samples": r.kernel_property.premise_samples},
    })
}

pub fn flat(r: &FlatReport, degree_cap: u32) -> Value {
    json!({
        "degree_cap": degree_cap,
        "jets": r.num_jets,
        "jet_form_dimensions": r.jet_dims,
        "jet_betti": r.jet_betti,
        "bgg_space_dimensions": r.harmonic_jet_dims,
        "bgg_ranks": r.bgg_ranks,
        "bgg_betti": r.bgg_betti,
        "bgg_kernel_degree_0": r.bgg_kernel_0,
        "projector_refinement_steps": r.refinement_steps,
    })
}

fn abelian_sample(s: &AbelianSample) -> Value {
    json!({"character": rats(&s.character), "ranks": s.ranks, "exact": s.exact, "ray_exact": s.ray_exact})
}

fn heisenberg_exact(s: &HeisenbergSample) -> Value {
    json!({
        "hbar": rat_str(&s.hbar),
        "truncation": s.truncation,
        "central_character": s.central_character,
        "commutator_interior": s.commutator_interior,
        "square_zero_interior": s.square_zero_interior,
    })
}

fn heisenberg_numeric(s: &HeisenbergSample) -> Value {
    json!({
        "hbar": rat_str(&s.hbar),
        "truncation": s.truncation,
        "threshold": s.threshold,
        "min_singular_values": s.min_singular_values,
        "passed": s.passed(),
    })
}

/// Exact part and float part, kept apart.
pub fn rockland(v: &RocklandVerdict) -> (Value, Option<Value>) {
    match v {
        RocklandVerdict::Abelian { samples } => (
            json!({
                "path": "abelian",
                "verdict": if v.passed() { "exact" } else { "not exact" },
                "trivial_character": "out of scope",
                "samples": samples.iter().map(abelian_sample).collect::<Vec<_>>(),
            }),
            None,
        ),
        RocklandVerdict::Heisenberg { samples } => (
            json!({
                "path": "heisenberg",
                "verdict": if v.passed() { "exact on interior" } else { "failed" },
                "trivial_character": "out of scope",
                "samples": samples.iter().map(heisenberg_exact).collect::<Vec<_>>(),
            }),
            Some(json!({"heisenberg": samples.iter().map(heisenberg_numeric).collect::<Vec<_>>()})),
        ),
        RocklandVerdict::NotCovered => (json!({"path": "none", "verdict": "not covered"}), None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn rationals_and_keys_are_canonical() {
        assert_eq!(rat_str(&ratio(-2, 4)), "-1/2");
        assert_eq!(rat_str(&ratio(3, 1)), "3/1");
        let v = json!({"b": 1, "a": {"timing": 2}, "timing": 3});
        assert_eq!(render(&v), "{\n  \"a\": {\n    \"timing\": 2\n  },\n  \"b\": 1,\n  \"timing\": 3\n}\n");
        assert_eq!(render(&without_timing(&v)), "{\n  \"a\": {\n    \"timing\": 2\n  },\n  \"b\": 1\n}\n");
    }
}
