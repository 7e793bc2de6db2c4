//! The built-in verification matrix behind `selftest` and the acceptance
//! target. Every criterion is evaluated case by case; heavy data is dropped
//! as soon as a case is done.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::blocks::BlockOp;
use crate::error::Result;
use crate::flatmodel::{assemble_bgg, build_flat_complex, homotopy_and_equivalence, BggOperators, JetComplex};
use crate::kostant::{build_complex, hodge_decompose, kostant_multiplicities, kostant_oracle, kernel_property, CochainComplex};
use crate::liealg::{apply_parabolic_grading, chevalley_basis, LieAlgebra};
use crate::linalg::Matrix;
use crate::repn::{adjoint_highest_weight, defining_highest_weight, irrep, HighestWeightModule};
use crate::report;
use crate::rockland::{abelian_check, heisenberg_scan, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRUNCATION};
use crate::rootsys::{build_root_system, CartanType, ParabolicChoice};

pub const KERNEL_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RepKind {
    Trivial,
    Defining,
    Adjoint,
}

impl RepKind {
    pub const ALL: [RepKind; 3] = [RepKind::Trivial, RepKind::Defining, RepKind::Adjoint];

    pub fn name(self) -> &'static str {
        match self {
            RepKind::Trivial => "trivial",
            RepKind::Defining => "defining",
            RepKind::Adjoint => "adjoint",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub kind: CartanType,
    pub rank: usize,
    pub crossed: Vec<usize>,
    pub rep: RepKind,
}

impl Case {
    pub fn new(kind: CartanType, rank: usize, crossed: &[usize], rep: RepKind) -> Self {
        Case { kind, rank, crossed: crossed.to_vec(), rep }
    }

    pub fn label(&self) -> String {
        let nodes: Vec<String> = self.crossed.iter().map(usize::to_string).collect();
        format!("{}{}{{{}}}/{}", self.kind, self.rank, nodes.join(","), self.rep.name())
    }

    pub fn is_borel(&self) -> bool {
        self.crossed.len() == self.rank
    }

    pub fn build(&self) -> Result<(LieAlgebra, HighestWeightModule)> {
        let rs = build_root_system(self.kind, self.rank)?;
        let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::new(&rs, &self.crossed)?);
        let lambda = match self.rep {
            RepKind::Trivial => vec![0; self.rank],
            RepKind::Defining => defining_highest_weight(&rs),
            RepKind::Adjoint => adjoint_highest_weight(&rs),
        };
        let module = irrep(&alg, &lambda)?;
        Ok((alg, module))
    }
}

/// A1 Borel, A2 crossed {1}, A2 crossed {2}, A2 Borel, B2 Borel; each with
/// the trivial, defining and adjoint module.
pub fn test_matrix() -> Vec<Case> {
    let gradings: [(CartanType, usize, &[usize]); 5] = [
        (CartanType::A, 1, &[1]),
        (CartanType::A, 2, &[1]),
        (CartanType::A, 2, &[2]),
        (CartanType::A, 2, &[1, 2]),
        (CartanType::B, 2, &[1, 2]),
    ];
    gradings
        .iter()
        .flat_map(|&(k, n, c)| RepKind::ALL.iter().map(move |&r| Case::new(k, n, c, r)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub degree_cap: u32,
    pub seed: u64,
    pub samples: usize,
    pub truncation: usize,
    pub kernel_samples: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            degree_cap: crate::flatmodel::DEFAULT_DEGREE_CAP,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            truncation: DEFAULT_TRUNCATION,
            kernel_samples: KERNEL_SAMPLES,
        }
    }
}

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "exact Hodge identities"),
    (2, "del delstar kernel property on random cochains"),
    (3, "harmonic weights match Kostant"),
    (4, "dN and D_bgg square to zero"),
    (5, "sl2 BGG kernel in degree 0"),
    (6, "homotopy equivalence"),
    (7, "block diagonal conjugated symbol"),
    (8, "abelian twisted symbol exactness"),
    (9, "Heisenberg interior exactness (numeric)"),
];

/// Outcome of one criterion on one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: u32,
    pub case: String,
    pub outcome: std::result::Result<(), String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub cases: usize,
    /// `case: message` of the first failing case.
    pub failure: Option<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub criteria: Vec<CriterionResult>,
    pub cases: BTreeMap<String, Value>,
    pub numeric: Value,
    pub timings_ms: BTreeMap<String, f64>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionResult::passed)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.criteria.iter().find_map(|c| c.failure.as_ref().map(|f| format!("criterion {} ({}): {f}", c.id, c.title)))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Criterion 1 oracle, written independently of the complex's own checks.
pub fn check_hodge(cx: &CochainComplex) -> std::result::Result<(), String> {
    cx.verify_identities().map_err(|e| e.to_string())?;
    let top = cx.top;
    for k in 0..=top {
        if k + 1 < top {
            ensure((&cx.del[k + 1] * &cx.del[k]).is_zero(), || format!("del^2 != 0 in degree {k}"))?;
        }
        if k >= 2 {
            ensure((&cx.delstar[k - 1] * &cx.delstar[k]).is_zero(), || format!("delstar^2 != 0 in degree {k}"))?;
        }
        if k < top {
            let lhs = &cx.del[k].transpose() * &cx.gram[k + 1];
            let rhs = &cx.gram[k] * &cx.delstar[k + 1];
            ensure(lhs == rhs, || format!("<del x, y> != <x, delstar y> in degree {k}"))?;
        }
        let n = cx.dim(k);
        let mut lap = Matrix::zeros(n, n);
        let mut stacked = Matrix::zeros(0, n);
        if k < top {
            lap = &lap + &(&cx.delstar[k + 1] * &cx.del[k]);
            stacked = stacked.vstack(&cx.del[k]);
        }
        if k > 0 {
            lap = &lap + &(&cx.del[k - 1] * &cx.delstar[k]);
            stacked = stacked.vstack(&cx.delstar[k]);
        }
        ensure(lap == *cx.laplacian(k), || format!("box != delstar del + del delstar in degree {k}"))?;
        let ker_box = n - lap.rank();
        let ker_both = n - stacked.rank();
        ensure(ker_box == ker_both, || format!("ker box != ker del cap ker delstar in degree {k}"))?;
        let h = hodge_decompose(cx, k).map_err(|e| e.to_string())?;
        let (a, b, c) = h.dims();
        ensure(a + b + c == n, || format!("Hodge dimensions do not sum in degree {k}"))?;
        let g = &cx.gram[k];
        for (x, y) in [(&h.image_del, &h.harmonic), (&h.image_del, &h.image_delstar), (&h.harmonic, &h.image_delstar)] {
            ensure((&(&x.transpose() * g) * y).is_zero(), || format!("Hodge summands not orthogonal in degree {k}"))?;
        }
    }
    Ok(())
}

pub fn check_kernel_property(cx: &CochainComplex, samples: usize, seed: u64) -> std::result::Result<usize, String> {
    let r = kernel_property(cx, samples, seed).map_err(|e| e.to_string())?;
    ensure(r.samples == samples && r.premise_samples > 0, || "no sample satisfied the premise".into())?;
    Ok(r.premise_samples)
}

pub fn check_kostant(case: &Case, alg: &LieAlgebra, module: &HighestWeightModule, cx: &CochainComplex) -> std::result::Result<(), String> {
    let found = kostant_multiplicities(alg, module, cx).map_err(|e| e.to_string())?;
    let oracle = kostant_oracle(alg, &module.highest_weight);
    ensure(found == oracle, || format!("harmonic weights {found:?} != oracle {oracle:?}"))?;
    let betti = cx.betti_numbers();
    if case.kind == CartanType::A && case.rank == 2 && case.is_borel() && case.rep == RepKind::Trivial {
        ensure(betti == [1, 2, 2, 1], || format!("Betti numbers {betti:?}, expected [1, 2, 2, 1]"))?;
    }
    Ok(())
}

fn identity(jc: &JetComplex, k: usize) -> BlockOp {
    BlockOp::identity(&jc.spaces[k], &jc.keys)
}

pub fn check_square_zero(jc: &JetComplex, ops: &BggOperators) -> std::result::Result<(), String> {
    jc.verify().map_err(|e| e.to_string())?;
    for k in 0..jc.top.saturating_sub(1) {
        ensure(jc.dn[k + 1].mul(&jc.dn[k]).is_zero(), || format!("dN^2 != 0 in degree {k}"))?;
        ensure(ops.d_bgg[k + 1].mul(&ops.d_bgg[k]).is_zero(), || format!("D^2 != 0 in degree {k}"))?;
    }
    Ok(())
}

pub fn check_homotopy(jc: &JetComplex, ops: &BggOperators) -> std::result::Result<(), String> {
    let top = jc.top;
    for k in 0..=top {
        let lhs = identity(jc, k).sub(&ops.l[k].mul(&ops.ptilde[k]).mul(&ops.linv[k]));
        let mut rhs = BlockOp::zero(&jc.spaces[k], &jc.spaces[k], &jc.keys);
        if k > 0 {
            rhs = rhs.add(&jc.dn[k - 1].mul(&ops.h[k]));
        }
        if k < top {
            rhs = rhs.add(&ops.h[k + 1].mul(&jc.dn[k]));
        }
        ensure(lhs == rhs, || format!("1 - L P~ L^-1 != dN h + h dN in degree {k}"))?;
    }
    let report = homotopy_and_equivalence(jc, ops).map_err(|e| e.to_string())?;
    ensure(report.jet_betti == report.bgg_betti, || {
        format!("jet cohomology {:?} != BGG cohomology {:?}", report.jet_betti, report.bgg_betti)
    })
}

pub fn check_block_diagonal(jc: &JetComplex, ops: &BggOperators) -> std::result::Result<(), String> {
    for k in 0..=jc.top {
        let s = &jc.spaces[k];
        ensure(ops.g[k].is_filtered(s, s) && ops.g[k].graded_part(s, s) == identity(jc, k), || format!("gr(G) != 1 in degree {k}"))?;
    }
    let mut restricted_ranks = Vec::new();
    for k in 0..jc.top {
        let t = &ops.conjugated[k];
        let q0 = identity(jc, k).sub(&ops.ptilde[k]);
        let q1 = identity(jc, k + 1).sub(&ops.ptilde[k + 1]);
        ensure(ops.ptilde[k + 1].mul(t).mul(&q0).is_zero(), || format!("im P~ <- ker P~ block nonzero in degree {k}"))?;
        ensure(q1.mul(t).mul(&ops.ptilde[k]).is_zero(), || format!("ker P~ <- im P~ block nonzero in degree {k}"))?;
        let conj = ops.g[k + 1].inverse().ok_or("G not invertible")?.mul(t).mul(&ops.g[k]).mul(&q0);
        ensure(conj == jc.del_t[k].mul(&q0), || format!("G^-1 A G != gr(dN) on ker P~ in degree {k}"))?;
        restricted_ranks.push(conj.rank());
    }
    for k in 0..=jc.top {
        let kernel = jc.spaces[k].dim() - ops.ptilde[k].rank();
        let used = restricted_ranks.get(k).copied().unwrap_or(0) + if k > 0 { restricted_ranks[k - 1] } else { 0 };
        ensure(kernel == used, || format!("ker P~ block has cohomology in degree {k}"))?;
    }
    Ok(())
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

struct CaseRun {
    label: String,
    checks: Vec<Check>,
    summary: Value,
    ms: f64,
}

fn run_case(case: &Case, params: &SuiteParams) -> CaseRun {
    let t = Instant::now();
    let label = case.label();
    let mut checks = Vec::new();
    let mut summary = serde_json::Map::new();
    let mut push = |criterion: u32, outcome: std::result::Result<(), String>| {
        checks.push(Check { criterion, case: label.clone(), outcome });
    };
    let built = case.build();
    let (alg, module) = match built {
        Ok(x) => x,
        Err(e) => {
            for c in [1, 2, 3, 4, 6, 7] {
                push(c, Err(e.to_string()));
            }
            return CaseRun { label: label.clone(), checks, summary: Value::Null, ms: elapsed_ms(t) };
        }
    };
    summary.insert("module_dimension".into(), json!(module.dim()));
    match build_complex(&alg, &module) {
        Ok(cx) => {
            push(1, check_hodge(&cx));
            match check_kernel_property(&cx, params.kernel_samples, params.seed) {
                Ok(n) => {
                    summary.insert("kernel_premise_samples".into(), json!(n));
                    push(2, Ok(()));
                }
                Err(e) => push(2, Err(e)),
            }
            push(3, check_kostant(case, &alg, &module, &cx));
            summary.insert("betti".into(), json!(cx.betti_numbers()));
            summary.insert("cochain_dimensions".into(), json!((0..=cx.top).map(|k| cx.dim(k)).collect::<Vec<_>>()));
            summary.insert("kostant_weights".into(), report::multiplicities(&kostant_oracle(&alg, &module.highest_weight)));
        }
        Err(e) => {
            for c in [1, 2, 3] {
                push(c, Err(e.to_string()));
            }
        }
    }
    let flat = build_flat_complex(&alg, &module, params.degree_cap).and_then(|jc| assemble_bgg(&jc).map(|ops| (jc, ops)));
    match flat {
        Ok((jc, ops)) => {
            push(4, check_square_zero(&jc, &ops));
            push(6, check_homotopy(&jc, &ops));
            push(7, check_block_diagonal(&jc, &ops));
            summary.insert("jet_form_dimensions".into(), json!(jc.dims()));
            summary.insert("jet_betti".into(), json!(jc.jet_betti()));
            summary.insert("bgg_ranks".into(), json!(ops.d_bgg.iter().map(BlockOp::rank).collect::<Vec<_>>()));
        }
        Err(e) => {
            for c in [4, 6, 7] {
                push(c, Err(e.to_string()));
            }
        }
    }
    CaseRun { label, checks, summary: Value::Object(summary), ms: elapsed_ms(t) }
}

/// `D_bgg[0]` on `sl2` with `E` of dimension `n + 1` has an `(n+1)`-dimensional kernel.
pub fn sl2_kernel(n: i64, degree_cap: u32) -> std::result::Result<usize, String> {
    let rs = build_root_system(CartanType::A, 1).map_err(|e| e.to_string())?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs).map_err(|e| e.to_string())?, &ParabolicChoice::borel(&rs));
    let module = irrep(&alg, &[n]).map_err(|e| e.to_string())?;
    let jc = build_flat_complex(&alg, &module, degree_cap).map_err(|e| e.to_string())?;
    let ops = assemble_bgg(&jc).map_err(|e| e.to_string())?;
    Ok(ops.d_bgg[0].kernel_dim())
}

pub const SL2_DEGREE_CAP: u32 = 6;

pub fn run_suite(params: &SuiteParams) -> SuiteOutcome {
    let mut checks: Vec<Check> = Vec::new();
    let mut cases = BTreeMap::new();
    let mut timings = BTreeMap::new();

    let runs: Vec<CaseRun> = test_matrix().par_iter().map(|c| run_case(c, params)).collect();
    for r in runs {
        checks.extend(r.checks);
        timings.insert(format!("case {}", r.label), r.ms);
        cases.insert(r.label, r.summary);
    }

    let t = Instant::now();
    for n in 1..=3 {
        let outcome = sl2_kernel(n, SL2_DEGREE_CAP)
            .and_then(|k| ensure(k == n as usize + 1, || format!("kernel dimension {k}, expected {}", n + 1)));
        checks.push(Check { criterion: 5, case: format!("A1{{1}}/dim {}", n + 1), outcome });
    }
    timings.insert("sl2 kernels".into(), elapsed_ms(t));

    let t = Instant::now();
    for case in test_matrix().into_iter().filter(|c| c.kind == CartanType::A && (c.rank == 1 || c.crossed == [1])) {
        let outcome = case.build().map_err(|e| e.to_string()).and_then(|(alg, module)| {
            let samples = abelian_check(&alg, &module, params.samples, params.seed).map_err(|e| e.to_string())?;
            ensure(samples.len() == params.samples, || "missing samples".into())?;
            match samples.iter().find(|s| !(s.exact && s.ray_exact)) {
                Some(s) => Err(format!("character {:?} not exact", s.character)),
                None => Ok(()),
            }
        });
        checks.push(Check { criterion: 8, case: case.label(), outcome });
    }
    timings.insert("abelian symbols".into(), elapsed_ms(t));

    let t = Instant::now();
    let heis = Case::new(CartanType::A, 2, &[1, 2], RepKind::Trivial);
    let mut numeric = json!({});
    let outcome = heis.build().map_err(|e| e.to_string()).and_then(|(alg, module)| {
        let samples = heisenberg_scan(&alg, &module, params.truncation).map_err(|e| e.to_string())?;
        numeric = report::rockland(&crate::rockland::RocklandVerdict::Heisenberg { samples: samples.clone() })
            .1
            .unwrap_or(Value::Null);
        match samples.iter().find(|s| !s.passed()) {
            Some(s) => Err(format!("hbar {} degree {:?}", report::rat_str(&s.hbar), s.failing_degree())),
            None => Ok(()),
        }
    });
    checks.push(Check { criterion: 9, case: heis.label(), outcome });
    timings.insert("heisenberg symbols".into(), elapsed_ms(t));

    let criteria = CRITERIA
        .iter()
        .map(|&(id, title)| {
            let mine: Vec<&Check> = checks.iter().filter(|c| c.criterion == id).collect();
            let failure = mine.iter().find_map(|c| c.outcome.as_ref().err().map(|e| format!("{}: {e}", c.case)));
            CriterionResult { id, title, cases: mine.len(), failure }
        })
        .collect();
    SuiteOutcome { criteria, cases, numeric, timings_ms: timings }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_has_fifteen_cases() {
        let m = test_matrix();
        assert_eq!(m.len(), 15);
        assert_eq!(m[0].label(), "A1{1}/trivial");
        assert_eq!(m[11].label(), "A2{1,2}/adjoint");
    }

    #[test]
    fn small_case_passes_every_check() {
        let run = run_case(&Case::new(CartanType::A, 1, &[1], RepKind::Defining), &SuiteParams::default());
        assert_eq!(run.checks.len(), 6);
        for c in &run.checks {
            assert!(c.outcome.is_ok(), "{c:?}");
        }
    }

    #[test]
    fn sl2_kernel_dimension() {
        assert_eq!(sl2_kernel(1, SL2_DEGREE_CAP).unwrap(), 2);
    }
}
