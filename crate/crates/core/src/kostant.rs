//! Chevalley–Eilenberg complex of `g_-` with coefficients in a module, the
//! Kostant codifferential, the algebraic Laplacian and Hodge theory.
//!
//! A cochain basis element is `(I, v)` with `I` a strictly increasing tuple
//! of `g_-` indices, standing for `eps^I (x) v`; its flat index is
//! `rank(I) * dim V + v` with subsets ordered lexicographically.
//!
//! The codifferential is the chain boundary of `Lambda p_+ (x) V`, moved to
//! cochains through `eps^a <-> Z_a = e_a / k_a` with `k_a = B(e_a, f_a)`:
//!
//! ```text
//! d*(Z_I (x) v) = sum_p (-1)^(p+1) Z_(I - i_p) (x) Z_(i_p) v
//!               + sum_(p<q) (-1)^(p+q+1) [Z_(i_p), Z_(i_q)] ^ Z_(I - i_p - i_q) (x) v
//! ```

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, NegativePart, SparseVec};
use crate::linalg::{ratio, Matrix, Rat, SparseMatrix};
use crate::repn::HighestWeightModule;
use crate::rootsys::{affine_action, dual_weight, minimal_coset_representatives};

/// Largest cochain space (in one degree) assembled densely.
pub const COCHAIN_CAP: usize = 4096;

/// Lexicographic bases of `Lambda^k` of an `n`-dimensional space.
#[derive(Clone, Debug)]
pub struct ExteriorBasis {
    pub n: usize,
    pub subsets: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Self {
        let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
        let index = subsets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect())
            .collect();
        ExteriorBasis { n, subsets, index }
    }

    pub fn dim(&self, k: usize) -> usize {
        self.subsets[k].len()
    }

    pub fn index_of(&self, set: &[usize]) -> usize {
        self.index[set.len()][set]
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Sort a tuple, returning `None` on a repeated entry and otherwise the
/// sorted tuple with the sign of the sorting permutation.
pub fn sort_with_sign(mut v: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    Some((v, sign))
}

fn add_block(m: &mut SparseMatrix, row_block: usize, col_block: usize, dim_v: usize, a: &SparseMatrix, s: &Rat) {
    for (r, c, v) in a.iter() {
        m.add_to(row_block * dim_v + r, col_block * dim_v + c, &(v * s));
    }
}

fn add_identity_block(m: &mut SparseMatrix, row_block: usize, col_block: usize, dim_v: usize, s: &Rat) {
    for v in 0..dim_v {
        m.add_to(row_block * dim_v + v, col_block * dim_v + v, s);
    }
}

fn sign_rat(s: i64) -> Rat {
    Rat::from_integer(s.into())
}

/// Coboundary `C^k -> C^(k+1)` of `Lambda g* (x) V` for a Lie algebra with
/// local structure constants `bracket` acting on `V` through `actions`.
pub fn ce_differential_sparse(
    ext: &ExteriorBasis,
    bracket: &[Vec<SparseVec>],
    actions: &[SparseMatrix],
    dim_v: usize,
    k: usize,
) -> SparseMatrix {
    if k >= ext.n {
        return SparseMatrix::new(0, ext.dim(k) * dim_v);
    }
    let mut m = SparseMatrix::new(ext.dim(k + 1) * dim_v, ext.dim(k) * dim_v);
    for (jrow, set) in ext.subsets[k + 1].iter().enumerate() {
        for i in 0..set.len() {
            let mut rest = set.clone();
            let a = rest.remove(i);
            let s = if i % 2 == 0 { 1 } else { -1 };
            add_block(&mut m, jrow, ext.index_of(&rest), dim_v, &actions[a], &sign_rat(s));
        }
        for i in 0..set.len() {
            for l in i + 1..set.len() {
                let rest: Vec<usize> = set.iter().enumerate().filter(|(p, _)| *p != i && *p != l).map(|(_, &x)| x).collect();
                for (c, coef) in &bracket[set[i]][set[l]] {
                    let mut t = vec![*c];
                    t.extend(&rest);
                    let Some((sorted, sgn)) = sort_with_sign(t) else { continue };
                    let s = if (i + l) % 2 == 0 { sgn } else { -sgn };
                    add_identity_block(&mut m, jrow, ext.index_of(&sorted), dim_v, &(coef * sign_rat(s)));
                }
            }
        }
    }
    m
}

/// Kostant codifferential `C^k -> C^(k-1)` in cochain coordinates, from
/// the structure constants of `p_+`, its action on `V` and the pairing
/// constants `kappa`.
pub fn chain_boundary_sparse(
    ext: &ExteriorBasis,
    positive_bracket: &[Vec<SparseVec>],
    positive_actions: &[SparseMatrix],
    kappa: &[Rat],
    dim_v: usize,
    k: usize,
) -> SparseMatrix {
    if k == 0 {
        return SparseMatrix::new(0, ext.dim(0) * dim_v);
    }
    let mut m = SparseMatrix::new(ext.dim(k - 1) * dim_v, ext.dim(k) * dim_v);
    for (icol, set) in ext.subsets[k].iter().enumerate() {
        for p in 0..set.len() {
            let mut rest = set.clone();
            let a = rest.remove(p);
            let s = if p % 2 == 0 { 1 } else { -1 };
            add_block(&mut m, ext.index_of(&rest), icol, dim_v, &positive_actions[a], &(sign_rat(s) / &kappa[a]));
        }
        for p in 0..set.len() {
            for q in p + 1..set.len() {
                let rest: Vec<usize> = set.iter().enumerate().filter(|(i, _)| *i != p && *i != q).map(|(_, &x)| x).collect();
                for (d, coef) in &positive_bracket[set[p]][set[q]] {
                    let mut t = vec![*d];
                    t.extend(&rest);
                    let Some((sorted, sgn)) = sort_with_sign(t) else { continue };
                    let s = if (p + q) % 2 == 0 { -sgn } else { sgn };
                    let f = coef * &kappa[*d] / (&kappa[set[p]] * &kappa[set[q]]) * sign_rat(s);
                    add_identity_block(&mut m, ext.index_of(&sorted), icol, dim_v, &f);
                }
            }
        }
    }
    m
}

/// Action on `C^k` of an element acting on `g_-` by `coadj` (column `b` holds
/// `[X, Y_b]` in local coordinates) and on `V` by `action`.
pub fn cochain_action_sparse(ext: &ExteriorBasis, coadj: &Matrix, action: &SparseMatrix, dim_v: usize, k: usize) -> SparseMatrix {
    let mut m = SparseMatrix::new(ext.dim(k) * dim_v, ext.dim(k) * dim_v);
    for (icol, set) in ext.subsets[k].iter().enumerate() {
        add_block(&mut m, icol, icol, dim_v, action, &Rat::one());
        // X eps^a = -sum_b coadj[a][b] eps^b
        for p in 0..set.len() {
            for b in 0..ext.n {
                let c = &coadj[(set[p], b)];
                if c.is_zero() {
                    continue;
                }
                let mut t = set.clone();
                t[p] = b;
                let Some((sorted, sgn)) = sort_with_sign(t) else { continue };
                add_identity_block(&mut m, ext.index_of(&sorted), icol, dim_v, &(-c * sign_rat(sgn)));
            }
        }
    }
    m
}

/// Everything about `g_-` and the module the complex is assembled from.
#[derive(Clone, Debug)]
pub struct ComplexData {
    pub neg: NegativePart,
    pub ext: ExteriorBasis,
    pub module_dim: usize,
    pub neg_actions: Vec<SparseMatrix>,
    pub pos_actions: Vec<SparseMatrix>,
    pub module_weights: Vec<Vec<i64>>,
    pub module_gram: Matrix,
}

impl ComplexData {
    pub fn new(alg: &LieAlgebra, module: &HighestWeightModule) -> Self {
        let neg = alg.negative_part();
        let ext = ExteriorBasis::new(neg.dim());
        ComplexData {
            neg_actions: neg.indices.iter().map(|&b| SparseMatrix::from_dense(&module.action[b])).collect(),
            pos_actions: neg.positive.iter().map(|&b| SparseMatrix::from_dense(&module.action[b])).collect(),
            ext,
            neg,
            module_dim: module.dim(),
            module_weights: module.weights.clone(),
            module_gram: module.shapovalov.clone(),
        }
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.ext.dim(k) * self.module_dim
    }

    /// Dynkin weight of a form `eps^I`.
    pub fn form_weight(&self, set: &[usize]) -> Vec<i64> {
        let r = self.module_weights.first().map_or(0, Vec::len);
        let mut w = vec![0; r];
        for &a in set {
            for (x, y) in w.iter_mut().zip(&self.neg.weights[a]) {
                *x -= y;
            }
        }
        w
    }

    /// Action on `C^k` of a basis element of `g_0`.
    pub fn level_zero_action(&self, alg: &LieAlgebra, module: &HighestWeightModule, x: usize, k: usize) -> SparseMatrix {
        let local: BTreeMap<usize, usize> = self.neg.indices.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let n = self.neg.dim();
        let mut coadj = Matrix::zeros(n, n);
        for (b, &gb) in self.neg.indices.iter().enumerate() {
            for (c, v) in alg.bracket(x, gb) {
                coadj[(local[c], b)] = v.clone();
            }
        }
        cochain_action_sparse(&self.ext, &coadj, &SparseMatrix::from_dense(&module.action[x]), self.module_dim, k)
    }
}

/// Exact matrix of the Chevalley–Eilenberg coboundary `C^k -> C^(k+1)`.
pub fn ce_differential(alg: &LieAlgebra, module: &HighestWeightModule, k: usize) -> Result<Matrix> {
    let data = ComplexData::new(alg, module);
    if k > data.neg.dim() {
        return Err(Error::DegreeOutOfRange { k, max: data.neg.dim() });
    }
    Ok(ce_differential_sparse(&data.ext, &data.neg.bracket, &data.neg_actions, data.module_dim, k).to_dense())
}

/// Exact matrix of the Kostant codifferential `C^k -> C^(k-1)`.
pub fn kostant_codifferential(alg: &LieAlgebra, module: &HighestWeightModule, k: usize) -> Result<Matrix> {
    let data = ComplexData::new(alg, module);
    if k == 0 || k > data.neg.dim() {
        return Err(Error::DegreeOutOfRange { k, max: data.neg.dim() });
    }
    Ok(chain_boundary_sparse(&data.ext, &data.neg.positive_bracket, &data.pos_actions, &data.neg.kappa, data.module_dim, k).to_dense())
}

#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub data: ComplexData,
    pub top: usize,
    /// Dynkin weight of every basis element, per degree.
    pub weights: Vec<Vec<Vec<i64>>>,
    /// `del[k]: C^k -> C^(k+1)`; `del[top]` has no rows.
    pub del: Vec<Matrix>,
    /// `delstar[k]: C^k -> C^(k-1)`; `delstar[0]` has no rows.
    pub delstar: Vec<Matrix>,
    pub boxes: Vec<Matrix>,
    pub gram: Vec<Matrix>,
}

pub fn build_complex(alg: &LieAlgebra, module: &HighestWeightModule) -> Result<CochainComplex> {
    let data = ComplexData::new(alg, module);
    let top = data.neg.dim();
    for k in 0..=top {
        if data.cochain_dim(k) > COCHAIN_CAP {
            return Err(Error::DimensionCap(COCHAIN_CAP));
        }
    }
    let del: Vec<Matrix> = (0..=top)
        .into_par_iter()
        .map(|k| ce_differential_sparse(&data.ext, &data.neg.bracket, &data.neg_actions, data.module_dim, k).to_dense())
        .collect();
    let delstar: Vec<Matrix> = (0..=top)
        .into_par_iter()
        .map(|k| chain_boundary_sparse(&data.ext, &data.neg.positive_bracket, &data.pos_actions, &data.neg.kappa, data.module_dim, k).to_dense())
        .collect();
    let boxes: Vec<Matrix> = (0..=top)
        .into_par_iter()
        .map(|k| {
            let n = data.cochain_dim(k);
            let mut b = if k < top { &delstar[k + 1] * &del[k] } else { Matrix::zeros(n, n) };
            if k > 0 {
                b = &b + &(&del[k - 1] * &delstar[k]);
            }
            b
        })
        .collect();
    let gram: Vec<Matrix> = (0..=top).map(|k| cochain_gram(&data, k)).collect();
    let weights = (0..=top)
        .map(|k| {
            let mut out = Vec::with_capacity(data.cochain_dim(k));
            for set in &data.ext.subsets[k] {
                let fw = data.form_weight(set);
                for w in &data.module_weights {
                    out.push(fw.iter().zip(w).map(|(a, b)| a + b).collect());
                }
            }
            out
        })
        .collect();
    Ok(CochainComplex { data, top, weights, del, delstar, boxes, gram })
}

/// Inner product induced by `-B(x, theta y)` on forms and the contravariant
/// form on the module.
fn cochain_gram(data: &ComplexData, k: usize) -> Matrix {
    let form: Vec<Rat> = data.ext.subsets[k]
        .iter()
        .map(|set| set.iter().fold(Rat::one(), |acc, &a| acc / &data.neg.kappa[a]))
        .collect();
    Matrix::diagonal(&form).kron(&data.module_gram)
}

impl CochainComplex {
    pub fn dim(&self, k: usize) -> usize {
        self.gram[k].rows()
    }

    pub fn laplacian(&self, k: usize) -> &Matrix {
        &self.boxes[k]
    }

    /// Basis indices of degree `k` grouped by weight.
    pub fn weight_blocks(&self, k: usize) -> BTreeMap<Vec<i64>, Vec<usize>> {
        let mut m: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (i, w) in self.weights[k].iter().enumerate() {
            m.entry(w.clone()).or_default().push(i);
        }
        m
    }

    /// Exact identities: square zero, adjointness, Laplacian formula and
    /// self-adjointness, weight preservation.
    pub fn verify_identities(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Internal(m));
        for k in 0..self.top {
            if !(&self.del[k + 1] * &self.del[k]).is_zero() {
                return fail(format!("del^2 != 0 in degree {k}"));
            }
            if k >= 1 && !(&self.delstar[k] * &self.delstar[k + 1]).is_zero() {
                return fail(format!("delstar^2 != 0 in degree {}", k + 1));
            }
            // <del x, y> = <x, delstar y>
            let lhs = &self.del[k].transpose() * &self.gram[k + 1];
            let rhs = &self.gram[k] * &self.delstar[k + 1];
            if lhs != rhs {
                return fail(format!("del and delstar not adjoint in degree {k}"));
            }
        }
        for k in 0..=self.top {
            let mut b = Matrix::zeros(self.dim(k), self.dim(k));
            if k < self.top {
                b = &b + &(&self.delstar[k + 1] * &self.del[k]);
            }
            if k > 0 {
                b = &b + &(&self.del[k - 1] * &self.delstar[k]);
            }
            if b != self.boxes[k] {
                return fail(format!("box != delstar del + del delstar in degree {k}"));
            }
            let gb = &self.gram[k] * &self.boxes[k];
            if gb != gb.transpose() {
                return fail(format!("box not self-adjoint in degree {k}"));
            }
            let bx = &self.boxes[k];
            for r in 0..bx.rows() {
                for c in 0..bx.cols() {
                    if !bx[(r, c)].is_zero() && self.weights[k][r] != self.weights[k][c] {
                        return fail(format!("box mixes weights in degree {k}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `box` commutes with every element of `g_0`.
    pub fn verify_equivariance(&self, alg: &LieAlgebra, module: &HighestWeightModule) -> Result<()> {
        for x in alg.level_zero() {
            for k in 0..=self.top {
                let a = self.data.level_zero_action(alg, module, x, k).to_dense();
                if a.commutator(&self.boxes[k]) != Matrix::zeros(self.dim(k), self.dim(k)) {
                    return Err(Error::Internal(format!("box does not commute with {} in degree {k}", alg.basis_label(x))));
                }
            }
        }
        Ok(())
    }

    /// Basis of `ker box_k` made of weight vectors.
    pub fn harmonic_basis(&self, k: usize) -> Matrix {
        let n = self.dim(k);
        let mut cols = Vec::new();
        for idx in self.weight_blocks(k).values() {
            let ker = self.boxes[k].submatrix(idx, idx).kernel();
            for c in 0..ker.cols() {
                let mut v = vec![Rat::zero(); n];
                for (i, &g) in idx.iter().enumerate() {
                    v[g] = ker[(i, c)].clone();
                }
                cols.push(v);
            }
        }
        Matrix::from_columns(n, &cols)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.top).map(|k| self.harmonic_basis(k).cols()).collect()
    }

    pub fn euler_characteristic(&self) -> (i64, i64) {
        let mut chains = 0i64;
        let mut homology = 0i64;
        for (k, b) in self.betti_numbers().iter().enumerate() {
            let s = if k % 2 == 0 { 1 } else { -1 };
            chains += s * self.dim(k) as i64;
            homology += s * *b as i64;
        }
        (chains, homology)
    }
}

#[derive(Clone, Debug)]
pub struct HodgeDecomposition {
    pub image_del: Matrix,
    pub harmonic: Matrix,
    pub image_delstar: Matrix,
}

impl HodgeDecomposition {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.image_del.cols(), self.harmonic.cols(), self.image_delstar.cols())
    }
}

/// `C^k = im del + ker box + im delstar`, checked to be orthogonal and
/// exhaustive, with `ker box = ker del ∩ ker delstar`.
pub fn hodge_decompose(cx: &CochainComplex, k: usize) -> Result<HodgeDecomposition> {
    let n = cx.dim(k);
    let image_del = if k == 0 { Matrix::zeros(n, 0) } else { cx.del[k - 1].column_space() };
    let image_delstar = if k == cx.top { Matrix::zeros(n, 0) } else { cx.delstar[k + 1].column_space() };
    let harmonic = cx.harmonic_basis(k);
    let g = &cx.gram[k];
    let fail = |m: &str| Err(Error::Internal(format!("{m} in degree {k}")));
    for (a, b) in [(&image_del, &harmonic), (&image_del, &image_delstar), (&harmonic, &image_delstar)] {
        if !(&(&a.transpose() * g) * b).is_zero() {
            return fail("Hodge summands not orthogonal");
        }
    }
    if image_del.cols() + harmonic.cols() + image_delstar.cols() != n {
        return fail("Hodge dimensions do not add up");
    }
    if !(&cx.del[k] * &harmonic).is_zero() || !(&cx.delstar[k] * &harmonic).is_zero() {
        return fail("harmonic form not closed and coclosed");
    }
    if cx.del[k].vstack(&cx.delstar[k]).kernel().cols() != harmonic.cols() {
        return fail("ker box != ker del ∩ ker delstar");
    }
    Ok(HodgeDecomposition { image_del, harmonic, image_delstar })
}

/// Harmonic section `S_k: H_k -> C^k` and the projection `pi_k` back.
#[derive(Clone, Debug)]
pub struct HarmonicData {
    pub section: Matrix,
    pub projection: Matrix,
}

impl HarmonicData {
    /// Orthogonal projector onto `ker box_k`.
    pub fn projector(&self) -> Matrix {
        &self.section * &self.projection
    }
}

pub fn harmonic_section(cx: &CochainComplex, k: usize) -> Result<HarmonicData> {
    let s = cx.harmonic_basis(k);
    let g = &cx.gram[k];
    let st_g = &s.transpose() * g;
    let inv = (&st_g * &s).inverse().ok_or_else(|| Error::Internal("harmonic Gram matrix singular".into()))?;
    let projection = &inv * &st_g;
    if &projection * &s != Matrix::identity(s.cols()) {
        return Err(Error::Internal("pi S != 1".into()));
    }
    if k < cx.top && !(&projection * &cx.delstar[k + 1]).is_zero() {
        return Err(Error::Internal("pi does not vanish on im delstar".into()));
    }
    Ok(HarmonicData { section: s, projection })
}

/// Per degree: `(weight, multiplicity)` of the `g_0`-components of the
/// harmonic space. A component is labelled by minus its lowest weight,
/// which matches the oracle `w . lambda*` with `lambda* = -w0 lambda`.
pub type Multiplicities = Vec<Vec<(Vec<i64>, usize)>>;

pub fn kostant_multiplicities(alg: &LieAlgebra, module: &HighestWeightModule, cx: &CochainComplex) -> Result<Multiplicities> {
    let levi_lowering: Vec<usize> = (0..alg.rs.rank)
        .filter(|&j| alg.degree(alg.lowering_index(j)) == 0)
        .map(|j| alg.lowering_index(alg.rs.positive_root_index(&alg.rs.simple_roots[j]).expect("simple root")))
        .collect();
    let mut result = Vec::new();
    for k in 0..=cx.top {
        let actions: Vec<Matrix> =
            levi_lowering.iter().map(|&f| cx.data.level_zero_action(alg, module, f, k).to_dense()).collect();
        let harmonic = cx.harmonic_basis(k);
        let mut by_weight: BTreeMap<Vec<i64>, Vec<Vec<Rat>>> = BTreeMap::new();
        for c in 0..harmonic.cols() {
            let col = harmonic.column(c);
            let i = col.iter().position(|x| !x.is_zero()).expect("nonzero harmonic vector");
            by_weight.entry(cx.weights[k][i].clone()).or_default().push(col);
        }
        let mut mults: Vec<(Vec<i64>, usize)> = Vec::new();
        let mut total = 0u64;
        for (w, cols) in by_weight {
            let h = Matrix::from_columns(cx.dim(k), &cols);
            let mut stacked = Matrix::zeros(0, h.cols());
            for a in &actions {
                stacked = stacked.vstack(&(a * &h));
            }
            let m = if actions.is_empty() { h.cols() } else { stacked.kernel().cols() };
            if m > 0 {
                let label: Vec<i64> = w.iter().map(|x| -x).collect();
                total += m as u64 * levi_dimension(alg, &label) as u64;
                mults.push((label, m));
            }
        }
        if total != harmonic.cols() as u64 {
            return Err(Error::KostantMismatch(format!("degree {k}: g_0 components do not fill ker box")));
        }
        mults.sort();
        result.push(mults);
    }
    let oracle = kostant_oracle(alg, &module.highest_weight);
    if result != oracle {
        return Err(Error::KostantMismatch(format!("harmonic weights {result:?}, expected {oracle:?}")));
    }
    Ok(result)
}

/// `{w . lambda* : w in W^p, l(w) = k}` per degree.
pub fn kostant_oracle(alg: &LieAlgebra, lambda: &[i64]) -> Multiplicities {
    let parabolic = alg.parabolic.clone().unwrap_or_else(|| crate::rootsys::ParabolicChoice::borel(&alg.rs));
    let reps = minimal_coset_representatives(&alg.rs, &parabolic);
    let top = reps.iter().map(|(_, l)| *l).max().unwrap_or(0);
    let dual = dual_weight(&alg.rs, lambda);
    (0..=top)
        .map(|k| {
            let mut m: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for (w, l) in &reps {
                if *l == k {
                    *m.entry(affine_action(&alg.rs, w, &dual)).or_insert(0) += 1;
                }
            }
            m.into_iter().collect()
        })
        .collect()
}

/// Dimension of the irreducible `g_0`-module with the given highest weight.
pub fn levi_dimension(alg: &LieAlgebra, mu: &[i64]) -> usize {
    let rs = &alg.rs;
    let shifted: Vec<i64> = mu.iter().map(|c| c + 1).collect();
    let mut q = Rat::one();
    for (k, beta) in rs.positive_roots.iter().enumerate() {
        if alg.degree(alg.raising_index(k)) == 0 {
            q *= ratio(rs.weight_root_inner(&shifted, beta), rs.weight_root_inner(&rs.rho(), beta));
        }
    }
    q.to_integer().try_into().unwrap_or(0)
}

/// Distinct eigenvalues of `box_k` with multiplicities, found numerically
/// per weight block and confirmed exactly by kernel dimensions.
pub fn exact_spectrum(cx: &CochainComplex, k: usize) -> Result<Vec<(Rat, usize)>> {
    let mut out: BTreeMap<Rat, usize> = BTreeMap::new();
    for idx in cx.weight_blocks(k).values() {
        let b = cx.boxes[k].submatrix(idx, idx);
        let g = cx.gram[k].submatrix(idx, idx);
        let sym = (&g * &b).to_f64();
        let chol = nalgebra::Cholesky::new(g.to_f64()).ok_or(Error::NonRationalEigenvalue(k))?;
        let linv = chol.l().try_inverse().ok_or(Error::NonRationalEigenvalue(k))?;
        let m = &linv * sym * linv.transpose();
        let m = (&m + m.transpose()) * 0.5;
        let eig = nalgebra::SymmetricEigen::new(m).eigenvalues;
        let mut candidates: Vec<Rat> = eig.iter().map(|&x| approximate_rational(x).ok_or(Error::NonRationalEigenvalue(k))).collect::<Result<_>>()?;
        candidates.sort();
        candidates.dedup();
        let mut found = 0;
        for c in candidates {
            let shifted = &b - &Matrix::identity(b.rows()).scale(&c);
            let mult = shifted.kernel().cols();
            found += mult;
            *out.entry(c).or_insert(0) += mult;
        }
        if found != idx.len() {
            return Err(Error::NonRationalEigenvalue(k));
        }
    }
    Ok(out.into_iter().collect())
}

fn approximate_rational(x: f64) -> Option<Rat> {
    for den in 1..=2520i64 {
        let num = (x * den as f64).round();
        if (num - x * den as f64).abs() < 1e-7 * den as f64 {
            return Some(ratio(num as i64, den));
        }
    }
    None
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KernelPropertyReport {
    pub samples: usize,
    /// Samples drawn from `ker del delstar` or `ker delstar del`.
    pub premise_samples: usize,
}

/// Property check: `del delstar x = 0` forces `delstar x = 0`, and dually,
/// on seeded random rational cochains.
pub fn kernel_property(cx: &CochainComplex, samples: usize, seed: u64) -> Result<KernelPropertyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = KernelPropertyReport { samples, premise_samples: 0 };
    let degrees = cx.top + 1;
    let dd_star: Vec<Matrix> = (0..degrees)
        .map(|k| if k == 0 { Matrix::zeros(cx.dim(0), cx.dim(0)) } else { &cx.del[k - 1] * &cx.delstar[k] })
        .collect();
    let d_star_d: Vec<Matrix> = (0..degrees)
        .map(|k| if k == cx.top { Matrix::zeros(cx.dim(k), cx.dim(k)) } else { &cx.delstar[k + 1] * &cx.del[k] })
        .collect();
    let ker_dd_star: Vec<Matrix> = dd_star.iter().map(Matrix::kernel).collect();
    let ker_d_star_d: Vec<Matrix> = d_star_d.iter().map(Matrix::kernel).collect();
    let random_rat = |rng: &mut ChaCha8Rng| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
    for s in 0..samples {
        let k = s % degrees;
        let n = cx.dim(k);
        let x: Vec<Rat> = match (s / degrees) % 3 {
            1 => combine(&ker_dd_star[k], || random_rat(&mut rng)),
            2 => combine(&ker_d_star_d[k], || random_rat(&mut rng)),
            _ => (0..n).map(|_| random_rat(&mut rng)).collect(),
        };
        let dsx = if k == 0 { Vec::new() } else { cx.delstar[k].mul_vec(&x) };
        let dx = if k == cx.top { Vec::new() } else { cx.del[k].mul_vec(&x) };
        let zero = |v: &[Rat]| v.iter().all(Zero::is_zero);
        if zero(&dd_star[k].mul_vec(&x)) {
            report.premise_samples += 1;
            if !zero(&dsx) {
                return Err(Error::Internal(format!("del delstar x = 0 but delstar x != 0 in degree {k}")));
            }
        }
        if zero(&d_star_d[k].mul_vec(&x)) {
            report.premise_samples += 1;
            if !zero(&dx) {
                return Err(Error::Internal(format!("delstar del x = 0 but del x != 0 in degree {k}")));
            }
        }
        // <del delstar x, x> = |delstar x|^2
        if k > 0 {
            let lhs = dot(&dd_star[k].mul_vec(&x), &cx.gram[k].mul_vec(&x));
            let rhs = dot(&dsx, &cx.gram[k - 1].mul_vec(&dsx));
            if lhs != rhs || rhs.is_negative() {
                return Err(Error::Internal("<del delstar x, x> != |delstar x|^2".into()));
            }
        }
    }
    Ok(report)
}

fn combine(basis: &Matrix, mut coef: impl FnMut() -> Rat) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); basis.rows()];
    for c in 0..basis.cols() {
        let a = coef();
        for (r, x) in v.iter_mut().enumerate() {
            *x += &basis[(r, c)] * &a;
        }
    }
    v
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Everything computed for one `(algebra, module)` pair.
#[derive(Clone, Debug)]
pub struct KostantReport {
    pub betti: Vec<usize>,
    pub hodge_dims: Vec<(usize, usize, usize)>,
    pub multiplicities: Multiplicities,
    pub spectra: Vec<Vec<(Rat, usize)>>,
    pub kernel_property: KernelPropertyReport,
    pub euler: (i64, i64),
}

pub fn analyze(alg: &LieAlgebra, module: &HighestWeightModule, samples: usize, seed: u64) -> Result<(CochainComplex, KostantReport)> {
    let cx = build_complex(alg, module)?;
    cx.verify_identities()?;
    cx.verify_equivariance(alg, module)?;
    let hodge: Vec<HodgeDecomposition> = (0..=cx.top).map(|k| hodge_decompose(&cx, k)).collect::<Result<_>>()?;
    for k in 0..=cx.top {
        harmonic_section(&cx, k)?;
    }
    let multiplicities = kostant_multiplicities(alg, module, &cx)?;
    let spectra = (0..=cx.top).map(|k| exact_spectrum(&cx, k)).collect::<Result<Vec<_>>>()?;
    if spectra.iter().flatten().any(|(l, _)| l.is_negative()) {
        return Err(Error::Internal("negative Laplacian eigenvalue".into()));
    }
    let kernel_property = kernel_property(&cx, samples, seed)?;
    let euler = cx.euler_characteristic();
    if euler.0 != euler.1 {
        return Err(Error::Internal("Euler characteristics differ".into()));
    }
    let report = KostantReport {
        betti: cx.betti_numbers(),
        hodge_dims: hodge.iter().map(HodgeDecomposition::dims).collect(),
        multiplicities,
        spectra,
        kernel_property,
        euler,
    };
    Ok((cx, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{apply_parabolic_grading, chevalley_basis};
    use crate::linalg::rat;
    use crate::repn::irrep;
    use crate::rootsys::{build_root_system, CartanType, ParabolicChoice};

    fn graded(k: CartanType, n: usize, nodes: &[usize]) -> LieAlgebra {
        let rs = build_root_system(k, n).unwrap();
        let base = chevalley_basis(&rs).unwrap();
        apply_parabolic_grading(&base, &ParabolicChoice::new(&rs, nodes).unwrap())
    }

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_with_sign(vec![2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(vec![1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(vec![1, 1]), None);
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn sl2_small_cases() {
        let alg = graded(CartanType::A, 1, &[1]);
        let triv = HighestWeightModule::trivial(&alg);
        assert!(ce_differential(&alg, &triv, 0).unwrap().is_zero());
        assert!(kostant_codifferential(&alg, &triv, 1).unwrap().is_zero());
        let e = irrep(&alg, &[3]).unwrap();
        let d0 = ce_differential(&alg, &e, 0).unwrap();
        assert_eq!(d0, e.action[2]);
        let ds = kostant_codifferential(&alg, &e, 1).unwrap();
        // B(e, f) = 4 for sl2
        assert_eq!(ds, e.action[1].scale(&ratio(1, 4)));
        assert!(matches!(ce_differential(&alg, &e, 2), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(kostant_codifferential(&alg, &e, 0), Err(Error::DegreeOutOfRange { .. })));

        let e2 = irrep(&alg, &[1]).unwrap();
        let cx = build_complex(&alg, &e2).unwrap();
        assert_eq!(cx.laplacian(0).rank(), 1);
        assert_eq!(hodge_decompose(&cx, 1).unwrap().dims(), (1, 1, 0));
        assert_eq!(hodge_decompose(&cx, 0).unwrap().dims(), (0, 1, 1));
        let m = kostant_multiplicities(&alg, &e2, &cx).unwrap();
        assert_eq!(m, vec![vec![(vec![1], 1)], vec![(vec![-3], 1)]]);
    }

    #[test]
    fn sl2_weights_track_n() {
        let alg = graded(CartanType::A, 1, &[1]);
        for n in 0..4 {
            let e = irrep(&alg, &[n]).unwrap();
            let cx = build_complex(&alg, &e).unwrap();
            assert_eq!(kostant_multiplicities(&alg, &e, &cx).unwrap(), vec![vec![(vec![n], 1)], vec![(vec![-n - 2], 1)]]);
        }
    }

    #[test]
    fn a2_borel_trivial_betti() {
        let alg = graded(CartanType::A, 2, &[1, 2]);
        let triv = HighestWeightModule::trivial(&alg);
        let cx = build_complex(&alg, &triv).unwrap();
        assert_eq!(cx.betti_numbers(), vec![1, 2, 2, 1]);
        let ranks: Vec<usize> = cx.del.iter().map(Matrix::rank).collect();
        assert_eq!(ranks, vec![0, 1, 0, 0]);
        assert!(cx.laplacian(0).is_zero());
    }

    #[test]
    fn full_analysis_on_small_matrix() {
        for (k, n, nodes) in [
            (CartanType::A, 1, vec![1]),
            (CartanType::A, 2, vec![1]),
            (CartanType::A, 2, vec![2]),
            (CartanType::A, 2, vec![1, 2]),
            (CartanType::B, 2, vec![1, 2]),
            (CartanType::G, 2, vec![2]),
        ] {
            let alg = graded(k, n, &nodes);
            for lambda in [vec![0; n], crate::repn::defining_highest_weight(&alg.rs)] {
                let e = irrep(&alg, &lambda).unwrap();
                let (_, report) = analyze(&alg, &e, 40, 7).unwrap();
                assert_eq!(report.euler.0, report.euler.1);
                assert!(report.kernel_property.premise_samples > 0);
            }
        }
    }

    #[test]
    fn spectrum_on_sl2() {
        let alg = graded(CartanType::A, 1, &[1]);
        let e = irrep(&alg, &[1]).unwrap();
        let cx = build_complex(&alg, &e).unwrap();
        let s = exact_spectrum(&cx, 0).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0], (rat(0), 1));
        assert!(s[1].0 > rat(0));
    }
}
