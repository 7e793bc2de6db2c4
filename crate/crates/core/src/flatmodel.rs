//! Polynomial jets on the group `exp(g_-)` with the flat tractor connection,
//! and the BGG machinery built on top: projectors, splitting operator, BGG
//! operators and the homotopy to the BGG complex.
//!
//! A jet-valued cochain basis element is `(I, j, v)`: the form `eps^I`, the
//! monomial `j` and the module vector `v`, with flat index
//! `rank(I) * (#jets * dim E) + j * dim E + v`. Its filtration value is
//! `sum_{a in I} depth(a)` plus the grading index of `v`; the differential
//! raises it by the depth of every derivative it takes, so `gr(dN)` is the
//! algebraic differential.

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;

use crate::blocks::{weight_keys, BlockOp, GradedSpace, Weight};
use crate::error::{Error, Result};
use crate::kostant::{
    build_complex, ce_differential_sparse, chain_boundary_sparse, exact_spectrum, harmonic_section,
    CochainComplex, ExteriorBasis,
};
use crate::liealg::{LieAlgebra, NegativePart};
use crate::linalg::{Matrix, Rat, SparseMatrix};
use crate::repn::HighestWeightModule;

pub const DEFAULT_DEGREE_CAP: u32 = 4;
/// Total number of jet-valued cochains over all form degrees.
pub const JET_CAP: usize = 40_000;

pub type Monomial = Vec<u32>;
pub type Poly = BTreeMap<Monomial, Rat>;

fn poly_add(p: &mut Poly, m: Monomial, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            poly_add(&mut out, m, ca * cb);
        }
    }
    out
}

fn derivative(p: &Poly, c: usize) -> Poly {
    let mut out = Poly::new();
    for (m, v) in p {
        if m[c] > 0 {
            let mut d = m.clone();
            d[c] -= 1;
            poly_add(&mut out, d, v * Rat::from_integer(m[c].into()));
        }
    }
    out
}

fn variable(n: usize, b: usize) -> Poly {
    let mut m = vec![0; n];
    m[b] = 1;
    Poly::from([(m, Rat::one())])
}

/// Coefficients of `x / (1 - e^(-x))`.
pub fn bch_coefficients(order: usize) -> Vec<Rat> {
    // g(x) = (1 - e^(-x)) / x = sum (-1)^j x^j / (j+1)!
    let mut g = Vec::with_capacity(order + 1);
    let mut fact = Rat::one();
    for j in 0..=order {
        fact *= Rat::from_integer((j as i64 + 1).into());
        let s = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
        g.push(s / &fact);
    }
    let mut h = vec![Rat::one()];
    for m in 1..=order {
        let s: Rat = (1..=m).map(|j| &g[j] * &h[m - j]).sum();
        h.push(-s);
    }
    h
}

/// Left-invariant vector fields in exponential coordinates of the first kind.
#[derive(Clone, Debug)]
pub struct LeftInvariantFrame {
    pub dim: usize,
    /// `fields[a][c]` is the coefficient of `d/dx_c` in `X_a`.
    pub fields: Vec<Vec<Poly>>,
}

pub fn left_invariant_frame(alg: &LieAlgebra) -> LeftInvariantFrame {
    frame_for(&alg.negative_part())
}

pub fn frame_for(neg: &NegativePart) -> LeftInvariantFrame {
    let n = neg.dim();
    let beta = bch_coefficients(n + 1);
    let ad_x = |v: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::new(); n];
        for b in 0..n {
            let xb = variable(n, b);
            for (c, pc) in v.iter().enumerate() {
                if pc.is_empty() {
                    continue;
                }
                for (d, s) in &neg.bracket[b][c] {
                    for (m, coef) in poly_mul(&xb, pc) {
                        poly_add(&mut out[*d], m, coef * s);
                    }
                }
            }
        }
        out
    };
    let fields = (0..n)
        .map(|a| {
            let mut term = vec![Poly::new(); n];
            term[a] = Poly::from([(vec![0; n], Rat::one())]);
            let mut field = term.clone();
            for b in beta.iter().skip(1) {
                term = ad_x(&term);
                if term.iter().all(Poly::is_empty) {
                    break;
                }
                for (c, p) in term.iter().enumerate() {
                    for (m, v) in p {
                        poly_add(&mut field[c], m.clone(), v * b);
                    }
                }
            }
            field
        })
        .collect();
    LeftInvariantFrame { dim: n, fields }
}

impl LeftInvariantFrame {
    pub fn apply(&self, a: usize, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (c, coef) in self.fields[a].iter().enumerate() {
            if coef.is_empty() {
                continue;
            }
            for (m, v) in poly_mul(coef, &derivative(p, c)) {
                poly_add(&mut out, m, v);
            }
        }
        out
    }

    /// `[X_a, X_b] = sum_c c^c_ab X_c` as polynomial vector fields.
    pub fn verify_brackets(&self, neg: &NegativePart) -> Result<()> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = {
                        let mut s = self.apply(a, &self.fields[b][c]);
                        for (m, v) in self.apply(b, &self.fields[a][c]) {
                            poly_add(&mut s, m, -v);
                        }
                        s
                    };
                    let mut rhs = Poly::new();
                    for (d, s) in &neg.bracket[a][b] {
                        for (m, v) in &self.fields[*d][c] {
                            poly_add(&mut rhs, m.clone(), v * s);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::Internal(format!("frame bracket [X{a}, X{b}] wrong")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Monomials of weighted degree at most the cap, ordered by weighted degree
/// and then exponent vector.
#[derive(Clone, Debug)]
pub struct JetBasis {
    pub monomials: Vec<Monomial>,
    pub weighted_degree: Vec<u32>,
    pub weights: Vec<Weight>,
    index: BTreeMap<Monomial, usize>,
}

impl JetBasis {
    pub fn new(depths: &[i64], cap: u32, coordinate_weights: &[Weight], rank: usize) -> Self {
        fn rec(a: usize, left: u32, depths: &[i64], cur: &mut Monomial, out: &mut Vec<Monomial>) {
            if a == depths.len() {
                out.push(cur.clone());
                return;
            }
            let w = depths[a] as u32;
            let mut e = 0;
            while e * w <= left {
                cur[a] = e;
                rec(a + 1, left - e * w, depths, cur, out);
                e += 1;
            }
            cur[a] = 0;
        }
        let mut monomials = Vec::new();
        rec(0, cap, depths, &mut vec![0; depths.len()], &mut monomials);
        let wdeg = |m: &Monomial| m.iter().zip(depths).map(|(e, d)| e * *d as u32).sum::<u32>();
        monomials.sort_by(|x, y| (wdeg(x), x).cmp(&(wdeg(y), y)));
        let weights = monomials
            .iter()
            .map(|m| {
                let mut w = vec![0; rank];
                for (a, e) in m.iter().enumerate() {
                    for (x, y) in w.iter_mut().zip(&coordinate_weights[a]) {
                        *x += *e as i64 * y;
                    }
                }
                w
            })
            .collect();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        JetBasis { weighted_degree: monomials.iter().map(wdeg).collect(), monomials, weights, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Matrix of a frame field on the jets; fails if the image leaves the
    /// truncation.
    pub fn field_matrix(&self, frame: &LeftInvariantFrame, a: usize) -> Result<SparseMatrix> {
        let mut m = SparseMatrix::new(self.len(), self.len());
        for (j, mono) in self.monomials.iter().enumerate() {
            let p = Poly::from([(mono.clone(), Rat::one())]);
            for (out, v) in frame.apply(a, &p) {
                let i = self
                    .index_of(&out)
                    .ok_or_else(|| Error::Internal("jet truncation is not preserved by the frame".into()))?;
                m.add_to(i, j, &v);
            }
        }
        Ok(m)
    }
}

/// The truncated flat complex `(J (x) Lambda g_-* (x) E, dN)`.
#[derive(Clone, Debug)]
pub struct JetComplex {
    pub degree_cap: u32,
    pub frame: LeftInvariantFrame,
    pub jets: JetBasis,
    pub fiber: CochainComplex,
    pub module_dim: usize,
    pub top: usize,
    pub keys: Vec<Weight>,
    pub spaces: Vec<GradedSpace>,
    /// Jets with values in the harmonic space, index `j * dim H_k + s`.
    pub harmonic_spaces: Vec<GradedSpace>,
    /// `dn[k]: C^k -> C^(k+1)`.
    pub dn: Vec<BlockOp>,
    /// Tensorial codifferential `C^k -> C^(k-1)`.
    pub delstar_t: Vec<BlockOp>,
    /// Algebraic differential on each fiber, `C^k -> C^(k+1)`.
    pub del_t: Vec<BlockOp>,
    pub box_full: Vec<BlockOp>,
    pub box_t: Vec<BlockOp>,
    empty: GradedSpace,
}

pub fn build_flat_complex(alg: &LieAlgebra, module: &HighestWeightModule, degree_cap: u32) -> Result<JetComplex> {
    let fiber = build_complex(alg, module)?;
    let neg = &fiber.data.neg;
    let n = neg.dim();
    let depths = neg.depths.clone();
    let coord_weights: Vec<Weight> = neg.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
    let frame = frame_for(neg);
    frame.verify_brackets(neg)?;
    let jets = JetBasis::new(&depths, degree_cap, &coord_weights, alg.rs.rank);
    let e = module.dim();
    let nj = jets.len();
    let ext = ExteriorBasis::new(n);
    let total: usize = (0..=n).map(|k| ext.dim(k) * nj * e).sum();
    if total > JET_CAP {
        return Err(Error::JetSpaceTooLarge(total));
    }

    let id_j = SparseMatrix::identity(nj);
    let id_e = SparseMatrix::identity(e);
    let mut full_actions = Vec::with_capacity(n);
    let mut fiber_actions = Vec::with_capacity(n);
    for a in 0..n {
        let x = jets.field_matrix(&frame, a)?;
        let rho = id_j.kron(&fiber.data.neg_actions[a]);
        full_actions.push(x.kron(&id_e).add(&rho));
        fiber_actions.push(rho);
    }
    let pos_actions: Vec<SparseMatrix> = fiber.data.pos_actions.iter().map(|p| id_j.kron(p)).collect();

    let spaces: Vec<GradedSpace> = (0..=n)
        .map(|k| {
            let mut weights = Vec::new();
            let mut filtration = Vec::new();
            for set in &ext.subsets[k] {
                let fw = fiber.data.form_weight(set);
                let fd: i64 = set.iter().map(|&a| depths[a]).sum();
                for jw in &jets.weights {
                    for (v, mw) in module.weights.iter().enumerate() {
                        weights.push(fw.iter().zip(jw).zip(mw).map(|((a, b), c)| a + b + c).collect());
                        filtration.push(fd + module.filtration_index[v]);
                    }
                }
            }
            GradedSpace::new(weights, filtration)
        })
        .collect();
    let harmonic_spaces: Vec<GradedSpace> = (0..=n)
        .map(|k| {
            let s = fiber.harmonic_basis(k);
            let mut col_weight = Vec::new();
            let mut col_filt = Vec::new();
            for c in 0..s.cols() {
                let i = (0..s.rows()).find(|&r| !s[(r, c)].is_zero()).expect("nonzero harmonic vector");
                col_weight.push(fiber.weights[k][i].clone());
                col_filt.push(spaces[k].filtration[i]);
            }
            let mut weights = Vec::new();
            let mut filtration = Vec::new();
            for jw in &jets.weights {
                for (w, f) in col_weight.iter().zip(&col_filt) {
                    weights.push(jw.iter().zip(w).map(|(a, b)| a + b).collect());
                    filtration.push(*f);
                }
            }
            GradedSpace::new(weights, filtration)
        })
        .collect();
    let keys = weight_keys(spaces.iter().chain(harmonic_spaces.iter()));
    let empty = GradedSpace::empty();
    let space = |k: isize| if k < 0 || k as usize > n { &empty } else { &spaces[k as usize] };

    let dim_v = nj * e;
    let assemble = |k: usize, m: SparseMatrix, target: isize| BlockOp::from_sparse(&m, space(target), &spaces[k], &keys);
    let dn = (0..=n)
        .into_par_iter()
        .map(|k| assemble(k, ce_differential_sparse(&ext, &neg.bracket, &full_actions, dim_v, k), k as isize + 1))
        .collect::<Result<Vec<_>>>()?;
    let del_t = (0..=n)
        .into_par_iter()
        .map(|k| assemble(k, ce_differential_sparse(&ext, &neg.bracket, &fiber_actions, dim_v, k), k as isize + 1))
        .collect::<Result<Vec<_>>>()?;
    let delstar_t = (0..=n)
        .into_par_iter()
        .map(|k| {
            let m = chain_boundary_sparse(&ext, &neg.positive_bracket, &pos_actions, &neg.kappa, dim_v, k);
            assemble(k, m, k as isize - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let laplace = |d: &[BlockOp]| -> Vec<BlockOp> {
        (0..=n)
            .map(|k| {
                let mut b = delstar_t.get(k + 1).map_or_else(|| BlockOp::zero(&spaces[k], &spaces[k], &keys), |s| s.mul(&d[k]));
                if k > 0 {
                    b = b.add(&d[k - 1].mul(&delstar_t[k]));
                }
                b
            })
            .collect()
    };
    let box_full = laplace(&dn);
    let box_t = laplace(&del_t);
    Ok(JetComplex {
        degree_cap,
        frame,
        jets,
        module_dim: e,
        top: n,
        keys,
        spaces,
        harmonic_spaces,
        dn,
        delstar_t,
        del_t,
        box_full,
        box_t,
        fiber,
        empty,
    })
}

impl JetComplex {
    pub fn space(&self, k: isize) -> &GradedSpace {
        if k < 0 || k as usize > self.top {
            &self.empty
        } else {
            &self.spaces[k as usize]
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(GradedSpace::dim).collect()
    }

    fn identity(&self, k: usize) -> BlockOp {
        BlockOp::identity(&self.spaces[k], &self.keys)
    }

    /// Lift a fiber operator `C^k -> C^l` (or to/from the harmonic space when
    /// the flags are set) to jets.
    fn lift(&self, fiber: &Matrix, row_harmonic: bool, col_harmonic: bool, k_row: usize, k_col: usize) -> Result<BlockOp> {
        let nj = self.jets.len();
        let e = self.module_dim;
        let idx = |harm: bool, f: usize, j: usize, h: usize| if harm { j * h + f } else { (f / e) * (nj * e) + j * e + f % e };
        let target = if row_harmonic { &self.harmonic_spaces[k_row] } else { &self.spaces[k_row] };
        let source = if col_harmonic { &self.harmonic_spaces[k_col] } else { &self.spaces[k_col] };
        let mut m = SparseMatrix::new(target.dim(), source.dim());
        for r in 0..fiber.rows() {
            for c in 0..fiber.cols() {
                let v = &fiber[(r, c)];
                if v.is_zero() {
                    continue;
                }
                for j in 0..nj {
                    m.add_to(idx(row_harmonic, r, j, fiber.rows()), idx(col_harmonic, c, j, fiber.cols()), v);
                }
            }
        }
        BlockOp::from_sparse(&m, target, source, &self.keys)
    }

    pub fn jet_betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.dn.iter().map(BlockOp::rank).collect();
        (0..=self.top).map(|k| self.spaces[k].dim() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
    }

    /// Structural checks of the assembled complex.
    pub fn verify(&self) -> Result<()> {
        for k in 0..self.top {
            if !self.dn[k + 1].mul(&self.dn[k]).is_zero() {
                return Err(Error::Internal(format!("dN^2 != 0 in degree {k}")));
            }
        }
        for k in 0..=self.top {
            let target = self.space(k as isize + 1);
            if !self.dn[k].is_filtered(target, &self.spaces[k]) {
                return Err(Error::Internal("dN lowers the filtration".into()));
            }
            if self.dn[k].graded_part(target, &self.spaces[k]) != self.del_t[k] {
                return Err(Error::Internal(format!("gr(dN) is not the algebraic differential in degree {k}")));
            }
        }
        Ok(())
    }
}

/// `P~_k`: the fiberwise harmonic projector on jets.
pub fn algebraic_projector(jc: &JetComplex, k: usize) -> Result<BlockOp> {
    let proj = harmonic_section(&jc.fiber, k)?.projector();
    jc.lift(&proj, false, false, k, k)
}

/// `P_k` together with the number of refinement steps it took.
///
/// Starts from `q(box)` where `q(0) = 1` and `q` vanishes on the nonzero
/// spectrum of the algebraic Laplacian, then iterates `P -> 3P^2 - 2P^3`
/// until it is stationary.
pub fn differential_projector(jc: &JetComplex, k: usize) -> Result<(BlockOp, usize)> {
    let spectrum = exact_spectrum(&jc.fiber, k)?;
    let id = jc.identity(k);
    let b = &jc.box_full[k];
    let mut p = id.clone();
    for (lambda, _) in spectrum.iter().filter(|(l, _)| !l.is_zero()) {
        p = p.mul(&id.sub(&b.scale(&lambda.recip())));
    }
    let three = Rat::from_integer(3.into());
    let two = Rat::from_integer(2.into());
    for steps in 0..64 {
        let p2 = p.mul(&p);
        if p2 == p {
            return Ok((p, steps));
        }
        p = p2.scale(&three).sub(&p2.mul(&p).scale(&two));
    }
    Err(Error::Internal("projector refinement did not stabilise".into()))
}

/// Projector onto the generalised kernel of `box_full` along its stable
/// image, computed directly block by block.
pub fn generalized_kernel_projector(jc: &JetComplex, k: usize) -> Result<BlockOp> {
    let blocks: Vec<(&Weight, &Matrix)> = jc.box_full[k].blocks.iter().collect();
    let out: Result<BTreeMap<Weight, Matrix>> = blocks
        .par_iter()
        .map(|(w, b)| {
            let n = b.rows();
            let mut m = Matrix::identity(n);
            let mut rank = n;
            loop {
                let next = &m * *b;
                let r = next.rank();
                m = next;
                if r == rank {
                    break;
                }
                rank = r;
            }
            let ker = m.kernel();
            let im = m.column_space();
            let basis = ker.hstack(&im);
            let inv = basis.inverse().ok_or_else(|| Error::Internal("kernel and image not complementary".into()))?;
            let mut sel = Matrix::zeros(n, n);
            for i in 0..ker.cols() {
                sel[(i, i)] = Rat::one();
            }
            Ok(((*w).clone(), &(&basis * &sel) * &inv))
        })
        .collect();
    Ok(BlockOp { blocks: out? })
}

/// `L = P P~ + (1 - P)(1 - P~)` (splitting `S = 1`) and its inverse.
pub fn splitting_operator(jc: &JetComplex, p: &BlockOp, ptilde: &BlockOp, k: usize) -> Result<(BlockOp, BlockOp)> {
    let id = jc.identity(k);
    let l = p.mul(ptilde).add(&id.sub(p).mul(&id.sub(ptilde)));
    let linv = l.inverse().ok_or_else(|| Error::Internal("splitting operator is singular".into()))?;
    Ok((l, linv))
}

/// All BGG data of a flat complex.
#[derive(Clone, Debug)]
pub struct BggOperators {
    pub ptilde: Vec<BlockOp>,
    pub p: Vec<BlockOp>,
    pub refinement_steps: Vec<usize>,
    pub l: Vec<BlockOp>,
    pub linv: Vec<BlockOp>,
    /// `L^-1 dN L` per degree.
    pub conjugated: Vec<BlockOp>,
    /// `H_k`-jets to `C^k`.
    pub iota: Vec<BlockOp>,
    /// `C^k` to `H_k`-jets.
    pub pi: Vec<BlockOp>,
    pub d_bgg: Vec<BlockOp>,
    pub g: Vec<BlockOp>,
    pub h: Vec<BlockOp>,
    /// `gr(box)^-1` on `ker P~`, extended by zero.
    pub box_pseudo_inverse: Vec<BlockOp>,
}

pub fn assemble_bgg(jc: &JetComplex) -> Result<BggOperators> {
    let top = jc.top;
    let mut ptilde = Vec::new();
    let mut p = Vec::new();
    let mut steps = Vec::new();
    let mut l = Vec::new();
    let mut linv = Vec::new();
    let mut iota = Vec::new();
    let mut pi = Vec::new();
    let mut qinv = Vec::new();
    for k in 0..=top {
        let hd = harmonic_section(&jc.fiber, k)?;
        let proj = hd.projector();
        let sum = &jc.fiber.boxes[k] + &proj;
        let inv = sum.inverse().ok_or_else(|| Error::Internal("box not invertible off the harmonics".into()))?;
        qinv.push(jc.lift(&(&inv - &proj), false, false, k, k)?);
        iota.push(jc.lift(&hd.section, false, true, k, k)?);
        pi.push(jc.lift(&hd.projection, true, false, k, k)?);
        let pt = jc.lift(&proj, false, false, k, k)?;
        let (pk, s) = differential_projector(jc, k)?;
        let (lk, lik) = splitting_operator(jc, &pk, &pt, k)?;
        ptilde.push(pt);
        p.push(pk);
        steps.push(s);
        l.push(lk);
        linv.push(lik);
    }
    let conjugated: Vec<BlockOp> = (0..=top)
        .map(|k| if k < top { linv[k + 1].mul(&jc.dn[k]).mul(&l[k]) } else { jc.dn[k].clone() })
        .collect();
    let d_bgg: Vec<BlockOp> = (0..top).map(|k| pi[k + 1].mul(&p[k + 1]).mul(&jc.dn[k]).mul(&l[k]).mul(&iota[k])).collect();

    // homotopy on ker P~: h0 = gr(d*) gr(box)^-1, G = A h0 + h0 gr(d) + P~
    let h0: Vec<BlockOp> = (0..=top).map(|k| jc.delstar_t[k].mul(&qinv[k])).collect();
    let a: Vec<BlockOp> = (0..top).map(|k| conjugated[k].mul(&jc.identity(k).sub(&ptilde[k]))).collect();
    let mut g = Vec::new();
    let mut ginv = Vec::new();
    for k in 0..=top {
        let mut gk = ptilde[k].clone();
        if k > 0 {
            gk = gk.add(&a[k - 1].mul(&h0[k]));
        }
        if k < top {
            gk = gk.add(&h0[k + 1].mul(&jc.del_t[k]));
        }
        ginv.push(gk.inverse().ok_or_else(|| Error::Internal("G is singular".into()))?);
        g.push(gk);
    }
    let mut h = vec![BlockOp::zero(jc.space(-1), &jc.spaces[0], &jc.keys)];
    for k in 1..=top {
        h.push(l[k - 1].mul(&g[k - 1]).mul(&h0[k]).mul(&ginv[k]).mul(&linv[k]));
    }
    Ok(BggOperators { ptilde, p, refinement_steps: steps, l, linv, conjugated, iota, pi, d_bgg, g, h, box_pseudo_inverse: qinv })
}

pub fn bgg_operator(ops: &BggOperators, k: usize) -> &BlockOp {
    &ops.d_bgg[k]
}

/// Results of every flat-model identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatReport {
    pub jet_dims: Vec<usize>,
    pub num_jets: usize,
    pub refinement_steps: Vec<usize>,
    pub jet_betti: Vec<usize>,
    pub bgg_betti: Vec<usize>,
    pub bgg_ranks: Vec<usize>,
    pub bgg_kernel_0: usize,
    pub harmonic_jet_dims: Vec<usize>,
}

/// Verify every algebraic identity of the BGG construction on the
/// truncated flat model.
pub fn homotopy_and_equivalence(jc: &JetComplex, ops: &BggOperators) -> Result<FlatReport> {
    let top = jc.top;
    let fail = |m: String| Err(Error::Internal(m));
    for k in 0..=top {
        let s = &jc.spaces[k];
        let id = jc.identity(k);
        let (pt, p) = (&ops.ptilde[k], &ops.p[k]);
        if pt.mul(pt) != *pt || pt.mul(&jc.box_t[k]) != jc.box_t[k].mul(pt) {
            return fail(format!("P~ not an idempotent commuting with gr(box) in degree {k}"));
        }
        if p.mul(p) != *p || p.mul(&jc.box_full[k]) != jc.box_full[k].mul(p) {
            return fail(format!("P not an idempotent commuting with box in degree {k}"));
        }
        if !p.is_filtered(s, s) || p.graded_part(s, s) != *pt {
            return fail(format!("gr(P) != P~ in degree {k}"));
        }
        if *p != generalized_kernel_projector(jc, k)? {
            return fail(format!("P differs from the generalised kernel projector in degree {k}"));
        }
        if p.mul(&ops.l[k]) != ops.l[k].mul(pt) {
            return fail(format!("P L != L P~ in degree {k}"));
        }
        if !ops.l[k].is_filtered(s, s) || ops.l[k].graded_part(s, s) != id {
            return fail(format!("gr(L) != 1 in degree {k}"));
        }
        if !ops.g[k].is_filtered(s, s) || ops.g[k].graded_part(s, s) != id {
            return fail(format!("gr(G) != 1 in degree {k}"));
        }
        // 1 - L P~ L^-1 = dN h + h dN
        let mut rhs = BlockOp::zero(s, s, &jc.keys);
        if k > 0 {
            rhs = rhs.add(&jc.dn[k - 1].mul(&ops.h[k]));
        }
        if k < top {
            rhs = rhs.add(&ops.h[k + 1].mul(&jc.dn[k]));
        }
        if id.sub(&ops.l[k].mul(pt).mul(&ops.linv[k])) != rhs {
            return fail(format!("homotopy identity fails in degree {k}"));
        }
    }
    for k in 0..top {
        let t = &ops.conjugated[k];
        let (pt0, pt1) = (&ops.ptilde[k], &ops.ptilde[k + 1]);
        let (q0, q1) = (jc.identity(k).sub(pt0), jc.identity(k + 1).sub(pt1));
        if !pt1.mul(t).mul(&q0).is_zero() || !q1.mul(t).mul(pt0).is_zero() {
            return fail(format!("L^-1 dN L not block diagonal in degree {k}"));
        }
        // G^-1 A G = gr(dN) on ker P~
        if t.mul(&q0).mul(&ops.g[k]) != ops.g[k + 1].mul(&jc.del_t[k]).mul(&q0) {
            return fail(format!("A is not conjugate to gr(dN) in degree {k}"));
        }
    }
    for k in 0..top {
        // the BGG operator is the im P~ block of L^-1 dN L
        if ops.d_bgg[k] != ops.pi[k + 1].mul(&ops.conjugated[k]).mul(&ops.iota[k]) {
            return fail(format!("D differs from the harmonic block of L^-1 dN L in degree {k}"));
        }
    }
    for k in 0..top.saturating_sub(1) {
        if !ops.d_bgg[k + 1].mul(&ops.d_bgg[k]).is_zero() {
            return fail(format!("D^2 != 0 in degree {k}"));
        }
    }
    // gr(dN) is acyclic on ker P~
    let restricted: Vec<usize> = (0..top).map(|k| jc.del_t[k].mul(&jc.identity(k).sub(&ops.ptilde[k])).rank()).collect();
    for k in 0..=top {
        let kernel_dim = jc.spaces[k].dim() - ops.ptilde[k].rank();
        let expected = restricted.get(k).copied().unwrap_or(0) + if k > 0 { restricted[k - 1] } else { 0 };
        if kernel_dim != expected {
            return fail(format!("ker P~ part not acyclic in degree {k}"));
        }
    }
    let bgg_ranks: Vec<usize> = ops.d_bgg.iter().map(BlockOp::rank).collect();
    let harmonic_jet_dims: Vec<usize> = jc.harmonic_spaces.iter().map(GradedSpace::dim).collect();
    let bgg_betti: Vec<usize> = (0..=top)
        .map(|k| harmonic_jet_dims[k] - bgg_ranks.get(k).copied().unwrap_or(0) - if k > 0 { bgg_ranks[k - 1] } else { 0 })
        .collect();
    let jet_betti = jc.jet_betti();
    if jet_betti != bgg_betti {
        return fail(format!("jet cohomology {jet_betti:?} differs from BGG cohomology {bgg_betti:?}"));
    }
    let bgg_kernel_0 = ops.d_bgg.first().map_or(harmonic_jet_dims[0], BlockOp::kernel_dim);
    Ok(FlatReport {
        jet_dims: jc.dims(),
        num_jets: jc.jets.len(),
        refinement_steps: ops.refinement_steps.clone(),
        jet_betti,
        bgg_betti,
        bgg_ranks,
        bgg_kernel_0,
        harmonic_jet_dims,
    })
}

/// Build, assemble and verify in one go.
pub fn analyze_flat(alg: &LieAlgebra, module: &HighestWeightModule, degree_cap: u32) -> Result<(JetComplex, BggOperators, FlatReport)> {
    let jc = build_flat_complex(alg, module, degree_cap)?;
    jc.verify()?;
    let ops = assemble_bgg(&jc)?;
    let report = homotopy_and_equivalence(&jc, &ops)?;
    Ok((jc, ops, report))
}

/// Number of monomials of weighted degree at most `cap`.
pub fn count_jets(depths: &[i64], cap: u32) -> usize {
    let dummy = vec![Vec::new(); depths.len()];
    JetBasis::new(depths, cap, &dummy, 0).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{apply_parabolic_grading, chevalley_basis};
    use crate::linalg::ratio;
    use crate::repn::irrep;
    use crate::rootsys::{build_root_system, CartanType, ParabolicChoice};

    fn graded(k: CartanType, n: usize, nodes: &[usize]) -> LieAlgebra {
        let rs = build_root_system(k, n).unwrap();
        let base = chevalley_basis(&rs).unwrap();
        apply_parabolic_grading(&base, &ParabolicChoice::new(&rs, nodes).unwrap())
    }

    #[test]
    fn bch_series() {
        let b = bch_coefficients(4);
        assert_eq!(b, vec![ratio(1, 1), ratio(1, 2), ratio(1, 12), ratio(0, 1), ratio(-1, 720)]);
    }

    #[test]
    fn heisenberg_frame() {
        let alg = graded(CartanType::A, 2, &[1, 2]);
        let neg = alg.negative_part();
        let frame = frame_for(&neg);
        frame.verify_brackets(&neg).unwrap();
        // [Y0, Y1] = c Y2
        let c = neg.bracket[0][1][0].1.clone();
        assert_eq!(neg.bracket[0][1][0].0, 2);
        let y = Poly::from([(vec![0, 1, 0], -c.clone() / Rat::from_integer(2.into()))]);
        assert_eq!(frame.fields[0][2], y);
        let x = Poly::from([(vec![1, 0, 0], c / Rat::from_integer(2.into()))]);
        assert_eq!(frame.fields[1][2], x);
        assert!(frame.fields[2][0].is_empty() && frame.fields[2][1].is_empty());

        let ab = graded(CartanType::A, 2, &[1]);
        let frame = left_invariant_frame(&ab);
        for (a, row) in frame.fields.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                let expected = if a == c { Poly::from([(vec![0, 0], Rat::one())]) } else { Poly::new() };
                assert_eq!(*p, expected);
            }
        }
    }

    #[test]
    fn frames_verify_for_deep_gradings() {
        for (k, n) in [(CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
            let alg = graded(k, n, &(1..=n).collect::<Vec<_>>());
            let neg = alg.negative_part();
            frame_for(&neg).verify_brackets(&neg).unwrap();
        }
    }

    #[test]
    fn sl2_trivial_is_calculus_on_a_line() {
        let alg = graded(CartanType::A, 1, &[1]);
        let triv = HighestWeightModule::trivial(&alg);
        let jc = build_flat_complex(&alg, &triv, 3).unwrap();
        assert_eq!(jc.dims(), vec![4, 4]);
        assert_eq!(jc.dn[0].kernel_dim(), 1);
        assert_eq!(jc.jet_betti(), vec![1, 1]);
    }

    #[test]
    fn heisenberg_trivial_kernel_is_constants() {
        let alg = graded(CartanType::A, 2, &[1, 2]);
        let triv = HighestWeightModule::trivial(&alg);
        let jc = build_flat_complex(&alg, &triv, 2).unwrap();
        jc.verify().unwrap();
        assert_eq!(jc.dn[0].kernel_dim(), 1);
    }

    #[test]
    fn sl2_bgg_orders() {
        let alg = graded(CartanType::A, 1, &[1]);
        for n in 1..=3 {
            let e = irrep(&alg, &[n]).unwrap();
            let (_, _, report) = analyze_flat(&alg, &e, 6).unwrap();
            assert_eq!(report.bgg_kernel_0, n as usize + 1);
        }
    }

    #[test]
    fn sl2_defining_splitting_is_unipotent() {
        let alg = graded(CartanType::A, 1, &[1]);
        let e = irrep(&alg, &[1]).unwrap();
        let (jc, ops, _) = analyze_flat(&alg, &e, 4).unwrap();
        assert_ne!(ops.l[0], jc.identity(0));
        let id = jc.identity(0);
        let nil = ops.l[0].sub(&id);
        let mut m = nil.clone();
        for _ in 0..jc.spaces[0].dim() {
            m = m.mul(&nil);
        }
        assert!(m.is_zero());
        assert_eq!(ops.ptilde[0].rank(), jc.jets.len());
    }

    #[test]
    fn trivial_coefficients_give_identity_projectors() {
        let alg = graded(CartanType::A, 1, &[1]);
        let triv = HighestWeightModule::trivial(&alg);
        let (jc, ops, _) = analyze_flat(&alg, &triv, 4).unwrap();
        assert_eq!(ops.ptilde[0], jc.identity(0));
        assert_eq!(ops.p[0], jc.identity(0));
        assert_eq!(ops.l[0], jc.identity(0));
    }

    #[test]
    fn heisenberg_bgg_kernel() {
        let alg = graded(CartanType::A, 2, &[1, 2]);
        let triv = HighestWeightModule::trivial(&alg);
        let (_, _, report) = analyze_flat(&alg, &triv, 3).unwrap();
        assert_eq!(report.bgg_kernel_0, 1);
    }

    #[test]
    fn jet_counts() {
        assert_eq!(count_jets(&[1, 1, 2], 4), 22);
        assert_eq!(count_jets(&[1, 1, 2, 3], 4), 25);
    }
}
