//! Chevalley basis, parabolic grading, Killing form and Cartan involution.
//!
//! Root vectors are generated from the simple ones: for a positive root
//! `beta` of height at least two, let `i` be the smallest node with
//! `alpha = beta - alpha_i` a root and let `p` be the largest integer with
//! `alpha - p alpha_i` a root. Then
//!
//! ```text
//! e_beta = [e_i, e_alpha] / (p + 1),    f_beta = -[f_i, f_alpha] / (p + 1).
//! ```
//!
//! With this choice the pairs `(alpha_i, alpha)` have positive structure
//! constants, the map `e -> -f, f -> -e, h -> -h` is an automorphism, and
//! `[e_beta, f_beta]` is the coroot of `beta` (checked on construction).
//! Structure constants are read off from the adjoint module, which is built
//! from the Cartan matrix alone.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Matrix, Rat};
use crate::repn::{adjoint_highest_weight, build_generator_module, HighestWeightModule};
use crate::rootsys::{root_height, ParabolicChoice, RootSystem};

pub type SparseVec = Vec<(usize, Rat)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// Coroot `h_i` of simple root `i`.
    Cartan(usize),
    /// `e_alpha` for the positive root with this index.
    Raising(usize),
    /// `f_alpha` for the positive root with this index.
    Lowering(usize),
}

#[derive(Clone, Debug)]
struct Recipe {
    simple: usize,
    previous: usize,
    divisor: i64,
}

/// A simple Lie algebra in its Chevalley basis, optionally carrying a
/// parabolic grading. Basis order: `h_1..h_r`, then `e_alpha` and then
/// `f_alpha`, both in the root order of the root system.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub rs: RootSystem,
    pub parabolic: Option<ParabolicChoice>,
    recipes: Vec<Option<Recipe>>,
    brackets: Vec<Vec<SparseVec>>,
    degrees: Vec<i64>,
    /// Grading element as coefficients over `h_1..h_r`.
    pub grading_element: Vec<Rat>,
}

pub type GradedLieAlgebra = LieAlgebra;

pub fn chevalley_basis(rs: &RootSystem) -> Result<LieAlgebra> {
    let r = rs.rank;
    let np = rs.num_positive_roots();
    let mut recipes: Vec<Option<Recipe>> = Vec::with_capacity(np);
    for beta in &rs.positive_roots {
        if RootSystem::height(beta) == 1 {
            recipes.push(None);
            continue;
        }
        let (simple, previous) = (0..r)
            .find_map(|i| {
                let mut a = beta.clone();
                a[i] -= 1;
                rs.positive_root_index(&a).map(|idx| (i, idx))
            })
            .ok_or_else(|| Error::Internal("root without a predecessor".into()))?;
        let alpha = &rs.positive_roots[previous];
        let mut p = 0;
        let mut probe = alpha.clone();
        loop {
            probe[simple] -= 1;
            if rs.positive_root_index(&probe).is_some() {
                p += 1;
            } else {
                break;
            }
        }
        recipes.push(Some(Recipe { simple, previous, divisor: p + 1 }));
    }

    let mut alg = LieAlgebra {
        rs: rs.clone(),
        parabolic: None,
        recipes,
        brackets: Vec::new(),
        degrees: vec![0; r + 2 * np],
        grading_element: vec![Rat::zero(); r],
    };

    let adj = build_generator_module(rs, &adjoint_highest_weight(rs), usize::MAX)?;
    let mats = alg.represent(&adj.e, &adj.f, &adj.h);
    let n = alg.dim();
    if adj.dim() != n {
        return Err(Error::Internal("adjoint module has the wrong dimension".into()));
    }
    let diag_h = Matrix::from_fn(n, r, |row, i| mats[i][(row, row)].clone());
    let mut brackets = vec![vec![SparseVec::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let c = mats[a].commutator(&mats[b]);
            let target: Vec<i64> = alg.root_of(a).iter().zip(alg.root_of(b)).map(|(x, y)| x + y).collect();
            brackets[a][b] = decompose(&alg, &mats, &diag_h, &c, &target)?;
        }
    }
    alg.brackets = brackets;

    // [e_beta, f_beta] must be the coroot h_beta = sum_i beta_i (d_i / d_beta) h_i
    for (k, beta) in rs.positive_roots.iter().enumerate() {
        let hb = alg.bracket(alg.raising_index(k), alg.lowering_index(k));
        let dbeta = Rat::new(rs.root_inner(beta, beta).into(), 2.into());
        let mut expected = SparseVec::new();
        for i in 0..r {
            if beta[i] != 0 {
                expected.push((i, rat(beta[i] * rs.half_lengths[i]) / &dbeta));
            }
        }
        if hb != expected.as_slice() {
            return Err(Error::Internal(format!("[e, f] is not the coroot for root {beta:?}")));
        }
    }
    Ok(alg)
}

fn decompose(alg: &LieAlgebra, mats: &[Matrix], diag_h: &Matrix, c: &Matrix, target: &[i64]) -> Result<SparseVec> {
    if c.is_zero() {
        return Ok(SparseVec::new());
    }
    let r = alg.rs.rank;
    if target.iter().all(|&x| x == 0) {
        let n = c.rows();
        let d = Matrix::from_fn(n, 1, |row, _| c[(row, row)].clone());
        let coeffs = diag_h.solve(&d).ok_or_else(|| Error::Internal("Cartan bracket not in h".into()))?;
        let mut check = Matrix::zeros(n, n);
        let mut out = SparseVec::new();
        for i in 0..r {
            if !coeffs[(i, 0)].is_zero() {
                check = &check + &mats[i].scale(&coeffs[(i, 0)]);
                out.push((i, coeffs[(i, 0)].clone()));
            }
        }
        if check != *c {
            return Err(Error::Internal("bracket has off-diagonal part in h".into()));
        }
        return Ok(out);
    }
    let idx = alg.index_of_root(target).ok_or_else(|| Error::Internal("bracket outside root spaces".into()))?;
    let m = &mats[idx];
    let (row, col) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m[(r, c)].is_zero())
        .expect("root vector acts nontrivially in the adjoint module");
    let coef = &c[(row, col)] / &m[(row, col)];
    if m.scale(&coef) != *c {
        return Err(Error::Internal("bracket not proportional to a root vector".into()));
    }
    Ok(vec![(idx, coef)])
}

/// Attach the degrees of a parabolic grading and the grading element.
pub fn apply_parabolic_grading(alg: &LieAlgebra, parabolic: &ParabolicChoice) -> LieAlgebra {
    let mut out = alg.clone();
    let r = alg.rs.rank;
    out.degrees = (0..alg.dim())
        .map(|b| match alg.kind(b) {
            BasisKind::Cartan(_) => 0,
            _ => root_height(&alg.rs, &alg.root_of(b), parabolic).expect("basis roots lie in the system"),
        })
        .collect();
    // <alpha_j, X0> = sum_i c_i A[i][j] = [j crossed]
    let at = Matrix::from_fn(r, r, |j, i| rat(alg.rs.cartan[i][j]));
    let rhs = Matrix::from_fn(r, 1, |j, _| if parabolic.is_crossed(j) { Rat::one() } else { Rat::zero() });
    let c = at.solve(&rhs).expect("Cartan matrix invertible");
    out.grading_element = (0..r).map(|i| c[(i, 0)].clone()).collect();
    out.parabolic = Some(parabolic.clone());
    out
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.rs.rank + 2 * self.rs.num_positive_roots()
    }

    pub fn kind(&self, b: usize) -> BasisKind {
        let r = self.rs.rank;
        let np = self.rs.num_positive_roots();
        if b < r {
            BasisKind::Cartan(b)
        } else if b < r + np {
            BasisKind::Raising(b - r)
        } else {
            BasisKind::Lowering(b - r - np)
        }
    }

    pub fn raising_index(&self, root: usize) -> usize {
        self.rs.rank + root
    }

    pub fn lowering_index(&self, root: usize) -> usize {
        self.rs.rank + self.rs.num_positive_roots() + root
    }

    /// Signed root of a basis element (zero for Cartan elements).
    pub fn root_of(&self, b: usize) -> Vec<i64> {
        match self.kind(b) {
            BasisKind::Cartan(_) => vec![0; self.rs.rank],
            BasisKind::Raising(k) => self.rs.positive_roots[k].clone(),
            BasisKind::Lowering(k) => self.rs.positive_roots[k].iter().map(|c| -c).collect(),
        }
    }

    /// Dynkin labels of the weight of a basis element under the Cartan.
    pub fn weight_of(&self, b: usize) -> Vec<i64> {
        self.rs.dynkin_labels(&self.root_of(b))
    }

    pub fn index_of_root(&self, root: &[i64]) -> Option<usize> {
        if let Some(k) = self.rs.positive_root_index(root) {
            return Some(self.raising_index(k));
        }
        let neg: Vec<i64> = root.iter().map(|c| -c).collect();
        self.rs.positive_root_index(&neg).map(|k| self.lowering_index(k))
    }

    pub fn basis_label(&self, b: usize) -> String {
        let fmt_root = |k: usize| {
            self.rs.positive_roots[k].iter().map(|c| c.to_string()).collect::<Vec<_>>().join("")
        };
        match self.kind(b) {
            BasisKind::Cartan(i) => format!("h{}", i + 1),
            BasisKind::Raising(k) => format!("e{}", fmt_root(k)),
            BasisKind::Lowering(k) => format!("f{}", fmt_root(k)),
        }
    }

    pub fn degree(&self, b: usize) -> i64 {
        self.degrees[b]
    }

    /// Depth `k` of the grading, `g = g_{-k} + ... + g_k`.
    pub fn depth(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rat)] {
        &self.brackets[a][b]
    }

    pub fn bracket_vec(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for (c, v) in &self.brackets[a][b] {
                    out[*c] += xa * yb * v;
                }
            }
        }
        out
    }

    /// `ad(a)` with column `b` holding the coordinates of `[a, b]`.
    pub fn ad_matrix(&self, a: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            for (c, v) in &self.brackets[a][b] {
                m[(*c, b)] = v.clone();
            }
        }
        m
    }

    /// Matrices for every basis element in a module given by the Chevalley
    /// generators.
    pub fn represent(&self, e: &[Matrix], f: &[Matrix], h: &[Matrix]) -> Vec<Matrix> {
        let r = self.rs.rank;
        let np = self.rs.num_positive_roots();
        let mut re: Vec<Matrix> = Vec::with_capacity(np);
        let mut rf: Vec<Matrix> = Vec::with_capacity(np);
        for (k, recipe) in self.recipes.iter().enumerate() {
            match recipe {
                None => {
                    let i = self.rs.positive_roots[k].iter().position(|&c| c == 1).expect("simple root");
                    re.push(e[i].clone());
                    rf.push(f[i].clone());
                }
                Some(Recipe { simple, previous, divisor }) => {
                    let d = Rat::new(1.into(), (*divisor).into());
                    re.push(e[*simple].commutator(&re[*previous]).scale(&d));
                    rf.push(f[*simple].commutator(&rf[*previous]).scale(&(-d)));
                }
            }
        }
        let mut out: Vec<Matrix> = h[..r].to_vec();
        out.extend(re);
        out.extend(rf);
        out
    }

    /// Killing form `B(x, y) = tr(ad x ad y)` in the Chevalley basis.
    pub fn killing_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        let coeff = |a: usize, b: usize, c: usize| -> Rat {
            self.brackets[a][b].iter().find(|(i, _)| *i == c).map(|(_, v)| v.clone()).unwrap_or_else(Rat::zero)
        };
        for a in 0..n {
            for b in a..n {
                let ra = self.root_of(a);
                let rb = self.root_of(b);
                if ra.iter().zip(&rb).any(|(x, y)| x + y != 0) {
                    continue;
                }
                // tr(ad a ad b) = sum_c <c*, [a, [b, c]]>
                let mut t = Rat::zero();
                for c in 0..n {
                    for (d, v) in &self.brackets[b][c] {
                        let w = coeff(a, *d, c);
                        if !w.is_zero() {
                            t += v * w;
                        }
                    }
                }
                m[(a, b)] = t.clone();
                m[(b, a)] = t;
            }
        }
        m
    }

    /// Cartan involution `e -> -f, f -> -e, h -> -h` as a signed permutation.
    pub fn theta_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for b in 0..n {
            let img = match self.kind(b) {
                BasisKind::Cartan(_) => b,
                BasisKind::Raising(k) => self.lowering_index(k),
                BasisKind::Lowering(k) => self.raising_index(k),
            };
            m[(img, b)] = rat(-1);
        }
        m
    }

    /// `<x, y> = -B(x, theta y)`.
    pub fn hodge_inner_product(&self) -> Matrix {
        -&(&self.killing_matrix() * &self.theta_matrix())
    }

    /// Eigenvalue of `ad(X0)`-compatible grading element on a weight.
    pub fn grading_eigenvalue(&self, weight: &[i64]) -> Rat {
        self.grading_element.iter().zip(weight).map(|(c, w)| c * rat(*w)).sum()
    }

    pub fn grading_element_matrix(&self, module: &HighestWeightModule) -> Option<Matrix> {
        self.parabolic.as_ref()?;
        let n = module.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, c) in self.grading_element.iter().enumerate() {
            m = &m + &module.action[i].scale(c);
        }
        Some(m)
    }

    pub fn grading_element_vector(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        for (i, c) in self.grading_element.iter().enumerate() {
            v[i] = c.clone();
        }
        v
    }

    /// Indices of basis elements spanning `g_0`.
    pub fn level_zero(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degrees[b] == 0).collect()
    }

    /// Dimensions of `g_i` for `i = -k..=k`.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for d in &self.degrees {
            *m.entry(*d).or_insert(0) += 1;
        }
        m
    }

    pub fn negative_part(&self) -> NegativePart {
        let np = self.rs.num_positive_roots();
        let mut roots: Vec<usize> = (0..np).filter(|&k| self.degrees[self.lowering_index(k)] < 0).collect();
        roots.sort_by_key(|&k| (-self.degrees[self.lowering_index(k)], k));
        let indices: Vec<usize> = roots.iter().map(|&k| self.lowering_index(k)).collect();
        let positive: Vec<usize> = roots.iter().map(|&k| self.raising_index(k)).collect();
        let local = |list: &[usize]| -> Vec<Vec<SparseVec>> {
            let pos: BTreeMap<usize, usize> = list.iter().enumerate().map(|(i, &b)| (b, i)).collect();
            list.iter()
                .map(|&a| {
                    list.iter()
                        .map(|&b| {
                            self.brackets[a][b].iter().map(|(c, v)| (pos[c], v.clone())).collect::<SparseVec>()
                        })
                        .collect()
                })
                .collect()
        };
        let killing = self.killing_matrix();
        NegativePart {
            depths: indices.iter().map(|&b| -self.degrees[b]).collect(),
            roots: roots.iter().map(|&k| self.rs.positive_roots[k].clone()).collect(),
            bracket: local(&indices),
            positive_bracket: local(&positive),
            kappa: indices.iter().zip(&positive).map(|(&f, &e)| killing[(e, f)].clone()).collect(),
            weights: indices.iter().map(|&b| self.weight_of(b)).collect(),
            indices,
            positive,
        }
    }

    /// Exact check of every structural identity of the graded algebra.
    pub fn verify(&self) -> Result<()> {
        let n = self.dim();
        let bad = |m: String| Err(Error::Internal(format!("{}: {m}", self.rs.label())));
        for a in 0..n {
            if !self.brackets[a][a].is_empty() {
                return bad("[x, x] != 0".into());
            }
            for b in 0..n {
                let mut s: BTreeMap<usize, Rat> = BTreeMap::new();
                for (c, v) in self.brackets[a][b].iter().chain(self.brackets[b][a].iter()) {
                    *s.entry(*c).or_insert_with(Rat::zero) += v;
                }
                if s.values().any(|v| !v.is_zero()) {
                    return bad(format!("antisymmetry fails on {}, {}", self.basis_label(a), self.basis_label(b)));
                }
                for (c, _) in &self.brackets[a][b] {
                    if self.degrees[*c] != self.degrees[a] + self.degrees[b] {
                        return bad("bracket does not respect the grading".into());
                    }
                }
            }
        }
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); n];
            v[i] = Rat::one();
            v
        };
        for a in 0..n {
            for b in a + 1..n {
                let ab = self.bracket_vec(&unit(a), &unit(b));
                for c in b + 1..n {
                    let bc = self.bracket_vec(&unit(b), &unit(c));
                    let ca = self.bracket_vec(&unit(c), &unit(a));
                    let t1 = self.bracket_vec(&unit(a), &bc);
                    let t2 = self.bracket_vec(&unit(b), &ca);
                    let t3 = self.bracket_vec(&unit(c), &ab);
                    if (0..n).any(|i| !(&t1[i] + &t2[i] + &t3[i]).is_zero()) {
                        return bad("Jacobi identity fails".into());
                    }
                }
            }
        }
        if self.parabolic.is_some() {
            let x0 = self.grading_element_vector();
            for b in 0..n {
                let img = self.bracket_vec(&x0, &unit(b));
                let expected: Vec<Rat> = unit(b).into_iter().map(|v| v * rat(self.degrees[b])).collect();
                if img != expected {
                    return bad("ad(X0) is not the degree".into());
                }
            }
        }
        let killing = self.killing_matrix();
        for a in 0..n {
            for b in 0..n {
                if self.degrees[a] + self.degrees[b] != 0 && !killing[(a, b)].is_zero() {
                    return bad("Killing form pairs non-opposite degrees".into());
                }
            }
        }
        for (deg, _) in self.graded_dims() {
            let plus: Vec<usize> = (0..n).filter(|&b| self.degrees[b] == deg).collect();
            let minus: Vec<usize> = (0..n).filter(|&b| self.degrees[b] == -deg).collect();
            if killing.submatrix(&plus, &minus).rank() != plus.len() {
                return bad(format!("Killing pairing g_{deg} x g_{} degenerate", -deg));
            }
        }
        let theta = self.theta_matrix();
        if &theta * &theta != Matrix::identity(n) {
            return bad("theta^2 != 1".into());
        }
        for a in 0..n {
            for b in 0..n {
                let lhs = theta.mul_vec(&self.bracket_vec(&unit(a), &unit(b)));
                let rhs = self.bracket_vec(&theta.column(a), &theta.column(b));
                if lhs != rhs {
                    return bad("theta is not an automorphism".into());
                }
            }
            let img = theta.column(a);
            if img.iter().enumerate().any(|(c, v)| !v.is_zero() && self.degrees[c] != -self.degrees[a]) {
                return bad("theta does not reverse the grading".into());
            }
        }
        if !self.hodge_inner_product().is_positive_definite() {
            return bad("-B(x, theta y) not positive definite".into());
        }
        if !self.negative_part().is_nilpotent() {
            return bad("g_- not nilpotent".into());
        }
        Ok(())
    }
}

/// The nilpotent subalgebra `g_-` with its Killing-dual partner `p_+`.
#[derive(Clone, Debug)]
pub struct NegativePart {
    /// Lie algebra indices of the `f_alpha` spanning `g_-`, ordered by depth.
    pub indices: Vec<usize>,
    /// Matching `e_alpha` in `p_+`.
    pub positive: Vec<usize>,
    pub roots: Vec<Vec<i64>>,
    /// Dynkin labels of each `f_alpha`.
    pub weights: Vec<Vec<i64>>,
    pub depths: Vec<i64>,
    /// Structure constants of `g_-` in local indices.
    pub bracket: Vec<Vec<SparseVec>>,
    /// Structure constants of `p_+` in local indices.
    pub positive_bracket: Vec<Vec<SparseVec>>,
    /// `B(e_alpha, f_alpha)`.
    pub kappa: Vec<Rat>,
}

impl NegativePart {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    /// Lower central series reaches zero within the grading depth.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dim();
        let depth = self.depths.iter().copied().max().unwrap_or(0) as usize;
        // span of the current term, as a set of coordinate vectors
        let mut current = Matrix::identity(n);
        for _ in 0..=depth {
            if current.rank() == 0 {
                return true;
            }
            let mut cols = Vec::new();
            for c in 0..current.cols() {
                let v = current.column(c);
                for a in 0..n {
                    let mut out = vec![Rat::zero(); n];
                    for (b, vb) in v.iter().enumerate() {
                        if vb.is_zero() {
                            continue;
                        }
                        for (k, s) in &self.bracket[a][b] {
                            out[*k] += vb * s;
                        }
                    }
                    cols.push(out);
                }
            }
            current = if cols.is_empty() { Matrix::zeros(n, 0) } else { Matrix::from_columns(n, &cols).column_space() };
        }
        current.rank() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, CartanType};

    fn alg(k: CartanType, n: usize) -> LieAlgebra {
        chevalley_basis(&build_root_system(k, n).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a = alg(CartanType::A, 1);
        assert_eq!(a.dim(), 3);
        let (h, e, f) = (0, 1, 2);
        assert_eq!(a.bracket(e, f), &[(h, rat(1))]);
        assert_eq!(a.bracket(h, e), &[(e, rat(2))]);
        assert_eq!(a.bracket(h, f), &[(f, rat(-2))]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(CartanType::A, 2).dim(), 8);
        assert_eq!(alg(CartanType::B, 2).dim(), 10);
        assert_eq!(alg(CartanType::G, 2).dim(), 14);
        assert_eq!(alg(CartanType::D, 4).dim(), 28);
    }

    #[test]
    fn sl3_sign_convention() {
        let a = alg(CartanType::A, 2);
        // e_{alpha1} with e_{alpha2} gives +e_{alpha1+alpha2}
        assert_eq!(a.bracket(a.raising_index(0), a.raising_index(1)), &[(a.raising_index(2), rat(1))]);
        assert_eq!(a.bracket(a.lowering_index(0), a.lowering_index(1)), &[(a.lowering_index(2), rat(-1))]);
    }

    #[test]
    fn structure_constants_are_integers_of_chevalley_size() {
        for (k, n) in [(CartanType::B, 3), (CartanType::G, 2), (CartanType::C, 3)] {
            let a = alg(k, n);
            for x in 0..a.dim() {
                for y in 0..a.dim() {
                    for (_, v) in a.bracket(x, y) {
                        assert!(v.is_integer(), "{k}{n}");
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_killing_form() {
        let a = alg(CartanType::A, 1);
        let b = a.killing_matrix();
        assert_eq!(b[(0, 0)], rat(8));
        assert_eq!(b[(1, 2)], rat(4));
        assert_eq!(b[(1, 1)], rat(0));
        assert!(a.hodge_inner_product()[(1, 1)] > rat(0));
    }

    #[test]
    fn graded_structure_verifies() {
        for (k, n) in [(CartanType::A, 1), (CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::C, 3)] {
            let base = alg(k, n);
            base.verify().unwrap();
            let rs = base.rs.clone();
            for mask in 1u32..(1 << n) {
                let nodes: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect();
                let g = apply_parabolic_grading(&base, &ParabolicChoice::new(&rs, &nodes).unwrap());
                g.verify().unwrap();
            }
        }
    }

    #[test]
    fn gradings_of_sl2_and_sl3() {
        let a1 = alg(CartanType::A, 1);
        let g = apply_parabolic_grading(&a1, &ParabolicChoice::borel(&a1.rs));
        assert_eq!((g.degree(2), g.degree(0), g.degree(1)), (-1, 0, 1));
        assert_eq!(g.depth(), 1);

        let a2 = alg(CartanType::A, 2);
        let g = apply_parabolic_grading(&a2, &ParabolicChoice::borel(&a2.rs));
        let dims = g.graded_dims();
        assert_eq!((dims[&-1], dims[&-2]), (2, 1));
        assert_eq!(g.depth(), 2);
        assert!(!g.negative_part().is_abelian());

        let g = apply_parabolic_grading(&a2, &ParabolicChoice::new(&a2.rs, &[1]).unwrap());
        let neg = g.negative_part();
        assert_eq!(neg.dim(), 2);
        assert!(neg.is_abelian());
    }

    #[test]
    fn rank_six_algebras_build() {
        for (k, n) in [(CartanType::A, 6), (CartanType::D, 5)] {
            let a = alg(k, n);
            assert_eq!(a.dim(), n + 2 * a.rs.num_positive_roots());
        }
    }
}
