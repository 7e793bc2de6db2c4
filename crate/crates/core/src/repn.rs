//! Finite-dimensional irreducible highest-weight modules.
//!
//! The module is built weight space by weight space, going down from the
//! highest weight. At each weight the candidates are the vectors `f_j b`
//! with `b` a basis vector one level up. Candidates are compared through
//! their images under all `e_i` (which land in weight spaces already
//! built); a combination with zero image under every `e_i` lies in the
//! radical of the Shapovalov form, so keeping a maximal independent set of
//! candidates is exactly the quotient of the Verma weight space by that
//! radical. The contravariant (Shapovalov) form is carried along and serves
//! later as the inner product on the module.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::{BasisKind, LieAlgebra};
use crate::linalg::{rat, Matrix, Rat};
use crate::rootsys::RootSystem;

pub const DEFAULT_DIMENSION_CAP: usize = 512;

/// Weyl dimension formula: product over positive roots of
/// `(lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> Result<u64> {
    check_dominant(rs, lambda)?;
    let shifted: Vec<i64> = lambda.iter().map(|c| c + 1).collect();
    let mut q = Rat::one();
    for alpha in &rs.positive_roots {
        q *= Rat::new(rs.weight_root_inner(&shifted, alpha).into(), rs.weight_root_inner(&rs.rho(), alpha).into());
    }
    if !q.is_integer() {
        return Err(Error::Internal("Weyl dimension formula gave a non-integer".into()));
    }
    Ok(q.to_integer().try_into().map_err(|_| Error::Internal("dimension overflow".into()))?)
}

fn check_dominant(rs: &RootSystem, lambda: &[i64]) -> Result<()> {
    if lambda.len() != rs.rank || lambda.iter().any(|&c| c < 0) {
        return Err(Error::NotDominant(lambda.to_vec()));
    }
    Ok(())
}

/// Highest weight of the adjoint representation.
pub fn adjoint_highest_weight(rs: &RootSystem) -> Vec<i64> {
    rs.dynkin_labels(rs.highest_root())
}

/// Highest weight of the "defining" representation used in the test
/// matrix: the smallest nontrivial fundamental representation.
pub fn defining_highest_weight(rs: &RootSystem) -> Vec<i64> {
    // for G2 node 1 is the short-root node, giving the 7-dimensional module
    let mut v = vec![0; rs.rank];
    v[0] = 1;
    v
}

#[derive(Clone, Debug)]
struct WeightSpace {
    dim: usize,
    depth: usize,
    /// e_i : V_mu -> V_{mu + alpha_i}
    e: Vec<Option<Matrix>>,
    /// f_j : V_mu -> V_{mu - alpha_j}
    f: Vec<Option<Matrix>>,
    gram: Matrix,
}

/// A module given through the Chevalley generators only; this is all that
/// is needed to bootstrap the structure constants of the Lie algebra.
#[derive(Clone, Debug)]
pub struct GeneratorModule {
    pub highest_weight: Vec<i64>,
    /// Dynkin labels of each basis vector.
    pub weights: Vec<Vec<i64>>,
    /// Number of simple roots subtracted from the highest weight.
    pub depths: Vec<usize>,
    pub e: Vec<Matrix>,
    pub f: Vec<Matrix>,
    pub h: Vec<Matrix>,
    /// Contravariant form: `<e_i u, v> = <u, f_i v>`, positive definite.
    pub shapovalov: Matrix,
}

impl GeneratorModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }
}

pub fn build_generator_module(rs: &RootSystem, lambda: &[i64], cap: usize) -> Result<GeneratorModule> {
    check_dominant(rs, lambda)?;
    let r = rs.rank;
    let alpha: Vec<Vec<i64>> = (0..r).map(|i| rs.simple_root_labels(i)).collect();
    let add = |mu: &[i64], i: usize, s: i64| -> Vec<i64> { mu.iter().zip(&alpha[i]).map(|(m, a)| m + s * a).collect() };

    let mut spaces: BTreeMap<Vec<i64>, WeightSpace> = BTreeMap::new();
    spaces.insert(
        lambda.to_vec(),
        WeightSpace { dim: 1, depth: 0, e: vec![None; r], f: vec![None; r], gram: Matrix::identity(1) },
    );
    let mut total = 1usize;
    let mut layer: Vec<Vec<i64>> = vec![lambda.to_vec()];
    let mut depth = 0;
    while !layer.is_empty() {
        depth += 1;
        // candidate (j, b): f_j applied to basis vector b of V_{mu + alpha_j}
        let mut targets: BTreeMap<Vec<i64>, Vec<(usize, usize)>> = BTreeMap::new();
        for nu in &layer {
            let dim = spaces[nu].dim;
            for j in 0..r {
                let mu = add(nu, j, -1);
                let entry = targets.entry(mu).or_default();
                for b in 0..dim {
                    entry.push((j, b));
                }
            }
        }
        let mut next = Vec::new();
        for (mu, mut cands) in targets {
            cands.sort_unstable();
            // signature rows: concat over i of coordinates in V_{mu + alpha_i}
            let mut offsets = Vec::new();
            let mut rows = 0;
            for i in 0..r {
                let up = add(&mu, i, 1);
                if let Some(s) = spaces.get(&up) {
                    offsets.push(Some(rows));
                    rows += s.dim;
                } else {
                    offsets.push(None);
                }
            }
            let mut sig = Matrix::zeros(rows, cands.len());
            for (ci, &(j, b)) in cands.iter().enumerate() {
                let nu = add(&mu, j, 1);
                let nu_space = &spaces[&nu];
                for i in 0..r {
                    let Some(off) = offsets[i] else { continue };
                    // e_i f_j b = f_j e_i b + delta_ij nu_i b
                    let mut v = vec![Rat::zero(); spaces[&add(&mu, i, 1)].dim];
                    if let Some(ei) = &nu_space.e[i] {
                        let top = add(&nu, i, 1);
                        let eib = ei.column(b);
                        if let Some(fj) = &spaces[&top].f[j] {
                            for (k, val) in fj.mul_vec(&eib).into_iter().enumerate() {
                                v[k] += val;
                            }
                        }
                    }
                    if i == j {
                        v[b] += rat(nu[i]);
                    }
                    for (k, val) in v.into_iter().enumerate() {
                        sig[(off + k, ci)] = val;
                    }
                }
            }
            let (reduced, pivots) = sig.rref();
            if pivots.is_empty() {
                continue;
            }
            let dim = pivots.len();
            total += dim;
            if total > cap {
                return Err(Error::DimensionCap(cap));
            }
            let basis_cands: Vec<(usize, usize)> = pivots.iter().map(|&p| cands[p]).collect();
            let all_rows: Vec<usize> = (0..rows).collect();
            let sig_basis = sig.submatrix(&all_rows, &pivots);
            let mut e = vec![None; r];
            for i in 0..r {
                if let Some(off) = offsets[i] {
                    let d = spaces[&add(&mu, i, 1)].dim;
                    let ri: Vec<usize> = (off..off + d).collect();
                    e[i] = Some(sig_basis.submatrix(&ri, &(0..dim).collect::<Vec<_>>()));
                }
            }
            // f_j on V_{mu + alpha_j}: coordinates of each candidate in the pivot basis
            for j in 0..r {
                let nu = add(&mu, j, 1);
                let Some(nu_dim) = spaces.get(&nu).map(|s| s.dim) else { continue };
                let mut fj = Matrix::zeros(dim, nu_dim);
                for b in 0..nu_dim {
                    let ci = cands.iter().position(|&c| c == (j, b)).expect("candidate present");
                    for (row, _) in pivots.iter().enumerate() {
                        fj[(row, b)] = reduced[(row, ci)].clone();
                    }
                }
                spaces.get_mut(&nu).unwrap().f[j] = Some(fj);
            }
            // Shapovalov form: <f_j c, y> = <c, e_j y>
            let mut gram = Matrix::zeros(dim, dim);
            for (p, &(j, c)) in basis_cands.iter().enumerate() {
                let nu = add(&mu, j, 1);
                let ge = &spaces[&nu].gram * e[j].as_ref().expect("e_j defined towards a candidate's parent");
                for q in 0..dim {
                    gram[(p, q)] = ge[(c, q)].clone();
                }
            }
            spaces.insert(mu.clone(), WeightSpace { dim, depth, e, f: vec![None; r], gram });
            next.push(mu);
        }
        layer = next;
    }

    // global ordering: depth, then weight descending, then internal index
    let mut order: Vec<(&Vec<i64>, &WeightSpace)> = spaces.iter().collect();
    order.sort_by(|a, b| a.1.depth.cmp(&b.1.depth).then_with(|| b.0.cmp(a.0)));
    let mut start: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut weights = Vec::new();
    let mut depths = Vec::new();
    for (mu, s) in &order {
        start.insert((*mu).clone(), weights.len());
        for _ in 0..s.dim {
            weights.push((*mu).clone());
            depths.push(s.depth);
        }
    }
    let n = weights.len();
    let mut e = vec![Matrix::zeros(n, n); r];
    let mut f = vec![Matrix::zeros(n, n); r];
    let mut shapovalov = Matrix::zeros(n, n);
    for (mu, s) in &order {
        let c0 = start[*mu];
        for i in 0..r {
            if let Some(m) = &s.e[i] {
                let r0 = start[&add(mu, i, 1)];
                place(&mut e[i], m, r0, c0);
            }
            if let Some(m) = &s.f[i] {
                let r0 = start[&add(mu, i, -1)];
                place(&mut f[i], m, r0, c0);
            }
        }
        place(&mut shapovalov, &s.gram, c0, c0);
    }
    let h = (0..r).map(|i| Matrix::diagonal(&weights.iter().map(|w| rat(w[i])).collect::<Vec<_>>())).collect();
    Ok(GeneratorModule { highest_weight: lambda.to_vec(), weights, depths, e, f, h, shapovalov })
}

fn place(target: &mut Matrix, block: &Matrix, r0: usize, c0: usize) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            if !block[(r, c)].is_zero() {
                target[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }
}

/// Irreducible module with exact action matrices for every basis element of
/// the Lie algebra.
#[derive(Clone, Debug)]
pub struct HighestWeightModule {
    pub highest_weight: Vec<i64>,
    pub weights: Vec<Vec<i64>>,
    /// Indexed like the Lie algebra basis.
    pub action: Vec<Matrix>,
    pub shapovalov: Matrix,
    /// Eigenvalue of the grading element on each basis vector, shifted so
    /// the smallest is 0; `E^j` is the span of vectors with index `>= j`.
    pub filtration_index: Vec<i64>,
}

pub fn irrep(alg: &LieAlgebra, lambda: &[i64]) -> Result<HighestWeightModule> {
    irrep_with_cap(alg, lambda, DEFAULT_DIMENSION_CAP)
}

pub fn irrep_with_cap(alg: &LieAlgebra, lambda: &[i64], cap: usize) -> Result<HighestWeightModule> {
    let gm = build_generator_module(&alg.rs, lambda, cap)?;
    let action = alg.represent(&gm.e, &gm.f, &gm.h);
    let filtration_index = filtration_from_grading(alg, &gm.weights)?;
    Ok(HighestWeightModule {
        highest_weight: lambda.to_vec(),
        weights: gm.weights,
        action,
        shapovalov: gm.shapovalov,
        filtration_index,
    })
}

/// Filtration indices from the eigenvalues of the grading element.
pub fn filtration_from_grading(alg: &LieAlgebra, weights: &[Vec<i64>]) -> Result<Vec<i64>> {
    let eig: Vec<Rat> = weights.iter().map(|w| alg.grading_eigenvalue(w)).collect();
    let Some(min) = eig.iter().min().cloned() else { return Ok(Vec::new()) };
    eig.iter()
        .map(|x| {
            let d = x - &min;
            if d.is_integer() {
                Ok(d.to_integer().try_into().expect("small"))
            } else {
                Err(Error::Internal("grading eigenvalues not integrally spaced".into()))
            }
        })
        .collect()
}

impl HighestWeightModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn trivial(alg: &LieAlgebra) -> Self {
        irrep(alg, &vec![0; alg.rs.rank]).expect("trivial module")
    }

    /// Strata dimensions `dim E_j` for the grading, indexed by filtration index.
    pub fn strata_dims(&self) -> Vec<usize> {
        let top = self.filtration_index.iter().copied().max().unwrap_or(0);
        (0..=top).map(|j| self.filtration_index.iter().filter(|&&x| x == j).count()).collect()
    }

    /// `rho(x) rho(y) - rho(y) rho(x) = rho([x, y])` for all basis pairs.
    pub fn verify_homomorphism(&self, alg: &LieAlgebra) -> Result<()> {
        for a in 0..alg.dim() {
            for b in a + 1..alg.dim() {
                let lhs = self.action[a].commutator(&self.action[b]);
                let mut rhs = Matrix::zeros(self.dim(), self.dim());
                for (c, v) in alg.bracket(a, b) {
                    rhs = &rhs + &self.action[*c].scale(v);
                }
                if lhs != rhs {
                    return Err(Error::Internal(format!(
                        "module is not a representation on [{}, {}]",
                        alg.basis_label(a),
                        alg.basis_label(b)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g_i E^j ⊂ E^{i+j}`: each root vector shifts filtration index by exactly its degree.
    pub fn verify_filtration(&self, alg: &LieAlgebra) -> Result<()> {
        for b in 0..alg.dim() {
            let deg = alg.degree(b);
            let m = &self.action[b];
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m[(r, c)].is_zero() && self.filtration_index[r] != self.filtration_index[c] + deg {
                        return Err(Error::Internal("filtration not compatible with grading".into()));
                    }
                }
            }
        }
        if let Some(x0) = alg.grading_element_matrix(self) {
            for r in 0..x0.rows() {
                for c in 0..x0.cols() {
                    if r != c && !x0[(r, c)].is_zero() {
                        return Err(Error::Internal("grading element not diagonal".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_self_adjoint_pairing(&self, alg: &LieAlgebra) -> bool {
        // <x v, w> = <v, -theta(x) w>; e_alpha and f_alpha are adjoint
        for b in 0..alg.dim() {
            let partner = match alg.kind(b) {
                BasisKind::Cartan(_) => b,
                BasisKind::Raising(i) => alg.lowering_index(i),
                BasisKind::Lowering(i) => alg.raising_index(i),
            };
            let lhs = &self.action[b].transpose() * &self.shapovalov;
            let rhs = &self.shapovalov * &self.action[partner];
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::chevalley_basis;
    use crate::rootsys::{build_root_system, CartanType};

    #[test]
    fn weyl_dimensions() {
        let a1 = build_root_system(CartanType::A, 1).unwrap();
        for n in 0..6 {
            assert_eq!(weyl_dimension(&a1, &[n]).unwrap(), n as u64 + 1);
        }
        let a2 = build_root_system(CartanType::A, 2).unwrap();
        assert_eq!(weyl_dimension(&a2, &[1, 0]).unwrap(), 3);
        assert_eq!(weyl_dimension(&a2, &[1, 1]).unwrap(), 8);
        assert_eq!(weyl_dimension(&a2, &[2, 1]).unwrap(), 15);
        let b2 = build_root_system(CartanType::B, 2).unwrap();
        assert_eq!(weyl_dimension(&b2, &adjoint_highest_weight(&b2)).unwrap(), 10);
        assert_eq!(weyl_dimension(&b2, &[1, 0]).unwrap(), 5);
        assert_eq!(weyl_dimension(&b2, &[0, 1]).unwrap(), 4);
        let g2 = build_root_system(CartanType::G, 2).unwrap();
        assert_eq!(weyl_dimension(&g2, &[1, 0]).unwrap(), 7);
        assert_eq!(weyl_dimension(&g2, &adjoint_highest_weight(&g2)).unwrap(), 14);
        assert!(matches!(weyl_dimension(&a2, &[-1, 0]), Err(Error::NotDominant(_))));
    }

    #[test]
    fn module_dimensions_match_weyl_formula() {
        for (k, n, lams) in [
            (CartanType::A, 2, vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 1]]),
            (CartanType::B, 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 2]]),
            (CartanType::C, 3, vec![vec![1, 0, 0], vec![0, 0, 1]]),
            (CartanType::G, 2, vec![vec![1, 0], vec![0, 1]]),
            (CartanType::D, 4, vec![vec![1, 0, 0, 0], vec![0, 0, 1, 0]]),
        ] {
            let rs = build_root_system(k, n).unwrap();
            for lam in lams {
                let gm = build_generator_module(&rs, &lam, 512).unwrap();
                assert_eq!(gm.dim() as u64, weyl_dimension(&rs, &lam).unwrap(), "{k}{n} {lam:?}");
                assert!(gm.shapovalov.is_positive_definite());
            }
        }
    }

    #[test]
    fn dimension_cap() {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        assert!(matches!(build_generator_module(&rs, &[3, 3], 20), Err(Error::DimensionCap(20))));
    }

    #[test]
    fn sl2_defining_and_trivial() {
        let rs = build_root_system(CartanType::A, 1).unwrap();
        let alg = chevalley_basis(&rs).unwrap();
        let m = irrep(&alg, &[1]).unwrap();
        assert_eq!(m.dim(), 2);
        let e = &m.action[alg.raising_index(0)];
        let f = &m.action[alg.lowering_index(0)];
        assert_eq!(*e, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert_eq!(*f, Matrix::from_i64(&[&[0, 0], &[1, 0]]));
        let t = irrep(&alg, &[0]).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.action.iter().all(Matrix::is_zero));
    }

    #[test]
    fn homomorphism_and_contravariance() {
        for (k, n, lam) in [
            (CartanType::A, 2, vec![1, 1]),
            (CartanType::A, 2, vec![1, 0]),
            (CartanType::B, 2, vec![0, 1]),
            (CartanType::B, 2, vec![1, 1]),
            (CartanType::G, 2, vec![1, 0]),
            (CartanType::C, 3, vec![0, 1, 0]),
        ] {
            let rs = build_root_system(k, n).unwrap();
            let alg = chevalley_basis(&rs).unwrap();
            let m = irrep(&alg, &lam).unwrap();
            m.verify_homomorphism(&alg).unwrap();
            assert!(m.is_self_adjoint_pairing(&alg));
        }
    }

    // the adjoint module and ad differ by a change of basis: compare the
    // traces of products of Cartan elements
    #[test]
    fn adjoint_module_matches_ad_traces() {
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let alg = chevalley_basis(&rs).unwrap();
        let m = irrep(&alg, &[1, 1]).unwrap();
        assert_eq!(m.dim(), 8);
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let lhs = (&m.action[a] * &m.action[b]).trace();
                let rhs = (&alg.ad_matrix(a) * &alg.ad_matrix(b)).trace();
                assert_eq!(lhs, rhs);
            }
        }
    }

    // the character at integer points of the torus: for A1 the trace of
    // t^h is sum over weights of t^mu, compared against (t^{n+1}-t^{-n-1})/(t-t^{-1})
    #[test]
    fn characters_match_weyl_character() {
        let rs = build_root_system(CartanType::A, 1).unwrap();
        let alg = chevalley_basis(&rs).unwrap();
        for n in 0..5i64 {
            let m = irrep(&alg, &[n]).unwrap();
            for t in [2i64, 3] {
                let t = rat(t);
                let lhs: Rat = m.weights.iter().map(|w| pow_i(&t, w[0])).sum();
                let rhs = (pow_i(&t, n + 1) - pow_i(&t, -n - 1)) / (&t - t.recip());
                assert_eq!(lhs, rhs);
            }
        }
        // A2 via the Weyl character formula: alternating sum over W
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let alg = chevalley_basis(&rs).unwrap();
        let w = crate::rootsys::weyl_group(&rs);
        for lam in [vec![1, 0], vec![1, 1], vec![2, 1]] {
            let m = irrep(&alg, &lam).unwrap();
            let (x, y) = (rat(2), rat(3));
            let eval = |mu: &[i64]| pow_i(&x, mu[0]) * pow_i(&y, mu[1]);
            let lhs: Rat = m.weights.iter().map(|mu| eval(mu)).sum();
            let shifted: Vec<i64> = lam.iter().map(|c| c + 1).collect();
            let alt = |v: &[i64]| -> Rat {
                w.iter()
                    .map(|(el, l)| {
                        let s = if l % 2 == 0 { rat(1) } else { rat(-1) };
                        s * eval(&el.act(&rs, v))
                    })
                    .sum()
            };
            assert_eq!(lhs * alt(&rs.rho()), alt(&shifted));
        }
    }

    fn pow_i(t: &Rat, e: i64) -> Rat {
        let mut out = Rat::one();
        for _ in 0..e.abs() {
            out *= t;
        }
        if e < 0 {
            out.recip()
        } else {
            out
        }
    }

    #[test]
    fn filtrations() {
        use crate::liealg::apply_parabolic_grading;
        use crate::rootsys::ParabolicChoice;
        let rs = build_root_system(CartanType::A, 1).unwrap();
        let alg = apply_parabolic_grading(&chevalley_basis(&rs).unwrap(), &ParabolicChoice::borel(&rs));
        let m = irrep(&alg, &[1]).unwrap();
        assert_eq!(m.strata_dims(), vec![1, 1]);
        m.verify_filtration(&alg).unwrap();
        assert_eq!(HighestWeightModule::trivial(&alg).strata_dims(), vec![1]);

        let rs = build_root_system(CartanType::A, 2).unwrap();
        let alg = apply_parabolic_grading(&chevalley_basis(&rs).unwrap(), &ParabolicChoice::borel(&rs));
        let m = irrep(&alg, &[1, 0]).unwrap();
        assert_eq!(m.strata_dims(), vec![1, 1, 1]);
        let adj = irrep(&alg, &[1, 1]).unwrap();
        adj.verify_filtration(&alg).unwrap();
        assert_eq!(adj.strata_dims().iter().sum::<usize>(), 8);
    }
}
