//! Graded Rockland checks on symbols: twisted Koszul complexes for abelian
//! `g_-`, and a truncated Fock model for the Heisenberg algebra.

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kostant::{ce_differential_sparse, ComplexData, ExteriorBasis};
use crate::liealg::LieAlgebra;
use crate::linalg::{rat, ratio, Matrix, Rat, SparseMatrix};
use crate::repn::HighestWeightModule;

pub const DEFAULT_SEED: u64 = 0xB66;
pub const DEFAULT_SAMPLES: usize = 20;
pub const DEFAULT_TRUNCATION: usize = 16;
/// Smallest admissible singular value of the interior symbol Laplacian.
pub const SINGULAR_VALUE_THRESHOLD: f64 = 1e-6;
/// Fock levels at the top of the truncation excluded from identity checks.
pub const BOUNDARY_LEVELS: usize = 2;

#[derive(Clone, Debug)]
pub struct SymbolComplex {
    pub differentials: Vec<Matrix>,
    pub dims: Vec<usize>,
}

impl SymbolComplex {
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.iter().map(Matrix::rank).collect()
    }

    /// `rank d_(k-1) + rank d_k = dim C^k` for every `k`.
    pub fn is_exact(&self) -> bool {
        let r = self.ranks();
        let out = |k: usize| r.get(k).copied().unwrap_or(0);
        (0..self.dims.len()).all(|k| out(k) + if k > 0 { r[k - 1] } else { 0 } == self.dims[k])
    }

    pub fn is_square_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| (&w[1] * &w[0]).is_zero())
    }
}

/// `d = sum_a eps^a ^ (xi_a + rho(Y_a))` on `Lambda g_-* (x) E` for abelian `g_-`.
pub fn abelian_symbol_complex(alg: &LieAlgebra, module: &HighestWeightModule, xi: &[Rat]) -> Result<SymbolComplex> {
    let data = ComplexData::new(alg, module);
    if !data.neg.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if xi.len() != data.neg.dim() {
        return Err(Error::InvalidArgument(format!("character needs {} entries", data.neg.dim())));
    }
    if xi.iter().all(Zero::is_zero) {
        return Err(Error::TrivialCharacter);
    }
    let e = data.module_dim;
    let actions: Vec<SparseMatrix> =
        data.neg_actions.iter().zip(xi).map(|(a, x)| a.add(&SparseMatrix::identity(e).scale(x))).collect();
    Ok(assemble(&data.ext, &data.neg.bracket, &actions, e))
}

fn assemble(ext: &ExteriorBasis, bracket: &[Vec<crate::liealg::SparseVec>], actions: &[SparseMatrix], dim_v: usize) -> SymbolComplex {
    let n = ext.n;
    SymbolComplex {
        differentials: (0..n).map(|k| ce_differential_sparse(ext, bracket, actions, dim_v, k).to_dense()).collect(),
        dims: (0..=n).map(|k| ext.dim(k) * dim_v).collect(),
    }
}

/// Seeded nonzero rational characters.
pub fn sample_characters(dim: usize, samples: usize, seed: u64) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let xi: Vec<Rat> = (0..dim).map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        if xi.iter().any(|x| !x.is_zero()) {
            out.push(xi);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSample {
    pub character: Vec<Rat>,
    pub ranks: Vec<usize>,
    pub exact: bool,
    /// Exactness also holds for `2 xi` and `-xi / 3`.
    pub ray_exact: bool,
}

pub fn abelian_check(alg: &LieAlgebra, module: &HighestWeightModule, samples: usize, seed: u64) -> Result<Vec<AbelianSample>> {
    let dim = alg.negative_part().dim();
    let chars = sample_characters(dim, samples, seed);
    chars
        .par_iter()
        .map(|xi| {
            let cx = abelian_symbol_complex(alg, module, xi)?;
            if !cx.is_square_zero() {
                return Err(Error::Internal("twisted differential does not square to zero".into()));
            }
            let mut ray_exact = true;
            for s in [ratio(2, 1), ratio(-1, 3)] {
                let scaled: Vec<Rat> = xi.iter().map(|x| x * &s).collect();
                ray_exact &= abelian_symbol_complex(alg, module, &scaled)?.is_exact();
            }
            Ok(AbelianSample { character: xi.clone(), ranks: cx.ranks(), exact: cx.is_exact(), ray_exact })
        })
        .collect()
}

/// Truncated Bargmann–Fock model of the Heisenberg algebra on polynomials
/// `s^n`, `n < N`: `x = d/ds`, `y = c hbar s`, `z = hbar`, where
/// `[x, y] = c z` in `g_-`.
#[derive(Clone, Debug)]
pub struct FockModel {
    pub truncation: usize,
    pub hbar: Rat,
    pub operators: [Matrix; 3],
}

pub fn fock_model(c: &Rat, hbar: &Rat, truncation: usize) -> FockModel {
    let n = truncation;
    let x = Matrix::from_fn(n, n, |r, col| if col == r + 1 { rat(col as i64) } else { Rat::zero() });
    let y = Matrix::from_fn(n, n, |r, col| if r == col + 1 { c * hbar } else { Rat::zero() });
    let z = Matrix::identity(n).scale(hbar);
    FockModel { truncation, hbar: hbar.clone(), operators: [x, y, z] }
}

#[derive(Clone, Debug)]
pub struct HeisenbergComplex {
    pub symbol: SymbolComplex,
    /// Fock level of every basis element, per degree.
    pub levels: Vec<Vec<usize>>,
    pub model: FockModel,
    /// Structure constant `c` in `[x, y] = c z`.
    pub c: Rat,
}

/// Symbol complex for `g_-` the three-dimensional Heisenberg algebra.
pub fn heisenberg_symbol_complex(alg: &LieAlgebra, module: &HighestWeightModule, hbar: &Rat, truncation: usize) -> Result<HeisenbergComplex> {
    let data = ComplexData::new(alg, module);
    let neg = &data.neg;
    if neg.dim() != 3 || neg.depths != [1, 1, 2] {
        return Err(Error::NotHeisenberg);
    }
    let c = match neg.bracket[0][1].as_slice() {
        [(2, c)] => c.clone(),
        _ => return Err(Error::NotHeisenberg),
    };
    let others_vanish = (0..3).all(|a| (0..3).all(|b| (a, b) == (0, 1) || (a, b) == (1, 0) || neg.bracket[a][b].is_empty()));
    if !others_vanish {
        return Err(Error::NotHeisenberg);
    }
    if hbar.is_zero() {
        return Err(Error::TrivialCharacter);
    }
    if truncation < 4 {
        return Err(Error::InvalidArgument("truncation must be at least 4".into()));
    }
    let model = fock_model(&c, hbar, truncation);
    let e = data.module_dim;
    let actions: Vec<SparseMatrix> = (0..3)
        .map(|a| SparseMatrix::from_dense(&model.operators[a]).kron(&SparseMatrix::identity(e)).add(&SparseMatrix::identity(truncation).kron(&data.neg_actions[a])))
        .collect();
    let symbol = assemble(&data.ext, &neg.bracket, &actions, truncation * e);
    let levels = (0..=3)
        .map(|k| (0..data.ext.dim(k)).flat_map(|_| (0..truncation).flat_map(|l| std::iter::repeat_n(l, e))).collect())
        .collect();
    Ok(HeisenbergComplex { symbol, levels, model, c })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergSample {
    pub hbar: Rat,
    pub truncation: usize,
    /// `dpi(z) = hbar` exactly.
    pub central_character: bool,
    /// `[dpi(x), dpi(y)] = c dpi(z)` below the boundary, exactly.
    pub commutator_interior: bool,
    /// `d^2 = 0` on columns below the boundary, exactly.
    pub square_zero_interior: bool,
    /// Smallest singular value of the interior Laplacian, per degree (f64).
    pub min_singular_values: Vec<f64>,
    pub threshold: f64,
}

impl HeisenbergSample {
    pub fn passed(&self) -> bool {
        self.central_character
            && self.commutator_interior
            && self.square_zero_interior
            && self.min_singular_values.iter().all(|&s| s >= self.threshold)
    }

    /// First degree whose singular value is below threshold.
    pub fn failing_degree(&self) -> Option<usize> {
        self.min_singular_values.iter().position(|&s| s < self.threshold)
    }
}

pub fn heisenberg_check(hc: &HeisenbergComplex) -> HeisenbergSample {
    let n = hc.model.truncation;
    let interior = n - BOUNDARY_LEVELS;
    let [x, y, z] = &hc.model.operators;
    let central_character = *z == Matrix::identity(n).scale(&hc.model.hbar);
    let comm = x.commutator(y);
    let cz = z.scale(&hc.c);
    let commutator_interior = (0..n).all(|r| (0..interior).all(|col| comm[(r, col)] == cz[(r, col)]));
    let d = &hc.symbol.differentials;
    let square_zero_interior = d.windows(2).enumerate().all(|(k, w)| {
        let sq = &w[1] * &w[0];
        (0..sq.rows()).all(|r| (0..sq.cols()).all(|col| hc.levels[k][col] >= interior || sq[(r, col)].is_zero()))
    });
    let top = hc.symbol.dims.len() - 1;
    let min_singular_values = (0..=top)
        .map(|k| {
            let dim = hc.symbol.dims[k];
            let mut lap = nalgebra::DMatrix::<f64>::zeros(dim, dim);
            if k < top {
                let dk = d[k].to_f64();
                lap += dk.transpose() * dk;
            }
            if k > 0 {
                let dk = d[k - 1].to_f64();
                lap += &dk * dk.transpose();
            }
            let idx: Vec<usize> = (0..dim).filter(|&i| hc.levels[k][i] < interior).collect();
            let sub = lap.select_rows(&idx).select_columns(&idx);
            sub.singular_values().min()
        })
        .collect();
    HeisenbergSample {
        hbar: hc.model.hbar.clone(),
        truncation: n,
        central_character,
        commutator_interior,
        square_zero_interior,
        min_singular_values,
        threshold: SINGULAR_VALUE_THRESHOLD,
    }
}

pub fn default_hbars() -> Vec<Rat> {
    vec![ratio(1, 1), ratio(-1, 1), ratio(1, 2), ratio(-1, 2)]
}

pub fn heisenberg_scan(alg: &LieAlgebra, module: &HighestWeightModule, truncation: usize) -> Result<Vec<HeisenbergSample>> {
    let mut out: Vec<HeisenbergSample> = default_hbars()
        .par_iter()
        .map(|h| heisenberg_symbol_complex(alg, module, h, truncation).map(|hc| heisenberg_check(&hc)))
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| a.hbar.cmp(&b.hbar));
    Ok(out)
}

/// Aggregated verdict for one case.
#[derive(Clone, Debug, PartialEq)]
pub enum RocklandVerdict {
    Abelian { samples: Vec<AbelianSample> },
    Heisenberg { samples: Vec<HeisenbergSample> },
    /// Neither path applies to this `g_-`.
    NotCovered,
}

impl RocklandVerdict {
    pub fn passed(&self) -> bool {
        match self {
            RocklandVerdict::Abelian { samples } => samples.iter().all(|s| s.exact && s.ray_exact),
            RocklandVerdict::Heisenberg { samples } => samples.iter().all(HeisenbergSample::passed),
            RocklandVerdict::NotCovered => true,
        }
    }

    /// Description of the first failing sample.
    pub fn first_failure(&self) -> Option<String> {
        match self {
            RocklandVerdict::Abelian { samples } => {
                samples.iter().find(|s| !(s.exact && s.ray_exact)).map(|s| format!("character {:?} not exact", s.character))
            }
            RocklandVerdict::Heisenberg { samples } => samples.iter().find(|s| !s.passed()).map(|s| {
                format!("hbar {} degree {:?}", s.hbar, s.failing_degree())
            }),
            RocklandVerdict::NotCovered => None,
        }
    }
}

pub fn rockland_report(
    alg: &LieAlgebra,
    module: &HighestWeightModule,
    samples: usize,
    seed: u64,
    truncation: usize,
) -> Result<RocklandVerdict> {
    let neg = alg.negative_part();
    if neg.is_abelian() {
        Ok(RocklandVerdict::Abelian { samples: abelian_check(alg, module, samples, seed)? })
    } else if neg.dim() == 3 && neg.depths == [1, 1, 2] {
        Ok(RocklandVerdict::Heisenberg { samples: heisenberg_scan(alg, module, truncation)? })
    } else {
        Ok(RocklandVerdict::NotCovered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{apply_parabolic_grading, chevalley_basis};
    use crate::repn::{defining_highest_weight, irrep};
    use crate::rootsys::{build_root_system, CartanType, ParabolicChoice};

    fn graded(k: CartanType, n: usize, nodes: &[usize]) -> LieAlgebra {
        let rs = build_root_system(k, n).unwrap();
        apply_parabolic_grading(&chevalley_basis(&rs).unwrap(), &ParabolicChoice::new(&rs, nodes).unwrap())
    }

    #[test]
    fn line_with_unit_character() {
        let alg = graded(CartanType::A, 1, &[1]);
        let triv = HighestWeightModule::trivial(&alg);
        let cx = abelian_symbol_complex(&alg, &triv, &[ratio(1, 1)]).unwrap();
        assert_eq!(cx.differentials[0], Matrix::from_i64(&[&[1]]));
        assert!(cx.is_exact());
        assert_eq!(abelian_symbol_complex(&alg, &triv, &[ratio(0, 1)]).unwrap_err(), Error::TrivialCharacter);
    }

    #[test]
    fn koszul_complex_is_exact() {
        let alg = graded(CartanType::A, 2, &[1]);
        let triv = HighestWeightModule::trivial(&alg);
        let cx = abelian_symbol_complex(&alg, &triv, &[ratio(1, 1), ratio(0, 1)]).unwrap();
        assert!(cx.is_square_zero() && cx.is_exact());
        let e = irrep(&alg, &defining_highest_weight(&alg.rs)).unwrap();
        assert!(abelian_check(&alg, &e, 20, DEFAULT_SEED).unwrap().iter().all(|s| s.exact && s.ray_exact));
    }

    #[test]
    fn wrong_paths_are_rejected() {
        let heis = graded(CartanType::A, 2, &[1, 2]);
        let triv = HighestWeightModule::trivial(&heis);
        assert_eq!(abelian_symbol_complex(&heis, &triv, &vec![ratio(1, 1); 3]).unwrap_err(), Error::NotAbelian);
        let ab = graded(CartanType::A, 2, &[1]);
        let triv = HighestWeightModule::trivial(&ab);
        assert_eq!(heisenberg_symbol_complex(&ab, &triv, &ratio(1, 1), 8).unwrap_err(), Error::NotHeisenberg);
    }

    #[test]
    fn heisenberg_interior_is_exact() {
        let alg = graded(CartanType::A, 2, &[1, 2]);
        let triv = HighestWeightModule::trivial(&alg);
        for s in heisenberg_scan(&alg, &triv, DEFAULT_TRUNCATION).unwrap() {
            assert!(s.passed(), "{s:?}");
        }
    }

    #[test]
    fn characters_are_seeded_and_nonzero() {
        let a = sample_characters(2, 20, 7);
        assert_eq!(a, sample_characters(2, 20, 7));
        assert!(a.iter().all(|x| x.iter().any(|v| !v.is_zero())));
    }
}
