//! Irreducible modules from highest weights, checked against Weyl's formula.

use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::repn::{irrep, weyl_dimension};
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};

fn main() -> bgg_core::error::Result<()> {
    let rs = build_root_system(CartanType::B, 2)?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::new(&rs, &[2])?);
    for lambda in [[0, 0], [1, 0], [0, 1], [0, 2], [1, 1]] {
        let m = irrep(&alg, &lambda)?;
        m.verify_homomorphism(&alg)?;
        m.verify_filtration(&alg)?;
        println!(
            "lambda {lambda:?}: dim {} (Weyl {}), strata {:?}, invariant pairing: {}",
            m.dim(),
            weyl_dimension(&rs, &lambda)?,
            m.strata_dims(),
            m.is_self_adjoint_pairing(&alg)
        );
    }
    Ok(())
}
