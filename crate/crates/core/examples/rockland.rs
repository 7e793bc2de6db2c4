//! Symbol exactness: twisted Koszul complexes and the truncated Fock model.

use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::linalg::ratio;
use bgg_core::repn::irrep;
use bgg_core::rockland::{abelian_symbol_complex, heisenberg_scan, rockland_report};
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};

fn main() -> bgg_core::error::Result<()> {
    let rs = build_root_system(CartanType::A, 2)?;
    let ab = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::new(&rs, &[1])?);
    let e = irrep(&ab, &[1, 0])?;
    let cx = abelian_symbol_complex(&ab, &e, &[ratio(2, 3), ratio(-1, 1)])?;
    println!("abelian, xi = (2/3, -1): dims {:?}, ranks {:?}, exact {}", cx.dims, cx.ranks(), cx.is_exact());
    let verdict = rockland_report(&ab, &e, 20, 0xB66, 16)?;
    println!("20 sampled characters pass: {}", verdict.passed());

    let heis = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::borel(&rs));
    for s in heisenberg_scan(&heis, &irrep(&heis, &[0, 0])?, 16)? {
        println!(
            "hbar {:>4}: z = hbar exactly {}, d^2 = 0 on interior {}, min singular values {:.3?}",
            s.hbar.to_string(),
            s.central_character,
            s.square_zero_interior,
            s.min_singular_values
        );
    }
    Ok(())
}
