//! Chevalley basis, Killing form and the grading of a parabolic subalgebra.

use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};

fn main() -> bgg_core::error::Result<()> {
    let rs = build_root_system(CartanType::A, 2)?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::borel(&rs));
    alg.verify()?;
    println!("{} has dimension {} and depth {}", rs.label(), alg.dim(), alg.depth());
    println!("graded dimensions {:?}", alg.graded_dims());
    for a in 0..alg.dim() {
        for b in a + 1..alg.dim() {
            let terms: Vec<String> =
                alg.bracket(a, b).iter().map(|(c, q)| format!("{q} {}", alg.basis_label(*c))).collect();
            if !terms.is_empty() {
                println!("  [{}, {}] = {}", alg.basis_label(a), alg.basis_label(b), terms.join(" + "));
            }
        }
    }
    let neg = alg.negative_part();
    println!("g_- is {}-dimensional, depths {:?}, abelian: {}", neg.dim(), neg.depths, neg.is_abelian());
    let k = alg.killing_matrix();
    println!("Killing form rank {} of {}", k.rank(), alg.dim());
    Ok(())
}
