//! BGG operators on the flat model: jets, projectors, splitting and homotopy.

use bgg_core::flatmodel::analyze_flat;
use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::repn::irrep;
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};

fn main() -> bgg_core::error::Result<()> {
    // sl2: D_bgg on E of dimension n + 1 has order n + 1
    let rs = build_root_system(CartanType::A, 1)?;
    let sl2 = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::borel(&rs));
    for n in 0..=3 {
        let (_, ops, r) = analyze_flat(&sl2, &irrep(&sl2, &[n])?, 6)?;
        println!("sl2, n = {n}: ker D_0 = {}, D_0 has {} nonzero entries", r.bgg_kernel_0, ops.d_bgg[0].nnz());
    }

    let rs = build_root_system(CartanType::A, 2)?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::borel(&rs));
    let (jc, _, r) = analyze_flat(&alg, &irrep(&alg, &[1, 0])?, 4)?;
    println!("A2 Borel, defining module, degree cap {}:", jc.degree_cap);
    println!("  {} jets, form spaces {:?}", r.num_jets, r.jet_dims);
    println!("  BGG spaces {:?}, ranks {:?}", r.harmonic_jet_dims, r.bgg_ranks);
    println!("  cohomology: jets {:?}, BGG {:?}", r.jet_betti, r.bgg_betti);
    println!("  projector refinement steps {:?}", r.refinement_steps);
    Ok(())
}
