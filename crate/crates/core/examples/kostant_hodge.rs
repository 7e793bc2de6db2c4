//! The Kostant codifferential, Hodge decomposition and harmonic weights.

use bgg_core::kostant::{analyze, kostant_oracle};
use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::repn::irrep;
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};

fn main() -> bgg_core::error::Result<()> {
    let rs = build_root_system(CartanType::A, 2)?;
    let alg = apply_parabolic_grading(&chevalley_basis(&rs)?, &ParabolicChoice::borel(&rs));
    for lambda in [[0, 0], [1, 0], [1, 1]] {
        let module = irrep(&alg, &lambda)?;
        let (cx, r) = analyze(&alg, &module, 60, 0xB66)?;
        println!("lambda {lambda:?}: cochains {:?}", (0..=cx.top).map(|k| cx.dim(k)).collect::<Vec<_>>());
        println!("  Betti {:?}, Euler {:?}", r.betti, r.euler);
        println!("  Hodge (im del, harmonic, im del*) {:?}", r.hodge_dims);
        println!("  harmonic weights {:?}", r.multiplicities);
        println!("  oracle           {:?}", kostant_oracle(&alg, &lambda));
        for (k, s) in r.spectra.iter().enumerate() {
            let s: Vec<String> = s.iter().map(|(l, m)| format!("{l}^{m}")).collect();
            println!("  spectrum of box in degree {k}: {}", s.join(" "));
        }
    }
    Ok(())
}
