//! Root systems, parabolic gradings and Hasse diagrams of `W^p`.

use bgg_core::rootsys::{
    affine_action, build_root_system, minimal_coset_representatives, root_height, CartanType, ParabolicChoice,
};

fn main() -> bgg_core::error::Result<()> {
    for (kind, rank) in [(CartanType::A, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
        let rs = build_root_system(kind, rank)?;
        rs.verify()?;
        println!("{}: {} positive roots, Cartan {:?}", rs.label(), rs.num_positive_roots(), rs.cartan);
    }

    let rs = build_root_system(CartanType::B, 2)?;
    let p = ParabolicChoice::new(&rs, &[1])?;
    for root in &rs.positive_roots {
        println!("  root {root:?} has height {}", root_height(&rs, root, &p)?);
    }
    for parabolic in [ParabolicChoice::borel(&rs), p] {
        println!("W^p for crossed nodes {:?}:", parabolic.crossed_nodes);
        for (w, len) in minimal_coset_representatives(&rs, &parabolic) {
            println!("  word {:?} (length {len}) sends 0 to {:?}", w.word, affine_action(&rs, &w, &[0, 0]));
        }
    }
    Ok(())
}
