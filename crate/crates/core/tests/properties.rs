use bgg_core::config::parse_config;
use bgg_core::linalg::{ratio, Matrix};
use bgg_core::report::rat_str;
use bgg_core::rockland::abelian_symbol_complex;
use bgg_core::liealg::{apply_parabolic_grading, chevalley_basis};
use bgg_core::repn::HighestWeightModule;
use bgg_core::rootsys::{build_root_system, CartanType, ParabolicChoice};
use proptest::prelude::*;

proptest! {
    #[test]
    fn config_reader_never_panics(text in "[a-z._=\\[\\], 0-9#\"\n-]{0,80}") {
        let _ = parse_config(&text);
    }

    #[test]
    fn rationals_render_reduced(n in -1000i64..1000, d in 1i64..1000) {
        let q = ratio(n, d);
        let s = rat_str(&q);
        let (p, r) = s.split_once('/').unwrap();
        prop_assert_eq!(ratio(p.parse().unwrap(), r.parse().unwrap()), q);
    }

    #[test]
    fn koszul_exact_for_any_nonzero_character(a in -6i64..6, b in -6i64..6, d in 1i64..5) {
        prop_assume!(a != 0 || b != 0);
        let rs = build_root_system(CartanType::A, 2).unwrap();
        let alg = apply_parabolic_grading(&chevalley_basis(&rs).unwrap(), &ParabolicChoice::new(&rs, &[2]).unwrap());
        let triv = HighestWeightModule::trivial(&alg);
        let cx = abelian_symbol_complex(&alg, &triv, &[ratio(a, d), ratio(b, d)]).unwrap();
        prop_assert!(cx.is_square_zero() && cx.is_exact());
    }

    #[test]
    fn rank_plus_nullity(entries in proptest::collection::vec(-3i64..3, 12)) {
        let rows: Vec<Vec<_>> = entries.chunks(4).map(|r| r.iter().map(|&x| ratio(x, 1)).collect()).collect();
        let m = Matrix::from_rows(&rows);
        prop_assert_eq!(m.rank() + m.kernel().cols(), 4);
    }
}
