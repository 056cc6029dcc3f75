use num_bigint::BigInt;
use proptest::prelude::*;

use noether_core::curve::{Branch, CurvePoint, RationalCurveModel};
use noether_core::harness::model_branch_pool;
use noether_core::linalg::Rational;

fn arb_model() -> impl Strategy<Value = RationalCurveModel> {
    let pool = model_branch_pool();
    let n = pool.len();
    prop::collection::vec((0..n, -6i64..=6, 1i64..=3), 1..=2).prop_filter_map("distinct centers", move |picks| {
        let branches = picks
            .iter()
            .map(|&(i, p, q)| Branch {
                center: Rational::new(BigInt::from(p), BigInt::from(q)),
                semigroup: pool[i].clone(),
            })
            .collect();
        RationalCurveModel::new(branches).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_count_the_genus(c in arb_model()) {
        prop_assert_eq!(c.global_sections(1).dim(), c.genus());
    }

    #[test]
    fn riemann_roch_count(c in arb_model(), n in 2usize..=3) {
        prop_assert_eq!(c.global_sections(n).dim() as i64, c.euler_characteristic(n));
    }

    #[test]
    fn products_are_sections(c in arb_model(), n in 1usize..=3) {
        prop_assert!(c.global_sections(n).contains(&c.products_span(n)).unwrap());
    }

    #[test]
    fn chosen_x_has_full_poles(c in arb_model()) {
        let x = c.choose_x().unwrap();
        prop_assert_eq!(x.n, 1);
    }

    #[test]
    fn smooth_point_valuations(c in arb_model(), p in 7i64..=12) {
        let at = CurvePoint::Smooth(Rational::from_integer(BigInt::from(p)));
        let v = c.section_valuations(&at).unwrap();
        prop_assert!(v.contains(&0));
        if c.branches().iter().any(|b| b.semigroup.multiplicity() >= 3) {
            prop_assert!(v.contains(&1));
        }
    }

    #[test]
    fn gorenstein_models_follow_the_dimension_formula(
        picks in prop::collection::vec(prop::sample::select(vec![1usize, 3]), 1..=3),
        n in 2usize..=3,
    ) {
        let pool = model_branch_pool();
        let sgs: Vec<_> = picks.iter().map(|&i| pool[i].clone()).collect();
        let c = RationalCurveModel::from_semigroups(&sgs).unwrap();
        prop_assert_eq!(c.global_sections(n).dim(), (2 * n - 1) * (c.genus() - 1));
    }
}
