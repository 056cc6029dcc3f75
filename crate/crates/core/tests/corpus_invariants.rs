use noether_core::blowup::analyze;
use noether_core::curve::{local_support_set, RationalCurveModel};
use noether_core::harness::single_branch_prediction;
use noether_core::{canonical_ideal, dualizing_values, enumerate, NumericalSemigroup, ValueSet};

#[test]
fn counts_by_genus() {
    let mut counts = vec![0; 11];
    for s in enumerate(10, 1) {
        counts[s.genus()] += 1;
    }
    assert_eq!(counts, vec![1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204]);
}

#[test]
fn classical_bounds() {
    for s in enumerate(10, 1).iter().filter(|s| !s.is_natural()) {
        let g = s.genus() as i64;
        assert!(s.conductor() <= 2 * g, "{s}");
        assert!(s.multiplicity() <= g + 1, "{s}");
        assert_eq!(s.is_symmetric(), 2 * g == s.conductor(), "{s}");
        assert_eq!(s.is_symmetric(), canonical_ideal(s) == ValueSet::from_semigroup(s), "{s}");
        assert_eq!(dualizing_values(s).min(), Some(-s.conductor()), "{s}");
        assert_eq!(local_support_set(s, 1).shift(s.conductor()), canonical_ideal(s), "{s}");
    }
}

#[test]
fn blowup_genus_is_smaller() {
    for s in enumerate(10, 1).iter().filter(|s| !s.is_symmetric()) {
        let a = analyze(s).unwrap();
        assert!(a.eta < s.genus(), "{s}");
        assert!(a.genus_hat + 2 <= s.genus(), "{s}");
        assert_eq!(a.omega_hat, a.ohat, "{s}");
    }
}

#[test]
fn single_branch_linear_algebra_matches_sumsets() {
    use noether_core::curve::CurvePoint;
    for s in enumerate(6, 1).iter().filter(|s| !s.is_natural()) {
        let c = RationalCurveModel::single(s).unwrap();
        for n in 1..=3 {
            let (sections, products) = single_branch_prediction(s, n).unwrap();
            let shift = n as i64 * s.conductor();
            let at = CurvePoint::Branch(0);
            let normalized = |space| -> Vec<i64> {
                c.valuations(&space, n, &at).unwrap().into_iter().map(|v| v + shift).collect()
            };
            assert_eq!(sections.elements().unwrap(), normalized(c.global_sections(n)), "{s} n={n}");
            assert_eq!(products.elements().unwrap(), normalized(c.products_span(n)), "{s} n={n}");
        }
    }
}

#[test]
fn hyperelliptic_family_gap() {
    for k in 3..=7 {
        let s = NumericalSemigroup::from_generators(&[2, 2 * k + 1]).unwrap();
        let o = RationalCurveModel::single(&s).unwrap().max_noether(2);
        assert!(!o.holds);
        assert_eq!(o.gap(), s.genus() - 2, "k = {k}");
    }
}
