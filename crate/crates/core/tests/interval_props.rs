//! Thick/thin containments and composition laws on dyadic interval sets,
//! where every endpoint operation is exact.

use advrisk::interval::IntervalSet;
use proptest::prelude::*;

fn dyadic() -> impl Strategy<Value = f64> {
    (-256i32..=256).prop_map(|k| f64::from(k) / 64.0)
}

fn set() -> impl Strategy<Value = IntervalSet<f64>> {
    prop::collection::vec((dyadic(), 0i32..=64), 0..6).prop_map(|parts| {
        let pairs: Vec<(f64, f64)> = parts.into_iter().map(|(lo, len)| (lo, lo + f64::from(len) / 64.0)).collect();
        IntervalSet::from_pairs(&pairs).unwrap()
    })
}

fn radius() -> impl Strategy<Value = f64> {
    (0i32..=64).prop_map(|k| f64::from(k) / 64.0)
}

proptest! {
    #[test]
    fn thin_inside_set_inside_thick(a in set(), e in radius()) {
        let (thin, thick) = (a.thin(e).unwrap(), a.expand(e).unwrap());
        prop_assert!(thin.is_subset_of(&a));
        prop_assert!(a.is_subset_of(&thick));
    }

    #[test]
    fn expansions_compose(a in set(), e in radius(), d in radius()) {
        prop_assert_eq!(a.expand(e).unwrap().expand(d).unwrap(), a.expand(e + d).unwrap());
    }

    #[test]
    fn thinnings_compose(a in set(), e in radius(), d in radius()) {
        prop_assert_eq!(a.thin(e).unwrap().thin(d).unwrap(), a.thin(e + d).unwrap());
    }

    #[test]
    fn thinning_is_dual_to_expansion(a in set(), e in radius()) {
        // Complements are stored as closures, so the round trip can only
        // lose the finitely many points at distance exactly ε.
        let thin = a.thin(e).unwrap();
        let dual = a.complement().expand(e).unwrap().complement();
        prop_assert!(dual.is_subset_of(&thin));
        prop_assert_eq!(dual.length(), thin.length());
    }

    #[test]
    fn opening_and_closing(a in set(), e in radius()) {
        // (A^{-ε})^ε ⊆ A ⊆ (A^ε)^{-ε}.
        prop_assert!(a.thin(e).unwrap().expand(e).unwrap().is_subset_of(&a));
        prop_assert!(a.is_subset_of(&a.expand(e).unwrap().thin(e).unwrap()));
    }

    #[test]
    fn monotone_in_radius(a in set(), e in radius(), d in radius()) {
        let (lo, hi) = if e <= d { (e, d) } else { (d, e) };
        prop_assert!(a.expand(lo).unwrap().is_subset_of(&a.expand(hi).unwrap()));
        prop_assert!(a.thin(hi).unwrap().is_subset_of(&a.thin(lo).unwrap()));
    }

    #[test]
    fn membership_matches_distance(a in set(), e in radius(), x in dyadic()) {
        // x ∈ A^ε iff some point of A lies within ε.
        let near = a.intervals().iter().any(|iv| {
            let (lo, hi) = (iv.lo.value(), iv.hi.value());
            let d = if x < lo { lo - x } else if x > hi { x - hi } else { 0.0 };
            d <= e
        });
        prop_assert_eq!(a.expand(e).unwrap().contains(x), near);
    }

    #[test]
    fn display_parses_back(a in set()) {
        prop_assert_eq!(IntervalSet::<f64>::parse(&a.to_string()).unwrap(), a);
    }
}
