use std::sync::Arc;

use num_integer::Integer;
use proptest::prelude::*;

use intersective::group::{Automorphism, Group, StandardSet};
use intersective::lp::lambda::Variant;
use intersective::parse::{parse_group, parse_set, set_spec};
use intersective::report::{all_quantities, QuantityReport, ReportOptions};

const GROUPS: [&str; 9] = ["Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z12", "Z2^3", "Z4xZ2"];
const TOL: f64 = 1e-7;

fn group_and_set() -> impl Strategy<Value = (Arc<Group>, StandardSet)> {
    (0..GROUPS.len(), any::<u64>()).prop_map(|(i, bits)| {
        let g = parse_group(GROUPS[i]).unwrap();
        let members = (0..g.order()).map(|x| bits >> (x % 64) & 1 == 1).collect();
        let a = StandardSet::standardize(&g, members);
        (g, a)
    })
}

fn pair() -> impl Strategy<Value = (StandardSet, StandardSet)> {
    (group_and_set(), any::<u64>()).prop_map(|((g, a), bits)| {
        let members = (0..g.order())
            .map(|x| bits.rotate_left(x as u32) & 1 == 1)
            .collect();
        (a, StandardSet::standardize(&g, members))
    })
}

fn report(a: &StandardSet) -> QuantityReport {
    all_quantities(a, &ReportOptions::default()).unwrap()
}

fn values(r: &QuantityReport) -> Vec<f64> {
    r.chain().iter().map(|e| e.value).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn complement_is_an_involution((g, a) in group_and_set()) {
        let c = a.standard_complement();
        prop_assert_eq!(c.standard_complement(), a.clone());
        prop_assert!(a.union(&c).unwrap().is_full());
        prop_assert!(a.intersection(&c).unwrap().is_zero());
        prop_assert_eq!(a.size() + c.size(), g.order() + 1);
    }

    #[test]
    fn set_specs_round_trip((g, a) in group_and_set()) {
        prop_assert_eq!(parse_set(&g, &set_spec(&a)).unwrap(), a);
    }

    #[test]
    fn chain_holds((g, a) in group_and_set()) {
        let v = values(&report(&a));
        let q = g.order() as f64;
        let seq = [1.0 / q, v[0], v[1], v[2].min(v[3]), v[2].max(v[3]), v[4], v[5], 1.0];
        prop_assert!(seq.windows(2).all(|w| w[0] <= w[1] + TOL), "{a}: {seq:?}");
    }

    #[test]
    fn duality_products((g, a) in group_and_set()) {
        let q = g.order() as f64;
        let (r, d) = (report(&a), report(&a.standard_complement()));
        prop_assert_eq!(r.delta_count, d.delta_bar_count);
        for v in Variant::ALL {
            let product = r.lambda(v).value_f64() * d.lambda(v.dual()).value_f64() * q;
            prop_assert!((product - 1.0).abs() <= 1e-6, "{a} {}: {product}", v.symbol());
        }
    }

    #[test]
    fn monotone_quantities_decrease_on_supersets((a, b) in pair()) {
        let big = a.union(&b).unwrap();
        let (small, large) = (report(&a), report(&big));
        prop_assert!(large.delta() <= small.delta());
        prop_assert!(large.delta_bar() <= small.delta_bar());
        for v in [Variant::Minus, Variant::Lambda, Variant::Plus] {
            let (x, y) = (small.lambda(v).value_f64(), large.lambda(v).value_f64());
            prop_assert!(y <= x + TOL, "{} rises from {x} to {y}", v.symbol());
        }
        let meet = a.intersection(&b).unwrap();
        prop_assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        prop_assert!(a.is_subset_of(&big) && b.is_subset_of(&big));
    }

    #[test]
    fn automorphisms_preserve_quantities((g, a) in group_and_set(), u in 2u64..40) {
        let e = g.exponent();
        prop_assume!(u.gcd(&e) == 1);
        let image = a.apply_automorphism(&Automorphism::Multiply(u)).unwrap();
        prop_assert_eq!(image.size(), a.size());
        let (x, y) = (values(&report(&a)), values(&report(&image)));
        prop_assert!(x.iter().zip(&y).all(|(s, t)| (s - t).abs() <= 1e-9), "{x:?} vs {y:?}");
    }
}
