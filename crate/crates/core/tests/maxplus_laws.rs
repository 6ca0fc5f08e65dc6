//! Semiring laws of `ℝ_max` and the envelope of the Maslov deformation.

use imetric_core::{oplus_h, MaxPlus};
use proptest::prelude::*;

// Integer-valued finite entries keep `⊙` exact, so the laws hold with `==`.
fn arb_value() -> impl Strategy<Value = MaxPlus> {
    prop_oneof![
        1 => Just(MaxPlus::NegInf),
        4 => (-1000i32..=1000).prop_map(|v| MaxPlus::lit(v as f64)),
    ]
}

proptest! {
    #[test]
    fn oplus_is_a_commutative_idempotent_monoid(a in arb_value(), b in arb_value(), c in arb_value()) {
        prop_assert_eq!(a.oplus(b), b.oplus(a));
        prop_assert_eq!(a.oplus(b).oplus(c), a.oplus(b.oplus(c)));
        prop_assert_eq!(a.oplus(a), a);
        prop_assert_eq!(a.oplus(MaxPlus::ZERO), a);
    }

    #[test]
    fn odot_is_a_commutative_monoid_absorbed_by_zero(a in arb_value(), b in arb_value(), c in arb_value()) {
        prop_assert_eq!(a.odot(b), b.odot(a));
        prop_assert_eq!(a.odot(b).odot(c), a.odot(b.odot(c)));
        prop_assert_eq!(a.odot(MaxPlus::ONE), a);
        prop_assert_eq!(a.odot(MaxPlus::ZERO), MaxPlus::ZERO);
    }

    #[test]
    fn odot_distributes_over_oplus(a in arb_value(), b in arb_value(), c in arb_value()) {
        prop_assert_eq!(a.odot(b.oplus(c)), a.odot(b).oplus(a.odot(c)));
    }

    #[test]
    fn order_matches_oplus(a in arb_value(), b in arb_value()) {
        prop_assert_eq!(a <= b, a.oplus(b) == b);
        prop_assert_eq!(a.meet(b).oplus(a.oplus(b)), a.oplus(b));
    }

    #[test]
    fn abs_diff_is_a_metric_on_the_extended_line(a in arb_value(), b in arb_value(), c in arb_value()) {
        prop_assert_eq!(a.abs_diff(b), b.abs_diff(a));
        prop_assert_eq!(a.abs_diff(a), 0.0);
        prop_assert!(a.abs_diff(c) <= a.abs_diff(b) + b.abs_diff(c));
    }

    #[test]
    fn serde_round_trip(a in arb_value()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<MaxPlus>(&json).unwrap(), a);
    }

    #[test]
    fn dequantized_sum_lies_in_its_envelope(u in -50.0f64..50.0, v in -50.0f64..50.0, h in 1e-4f64..10.0) {
        let s = oplus_h(u, v, h).unwrap();
        let m = u.max(v);
        prop_assert!(m <= s);
        prop_assert!(s <= m + h * std::f64::consts::LN_2 + 1e-12);
        prop_assert_eq!(s, oplus_h(v, u, h).unwrap());
    }

    #[test]
    fn dequantized_sum_matches_the_direct_formula(u in -5.0f64..5.0, v in -5.0f64..5.0, h in 0.5f64..10.0) {
        // For moderate u/h the exponentials are safe to evaluate directly.
        let direct = h * ((u / h).exp() + (v / h).exp()).ln();
        prop_assert!((oplus_h(u, v, h).unwrap() - direct).abs() < 1e-12);
    }
}

#[test]
fn dequantization_at_unit_temperature() {
    let s = oplus_h(0.0, 0.0, 1.0).unwrap();
    assert!((s - std::f64::consts::LN_2).abs() < 1e-15);
    assert_eq!(format!("{s:.9}"), "0.693147181");
}

#[test]
fn dequantization_survives_tiny_temperatures() {
    assert_eq!(oplus_h(700.0, -700.0, 1e-3).unwrap(), 700.0);
    assert!(oplus_h(1.0, 2.0, 0.0).is_err());
    assert!(oplus_h(1.0, 2.0, -1.0).is_err());
    assert!(oplus_h(f64::NAN, 2.0, 1.0).is_err());
}
