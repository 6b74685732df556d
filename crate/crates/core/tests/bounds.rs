use pgarcs::bounds::{
    self, check_theorem1, conjectural, eval_bounds, min_bound, transforms, Bound,
    TransformValues, SPARSE_ORDERS,
};
use pgarcs::field::prime_power;
use pgarcs::tables::bundled_all;
use proptest::prelude::*;

fn argmin_branches(qs: impl Iterator<Item = u64>) -> Vec<(u64, Bound)> {
    let mut switches = Vec::new();
    let mut last: Option<(u64, Bound)> = None;
    for q in qs {
        let b = min_bound(q as f64).unwrap().1;
        if let Some((pq, pb)) = last {
            if pb != b {
                switches.push((pq, b));
            }
        }
        last = Some((q, b));
    }
    switches
}

#[test]
fn spot_values() {
    let b = eval_bounds(7.0).unwrap();
    assert!((b.fdl_0998 - 6.3797).abs() < 1e-4 && 6.0 < b.fdl_0998);
    let b = eval_bounds(109.0).unwrap();
    assert!((b.log_power - 32.24).abs() < 0.01 && 30.0 < b.log_power);
    let b = eval_bounds(19.0).unwrap();
    assert!((b.c_up - 0.79170).abs() < 1e-5);
    assert!((b.ddl_c - 10.25).abs() < 0.01 && 10.0 < b.ddl_c);
    let t = transforms(160001.0, 2383.0, 0.6).unwrap();
    assert!((t.h - 0.9936).abs() < 1e-4 && t.h < 0.998);
    assert!(transforms(109.0, 30.0, 0.6).unwrap().c < 0.7295);
}

#[test]
fn bounds_are_positive_and_increasing_on_a_grid() {
    let grid: Vec<f64> = (0..400).map(|i| 3.0 * 1.03f64.powi(i)).collect();
    let vals = |q: f64| {
        let b = eval_bounds(q).unwrap();
        [
            b.lower_any,
            b.lower_cubefree,
            b.fdl_0998,
            b.fdl_1006,
            b.log_power,
            b.ddl_c,
            b.ddl_phi,
            b.conjectural.unwrap(),
            b.sat_bound,
        ]
    };
    for w in grid.windows(2) {
        let (a, b) = (vals(w[0]), vals(w[1]));
        for (x, y) in a.iter().zip(&b) {
            assert!(x.is_finite() && *x > 0.0);
            assert!(y > x, "not increasing between q={} and q={}", w[0], w[1]);
        }
    }
}

#[test]
fn theorem2_switches_over_prime_powers_at_stated_boundaries() {
    // Over the orders the theorem is about, the last q of each branch is exactly
    // 9437 and 88873.
    let switches = argmin_branches((109..=160_001).filter(|&q| prime_power(q).is_some()));
    assert_eq!(switches, vec![(9437, Bound::DdlC), (88873, Bound::DdlPhi)]);
}

#[test]
fn theorem1_ranges() {
    let r = check_theorem1(5, 6);
    // 6 exceeds the bound at q=5, but q=5 lies outside its range.
    assert!(!r[0].in_range && !r[0].pass && !r[0].is_violation());
    for c in check_theorem1(2, 4) {
        assert!(!c.in_range);
    }
    assert_eq!(SPARSE_ORDERS.len(), 34);
    assert!(Bound::Fdl0998.in_range(190_027) && !Bound::Fdl0998.in_range(200_003));
}

#[test]
fn recorded_sizes_sit_between_lower_and_minimum_bounds() {
    for e in bundled_all().iter().filter(|e| (109..=160_001).contains(&e.q)) {
        let q = e.q as f64;
        let t = e.t2 as f64;
        assert!(bounds::lower_any(q) < t, "q={}", e.q);
        assert!(t < min_bound(q).unwrap().0, "q={}", e.q);
        if prime_power(e.q).unwrap().1 <= 3 {
            assert!(bounds::lower_cubefree(q) < t, "q={}", e.q);
        }
    }
}

proptest! {
    #[test]
    fn transforms_invert(q in 3.0f64..1e7, t in 1.0f64..1e5, d in 0.1f64..3.0) {
        let tr = transforms(q, t, d).unwrap();
        let rel = |x: f64| ((x - t) / t).abs();
        prop_assert!(rel(TransformValues::size_from_c(q, tr.c)) <= 1e-12);
        prop_assert!(rel(TransformValues::size_from_phi(q, d, tr.phi)) <= 1e-12);
        prop_assert!(rel(TransformValues::size_from_h(q, tr.h)) <= 1e-12);
    }

    #[test]
    fn conjectural_needs_q_at_least_3(q in 0.0f64..3.0) {
        prop_assert!(conjectural(q).is_err());
    }
}
