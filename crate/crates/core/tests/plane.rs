use std::collections::HashSet;

use pgarcs::{Plane, PlaneError};
use proptest::prelude::*;

fn plane(q: u64) -> Plane {
    Plane::with_order(q).unwrap()
}

#[test]
fn incidence_structure_exhaustive() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
        let pl = plane(q);
        let n = q * q + q + 1;
        assert_eq!(u64::from(pl.num_points()), n);
        assert_eq!(u64::from(pl.num_lines()), n);
        let mut degree = vec![0u64; n as usize];
        for l in 0..pl.num_lines() {
            let pts = pl.line_points(l);
            assert_eq!(pts.len() as u64, q + 1);
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            for &p in pts.iter() {
                assert!(pl.incident(l, p));
                degree[p as usize] += 1;
            }
        }
        assert!(degree.iter().all(|&d| d == q + 1), "q={q}");
        // Every pair of points lies on exactly one line.
        let mut pair_lines = vec![0u8; (n * n) as usize];
        for l in 0..pl.num_lines() {
            let pts = pl.line_points(l);
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    pair_lines[(a * pl.num_points() + b) as usize] += 1;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(pair_lines[(a * n + b) as usize], 1, "q={q} pair {a},{b}");
            }
        }
    }
}

#[test]
fn indexing_round_trips() {
    for q in [2u64, 4, 9, 27, 49, 257] {
        let pl = plane(q);
        let mut seen = HashSet::new();
        for i in 0..pl.num_points() {
            let c = pl.coords(i);
            assert_eq!(pl.index_of(c), Some(i));
            assert!(seen.insert(pl.codes(i)));
            // Any nonzero multiple names the same point.
            let f = pl.field();
            let k = f.primitive_element();
            let scaled = [f.mul(k, c[0]), f.mul(k, c[1]), f.mul(k, c[2])];
            assert_eq!(pl.index_of(scaled), Some(i));
        }
    }
}

#[test]
fn canonical_order() {
    let pl = plane(3);
    assert_eq!(pl.codes(0), [0, 0, 1]);
    assert_eq!(pl.codes(1), [1, 0, 1]);
    assert_eq!(pl.codes(3), [0, 1, 1]);
    assert_eq!(pl.codes(9), [0, 1, 0]);
    assert_eq!(pl.codes(12), [1, 0, 0]);
}

#[test]
fn fano_examples() {
    let pl = plane(2);
    let x = pl.index_of_codes([1, 0, 0]).unwrap();
    let y = pl.index_of_codes([0, 1, 0]).unwrap();
    let xy = pl.index_of_codes([1, 1, 0]).unwrap();
    let line = pl.line_through(x, y).unwrap();
    assert_eq!(pl.codes(line), [0, 0, 1]);
    assert!(pl.is_collinear(x, y, xy).unwrap());
    assert!(matches!(pl.line_through(x, x), Err(PlaneError::EqualPoints)));
    assert!(matches!(pl.is_collinear(x, x, y), Err(PlaneError::DuplicatePoints)));
}

#[test]
fn double_count_in_pg25() {
    let pl = plane(5);
    let mut hits = vec![0; pl.num_points() as usize];
    for l in 0..pl.num_lines() {
        for &p in pl.line_points(l).iter() {
            hits[p as usize] += 1;
        }
    }
    assert!(hits.iter().all(|&h| h == 6));
}

#[test]
fn frame_and_conics_are_arcs() {
    let no_three_collinear = |pl: &Plane, pts: &[u32]| {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if pl.is_collinear(pts[i], pts[j], pts[k]).unwrap() {
                        return false;
                    }
                }
            }
        }
        true
    };
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49] {
        let pl = plane(q);
        assert!(no_three_collinear(&pl, &pl.frame_points()));
        let mut conic = pl.conic_points();
        assert_eq!(conic.len() as u64, q + 1);
        if q % 2 == 1 {
            assert!(no_three_collinear(&pl, &conic), "q={q}");
        } else if q <= 32 {
            conic.push(pl.nucleus());
            assert!(no_three_collinear(&pl, &conic), "q={q} hyperoval");
        }
    }
}

proptest! {
    #[test]
    fn line_through_is_symmetric_and_incident(
        q in prop::sample::select(vec![3u64, 16, 121, 257, 343, 512]),
        a in any::<u32>(), b in any::<u32>(),
    ) {
        let pl = plane(q);
        let (a, b) = (a % pl.num_points(), b % pl.num_points());
        prop_assume!(a != b);
        let l = pl.line_through(a, b).unwrap();
        prop_assert_eq!(l, pl.line_through(b, a).unwrap());
        prop_assert!(pl.incident(l, a) && pl.incident(l, b));
        let pts = pl.line_points(l);
        prop_assert!(pts.contains(&a) && pts.contains(&b));
        prop_assert_eq!(pts.len() as u64, q + 1);
        prop_assert!(pl.lines_through(a).contains(&l));
    }
}
