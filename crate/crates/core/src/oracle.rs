//! Exhaustive minimum complete arc search for tiny planes.
//!
//! The collineation group acts transitively on ordered frames, so every arc of
//! four or more points is equivalent to one containing the standard frame.
//! The search therefore roots at the frame and deepens the target size one at
//! a time, extending by uncovered points in ascending index order so each
//! point set is visited once. Arcs of three or fewer points are never complete
//! (the triangle check below asserts it for the plane at hand).

use crate::arc::ArcSet;
use crate::greedy::SearchError;
use crate::plane::{Plane, PointIndex};

/// Largest order the oracle accepts.
pub const ORACLE_ORDER_LIMIT: u64 = 9;

/// Returns the smallest size of a complete arc in PG(2,q) and one such arc.
pub fn brute_force_min_complete(q: u64) -> Result<(usize, Vec<PointIndex>), SearchError> {
    if q > ORACLE_ORDER_LIMIT {
        return Err(SearchError::OrderTooLargeForOracle(q));
    }
    let plane = Plane::with_order(q)?;
    let frame = plane.frame_points();
    // Any arc of at most three points lies in a triangle, which covers a subset
    // of what the triangle covers.
    let triangle = ArcSet::new(&plane, &frame[..3])?;
    assert!(!triangle.is_complete(), "a triangle cannot be complete");

    let root = ArcSet::new(&plane, &frame)?;
    let mut target = frame.len();
    loop {
        if let Some(w) = extend(&root, target, 0) {
            return Ok((w.len(), w));
        }
        target += 1;
    }
}

fn extend(arc: &ArcSet<'_>, target: usize, min_next: PointIndex) -> Option<Vec<PointIndex>> {
    if arc.is_complete() {
        return Some(arc.points().to_vec());
    }
    if arc.len() >= target {
        return None;
    }
    for u in arc.uncovered_points().into_iter().filter(|&u| u >= min_next) {
        let mut next = arc.clone();
        next.add_point(u).expect("uncovered non-member");
        if let Some(w) = extend(&next, target, u + 1) {
            return Some(w);
        }
    }
    None
}
