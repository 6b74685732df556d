//! Arcs with incremental bisecant coverage, and independent verification.
//!
//! A point is *covered* by a point set when it lies on a line through two of
//! its members. With two or more members every member is itself covered;
//! with fewer there are no bisecants and nothing is covered. An arc is complete
//! exactly when every non-member point is covered.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane::{Plane, PlaneError, PointIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error("points {0:?} are collinear")]
    CollinearTriple([PointIndex; 3]),
    #[error("point {0} appears more than once")]
    DuplicatePoint(PointIndex),
    #[error("point {0} is already a member of the arc")]
    AlreadyMember(PointIndex),
    #[error("point {0} lies on a bisecant of the arc")]
    PointCovered(PointIndex),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

/// A point set with no three collinear points plus its coverage bit-vector.
#[derive(Debug, Clone)]
pub struct ArcSet<'p> {
    plane: &'p Plane,
    members: Vec<PointIndex>,
    is_member: FixedBitSet,
    covered: FixedBitSet,
    covered_count: usize,
}

impl<'p> ArcSet<'p> {
    pub fn empty(plane: &'p Plane) -> ArcSet<'p> {
        let n = plane.num_points() as usize;
        ArcSet {
            plane,
            members: Vec::new(),
            is_member: FixedBitSet::with_capacity(n),
            covered: FixedBitSet::with_capacity(n),
            covered_count: 0,
        }
    }

    /// Builds an arc from `initial`, checking the arc property and computing
    /// coverage from all member pairs.
    pub fn new(plane: &'p Plane, initial: &[PointIndex]) -> Result<ArcSet<'p>, ArcError> {
        let mut arc = ArcSet::empty(plane);
        for &p in initial {
            plane.check_point(p)?;
            if arc.is_member.put(p as usize) {
                return Err(ArcError::DuplicatePoint(p));
            }
        }
        if let Some(t) = first_collinear_triple(plane, initial) {
            return Err(ArcError::CollinearTriple(t));
        }
        arc.members = initial.to_vec();
        arc.covered = coverage_from_pairs(plane, initial);
        arc.covered_count = arc.covered.count_ones(..);
        Ok(arc)
    }

    #[inline]
    pub fn plane(&self) -> &'p Plane {
        self.plane
    }

    /// Members in insertion order.
    pub fn points(&self) -> &[PointIndex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn covered(&self) -> &FixedBitSet {
        &self.covered
    }

    #[inline]
    pub fn is_covered(&self, p: PointIndex) -> bool {
        self.covered.contains(p as usize)
    }

    #[inline]
    pub fn is_member(&self, p: PointIndex) -> bool {
        self.is_member.contains(p as usize)
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    fn check_candidate(&self, u: PointIndex) -> Result<(), ArcError> {
        self.plane.check_point(u)?;
        if self.is_member(u) {
            return Err(ArcError::AlreadyMember(u));
        }
        if self.is_covered(u) {
            return Err(ArcError::PointCovered(u));
        }
        Ok(())
    }

    /// Adds an uncovered point and covers every point on its new bisecants.
    pub fn add_point(&mut self, u: PointIndex) -> Result<(), ArcError> {
        self.check_candidate(u)?;
        let plane = self.plane;
        for &m in &self.members {
            let line = plane.line_through_unchecked(u, m);
            let covered = &mut self.covered;
            let count = &mut self.covered_count;
            plane.for_each_point_on_line(line, |v| {
                if !covered.put(v as usize) {
                    *count += 1;
                }
            });
        }
        self.members.push(u);
        self.is_member.insert(u as usize);
        Ok(())
    }

    /// Number of points that adding `u` would newly cover.
    pub fn coverage_gain(&self, u: PointIndex) -> Result<usize, ArcError> {
        self.check_candidate(u)?;
        Ok(self.gain_unchecked(u))
    }

    /// Lines through `u` and distinct members meet only in `u`, so the new
    /// coverage splits into `u` plus the uncovered rest of each such line.
    pub(crate) fn gain_unchecked(&self, u: PointIndex) -> usize {
        if self.members.is_empty() {
            return 0;
        }
        let mut gain = 1;
        for &m in &self.members {
            let line = self.plane.line_through_unchecked(u, m);
            self.plane.for_each_point_on_line(line, |v| {
                if v != u && !self.covered.contains(v as usize) {
                    gain += 1;
                }
            });
        }
        gain
    }

    /// Non-member points that are not covered, ascending.
    pub fn uncovered_points(&self) -> Vec<PointIndex> {
        (0..self.plane.num_points())
            .filter(|&p| !self.is_covered(p) && !self.is_member(p))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.covered_count + self.non_covered_members() == self.plane.num_points() as usize
    }

    fn non_covered_members(&self) -> usize {
        self.members
            .iter()
            .filter(|&&m| !self.is_covered(m))
            .count()
    }
}

/// First collinear triple in lexicographic order of positions in `points`.
pub(crate) fn first_collinear_triple(
    plane: &Plane,
    points: &[PointIndex],
) -> Option<[PointIndex; 3]> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (points[i], points[j], points[k]);
                if plane.collinear_unchecked(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Union of all lines through two distinct points of `points`.
fn coverage_from_pairs(plane: &Plane, points: &[PointIndex]) -> FixedBitSet {
    let n = plane.num_points() as usize;
    let mut covered = FixedBitSet::with_capacity(n);
    let mut seen_lines = FixedBitSet::with_capacity(n);
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            if a == b {
                continue;
            }
            let line = plane.line_through_unchecked(a, b);
            if seen_lines.put(line as usize) {
                continue;
            }
            plane.for_each_point_on_line(line, |v| covered.insert(v as usize));
        }
    }
    covered
}

/// Whether every point outside `points` lies on a line through two of them.
/// The set need not be an arc.
pub fn is_saturating(plane: &Plane, points: &[PointIndex]) -> bool {
    let mut covered = coverage_from_pairs(plane, points);
    for &p in points {
        covered.insert(p as usize);
    }
    covered.is_full()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "points")]
pub enum Witness {
    /// A point index out of range for the plane.
    InvalidPoint(PointIndex),
    DuplicatePoint(PointIndex),
    CollinearTriple([PointIndex; 3]),
    /// The smallest uncovered non-member point.
    Uncovered(PointIndex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcVerification {
    pub valid: bool,
    pub complete: bool,
    pub size: usize,
    pub witness: Option<Witness>,
}

/// Re-verifies a point set without the incremental machinery: validity by the
/// determinant of every triple, completeness by recounting all bisecants.
pub fn verify_arc(plane: &Plane, points: &[PointIndex]) -> ArcVerification {
    let invalid = |w| ArcVerification {
        valid: false,
        complete: false,
        size: points.len(),
        witness: Some(w),
    };
    let mut seen = FixedBitSet::with_capacity(plane.num_points() as usize);
    for &p in points {
        if p >= plane.num_points() {
            return invalid(Witness::InvalidPoint(p));
        }
        if seen.put(p as usize) {
            return invalid(Witness::DuplicatePoint(p));
        }
    }
    if let Some(t) = first_collinear_triple(plane, points) {
        return invalid(Witness::CollinearTriple(t));
    }
    let covered = coverage_from_pairs(plane, points);
    let uncovered = (0..plane.num_points())
        .find(|&p| !covered.contains(p as usize) && !seen.contains(p as usize));
    ArcVerification {
        valid: true,
        complete: uncovered.is_none(),
        size: points.len(),
        witness: uncovered.map(Witness::Uncovered),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(q: u64) -> Plane {
        Plane::with_order(q).unwrap()
    }

    #[test]
    fn frame_covers_fano_plane() {
        let pl = plane(2);
        let arc = ArcSet::new(&pl, &pl.frame_points()).unwrap();
        assert_eq!(arc.covered_count(), 7);
        assert!(arc.is_complete());
    }

    #[test]
    fn empty_and_singleton_cover_nothing() {
        let pl = plane(5);
        let arc = ArcSet::new(&pl, &[]).unwrap();
        assert_eq!(arc.covered_count(), 0);
        assert_eq!(arc.coverage_gain(3).unwrap(), 0);
        assert!(!arc.is_complete());
        let arc = ArcSet::new(&pl, &[7]).unwrap();
        assert_eq!(arc.covered_count(), 0);
        assert_eq!(arc.coverage_gain(3).unwrap(), 6);
        assert_eq!(arc.uncovered_points().len(), 30);
    }

    #[test]
    fn second_point_covers_one_line() {
        let pl = plane(2);
        let a = pl.index_of_codes([1, 0, 0]).unwrap();
        let b = pl.index_of_codes([0, 1, 0]).unwrap();
        let mut arc = ArcSet::new(&pl, &[a]).unwrap();
        arc.add_point(b).unwrap();
        assert_eq!(arc.covered_count(), 3);
    }

    #[test]
    fn construction_errors() {
        let pl = plane(3);
        let p = |c| pl.index_of_codes(c).unwrap();
        let (a, b, c) = (p([1, 0, 0]), p([0, 1, 0]), p([1, 1, 0]));
        assert_eq!(ArcSet::new(&pl, &[a, b, c]).unwrap_err(), ArcError::CollinearTriple([a, b, c]));
        assert_eq!(ArcSet::new(&pl, &[a, b, a]).unwrap_err(), ArcError::DuplicatePoint(a));
        let mut arc = ArcSet::new(&pl, &[a, b]).unwrap();
        assert_eq!(arc.add_point(a), Err(ArcError::AlreadyMember(a)));
        assert_eq!(arc.add_point(c), Err(ArcError::PointCovered(c)));
        assert_eq!(arc.coverage_gain(c), Err(ArcError::PointCovered(c)));
        assert!(matches!(arc.add_point(99), Err(ArcError::Plane(PlaneError::InvalidPoint(99)))));
    }

    #[test]
    fn small_complete_arcs() {
        let pl = plane(3);
        assert!(ArcSet::new(&pl, &pl.frame_points()).unwrap().is_complete());
        let pl4 = plane(4);
        let mut hyperoval = pl4.conic_points();
        hyperoval.push(pl4.nucleus());
        let arc = ArcSet::new(&pl4, &hyperoval).unwrap();
        assert_eq!(arc.len(), 6);
        assert!(arc.is_complete());
    }

    #[test]
    fn saturating_sets() {
        let pl = plane(2);
        assert!(!is_saturating(&pl, &[]));
        let all: Vec<_> = (0..pl.num_points()).collect();
        assert!(is_saturating(&pl, &all));
        assert!(is_saturating(&pl, &pl.frame_points()));
        // A line plus one point off it saturates PG(2,2) without being an arc.
        let mut set = pl.line_points(0).to_vec();
        let off = (0..7).find(|p| !set.contains(p)).unwrap();
        set.push(off);
        assert!(is_saturating(&pl, &set));
    }

    #[test]
    fn verify_reports_witnesses() {
        let pl = plane(3);
        let frame = pl.frame_points();
        let v = verify_arc(&pl, &frame);
        assert!(v.valid && v.complete && v.witness.is_none());

        let arc = ArcSet::new(&pl, &frame).unwrap();
        let covered = (0..pl.num_points()).find(|&p| !arc.is_member(p)).unwrap();
        let mut bad = frame.to_vec();
        bad.push(covered);
        let v = verify_arc(&pl, &bad);
        assert!(!v.valid);
        assert!(matches!(v.witness, Some(Witness::CollinearTriple(_))));

        let v = verify_arc(&pl, &[frame[0], frame[0]]);
        assert_eq!(v.witness, Some(Witness::DuplicatePoint(frame[0])));
        let v = verify_arc(&pl, &[frame[0], 500]);
        assert_eq!(v.witness, Some(Witness::InvalidPoint(500)));
    }

    #[test]
    fn verify_flags_incomplete_conic() {
        let pl = plane(5);
        let conic = pl.conic_points();
        let v = verify_arc(&pl, &conic);
        assert!(v.valid);
        // The conic is a 6-arc; for odd q it is complete.
        assert!(v.complete);
        let v = verify_arc(&pl, &conic[..4]);
        assert!(v.valid && !v.complete);
        assert!(matches!(v.witness, Some(Witness::Uncovered(_))));
    }
}
