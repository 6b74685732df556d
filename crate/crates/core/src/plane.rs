//! The Desarguesian projective plane PG(2,q).
//!
//! Points are homogeneous triples normalised so that the last nonzero coordinate
//! is 1. Their indices run over the affine points `(x:y:1)` first (ordered by
//! `code(y)*q + code(x)`), then the points at infinity `(x:1:0)` ordered by
//! `code(x)`, and finally `(1:0:0)`. Lines `[a:b:c]` (the set `ax+by+cz = 0`) are
//! normalised and indexed the same way, so the line with index `i` is the dual
//! of the point with index `i`. In particular the lines through point `i` are
//! exactly the points of line `i`, read as line indices.

use std::borrow::Cow;

use thiserror::Error;

use crate::field::{Field, FieldElement, FieldError};

/// Planes of order at most this keep every line's point list in memory.
pub const EAGER_LINE_LIMIT: u32 = 256;

/// Index of a point in `[0, q^2+q+1)`.
pub type PointIndex = u32;

/// Index of a line; shares the numbering scheme of [`PointIndex`].
pub type LineIndex = u32;

/// Homogeneous coordinates of a point or a line.
pub type Coords = [FieldElement; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaneError {
    #[error("the two points are equal")]
    EqualPoints,
    #[error("the points are not pairwise distinct")]
    DuplicatePoints,
    #[error("point index {0} is out of range")]
    InvalidPoint(u32),
    #[error("coordinates {0:?} do not describe a point")]
    InvalidCoords([u32; 3]),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct Plane {
    field: Field,
    q: u32,
    n: u32,
    /// Flat `(q+1)`-stride table of line point lists, when eager.
    lines: Option<Vec<PointIndex>>,
}

impl Plane {
    pub fn new(field: Field) -> Plane {
        let q = field.order();
        let n = q * q + q + 1;
        let mut plane = Plane {
            field,
            q,
            n,
            lines: None,
        };
        if q <= EAGER_LINE_LIMIT {
            let mut table = Vec::with_capacity(n as usize * (q as usize + 1));
            for line in 0..n {
                plane.compute_line_points(line, &mut table);
            }
            plane.lines = Some(table);
        }
        plane
    }

    pub fn with_order(q: u64) -> Result<Plane, PlaneError> {
        Ok(Plane::new(Field::with_order(q)?))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Number of points, which equals the number of lines.
    #[inline]
    pub fn num_points(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn num_lines(&self) -> u32 {
        self.n
    }

    pub fn has_eager_lines(&self) -> bool {
        self.lines.is_some()
    }

    pub fn check_point(&self, p: PointIndex) -> Result<(), PlaneError> {
        if p < self.n {
            Ok(())
        } else {
            Err(PlaneError::InvalidPoint(p))
        }
    }

    /// Normalised coordinates of a point (or, dually, of a line).
    #[inline]
    pub fn coords(&self, i: PointIndex) -> Coords {
        debug_assert!(i < self.n);
        let q = self.q;
        let qq = q * q;
        if i < qq {
            [FieldElement(i % q), FieldElement(i / q), FieldElement::ONE]
        } else if i < qq + q {
            [FieldElement(i - qq), FieldElement::ONE, FieldElement::ZERO]
        } else {
            [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]
        }
    }

    /// Scales a nonzero triple so that its last nonzero coordinate is 1.
    pub fn normalize(&self, c: Coords) -> Option<Coords> {
        let f = &self.field;
        let pivot = c.iter().rposition(|x| !x.is_zero())?;
        let s = f.inv_nonzero(c[pivot]);
        Some([f.mul(c[0], s), f.mul(c[1], s), f.mul(c[2], s)])
    }

    #[inline]
    fn index_of_normalized(&self, c: Coords) -> PointIndex {
        let q = self.q;
        if c[2] == FieldElement::ONE {
            c[1].0 * q + c[0].0
        } else if c[1] == FieldElement::ONE {
            q * q + c[0].0
        } else {
            q * q + q
        }
    }

    /// Index of the point with the given (not necessarily normalised) coordinates.
    pub fn index_of(&self, c: Coords) -> Option<PointIndex> {
        if c.iter().any(|x| x.0 >= self.q) {
            return None;
        }
        self.normalize(c).map(|n| self.index_of_normalized(n))
    }

    /// Same as [`Plane::index_of`] for raw integer codes.
    pub fn index_of_codes(&self, codes: [u32; 3]) -> Result<PointIndex, PlaneError> {
        self.index_of(codes.map(FieldElement))
            .ok_or(PlaneError::InvalidCoords(codes))
    }

    pub fn codes(&self, i: PointIndex) -> [u32; 3] {
        self.coords(i).map(FieldElement::code)
    }

    #[inline]
    fn cross(&self, u: Coords, v: Coords) -> Coords {
        let f = &self.field;
        [
            f.sub(f.mul(u[1], v[2]), f.mul(u[2], v[1])),
            f.sub(f.mul(u[2], v[0]), f.mul(u[0], v[2])),
            f.sub(f.mul(u[0], v[1]), f.mul(u[1], v[0])),
        ]
    }

    #[inline]
    fn dot(&self, u: Coords, v: Coords) -> FieldElement {
        let f = &self.field;
        f.add(f.add(f.mul(u[0], v[0]), f.mul(u[1], v[1])), f.mul(u[2], v[2]))
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: PointIndex, b: PointIndex) -> Result<LineIndex, PlaneError> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(PlaneError::EqualPoints);
        }
        Ok(self.line_through_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn line_through_unchecked(&self, a: PointIndex, b: PointIndex) -> LineIndex {
        let l = self.cross(self.coords(a), self.coords(b));
        let l = self.normalize(l).expect("distinct points span a line");
        self.index_of_normalized(l)
    }

    /// Whether the point lies on the line.
    pub fn incident(&self, line: LineIndex, point: PointIndex) -> bool {
        self.dot(self.coords(line), self.coords(point)).is_zero()
    }

    /// The `q+1` points of a line in ascending index order.
    pub fn line_points(&self, line: LineIndex) -> Cow<'_, [PointIndex]> {
        debug_assert!(line < self.n);
        match &self.lines {
            Some(table) => {
                let k = self.q as usize + 1;
                let start = line as usize * k;
                Cow::Borrowed(&table[start..start + k])
            }
            None => {
                let mut out = Vec::with_capacity(self.q as usize + 1);
                self.compute_line_points(line, &mut out);
                Cow::Owned(out)
            }
        }
    }

    /// The `q+1` lines through a point, ascending.
    pub fn lines_through(&self, point: PointIndex) -> Cow<'_, [LineIndex]> {
        self.line_points(point)
    }

    /// Calls `f` with every point of `line` in ascending order.
    #[inline]
    pub fn for_each_point_on_line(&self, line: LineIndex, mut f: impl FnMut(PointIndex)) {
        match &self.lines {
            Some(table) => {
                let k = self.q as usize + 1;
                let start = line as usize * k;
                table[start..start + k].iter().for_each(|&p| f(p));
            }
            None => self.visit_line_points(line, f),
        }
    }

    /// Appends the points of `line` to `out`, ascending.
    fn compute_line_points(&self, line: LineIndex, out: &mut Vec<PointIndex>) {
        let before = out.len();
        self.visit_line_points(line, |p| out.push(p));
        debug_assert_eq!(out.len() - before, self.q as usize + 1);
        debug_assert!(out[before..].windows(2).all(|w| w[0] < w[1]));
    }

    /// Solves the line equation, calling `f` on each point in ascending order.
    fn visit_line_points(&self, line: LineIndex, mut f: impl FnMut(PointIndex)) {
        let fld = &self.field;
        let q = self.q;
        let qq = q * q;
        let [a, b, c] = self.coords(line);
        if c == FieldElement::ONE {
            // a x + b y + z = 0
            if !a.is_zero() {
                // x = x0 + slope * y
                let neg_ainv = fld.neg(fld.inv_nonzero(a));
                let slope = fld.mul(b, neg_ainv);
                if fld.degree() == 1 {
                    let mut x = neg_ainv.0;
                    for y in 0..q {
                        f(y * q + x);
                        x += slope.0;
                        if x >= q {
                            x -= q;
                        }
                    }
                } else {
                    for y in fld.elements() {
                        let x = fld.add(neg_ainv, fld.mul(slope, y));
                        f(y.0 * q + x.0);
                    }
                }
                f(qq + slope.0);
            } else if !b.is_zero() {
                let y = fld.neg(fld.inv_nonzero(b));
                (0..q).for_each(|x| f(y.0 * q + x));
                f(qq + q);
            } else {
                (0..q).for_each(|x| f(qq + x));
                f(qq + q);
            }
        } else if b == FieldElement::ONE {
            // a x + y = 0
            if !a.is_zero() {
                let neg_ainv = fld.neg(fld.inv_nonzero(a));
                if fld.degree() == 1 {
                    let mut x = 0;
                    for y in 0..q {
                        f(y * q + x);
                        x += neg_ainv.0;
                        if x >= q {
                            x -= q;
                        }
                    }
                } else {
                    for y in fld.elements() {
                        f(y.0 * q + fld.mul(y, neg_ainv).0);
                    }
                }
                f(qq + neg_ainv.0);
            } else {
                (0..q).for_each(&mut f);
                f(qq + q);
            }
        } else {
            // x = 0
            (0..q).for_each(|y| f(y * q));
            f(qq);
        }
    }

    /// Whether three pairwise distinct points are collinear (determinant test).
    pub fn is_collinear(
        &self,
        a: PointIndex,
        b: PointIndex,
        c: PointIndex,
    ) -> Result<bool, PlaneError> {
        for p in [a, b, c] {
            self.check_point(p)?;
        }
        if a == b || b == c || a == c {
            return Err(PlaneError::DuplicatePoints);
        }
        Ok(self.collinear_unchecked(a, b, c))
    }

    #[inline]
    pub(crate) fn collinear_unchecked(&self, a: PointIndex, b: PointIndex, c: PointIndex) -> bool {
        let det = self.dot(self.coords(a), self.cross(self.coords(b), self.coords(c)));
        det.is_zero()
    }

    /// The frame `(1:0:0), (0:1:0), (0:0:1), (1:1:1)`.
    pub fn frame_points(&self) -> [PointIndex; 4] {
        let idx = |c: [u32; 3]| self.index_of_codes(c).expect("frame point");
        [idx([1, 0, 0]), idx([0, 1, 0]), idx([0, 0, 1]), idx([1, 1, 1])]
    }

    /// The conic `{(t^2:t:1)} ∪ {(1:0:0)}`, `q+1` points.
    pub fn conic_points(&self) -> Vec<PointIndex> {
        let f = &self.field;
        let mut pts: Vec<PointIndex> = f
            .elements()
            .map(|t| self.index_of_normalized([f.mul(t, t), t, FieldElement::ONE]))
            .collect();
        pts.push(self.q * self.q + self.q);
        pts
    }

    /// `(0:1:0)`, the nucleus of the conic when `q` is even.
    pub fn nucleus(&self) -> PointIndex {
        self.q * self.q
    }
}
