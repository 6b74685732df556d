//! JSON file format for arcs: field parameters plus points as code triples.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arc::verify_arc;
use crate::field::{Field, FieldError};
use crate::plane::{Plane, PlaneError, PointIndex};

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed arc file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("modulus {found:?} differs from the modulus {expected:?} used for q = {q}")]
    ModulusMismatch {
        q: u32,
        found: Vec<u32>,
        expected: Vec<u32>,
    },
    #[error("q = {q} does not match p = {p}, h = {h}")]
    OrderMismatch { q: u64, p: u64, h: u32 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Plane(#[from] PlaneError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcRecord {
    pub q: u64,
    pub p: u64,
    pub h: u32,
    pub modulus: Vec<u32>,
    pub points: Vec<[u32; 3]>,
    pub size: usize,
    pub complete: bool,
}

impl ArcRecord {
    /// Describes `points` of `plane`; `complete` is recomputed, not trusted.
    pub fn new(plane: &Plane, points: &[PointIndex]) -> ArcRecord {
        let f = plane.field();
        let check = verify_arc(plane, points);
        ArcRecord {
            q: u64::from(f.order()),
            p: u64::from(f.characteristic()),
            h: f.degree(),
            modulus: f.modulus().to_vec(),
            points: points.iter().map(|&i| plane.codes(i)).collect(),
            size: points.len(),
            complete: check.valid && check.complete,
        }
    }

    /// Compact JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<ArcRecord, RecordError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Rebuilds the plane the record refers to, checking that its modulus matches.
    pub fn plane(&self) -> Result<Plane, RecordError> {
        let field = Field::new(self.p, self.h)?;
        if u64::from(field.order()) != self.q {
            return Err(RecordError::OrderMismatch {
                q: self.q,
                p: self.p,
                h: self.h,
            });
        }
        if field.modulus() != self.modulus.as_slice() {
            return Err(RecordError::ModulusMismatch {
                q: field.order(),
                found: self.modulus.clone(),
                expected: field.modulus().to_vec(),
            });
        }
        Ok(Plane::new(field))
    }

    /// Point indices in `plane`, normalising each triple.
    pub fn point_indices(&self, plane: &Plane) -> Result<Vec<PointIndex>, RecordError> {
        Ok(self
            .points
            .iter()
            .map(|&c| plane.index_of_codes(c))
            .collect::<Result<_, _>>()?)
    }
}
