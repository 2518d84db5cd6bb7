//! Reduction of a nilpotent odd element of `gl(m|n)` to its orbit
//! representative, with the group element that performs it.

mod centralizer;
mod pipeline;

use serde::Serialize;

use crate::exact_linalg::{Matrix, Rational};
use crate::orbit_census::{rep_matrix, OrbitParams};
use crate::superalgebra::{GroupElement, OddElement};

pub use crate::orbit_census::PivotMaps;
pub use centralizer::{build_l, build_m, build_u};
pub use pipeline::{canonicalize, canonicalize_traced};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("input is not in the nilpotent cone")]
    NotInCone,
    #[error("stage `{stage}` failed: {detail}")]
    StageFailure { stage: &'static str, detail: String },
    #[error("block index {index} out of range 1..={blocks}")]
    BlockIndex { index: usize, blocks: usize },
    #[error("block {first} must come before block {second}")]
    BlockOrder { first: usize, second: usize },
    #[error("scaling factor must be nonzero")]
    ZeroScale,
}

/// The group element and representative after one stage of the reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStage {
    pub stage: &'static str,
    /// Product of the elements applied during this stage.
    pub a: Matrix,
    pub b: Matrix,
    pub y: OddElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalResult {
    /// `act(g, input) = y`.
    pub g: GroupElement,
    pub params: OrbitParams,
    pub y: OddElement,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStage>>,
}

/// First index in `0..len` where `pred` fails.
fn prefix_len(len: usize, pred: impl Fn(usize) -> bool) -> usize {
    (0..len).find(|&i| !pred(i)).unwrap_or(len)
}

/// The unique 1 of `v`, if `v` is a unit vector.
fn unit_position(v: impl IntoIterator<Item = Rational>) -> Option<usize> {
    let mut pos = None;
    for (i, x) in v.into_iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || pos.is_some() {
            return None;
        }
        pos = Some(i);
    }
    pos
}

/// The parameters of `y` if it is exactly a representative of the listed
/// shape.
pub fn is_canonical(y: &OddElement) -> Option<OrbitParams> {
    let (m, n) = y.dims();
    let (xp, xm) = (y.xplus(), y.xminus());
    let r = prefix_len(m.min(n), |i| xp[(i, i)].is_one());

    let mut partition = Vec::new();
    let mut len = 0;
    for i in 0..r {
        len += 1;
        if i + 1 == r || !xm[(i, i + 1)].is_one() {
            partition.push(len);
            len = 0;
        }
    }

    let col_unit = |c: usize| unit_position((0..n).map(|i| xm[(i, c)].clone()));
    let c_pivots: Vec<usize> = (r..m).map_while(|c| col_unit(c).filter(|&i| i < r).map(|i| i + 1)).collect();
    let row_unit = |q: usize| unit_position(xm.row(q).iter().cloned());
    let r_pivots: Vec<usize> = (r..n).map_while(|q| row_unit(q).filter(|&j| j < r).map(|j| j + 1)).collect();
    let (r1, r2) = (c_pivots.len(), r_pivots.len());
    let room = (n - r - r2).min(m - r - r1);
    let s = prefix_len(room, |a| xm[(r + r2 + a, r + r1 + a)].is_one());

    let params = OrbitParams {
        r,
        partition,
        c_pivots,
        r_pivots,
        s,
    };
    match rep_matrix(&params, m, n) {
        Ok(rep) if &rep == y => Some(params),
        _ => None,
    }
}
