//! Which elements of the ambient `gl(M|N)` belong to each subalgebra.
//!
//! `q(n)` is `[[a, b], [b, a]]` and `p(n)` is `[[a, b], [c, -aᵗ]]` with `b`
//! symmetric and `c` skew. The orthosymplectic algebras preserve the even
//! form `diag(J, Ω)`, where `J` pairs coordinate `i` with `m + i` (plus a
//! fixed coordinate 0 in the odd case) and `Ω = [[0, I], [-I, 0]]`.

use crate::exact_linalg::{Matrix, Rational};

use super::{AlgebraKind, EvenElement, OddElement, SuperError};

/// The orthogonal and symplectic Gram matrices for an osp kind.
pub fn osp_forms(kind: &AlgebraKind) -> Option<(Matrix, Matrix)> {
    let (m, n, off) = match *kind {
        AlgebraKind::OspOdd { m, n } => (m, n, 1),
        AlgebraKind::OspEven { m, n } => (m, n, 0),
        _ => return None,
    };
    let mut j = Matrix::zeros(2 * m + off, 2 * m + off);
    if off == 1 {
        j[(0, 0)] = Rational::one();
    }
    for i in 0..m {
        j[(off + i, off + m + i)] = Rational::one();
        j[(off + m + i, off + i)] = Rational::one();
    }
    let mut omega = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        omega[(i, n + i)] = Rational::one();
        omega[(n + i, i)] = Rational::from_int(-1);
    }
    Some((j, omega))
}

fn check_dims(kind: &AlgebraKind, dims: (usize, usize)) -> Result<(), SuperError> {
    if kind.ambient() != dims {
        return Err(SuperError::SizeMismatch {
            expected: kind.ambient(),
            found: dims,
        });
    }
    Ok(())
}

/// Whether `x` lies in the odd part `g₁` of `kind`.
pub fn odd_membership(kind: &AlgebraKind, x: &OddElement) -> Result<bool, SuperError> {
    check_dims(kind, x.dims())?;
    let (p, q) = (x.xplus(), x.xminus());
    Ok(match kind {
        AlgebraKind::Gl { .. } | AlgebraKind::Sl { .. } => true,
        AlgebraKind::Q { .. } => p == q,
        AlgebraKind::P { .. } => p.is_symmetric() && q.is_skew_symmetric(),
        AlgebraKind::OspOdd { .. } | AlgebraKind::OspEven { .. } => {
            let (j, omega) = osp_forms(kind).expect("osp kind");
            // X⁻ = -Ω X⁺ᵗ J
            *q == -&(&(&omega * &p.transpose()) * &j)
        }
    })
}

/// Whether `e` lies in the even part `g₀` of `kind`.
pub fn even_membership(kind: &AlgebraKind, e: &EvenElement) -> Result<bool, SuperError> {
    check_dims(kind, e.dims())?;
    Ok(match kind {
        AlgebraKind::Gl { .. } => true,
        AlgebraKind::Sl { .. } => e.supertrace().is_zero(),
        AlgebraKind::Q { .. } => e.a == e.b,
        AlgebraKind::P { .. } => e.b == -&e.a.transpose(),
        AlgebraKind::OspOdd { .. } | AlgebraKind::OspEven { .. } => {
            let (j, omega) = osp_forms(kind).expect("osp kind");
            (&(&e.a.transpose() * &j) + &(&j * &e.a)).is_zero()
                && (&(&e.b.transpose() * &omega) + &(&omega * &e.b)).is_zero()
        }
    })
}
