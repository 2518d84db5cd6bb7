//! Matrices commuting with an upper nilpotent Jordan matrix `J`, and group
//! elements centralizing `Y⁺ = diag(I_r, 0)`.
//!
//! Public builders take 1-based block indices; the `*0` variants used by the
//! pipeline are 0-based.

use crate::exact_linalg::{Matrix, Rational};
use crate::superalgebra::GroupElement;

use super::CanonError;

fn offsets(partition: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    partition
        .iter()
        .map(|&k| {
            let s = acc;
            acc += k;
            s
        })
        .collect()
}

fn check_block(partition: &[usize], j: usize) -> Result<(), CanonError> {
    if j == 0 || j > partition.len() {
        return Err(CanonError::BlockIndex {
            index: j,
            blocks: partition.len(),
        });
    }
    Ok(())
}

/// `I` plus `Z_{j,i} = (0 | αI_{k_j})` in block position `(j, i)`, `i < j`.
/// On matrices supported on block end rows it adds `α·row f(i)` to row `f(j)`.
pub(crate) fn build_l0(partition: &[usize], j: usize, i: usize, alpha: &Rational) -> Matrix {
    let off = offsets(partition);
    let r = partition.iter().sum();
    let (kj, ki) = (partition[j], partition[i]);
    let mut l = Matrix::identity(r);
    for a in 0..kj {
        l[(off[j] + a, off[i] + ki - kj + a)] = alpha.clone();
    }
    l
}

/// `I` plus `[[αI_{k_i}], [0]]` in block position `(j, i)`, `j < i`. On
/// matrices supported on block start columns, right multiplication adds
/// `α·column g(j)` to column `g(i)`.
pub(crate) fn build_u0(partition: &[usize], j: usize, i: usize, alpha: &Rational) -> Matrix {
    let off = offsets(partition);
    let r = partition.iter().sum();
    let mut u = Matrix::identity(r);
    for a in 0..partition[i] {
        u[(off[j] + a, off[i] + a)] = alpha.clone();
    }
    u
}

/// Identity with block `j` scaled by `α`.
pub(crate) fn build_m0(partition: &[usize], j: usize, alpha: &Rational) -> Matrix {
    let off = offsets(partition);
    let r = partition.iter().sum();
    let mut m = Matrix::identity(r);
    for a in 0..partition[j] {
        m[(off[j] + a, off[j] + a)] = alpha.clone();
    }
    m
}

/// The row operation `row f(j) += α·row f(i)` realized inside the
/// centralizer of `J`. Requires `1 ≤ i < j ≤ t`.
pub fn build_l(partition: &[usize], j: usize, i: usize, alpha: &Rational) -> Result<Matrix, CanonError> {
    check_block(partition, j)?;
    check_block(partition, i)?;
    if i >= j {
        return Err(CanonError::BlockOrder { first: i, second: j });
    }
    Ok(build_l0(partition, j - 1, i - 1, alpha))
}

/// Scaling of Jordan block `j` by a nonzero `α`.
pub fn build_m(partition: &[usize], j: usize, alpha: &Rational) -> Result<Matrix, CanonError> {
    check_block(partition, j)?;
    if alpha.is_zero() {
        return Err(CanonError::ZeroScale);
    }
    Ok(build_m0(partition, j - 1, alpha))
}

/// The column operation `column g(i) += α·column g(j)` inside the
/// centralizer of `J`. Requires `1 ≤ j < i ≤ t`.
pub fn build_u(partition: &[usize], j: usize, i: usize, alpha: &Rational) -> Result<Matrix, CanonError> {
    check_block(partition, j)?;
    check_block(partition, i)?;
    if j >= i {
        return Err(CanonError::BlockOrder { first: j, second: i });
    }
    Ok(build_u0(partition, j - 1, i - 1, alpha))
}

/// Permutes Jordan blocks of equal size: block `j` of `P⁻¹·M` is block
/// `order[j]` of `M`. Returns `(P, P⁻¹)`.
pub(crate) fn block_permutation(partition: &[usize], order: &[usize]) -> (Matrix, Matrix) {
    let off = offsets(partition);
    let r = partition.iter().sum();
    let mut p_inv = Matrix::zeros(r, r);
    for (j, &src) in order.iter().enumerate() {
        debug_assert_eq!(partition[j], partition[src]);
        for a in 0..partition[j] {
            p_inv[(off[j] + a, off[src] + a)] = Rational::one();
        }
    }
    (p_inv.transpose(), p_inv)
}

/// An element `(A, B)` of the centralizer of `diag(I_r, 0)`:
///
/// ```text
/// A = ⎡A₁₁ A₁₂⎤    B = ⎡A₁₁  0 ⎤
///     ⎣ 0  A₂₂⎦        ⎣B₂₁ B₂₂⎦
/// ```
///
/// Unset blocks are identity or zero.
#[derive(Debug, Clone)]
pub(crate) struct Step {
    m: usize,
    n: usize,
    r: usize,
    a11: Option<(Matrix, Matrix)>,
    a12: Option<Matrix>,
    a22: Option<(Matrix, Matrix)>,
    b21: Option<Matrix>,
    b22: Option<(Matrix, Matrix)>,
}

impl Step {
    pub(crate) fn new(m: usize, n: usize, r: usize) -> Self {
        Step {
            m,
            n,
            r,
            a11: None,
            a12: None,
            a22: None,
            b21: None,
            b22: None,
        }
    }

    pub(crate) fn a11(mut self, a: Matrix, a_inv: Matrix) -> Self {
        self.a11 = Some((a, a_inv));
        self
    }

    pub(crate) fn a12(mut self, a: Matrix) -> Self {
        self.a12 = Some(a);
        self
    }

    pub(crate) fn a22(mut self, a: Matrix, a_inv: Matrix) -> Self {
        self.a22 = Some((a, a_inv));
        self
    }

    pub(crate) fn b21(mut self, b: Matrix) -> Self {
        self.b21 = Some(b);
        self
    }

    pub(crate) fn b22(mut self, b: Matrix, b_inv: Matrix) -> Self {
        self.b22 = Some((b, b_inv));
        self
    }

    /// Assembles `(A, B)` with inverses from the block formulas
    /// `A⁻¹ = [[A₁₁⁻¹, −A₁₁⁻¹A₁₂A₂₂⁻¹], [0, A₂₂⁻¹]]` and
    /// `B⁻¹ = [[A₁₁⁻¹, 0], [−B₂₂⁻¹B₂₁A₁₁⁻¹, B₂₂⁻¹]]`.
    pub(crate) fn build(self) -> GroupElement {
        let (m, n, r) = (self.m, self.n, self.r);
        let pair = |p: Option<(Matrix, Matrix)>, k: usize| p.unwrap_or_else(|| (Matrix::identity(k), Matrix::identity(k)));
        let (a11, a11_inv) = pair(self.a11, r);
        let (a22, a22_inv) = pair(self.a22, m - r);
        let (b22, b22_inv) = pair(self.b22, n - r);
        let a12 = self.a12.unwrap_or_else(|| Matrix::zeros(r, m - r));
        let b21 = self.b21.unwrap_or_else(|| Matrix::zeros(n - r, r));

        let a_inv12 = -&(&(&a11_inv * &a12) * &a22_inv);
        let b_inv21 = -&(&(&b22_inv * &b21) * &a11_inv);
        let a = Matrix::from_blocks(&a11, &a12, &Matrix::zeros(m - r, r), &a22);
        let a_inv = Matrix::from_blocks(&a11_inv, &a_inv12, &Matrix::zeros(m - r, r), &a22_inv);
        let b = Matrix::from_blocks(&a11, &Matrix::zeros(r, n - r), &b21, &b22);
        let b_inv = Matrix::from_blocks(&a11_inv, &Matrix::zeros(r, n - r), &b_inv21, &b22_inv);
        GroupElement::from_parts(a, a_inv, b, b_inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::jordan_matrix;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn l_commutes_with_j() {
        for partition in [vec![2, 1], vec![3, 1], vec![2, 2], vec![3, 2, 2, 1]] {
            let j = jordan_matrix(&partition);
            let t = partition.len();
            for hi in 2..=t {
                for lo in 1..hi {
                    for alpha in [q(-3, 2), q(1, 1), q(7, 5)] {
                        let l = build_l(&partition, hi, lo, &alpha).unwrap();
                        assert_eq!(&l * &j, &j * &l);
                        let u = build_u(&partition, lo, hi, &alpha).unwrap();
                        assert_eq!(&u * &j, &j * &u);
                    }
                }
            }
        }
    }

    #[test]
    fn l_acts_as_elementary_row_operation() {
        let partition = [2, 1];
        let alpha = q(5, 3);
        let l = build_l(&partition, 2, 1, &(-&alpha)).unwrap();
        // supported on rows f(1) = 2, f(2) = 3
        let y = Matrix::from_ints(&[[0, 0], [1, 4], [2, -1]]);
        let mut expected = y.clone();
        expected.add_row_multiple(2, 1, &(-&alpha));
        assert_eq!(&l * &y, expected);
    }

    #[test]
    fn u_acts_as_elementary_column_operation() {
        let partition = [2, 2, 1];
        let alpha = q(-2, 7);
        let u = build_u(&partition, 1, 3, &alpha).unwrap();
        // supported on columns g = 1, 3, 5
        let y = Matrix::from_ints(&[[1, 0, 3, 0, 2], [0, 0, 1, 0, 5]]);
        let mut expected = y.clone();
        expected.add_col_multiple(4, 0, &alpha);
        assert_eq!(&y * &u, expected);
    }

    #[test]
    fn m_is_a_block_scaling() {
        let partition = [2, 1];
        assert!(build_m(&partition, 2, &Rational::one()).unwrap().is_identity());
        let m = build_m(&partition, 1, &q(3, 1)).unwrap();
        let j = jordan_matrix(&partition);
        assert_eq!(&m * &j, &j * &m);
        assert!(build_m(&partition, 1, &Rational::zero()).is_err());
    }

    #[test]
    fn index_errors() {
        let one = Rational::one();
        assert!(build_l(&[2, 1], 1, 2, &one).is_err());
        assert!(build_l(&[2, 1], 3, 1, &one).is_err());
        assert!(build_u(&[2, 1], 2, 1, &one).is_err());
        assert!(build_m(&[2, 1], 0, &one).is_err());
    }

    #[test]
    fn step_centralizes_and_inverts() {
        let (m, n, r) = (3, 4, 2);
        let y = Matrix::partial_identity(m, n, r);
        let a11 = Matrix::from_ints(&[[1, 2], [0, 1]]);
        let a11_inv = a11.inverse().unwrap();
        let b22 = Matrix::from_ints(&[[2, 1], [1, 1]]);
        let g = Step::new(m, n, r)
            .a11(a11, a11_inv)
            .a12(Matrix::from_ints(&[[3], [-1]]))
            .a22(Matrix::from_ints(&[[2]]), Matrix::from_ints(&[[1]]).scale(&q(1, 2)))
            .b21(Matrix::from_ints(&[[1, 1], [0, 5]]))
            .b22(b22.clone(), b22.inverse().unwrap())
            .build();
        assert!((g.a() * g.a_inv()).is_identity());
        assert!((g.b() * g.b_inv()).is_identity());
        assert_eq!(&(g.a_inv() * &y) * g.b(), y);
    }
}
