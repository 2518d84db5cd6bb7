//! Jordan form of nilpotent matrices.
//!
//! Blocks are upper triangular (ones on the superdiagonal) and ordered by
//! weakly decreasing size. Chains are grown top-down through the kernel
//! filtration `ker M ⊂ ker M² ⊂ …`, taking kernel basis vectors leftmost
//! first, so the basis returned for a given input is always the same.

use super::{LinalgError, Matrix, Rational, Span};

#[derive(Debug, Clone)]
pub struct NilpotentJordan {
    /// Columns are the Jordan chains, bottom (kernel vector) first.
    pub basis: Matrix,
    pub basis_inv: Matrix,
    /// Block sizes, weakly decreasing, summing to the dimension.
    pub partition: Vec<usize>,
}

/// Block-diagonal nilpotent Jordan matrix with the given block sizes.
pub fn jordan_matrix(partition: &[usize]) -> Matrix {
    let n = partition.iter().sum();
    let mut j = Matrix::zeros(n, n);
    let mut start = 0;
    for &k in partition {
        for i in start..start + k.saturating_sub(1) {
            j[(i, i + 1)] = Rational::one();
        }
        start += k;
    }
    j
}

/// Partition of `n` conjugate to `parts` (which must be weakly decreasing).
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let largest = parts.first().copied().unwrap_or(0);
    (1..=largest)
        .map(|i| parts.iter().filter(|&&p| p >= i).count())
        .collect()
}

/// Block sizes read off the ranks of powers: the number of blocks of size
/// at least `i` is `rank M^{i-1} - rank M^i`.
pub fn partition_from_ranks(m: &Matrix) -> Vec<usize> {
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    while *ranks.last().unwrap() > 0 {
        power = &power * m;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    conjugate_partition(&at_least)
}

fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

impl Matrix {
    pub fn nilpotent_jordan(&self) -> Result<NilpotentJordan, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        // powers[i] = M^i, until the zero matrix.
        let mut powers = vec![Matrix::identity(n)];
        while !powers.last().unwrap().is_zero() {
            if powers.len() > n {
                return Err(LinalgError::NotNilpotent);
            }
            let next = powers.last().unwrap() * self;
            powers.push(next);
        }
        let index = powers.len() - 1;
        let kernels: Vec<Vec<Vec<Rational>>> = powers.iter().map(Matrix::nullspace).collect();

        let mut tops: Vec<(Vec<Rational>, usize)> = Vec::new();
        for level in (1..=index).rev() {
            let mut span = Span::from_vectors(n, kernels[level - 1].iter().map(Vec::as_slice));
            for (u, height) in &tops {
                span.insert(&mat_vec(&powers[height - level], u));
            }
            for v in &kernels[level] {
                if span.insert(v) {
                    tops.push((v.clone(), level));
                }
            }
        }

        let mut basis = Matrix::zeros(n, n);
        let mut col = 0;
        for (u, height) in &tops {
            for depth in (0..*height).rev() {
                let v = mat_vec(&powers[depth], u);
                for (i, x) in v.into_iter().enumerate() {
                    basis[(i, col)] = x;
                }
                col += 1;
            }
        }
        debug_assert_eq!(col, n);
        let basis_inv = basis.inverse().expect("Jordan chains span the space");
        Ok(NilpotentJordan {
            basis,
            basis_inv,
            partition: tops.iter().map(|&(_, h)| h).collect(),
        })
    }
}
