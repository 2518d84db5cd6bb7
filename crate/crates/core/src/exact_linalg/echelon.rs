//! Gauss-Jordan elimination and the normal forms built on it.
//!
//! Pivot choice is deterministic throughout: leftmost column first, and
//! within a column the topmost remaining nonzero row.

use super::{LinalgError, Matrix, Rational};

/// Reduced row echelon form `reduced = transform * source`.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub transform: Matrix,
    pub transform_inv: Matrix,
}

/// Output of [`Matrix::rank_normal_form`]: `a⁻¹ · x · b = diag(I_rank, 0)`.
#[derive(Debug, Clone)]
pub struct RankNormalForm {
    pub a: Matrix,
    pub a_inv: Matrix,
    pub b: Matrix,
    pub b_inv: Matrix,
    pub rank: usize,
}

/// Output of [`Matrix::column_echelon`]: `echelon = source * transform`.
#[derive(Debug, Clone)]
pub struct ColumnEchelon {
    pub echelon: Matrix,
    pub transform: Matrix,
    pub transform_inv: Matrix,
    /// Pivot row of each nonzero column, strictly increasing.
    pub pivot_rows: Vec<usize>,
}

impl Matrix {
    pub fn rref(&self) -> RowEchelon {
        let (rows, cols) = self.shape();
        let mut r = self.clone();
        let mut e = Matrix::identity(rows);
        let mut e_inv = Matrix::identity(rows);
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..cols {
            if next == rows {
                break;
            }
            let Some(p) = (next..rows).find(|&i| !r[(i, c)].is_zero()) else {
                continue;
            };
            if p != next {
                r.swap_rows(p, next);
                e.swap_rows(p, next);
                e_inv.swap_cols(p, next);
            }
            let pivot = r[(next, c)].clone();
            if !pivot.is_one() {
                let inv = pivot.recip().expect("nonzero pivot");
                r.scale_row(next, &inv);
                e.scale_row(next, &inv);
                e_inv.scale_col(next, &pivot);
            }
            for i in 0..rows {
                if i == next || r[(i, c)].is_zero() {
                    continue;
                }
                let f = -&r[(i, c)];
                r.add_row_multiple(i, next, &f);
                e.add_row_multiple(i, next, &f);
                e_inv.add_col_multiple(next, i, &-&f);
            }
            pivots.push(c);
            next += 1;
        }
        RowEchelon {
            reduced: r,
            pivots,
            transform: e,
            transform_inv: e_inv,
        }
    }

    pub fn rank(&self) -> usize {
        // Cheaper than a full rref: no transform bookkeeping.
        let (rows, cols) = self.shape();
        let mut r = self.clone();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&i| !r[(i, c)].is_zero()) else {
                continue;
            };
            r.swap_rows(p, rank);
            let inv = r[(rank, c)].recip().expect("nonzero pivot");
            for i in rank + 1..rows {
                if !r[(i, c)].is_zero() {
                    let f = -(&r[(i, c)] * &inv);
                    r.add_row_multiple(i, rank, &f);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let ech = self.rref();
        if ech.pivots.len() < self.rows() {
            return Err(LinalgError::Singular);
        }
        Ok(ech.transform)
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per free
    /// column in increasing column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let ech = self.rref();
        let cols = self.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); cols];
                v[f] = Rational::one();
                for (i, &p) in ech.pivots.iter().enumerate() {
                    v[p] = -&ech.reduced[(i, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.rows(), "right-hand side has the wrong length");
        let (rows, cols) = self.shape();
        let augmented = Matrix::from_fn(rows, cols + 1, |i, j| {
            if j < cols {
                self[(i, j)].clone()
            } else {
                rhs[i].clone()
            }
        });
        let ech = augmented.rref();
        if ech.pivots.last() == Some(&cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); cols];
        for (i, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.reduced[(i, cols)].clone();
        }
        Some(x)
    }

    /// Reduced column echelon form with unit pivots, obtained by column
    /// operations only: zero columns to the right, each pivot the first
    /// nonzero entry of its column and the only nonzero entry of its row,
    /// pivot rows strictly increasing left to right.
    pub fn column_echelon(&self) -> ColumnEchelon {
        let ech = self.transpose().rref();
        ColumnEchelon {
            echelon: ech.reduced.transpose(),
            transform: ech.transform.transpose(),
            transform_inv: ech.transform_inv.transpose(),
            pivot_rows: ech.pivots,
        }
    }

    /// Invertible `a`, `b` with `a⁻¹ · self · b = diag(I_r, 0)`.
    pub fn rank_normal_form(&self) -> RankNormalForm {
        let (_, cols) = self.shape();
        let ech = self.rref();
        let rank = ech.pivots.len();
        let order: Vec<usize> = ech
            .pivots
            .iter()
            .copied()
            .chain((0..cols).filter(|c| !ech.pivots.contains(c)))
            .collect();
        let perm = Matrix::permutation(&order);
        let permuted = &ech.reduced * &perm;
        // permuted = [[I_r, F], [0, 0]]; clear F with [[I, -F], [0, I]].
        let mut clear = Matrix::identity(cols);
        let mut clear_inv = Matrix::identity(cols);
        for i in 0..rank {
            for j in rank..cols {
                let f = &permuted[(i, j)];
                if !f.is_zero() {
                    clear[(i, j)] = -f;
                    clear_inv[(i, j)] = f.clone();
                }
            }
        }
        RankNormalForm {
            a: ech.transform_inv,
            a_inv: ech.transform,
            b: &perm * &clear,
            b_inv: &clear_inv * &perm.transpose(),
            rank,
        }
    }
}

/// Incrementally maintained span of vectors in a fixed ambient dimension,
/// stored as reduced echelon rows.
#[derive(Debug, Clone)]
pub struct Span {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(ambient: usize) -> Self {
        Span {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a [Rational]>) -> Self {
        let mut s = Span::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector has the wrong dimension");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Adds `v`; returns `false` (and changes nothing) if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip().expect("nonzero pivot");
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&w) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }
}
