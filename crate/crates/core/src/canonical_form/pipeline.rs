use crate::exact_linalg::{jordan_matrix, Matrix, Rational};
use crate::nilcone::in_nilcone_gl;
use crate::orbit_census::{rep_matrix, OrbitParams};
use crate::superalgebra::{act, GroupElement, OddElement};

use super::centralizer::{block_permutation, build_l0, build_u0, Step};
use super::{is_canonical, CanonError, CanonicalResult, TraceStage};

/// Reduces `x` to its representative `y = act(g, x)`.
pub fn canonicalize(x: &OddElement) -> Result<CanonicalResult, CanonError> {
    run(x, false)
}

/// As [`canonicalize`], recording each stage.
pub fn canonicalize_traced(x: &OddElement) -> Result<CanonicalResult, CanonError> {
    run(x, true)
}

fn fail(stage: &'static str, detail: impl Into<String>) -> CanonError {
    CanonError::StageFailure {
        stage,
        detail: detail.into(),
    }
}

fn ensure(ok: bool, stage: &'static str, detail: &str) -> Result<(), CanonError> {
    if ok {
        Ok(())
    } else {
        Err(fail(stage, detail))
    }
}

fn first_nonzero(v: impl IntoIterator<Item = Rational>) -> Option<usize> {
    v.into_iter().position(|x| !x.is_zero())
}

fn diag2(top: usize, rest: &Matrix) -> Matrix {
    Matrix::block_diag(&[&Matrix::identity(top), rest])
}

struct Run {
    m: usize,
    n: usize,
    r: usize,
    xp: Matrix,
    xm: Matrix,
    g: GroupElement,
    stage_g: GroupElement,
    centralizing: bool,
    partition: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
    trace: Option<Vec<TraceStage>>,
}

impl Run {
    fn y12(&self) -> Matrix {
        self.xm.block(0, self.r, self.r, self.m - self.r)
    }

    fn y21(&self) -> Matrix {
        self.xm.block(self.r, 0, self.n - self.r, self.r)
    }

    fn y22(&self) -> Matrix {
        self.xm.block(self.r, self.r, self.n - self.r, self.m - self.r)
    }

    fn step(&self) -> Step {
        Step::new(self.m, self.n, self.r)
    }

    fn apply(&mut self, stage: &'static str, h: GroupElement) -> Result<(), CanonError> {
        let xp = &(h.a_inv() * &self.xp) * h.b();
        if self.centralizing && xp != self.xp {
            return Err(fail(stage, "applied element does not centralize Y⁺"));
        }
        self.xp = xp;
        self.xm = &(h.b_inv() * &self.xm) * h.a();
        self.g = h.compose(&self.g);
        self.stage_g = h.compose(&self.stage_g);
        Ok(())
    }

    fn finish(&mut self, stage: &'static str) {
        let done = std::mem::replace(&mut self.stage_g, GroupElement::identity(self.m, self.n));
        if let Some(trace) = &mut self.trace {
            trace.push(TraceStage {
                stage,
                a: done.a().clone(),
                b: done.b().clone(),
                y: OddElement::new(self.xp.clone(), self.xm.clone()).expect("shapes preserved"),
            });
        }
    }

    fn is_end(&self, i: usize) -> bool {
        self.end.contains(&i)
    }

    fn is_start(&self, j: usize) -> bool {
        self.start.contains(&j)
    }

    fn block_of_row_end(&self, i: usize) -> Option<usize> {
        self.end.iter().position(|&e| e == i)
    }

    fn block_of_col_start(&self, j: usize) -> Option<usize> {
        self.start.iter().position(|&s| s == j)
    }

    /// Clears the non-end rows of `Y⁻₁₂` with `A₁₂`, using `J·A₁₂`.
    fn clean_y12(&mut self, stage: &'static str) -> Result<(), CanonError> {
        let y12 = self.y12();
        let mut a12 = Matrix::zeros(self.r, self.m - self.r);
        for i in (0..self.r).filter(|&i| !self.is_end(i)) {
            for c in 0..y12.cols() {
                a12[(i + 1, c)] = -&y12[(i, c)];
            }
        }
        if !a12.is_zero() {
            let h = self.step().a12(a12).build();
            self.apply(stage, h)?;
        }
        Ok(())
    }

    /// Clears the non-start columns of `Y⁻₂₁` with `B₂₁`, using `B₂₁·J`.
    fn clean_y21(&mut self, stage: &'static str) -> Result<(), CanonError> {
        let y21 = self.y21();
        let mut b21 = Matrix::zeros(self.n - self.r, self.r);
        for j in (0..self.r).filter(|&j| !self.is_start(j)) {
            for q in 0..y21.rows() {
                b21[(q, j - 1)] = y21[(q, j)].clone();
            }
        }
        if !b21.is_zero() {
            let h = self.step().b21(b21).build();
            self.apply(stage, h)?;
        }
        Ok(())
    }

    /// Row positions of the C columns of `Y⁻₁₂`, or a failure if it is not
    /// of the form `(C | 0)` with increasing pivots.
    fn c_form(&self, stage: &'static str) -> Result<Vec<usize>, CanonError> {
        let y12 = self.y12();
        let mut rows = Vec::new();
        for c in 0..y12.cols() {
            let col = y12.column(c);
            match first_nonzero(col.iter().cloned()) {
                None => {}
                Some(i) if rows.len() == c && col[i].is_one() && col.iter().filter(|x| !x.is_zero()).count() == 1 => {
                    if !self.is_end(i) || rows.last().is_some_and(|&p| p >= i) {
                        return Err(fail(stage, "Y⁻₁₂ pivots are not increasing block ends"));
                    }
                    rows.push(i);
                }
                Some(_) => return Err(fail(stage, "Y⁻₁₂ is not of the form (C | 0)")),
            }
        }
        Ok(rows)
    }

    /// Column positions of the R rows of `Y⁻₂₁`, as for [`Run::c_form`].
    fn r_form(&self, stage: &'static str) -> Result<Vec<usize>, CanonError> {
        let y21 = self.y21();
        let mut cols = Vec::new();
        for q in 0..y21.rows() {
            let row = y21.row(q);
            match first_nonzero(row.iter().cloned()) {
                None => {}
                Some(j) if cols.len() == q && row[j].is_one() && row.iter().filter(|x| !x.is_zero()).count() == 1 => {
                    if !self.is_start(j) || cols.last().is_some_and(|&p| p >= j) {
                        return Err(fail(stage, "Y⁻₂₁ pivots are not increasing block starts"));
                    }
                    cols.push(j);
                }
                Some(_) => return Err(fail(stage, "Y⁻₂₁ is not of the form (R; 0)")),
            }
        }
        Ok(cols)
    }

    /// Sorts the columns of `Y⁻₁₂` by pivot row with a permutation `A₂₂`,
    /// zero columns last.
    fn sort_c_columns(&mut self, stage: &'static str) -> Result<(), CanonError> {
        let y12 = self.y12();
        let mut keyed: Vec<(usize, usize)> = (0..y12.cols())
            .map(|c| (first_nonzero(y12.column(c)).unwrap_or(usize::MAX), c))
            .collect();
        keyed.sort();
        let order: Vec<usize> = keyed.into_iter().map(|(_, c)| c).collect();
        if order.iter().enumerate().any(|(i, &c)| i != c) {
            let p = Matrix::permutation(&order);
            let h = self.step().a22(p.clone(), p.transpose()).build();
            self.apply(stage, h)?;
        }
        Ok(())
    }

    /// Sorts the rows of `Y⁻₂₁` by pivot column with a permutation `B₂₂`,
    /// zero rows last.
    fn sort_r_rows(&mut self, stage: &'static str) -> Result<(), CanonError> {
        let y21 = self.y21();
        let mut keyed: Vec<(usize, usize)> = (0..y21.rows())
            .map(|q| (first_nonzero(y21.row(q).iter().cloned()).unwrap_or(usize::MAX), q))
            .collect();
        keyed.sort();
        let order: Vec<usize> = keyed.into_iter().map(|(_, q)| q).collect();
        if order.iter().enumerate().any(|(i, &q)| i != q) {
            // B₂₂⁻¹ = Pᵗ lists the rows in `order`.
            let p = Matrix::permutation(&order);
            let h = self.step().b22(p.clone(), p.transpose()).build();
            self.apply(stage, h)?;
        }
        Ok(())
    }

    /// Reorders Jordan blocks within each run of equal sizes so that blocks
    /// with a smaller `key` come first, keeping ties in place.
    fn permute_blocks(&mut self, stage: &'static str, key: impl Fn(usize) -> u8) -> Result<(), CanonError> {
        let t = self.partition.len();
        let mut order: Vec<usize> = (0..t).collect();
        let mut lo = 0;
        while lo < t {
            let hi = (lo..t).find(|&j| self.partition[j] != self.partition[lo]).unwrap_or(t);
            order[lo..hi].sort_by_key(|&j| key(j));
            lo = hi;
        }
        if order.iter().enumerate().any(|(i, &j)| i != j) {
            let (p, p_inv) = block_permutation(&self.partition, &order);
            let h = self.step().a11(p, p_inv).build();
            self.apply(stage, h)?;
        }
        Ok(())
    }

    fn stage_rank(&mut self) -> Result<(), CanonError> {
        const S: &str = "rank_normal_form";
        let rnf = self.xp.rank_normal_form();
        self.r = rnf.rank;
        self.apply(S, GroupElement::from_parts(rnf.a, rnf.a_inv, rnf.b, rnf.b_inv))?;
        ensure(self.xp == Matrix::partial_identity(self.m, self.n, self.r), S, "Y⁺ is not diag(I_r, 0)")?;
        self.finish(S);
        self.centralizing = true;
        Ok(())
    }

    fn stage_jordan(&mut self) -> Result<(), CanonError> {
        const S: &str = "jordan";
        let y11 = self.xm.block(0, 0, self.r, self.r);
        let nj = y11.nilpotent_jordan().map_err(|e| fail(S, format!("Y⁻₁₁: {e}")))?;
        let h = self.step().a11(nj.basis, nj.basis_inv).build();
        self.apply(S, h)?;
        self.partition = nj.partition;
        let mut acc = 0;
        for &k in &self.partition {
            self.start.push(acc);
            acc += k;
            self.end.push(acc - 1);
        }
        ensure(self.xm.block(0, 0, self.r, self.r) == jordan_matrix(&self.partition), S, "Y⁻₁₁ is not J")?;
        self.finish(S);
        Ok(())
    }

    fn stage_clean(&mut self) -> Result<(), CanonError> {
        const S: &str = "clean_pivot_blocks";
        self.clean_y12(S)?;
        self.clean_y21(S)?;
        let (y12, y21) = (self.y12(), self.y21());
        let rows_ok = (0..self.r).filter(|&i| !self.is_end(i)).all(|i| y12.row(i).iter().all(Rational::is_zero));
        let cols_ok = (0..self.r).filter(|&j| !self.is_start(j)).all(|j| y21.column(j).iter().all(Rational::is_zero));
        ensure(rows_ok && cols_ok, S, "stray entries off the pivot rows or columns")?;
        self.finish(S);
        Ok(())
    }

    fn stage_echelon(&mut self) -> Result<(), CanonError> {
        const S: &str = "echelon";
        let ce = self.y12().column_echelon();
        let h = self.step().a22(ce.transform, ce.transform_inv).build();
        self.apply(S, h)?;
        // Row echelon of Y⁻₂₁ = transpose of the column echelon of its transpose.
        let re = self.y21().transpose().column_echelon();
        let h = self.step().b22(re.transform_inv.transpose(), re.transform.transpose()).build();
        self.apply(S, h)?;
        self.finish(S);
        Ok(())
    }

    fn stage_reduce_c(&mut self) -> Result<(), CanonError> {
        const S: &str = "reduce_c";
        for c in 0..self.m - self.r {
            let Some(pivot) = first_nonzero(self.y12().column(c)) else { continue };
            let i = self.block_of_row_end(pivot).ok_or_else(|| fail(S, "pivot off the block ends"))?;
            for j in i + 1..self.partition.len() {
                let beta = self.xm[(self.end[j], self.r + c)].clone();
                if beta.is_zero() {
                    continue;
                }
                let l = build_l0(&self.partition, j, i, &beta);
                let l_inv = build_l0(&self.partition, j, i, &-&beta);
                let h = self.step().a11(l, l_inv).build();
                self.apply(S, h)?;
                self.clean_y21(S)?;
            }
        }
        let ends = self.end.clone();
        let y12 = self.y12();
        let has_c = |j: usize| y12.row(ends[j]).iter().any(|x| !x.is_zero());
        self.permute_blocks(S, |j| u8::from(!has_c(j)))?;
        self.sort_c_columns(S)?;
        self.c_form(S)?;
        self.finish(S);
        Ok(())
    }

    fn stage_reduce_r(&mut self) -> Result<(), CanonError> {
        const S: &str = "reduce_r";
        let re = self.y21().transpose().column_echelon();
        let h = self.step().b22(re.transform_inv.transpose(), re.transform.transpose()).build();
        self.apply(S, h)?;

        let t = self.partition.len();
        for q in 0..self.n - self.r {
            let Some(pivot) = first_nonzero(self.xm.row(self.r + q)[..self.r].iter().cloned()) else { continue };
            let j = self.block_of_col_start(pivot).ok_or_else(|| fail(S, "pivot off the block starts"))?;
            for i in j + 1..t {
                let beta = self.xm[(self.r + q, self.start[i])].clone();
                if beta.is_zero() {
                    continue;
                }
                let c_cols = self.c_form(S)?;
                let u = build_u0(&self.partition, j, i, &-&beta);
                let u_inv = build_u0(&self.partition, j, i, &beta);
                let h = self.step().a11(u, u_inv).build();
                self.apply(S, h)?;
                if self.partition[i] == self.partition[j] {
                    // Row f(j) of Y⁻₁₂ picked up β times row f(i).
                    let col_of = |b: usize| c_cols.iter().position(|&row| row == self.end[b]);
                    if let Some(pi) = col_of(i) {
                        let pj = col_of(j).ok_or_else(|| fail(S, "C pivots are not first within a size class"))?;
                        let mut a22 = Matrix::identity(self.m - self.r);
                        let mut a22_inv = Matrix::identity(self.m - self.r);
                        a22[(pj, pi)] = -&beta;
                        a22_inv[(pj, pi)] = beta.clone();
                        let h = self.step().a22(a22, a22_inv).build();
                        self.apply(S, h)?;
                    }
                } else {
                    self.clean_y12(S)?;
                }
            }
        }
        self.r_form(S)?;

        let (starts, ends) = (self.start.clone(), self.end.clone());
        let (y12, y21) = (self.y12(), self.y21());
        let has_c = |j: usize| y12.row(ends[j]).iter().any(|x| !x.is_zero());
        let has_r = |j: usize| y21.column(starts[j]).iter().any(|x| !x.is_zero());
        self.permute_blocks(S, |j| 2 * u8::from(!has_c(j)) + u8::from(!has_r(j)))?;
        self.sort_c_columns(S)?;
        self.sort_r_rows(S)?;
        self.c_form(S)?;
        self.r_form(S)?;
        self.finish(S);
        Ok(())
    }

    fn params(&self, s: usize) -> Result<OrbitParams, CanonError> {
        const S: &str = "params";
        Ok(OrbitParams {
            r: self.r,
            partition: self.partition.clone(),
            c_pivots: self.c_form(S)?.into_iter().map(|i| i + 1).collect(),
            r_pivots: self.r_form(S)?.into_iter().map(|j| j + 1).collect(),
            s,
        })
    }

    fn stage_xi22(&mut self, r1: usize, r2: usize) -> Result<usize, CanonError> {
        const S: &str = "xi22";
        let (h22, w22) = (self.n - self.r - r2, self.m - self.r - r1);
        let xi = self.y22().block(r2, r1, h22, w22);
        let rnf = xi.rank_normal_form();
        let h = self
            .step()
            .a22(diag2(r1, &rnf.b), diag2(r1, &rnf.b_inv))
            .b22(diag2(r2, &rnf.a), diag2(r2, &rnf.a_inv))
            .build();
        self.apply(S, h)?;
        let xi = self.y22().block(r2, r1, h22, w22);
        ensure(xi == Matrix::partial_identity(h22, w22, rnf.rank), S, "ξ₂₂ is not diag(I_s, 0)")?;
        self.finish(S);
        Ok(rnf.rank)
    }

    /// `A₁₂` rows at the R pivot columns cancel the first `r₂` rows of `Y⁻₂₂`.
    fn stage_xi_rows(&mut self, r_cols: &[usize]) -> Result<(), CanonError> {
        const S: &str = "clear_xi_rows";
        let y22 = self.y22();
        let mut a12 = Matrix::zeros(self.r, self.m - self.r);
        for (q, &j) in r_cols.iter().enumerate() {
            for c in 0..y22.cols() {
                a12[(j, c)] = -&y22[(q, c)];
            }
        }
        if !a12.is_zero() {
            let h = self.step().a12(a12).build();
            self.apply(S, h)?;
        }
        let y22 = self.y22();
        ensure((0..r_cols.len()).all(|q| y22.row(q).iter().all(Rational::is_zero)), S, "ξ₁₁, ξ₁₂ not cleared")?;
        self.finish(S);
        Ok(())
    }

    /// `B₂₁` columns at the C pivot rows cancel the first `r₁` columns of `Y⁻₂₂`.
    fn stage_xi_cols(&mut self, c_rows: &[usize]) -> Result<(), CanonError> {
        const S: &str = "clear_xi_cols";
        let y22 = self.y22();
        let mut b21 = Matrix::zeros(self.n - self.r, self.r);
        for (p, &i) in c_rows.iter().enumerate() {
            for q in 0..y22.rows() {
                b21[(q, i)] = y22[(q, p)].clone();
            }
        }
        if !b21.is_zero() {
            let h = self.step().b21(b21).build();
            self.apply(S, h)?;
        }
        let y22 = self.y22();
        ensure((0..c_rows.len()).all(|p| y22.column(p).iter().all(Rational::is_zero)), S, "ξ₂₁ not cleared")?;
        self.finish(S);
        Ok(())
    }
}

fn run(x: &OddElement, traced: bool) -> Result<CanonicalResult, CanonError> {
    if !in_nilcone_gl(x) {
        return Err(CanonError::NotInCone);
    }
    let (m, n) = x.dims();
    let mut run = Run {
        m,
        n,
        r: 0,
        xp: x.xplus().clone(),
        xm: x.xminus().clone(),
        g: GroupElement::identity(m, n),
        stage_g: GroupElement::identity(m, n),
        centralizing: false,
        partition: Vec::new(),
        start: Vec::new(),
        end: Vec::new(),
        trace: traced.then(Vec::new),
    };
    run.stage_rank()?;
    run.stage_jordan()?;
    run.stage_clean()?;
    run.stage_echelon()?;
    run.stage_reduce_c()?;
    run.stage_reduce_r()?;
    let c_rows = run.c_form("reduce_r")?;
    let r_cols = run.r_form("reduce_r")?;
    let s = run.stage_xi22(c_rows.len(), r_cols.len())?;
    run.stage_xi_rows(&r_cols)?;
    run.stage_xi_cols(&c_rows)?;

    const S: &str = "final";
    let params = run.params(s)?;
    ensure(params.is_normalized(), S, "pivot placement is not normalized")?;
    let y = OddElement::new(run.xp, run.xm).expect("shapes preserved");
    let rep = rep_matrix(&params, m, n).map_err(|e| fail(S, e.to_string()))?;
    ensure(rep == y, S, "result differs from the representative")?;
    ensure(is_canonical(&y).as_ref() == Some(&params), S, "representative not recognized")?;
    ensure(act(&run.g, x).ok().as_ref() == Some(&y), S, "accumulated element does not map input to output")?;
    Ok(CanonicalResult {
        g: run.g,
        params,
        y,
        trace: run.trace,
    })
}
