//! Complements `M` with `gl(M|N) = g ⊕ M` and `[g, M] ⊆ M`, in the block
//! coordinates of the standard table of realizations.
//!
//! Each basis vector carries the name of the block coordinate it turns on,
//! e.g. `b[0,1]` for the symmetric pair of entries of the `b` block.

use serde::Serialize;

use crate::exact_linalg::{Matrix, Rational, Span};

use super::realization::{even_membership, odd_membership};
use super::{superbracket, AlgebraKind, EvenElement, Homogeneous, OddElement, SuperError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeled<T> {
    pub label: String,
    pub element: T,
}

fn labeled<T>(label: impl Into<String>, element: T) -> Labeled<T> {
    Labeled {
        label: label.into(),
        element,
    }
}

/// Bases of `M₀`, `M₁` and of `g₀`, `g₁` inside the ambient algebra.
#[derive(Debug, Clone)]
pub struct ComplementBasis {
    pub kind: AlgebraKind,
    pub even_basis: Vec<Labeled<EvenElement>>,
    pub odd_basis: Vec<Labeled<OddElement>>,
    pub g_even_basis: Vec<Labeled<EvenElement>>,
    pub g_odd_basis: Vec<Labeled<OddElement>>,
}

fn sparse(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Matrix {
    let mut x = Matrix::zeros(rows, cols);
    for &(i, j, v) in entries {
        x[(i, j)] += Rational::from_int(v);
    }
    x
}

fn even(a: Matrix, b: Matrix) -> EvenElement {
    EvenElement { a, b }
}

fn odd(p: Matrix, q: Matrix) -> OddElement {
    OddElement::new(p, q).expect("consistent block shapes")
}

fn all_units_odd(m: usize, n: usize) -> Vec<Labeled<OddElement>> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            out.push(labeled(format!("X+[{i},{j}]"), odd(sparse(m, n, &[(i, j, 1)]), Matrix::zeros(n, m))));
        }
    }
    for i in 0..n {
        for j in 0..m {
            out.push(labeled(format!("X-[{i},{j}]"), odd(Matrix::zeros(m, n), sparse(n, m, &[(i, j, 1)]))));
        }
    }
    out
}

fn sl_basis(m: usize, n: usize) -> ComplementBasis {
    let mut g_even = Vec::new();
    for (size, is_a) in [(m, true), (n, false)] {
        let place = |x: Matrix| if is_a { even(x, Matrix::zeros(n, n)) } else { even(Matrix::zeros(m, m), x) };
        let name = if is_a { "A" } else { "B" };
        for i in 0..size {
            for j in 0..size {
                if i != j {
                    g_even.push(labeled(format!("{name}[{i},{j}]"), place(sparse(size, size, &[(i, j, 1)]))));
                }
            }
        }
        for i in 1..size {
            let h = sparse(size, size, &[(i - 1, i - 1, 1), (i, i, -1)]);
            g_even.push(labeled(format!("{name}[{},{}]-{name}[{i},{i}]", i - 1, i - 1), place(h)));
        }
    }
    g_even.push(labeled("A[0,0]+B[0,0]", even(sparse(m, m, &[(0, 0, 1)]), sparse(n, n, &[(0, 0, 1)]))));

    // The identity is central and has supertrace m - n, so it spans an
    // ad-stable complement whenever m != n. For m = n no ad-stable
    // complement exists; the table's diag(I, -I) is kept there and fails
    // the bracket check.
    let complement = if m != n {
        labeled("k·I", even(Matrix::identity(m), Matrix::identity(n)))
    } else {
        labeled("k·diag(I,-I)", even(Matrix::identity(m), -&Matrix::identity(n)))
    };
    ComplementBasis {
        kind: AlgebraKind::Sl { m, n },
        even_basis: vec![complement],
        odd_basis: Vec::new(),
        g_even_basis: g_even,
        g_odd_basis: all_units_odd(m, n),
    }
}

fn q_basis(n: usize) -> ComplementBasis {
    let mut b = ComplementBasis {
        kind: AlgebraKind::Q { n },
        even_basis: Vec::new(),
        odd_basis: Vec::new(),
        g_even_basis: Vec::new(),
        g_odd_basis: Vec::new(),
    };
    for i in 0..n {
        for j in 0..n {
            let e = sparse(n, n, &[(i, j, 1)]);
            b.g_even_basis.push(labeled(format!("a[{i},{j}]"), even(e.clone(), e.clone())));
            b.even_basis.push(labeled(format!("a[{i},{j}]"), even(e.clone(), -&e)));
            b.g_odd_basis.push(labeled(format!("b[{i},{j}]"), odd(e.clone(), e.clone())));
            b.odd_basis.push(labeled(format!("b[{i},{j}]"), odd(e.clone(), -&e)));
        }
    }
    b
}

/// Basis of matrices with `x[j,i] = sign · x[i,j]`.
fn signed_symmetric(n: usize, sign: i64) -> Vec<(usize, usize, Matrix)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && sign < 0 {
                continue;
            }
            let entries = if i == j { vec![(i, i, 1)] } else { vec![(i, j, 1), (j, i, sign)] };
            out.push((i, j, sparse(n, n, &entries)));
        }
    }
    out
}

fn p_basis(n: usize) -> ComplementBasis {
    let mut b = ComplementBasis {
        kind: AlgebraKind::P { n },
        even_basis: Vec::new(),
        odd_basis: Vec::new(),
        g_even_basis: Vec::new(),
        g_odd_basis: Vec::new(),
    };
    let zero = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let e = sparse(n, n, &[(i, j, 1)]);
            let et = e.transpose();
            b.g_even_basis.push(labeled(format!("a[{i},{j}]"), even(e.clone(), -&et)));
            b.even_basis.push(labeled(format!("a[{i},{j}]"), even(e, et)));
        }
    }
    for (i, j, s) in signed_symmetric(n, 1) {
        b.g_odd_basis.push(labeled(format!("b[{i},{j}]"), odd(s.clone(), zero.clone())));
        b.odd_basis.push(labeled(format!("c[{i},{j}]"), odd(zero.clone(), s)));
    }
    for (i, j, k) in signed_symmetric(n, -1) {
        b.g_odd_basis.push(labeled(format!("c[{i},{j}]"), odd(zero.clone(), k.clone())));
        b.odd_basis.push(labeled(format!("b[{i},{j}]"), odd(k, zero.clone())));
    }
    b
}

/// Index layout of `gl(2m+off | 2n)` for the orthosymplectic kinds.
#[derive(Debug, Clone, Copy)]
struct OspLayout {
    m: usize,
    n: usize,
    off: usize,
}

impl OspLayout {
    fn of(kind: &AlgebraKind) -> Option<Self> {
        match *kind {
            AlgebraKind::OspOdd { m, n } => Some(OspLayout { m, n, off: 1 }),
            AlgebraKind::OspEven { m, n } => Some(OspLayout { m, n, off: 0 }),
            _ => None,
        }
    }

    fn big(&self) -> usize {
        2 * self.m + self.off
    }

    /// Swaps the two `m`-blocks of the orthogonal coordinates.
    fn sigma(&self, r: usize) -> usize {
        let (m, off) = (self.m, self.off);
        if r < off {
            r
        } else if r < off + m {
            r + m
        } else {
            r - m
        }
    }

    /// Even orthogonal block: `s = 1` gives the complement
    /// `[[δ, uᵗ, vᵗ], [v, a, b], [u, c, aᵗ]]` with `b, c` symmetric,
    /// `s = -1` gives `so` itself.
    fn so_part(&self, s: i64) -> Vec<(String, Matrix)> {
        let (m, off, d) = (self.m, self.off, self.big());
        let mut out = Vec::new();
        if off == 1 && s > 0 {
            out.push(("δ".to_string(), sparse(d, d, &[(0, 0, 1)])));
        }
        if off == 1 {
            for i in 0..m {
                out.push((format!("u[{i}]"), sparse(d, d, &[(1 + m + i, 0, 1), (0, 1 + i, s)])));
                out.push((format!("v[{i}]"), sparse(d, d, &[(1 + i, 0, 1), (0, 1 + m + i, s)])));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let e = [(off + i, off + j, 1), (off + m + j, off + m + i, s)];
                out.push((format!("a[{i},{j}]"), sparse(d, d, &e)));
            }
        }
        for (name, row0, col0) in [("b", off, off + m), ("c", off + m, off)] {
            for i in 0..m {
                for j in i..m {
                    if i == j && s < 0 {
                        continue;
                    }
                    let mut e = vec![(row0 + i, col0 + j, 1)];
                    if i != j {
                        e.push((row0 + j, col0 + i, s));
                    }
                    out.push((format!("{name}[{i},{j}]"), sparse(d, d, &e)));
                }
            }
        }
        out
    }

    /// Even symplectic block: `s = 1` gives `[[d, e], [f, dᵗ]]` with `e, f`
    /// skew, `s = -1` gives `sp` itself.
    fn sp_part(&self, s: i64) -> Vec<(String, Matrix)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                out.push((format!("d[{i},{j}]"), sparse(2 * n, 2 * n, &[(i, j, 1), (n + j, n + i, s)])));
            }
        }
        for (name, row0, col0) in [("e", 0, n), ("f", n, 0)] {
            for i in 0..n {
                for j in i..n {
                    if i == j && s > 0 {
                        continue;
                    }
                    let mut e = vec![(row0 + i, col0 + j, 1)];
                    if i != j {
                        e.push((row0 + j, col0 + i, -s));
                    }
                    out.push((format!("{name}[{i},{j}]"), sparse(2 * n, 2 * n, &e)));
                }
            }
        }
        out
    }

    /// Odd part: `X⁺ = [[x, x₁], [y, y₁], [z, z₁]]` free and
    /// `X⁻ = s · [[x₁ᵗ, z₁ᵗ, y₁ᵗ], [-xᵗ, -zᵗ, -yᵗ]]`.
    fn odd_part(&self, s: i64) -> Vec<(String, OddElement)> {
        let (m, n, off, d) = (self.m, self.n, self.off, self.big());
        let mut out = Vec::new();
        for row in 0..d {
            let (sym, i) = if row < off {
                ("x", None)
            } else if row < off + m {
                ("y", Some(row - off))
            } else {
                ("z", Some(row - off - m))
            };
            for col in 0..2 * n {
                let (k, sub) = if col < n { (col, "") } else { (col - n, "1") };
                let label = match i {
                    None => format!("{sym}{sub}[{k}]"),
                    Some(i) => format!("{sym}{sub}[{i},{k}]"),
                };
                let q = if col < n {
                    sparse(2 * n, d, &[(n + k, self.sigma(row), -s)])
                } else {
                    sparse(2 * n, d, &[(k, self.sigma(row), s)])
                };
                out.push((label, odd(sparse(d, 2 * n, &[(row, col, 1)]), q)));
            }
        }
        out
    }

    fn even_elements(&self, s: i64) -> Vec<Labeled<EvenElement>> {
        let (d, n2) = (self.big(), 2 * self.n);
        let so = self.so_part(s).into_iter().map(|(l, a)| labeled(l, even(a, Matrix::zeros(n2, n2))));
        let sp = self.sp_part(s).into_iter().map(|(l, b)| labeled(l, even(Matrix::zeros(d, d), b)));
        so.chain(sp).collect()
    }
}

fn osp_basis(kind: AlgebraKind, layout: OspLayout) -> ComplementBasis {
    let odd_of = |s| layout.odd_part(s).into_iter().map(|(l, x)| labeled(l, x)).collect();
    ComplementBasis {
        kind,
        even_basis: layout.even_elements(1),
        odd_basis: odd_of(1),
        g_even_basis: layout.even_elements(-1),
        g_odd_basis: odd_of(-1),
    }
}

/// The complement of `kind` in its ambient `gl`. Not defined for `gl` itself.
pub fn complement_basis(kind: &AlgebraKind) -> Result<ComplementBasis, SuperError> {
    Ok(match *kind {
        AlgebraKind::Gl { .. } => return Err(SuperError::NoComplement(kind.to_string())),
        AlgebraKind::Sl { m, n } => sl_basis(m, n),
        AlgebraKind::Q { n } => q_basis(n),
        AlgebraKind::P { n } => p_basis(n),
        AlgebraKind::OspOdd { .. } | AlgebraKind::OspEven { .. } => {
            osp_basis(*kind, OspLayout::of(kind).expect("osp kind"))
        }
    })
}

impl ComplementBasis {
    /// Splits `x = gpart + mpart` by solving in the combined basis of
    /// `g₁ ⊕ M₁`.
    pub fn decompose(&self, x: &OddElement) -> Result<(OddElement, OddElement), SuperError> {
        let (m, n) = self.kind.ambient();
        if x.dims() != (m, n) {
            return Err(SuperError::SizeMismatch {
                expected: (m, n),
                found: x.dims(),
            });
        }
        let cols: Vec<Vec<Rational>> = self
            .g_odd_basis
            .iter()
            .chain(&self.odd_basis)
            .map(|b| b.element.coords())
            .collect();
        let dim = 2 * m * n;
        let system = Matrix::from_fn(dim, cols.len(), |i, j| cols[j][i].clone());
        let coeffs = system
            .solve(&x.coords())
            .ok_or_else(|| SuperError::Shape("element outside g₁ ⊕ M₁".into()))?;
        let (cg, cm) = coeffs.split_at(self.g_odd_basis.len());
        let combine = |basis: &[Labeled<OddElement>], c: &[Rational]| {
            basis
                .iter()
                .zip(c)
                .filter(|(_, c)| !c.is_zero())
                .fold(OddElement::zero(m, n), |acc, (b, c)| acc.add(&b.element.scale(c)))
        };
        Ok((combine(&self.g_odd_basis, cg), combine(&self.odd_basis, cm)))
    }
}

/// `x = gpart + mpart` with `gpart ∈ g₁` and `mpart ∈ M₁`. For `gl` the
/// complement is zero.
pub fn decompose(kind: &AlgebraKind, x: &OddElement) -> Result<(OddElement, OddElement), SuperError> {
    if kind.is_gl() {
        let (m, n) = kind.ambient();
        if x.dims() != (m, n) {
            return Err(SuperError::SizeMismatch {
                expected: (m, n),
                found: x.dims(),
            });
        }
        return Ok((x.clone(), OddElement::zero(m, n)));
    }
    complement_basis(kind)?.decompose(x)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionCheck {
    pub g_even: usize,
    pub m_even: usize,
    pub ambient_even: usize,
    pub g_odd: usize,
    pub m_odd: usize,
    pub ambient_odd: usize,
    pub ok: bool,
}

/// A basis pair `(u ∈ g, v ∈ M)` whose bracket leaves `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketFailure {
    pub g_element: String,
    pub m_element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockRelationFailure {
    pub g_element: String,
    pub m_element: String,
    pub relation: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockRelationReport {
    pub brackets_checked: usize,
    pub failures: Vec<BlockRelationFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementReport {
    pub kind: AlgebraKind,
    pub dimensions: DimensionCheck,
    /// The union of the `g` and `M` bases is linearly independent in each parity.
    pub independent: bool,
    /// Every `g` basis vector passes the membership predicate of `kind`.
    pub g_membership: bool,
    pub pairs_checked: usize,
    pub bracket_failures: Vec<BracketFailure>,
    pub block_relations: Option<BlockRelationReport>,
    pub passed: bool,
}

fn is_independent(vectors: &[Vec<Rational>], ambient: usize) -> bool {
    let mut span = Span::new(ambient);
    vectors.iter().all(|v| span.insert(v))
}

/// Relations satisfied by the even part of `[g₁, M₁]` in the osp case,
/// written in the `3×3` (odd) or `2×2` (even) block grid of the orthogonal
/// part and the `2×2` grid of the symplectic part.
fn osp_block_relations(layout: &OspLayout, e: &EvenElement) -> Vec<(&'static str, bool)> {
    let (m, n, off) = (layout.m, layout.n, layout.off);
    let ablk = |r: usize, c: usize| {
        let start = |k: usize| [0, off, off + m][k];
        let size = |k: usize| [off, m, m][k];
        e.a.block(start(r), start(c), size(r), size(c))
    };
    let bblk = |r: usize, c: usize| e.b.block(r * n, c * n, n, n);
    let mut out = vec![
        ("A33 = A22ᵗ", ablk(2, 2) == ablk(1, 1).transpose()),
        ("A23 symmetric", ablk(1, 2).is_symmetric()),
        ("A32 symmetric", ablk(2, 1).is_symmetric()),
        ("B22 = B11ᵗ", bblk(1, 1) == bblk(0, 0).transpose()),
        ("B12 skew", bblk(0, 1).is_skew_symmetric()),
        ("B21 skew", bblk(1, 0).is_skew_symmetric()),
    ];
    if off == 1 {
        out.push(("A12 = A31ᵗ", ablk(0, 1) == ablk(2, 0).transpose()));
        out.push(("A13 = A21ᵗ", ablk(0, 2) == ablk(1, 0).transpose()));
    }
    out
}

/// Exact check of the direct-sum and stability hypotheses for `kind`.
pub fn verify_complement(kind: &AlgebraKind) -> Result<ComplementReport, SuperError> {
    let basis = complement_basis(kind)?;
    Ok(verify_basis(&basis))
}

/// As [`verify_complement`], for an explicitly supplied basis.
pub fn verify_basis(basis: &ComplementBasis) -> ComplementReport {
    let kind = basis.kind;
    let (mm, nn) = kind.ambient();
    let (ambient_even, ambient_odd) = (mm * mm + nn * nn, 2 * mm * nn);
    let dimensions = DimensionCheck {
        g_even: basis.g_even_basis.len(),
        m_even: basis.even_basis.len(),
        ambient_even,
        g_odd: basis.g_odd_basis.len(),
        m_odd: basis.odd_basis.len(),
        ambient_odd,
        ok: basis.g_even_basis.len() + basis.even_basis.len() == ambient_even
            && basis.g_odd_basis.len() + basis.odd_basis.len() == ambient_odd,
    };

    let even_coords: Vec<Vec<Rational>> = basis
        .g_even_basis
        .iter()
        .chain(&basis.even_basis)
        .map(|b| b.element.coords())
        .collect();
    let odd_coords: Vec<Vec<Rational>> = basis
        .g_odd_basis
        .iter()
        .chain(&basis.odd_basis)
        .map(|b| b.element.coords())
        .collect();
    let independent = is_independent(&even_coords, ambient_even) && is_independent(&odd_coords, ambient_odd);

    let g_membership = basis
        .g_even_basis
        .iter()
        .all(|b| even_membership(&kind, &b.element).unwrap_or(false))
        && basis
            .g_odd_basis
            .iter()
            .all(|b| odd_membership(&kind, &b.element).unwrap_or(false));

    let m_even_span = Span::from_vectors(ambient_even, basis.even_basis.iter().map(|b| b.element.coords()).collect::<Vec<_>>().iter().map(Vec::as_slice));
    let m_odd_span = Span::from_vectors(ambient_odd, basis.odd_basis.iter().map(|b| b.element.coords()).collect::<Vec<_>>().iter().map(Vec::as_slice));

    let g_all: Vec<(String, Homogeneous)> = basis
        .g_even_basis
        .iter()
        .map(|b| (format!("g0:{}", b.label), Homogeneous::Even(b.element.clone())))
        .chain(basis.g_odd_basis.iter().map(|b| (format!("g1:{}", b.label), Homogeneous::Odd(b.element.clone()))))
        .collect();
    let m_all: Vec<(String, Homogeneous)> = basis
        .even_basis
        .iter()
        .map(|b| (format!("M0:{}", b.label), Homogeneous::Even(b.element.clone())))
        .chain(basis.odd_basis.iter().map(|b| (format!("M1:{}", b.label), Homogeneous::Odd(b.element.clone()))))
        .collect();

    let mut pairs_checked = 0;
    let mut bracket_failures = Vec::new();
    for (gl, u) in &g_all {
        for (ml, v) in &m_all {
            pairs_checked += 1;
            let w = superbracket(u, v).expect("same ambient");
            if w.is_zero() {
                continue;
            }
            let span = if w.is_odd() { &m_odd_span } else { &m_even_span };
            if !span.contains(&w.coords()) {
                bracket_failures.push(BracketFailure {
                    g_element: gl.clone(),
                    m_element: ml.clone(),
                });
            }
        }
    }

    let block_relations = OspLayout::of(&kind).map(|layout| {
        let mut report = BlockRelationReport {
            brackets_checked: 0,
            failures: Vec::new(),
        };
        for x in &basis.g_odd_basis {
            for y in &basis.odd_basis {
                report.brackets_checked += 1;
                let e = super::bracket_odd(&x.element, &y.element).expect("same ambient");
                for (relation, ok) in osp_block_relations(&layout, &e) {
                    if !ok {
                        report.failures.push(BlockRelationFailure {
                            g_element: x.label.clone(),
                            m_element: y.label.clone(),
                            relation,
                        });
                    }
                }
            }
        }
        report
    });

    let passed = dimensions.ok
        && independent
        && g_membership
        && bracket_failures.is_empty()
        && block_relations.as_ref().map_or(true, |r| r.failures.is_empty());
    ComplementReport {
        kind,
        dimensions,
        independent,
        g_membership,
        pairs_checked,
        bracket_failures,
        block_relations,
        passed,
    }
}
