use serde::{Deserialize, Serialize};

use crate::exact_linalg::{Matrix, Rational};

use super::SuperError;

/// An odd element `[[0, X⁺], [X⁻, 0]]` of `gl(m|n)`: `xplus` is `m×n` and
/// `xminus` is `n×m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOdd")]
pub struct OddElement {
    m: usize,
    n: usize,
    xplus: Matrix,
    xminus: Matrix,
}

#[derive(Deserialize)]
struct RawOdd {
    m: usize,
    n: usize,
    xplus: Matrix,
    xminus: Matrix,
}

/// Deserialized empty matrices lose their column count; restore it.
fn reshape_empty(x: Matrix, rows: usize, cols: usize) -> Matrix {
    if x.rows() == 0 && rows == 0 {
        Matrix::zeros(0, cols)
    } else {
        x
    }
}

impl TryFrom<RawOdd> for OddElement {
    type Error = SuperError;
    fn try_from(raw: RawOdd) -> Result<Self, SuperError> {
        let xplus = reshape_empty(raw.xplus, raw.m, raw.n);
        let xminus = reshape_empty(raw.xminus, raw.n, raw.m);
        OddElement::new(xplus, xminus).and_then(|x| {
            if (x.m, x.n) == (raw.m, raw.n) {
                Ok(x)
            } else {
                Err(SuperError::Shape(format!(
                    "declared gl({}|{}) but blocks have shape gl({}|{})",
                    raw.m, raw.n, x.m, x.n
                )))
            }
        })
    }
}

impl OddElement {
    pub fn new(xplus: Matrix, xminus: Matrix) -> Result<Self, SuperError> {
        let (m, n) = xplus.shape();
        if xminus.shape() != (n, m) {
            return Err(SuperError::Shape(format!(
                "xplus is {m}x{n} so xminus must be {n}x{m}, got {}x{}",
                xminus.rows(),
                xminus.cols()
            )));
        }
        Ok(OddElement { m, n, xplus, xminus })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        OddElement {
            m,
            n,
            xplus: Matrix::zeros(m, n),
            xminus: Matrix::zeros(n, m),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn xplus(&self) -> &Matrix {
        &self.xplus
    }

    pub fn xminus(&self) -> &Matrix {
        &self.xminus
    }

    pub fn into_blocks(self) -> (Matrix, Matrix) {
        (self.xplus, self.xminus)
    }

    pub fn is_zero(&self) -> bool {
        self.xplus.is_zero() && self.xminus.is_zero()
    }

    pub fn add(&self, other: &OddElement) -> OddElement {
        assert_eq!(self.dims(), other.dims());
        OddElement {
            m: self.m,
            n: self.n,
            xplus: &self.xplus + &other.xplus,
            xminus: &self.xminus + &other.xminus,
        }
    }

    pub fn scale(&self, c: &Rational) -> OddElement {
        OddElement {
            m: self.m,
            n: self.n,
            xplus: self.xplus.scale(c),
            xminus: self.xminus.scale(c),
        }
    }

    /// Coordinates: `xplus` then `xminus`, each row-major.
    pub fn coords(&self) -> Vec<Rational> {
        self.xplus.entries().iter().chain(self.xminus.entries()).cloned().collect()
    }

    pub fn from_coords(m: usize, n: usize, v: &[Rational]) -> OddElement {
        assert_eq!(v.len(), 2 * m * n);
        let (p, q) = v.split_at(m * n);
        OddElement {
            m,
            n,
            xplus: Matrix::from_fn(m, n, |i, j| p[i * n + j].clone()),
            xminus: Matrix::from_fn(n, m, |i, j| q[i * m + j].clone()),
        }
    }

    /// The full `(m+n)×(m+n)` supermatrix.
    pub fn to_supermatrix(&self) -> Matrix {
        Matrix::from_blocks(
            &Matrix::zeros(self.m, self.m),
            &self.xplus,
            &self.xminus,
            &Matrix::zeros(self.n, self.n),
        )
    }
}

/// An even element `diag(A, B)` of `gl(m|n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvenElement {
    pub a: Matrix,
    pub b: Matrix,
}

impl EvenElement {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self, SuperError> {
        if !a.is_square() || !b.is_square() {
            return Err(SuperError::Shape("even blocks must be square".into()));
        }
        Ok(EvenElement { a, b })
    }

    pub fn zero(m: usize, n: usize) -> Self {
        EvenElement {
            a: Matrix::zeros(m, m),
            b: Matrix::zeros(n, n),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a.rows(), self.b.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Coordinates: `a` then `b`, each row-major.
    pub fn coords(&self) -> Vec<Rational> {
        self.a.entries().iter().chain(self.b.entries()).cloned().collect()
    }

    pub fn supertrace(&self) -> Rational {
        self.a.trace() - self.b.trace()
    }
}

/// A homogeneous element of `gl(m|n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Homogeneous {
    Even(EvenElement),
    Odd(OddElement),
}

impl Homogeneous {
    pub fn is_odd(&self) -> bool {
        matches!(self, Homogeneous::Odd(_))
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            Homogeneous::Even(e) => e.dims(),
            Homogeneous::Odd(x) => x.dims(),
        }
    }

    pub fn coords(&self) -> Vec<Rational> {
        match self {
            Homogeneous::Even(e) => e.coords(),
            Homogeneous::Odd(x) => x.coords(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Homogeneous::Even(e) => e.is_zero(),
            Homogeneous::Odd(x) => x.is_zero(),
        }
    }
}

/// A point `(A, B)` of `G₀ = GL_m × GL_n`. Inverses are kept alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct GroupElement {
    a: Matrix,
    b: Matrix,
    a_inv: Matrix,
    b_inv: Matrix,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    a: Matrix,
    b: Matrix,
}

impl TryFrom<RawGroup> for GroupElement {
    type Error = SuperError;
    fn try_from(raw: RawGroup) -> Result<Self, SuperError> {
        GroupElement::new(raw.a, raw.b)
    }
}

impl From<GroupElement> for RawGroup {
    fn from(g: GroupElement) -> RawGroup {
        RawGroup { a: g.a, b: g.b }
    }
}

impl GroupElement {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self, SuperError> {
        let a_inv = a.inverse().map_err(|_| SuperError::NotInvertible)?;
        let b_inv = b.inverse().map_err(|_| SuperError::NotInvertible)?;
        Ok(GroupElement { a, b, a_inv, b_inv })
    }

    /// Assembles an element whose inverses are already known. The caller
    /// guarantees `a * a_inv = I` and `b * b_inv = I`.
    pub(crate) fn from_parts(a: Matrix, a_inv: Matrix, b: Matrix, b_inv: Matrix) -> Self {
        debug_assert!((&a * &a_inv).is_identity());
        debug_assert!((&b * &b_inv).is_identity());
        GroupElement { a, b, a_inv, b_inv }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        GroupElement {
            a: Matrix::identity(m),
            b: Matrix::identity(n),
            a_inv: Matrix::identity(m),
            b_inv: Matrix::identity(n),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.a.rows(), self.b.rows())
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn a_inv(&self) -> &Matrix {
        &self.a_inv
    }

    pub fn b_inv(&self) -> &Matrix {
        &self.b_inv
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_identity() && self.b.is_identity()
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            a: self.a_inv.clone(),
            b: self.b_inv.clone(),
            a_inv: self.a.clone(),
            b_inv: self.b.clone(),
        }
    }

    /// The product `self · other`, i.e. act by `other` first. With the
    /// action `(A⁻¹X⁺B, B⁻¹X⁻A)` this is `(A_other A_self, B_other B_self)`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.dims(), other.dims(), "group elements of different sizes");
        GroupElement {
            a: &other.a * &self.a,
            b: &other.b * &self.b,
            a_inv: &self.a_inv * &other.a_inv,
            b_inv: &self.b_inv * &other.b_inv,
        }
    }

    /// Whether `(A, B)` fixes `y`, i.e. lies in its stabilizer.
    pub fn fixes(&self, y: &OddElement) -> bool {
        act(self, y).map(|z| &z == y).unwrap_or(false)
    }
}

/// `g · x = (A⁻¹X⁺B, B⁻¹X⁻A)`.
pub fn act(g: &GroupElement, x: &OddElement) -> Result<OddElement, SuperError> {
    if g.dims() != x.dims() {
        return Err(SuperError::SizeMismatch {
            expected: x.dims(),
            found: g.dims(),
        });
    }
    Ok(OddElement {
        m: x.m,
        n: x.n,
        xplus: &(&g.a_inv * &x.xplus) * &g.b,
        xminus: &(&g.b_inv * &x.xminus) * &g.a,
    })
}

/// Even part of the anticommutator: `(X⁺Y⁻ + Y⁺X⁻, X⁻Y⁺ + Y⁻X⁺)`.
pub fn bracket_odd(x: &OddElement, y: &OddElement) -> Result<EvenElement, SuperError> {
    if x.dims() != y.dims() {
        return Err(SuperError::SizeMismatch {
            expected: x.dims(),
            found: y.dims(),
        });
    }
    Ok(EvenElement {
        a: &(&x.xplus * &y.xminus) + &(&y.xplus * &x.xminus),
        b: &(&x.xminus * &y.xplus) + &(&y.xminus * &x.xplus),
    })
}

fn commutator(p: &Matrix, q: &Matrix) -> Matrix {
    &(p * q) - &(q * p)
}

/// `[e, x] = (A X⁺ − X⁺ B, B X⁻ − X⁻ A)`.
fn bracket_even_odd(e: &EvenElement, x: &OddElement) -> OddElement {
    OddElement {
        m: x.m,
        n: x.n,
        xplus: &(&e.a * &x.xplus) - &(&x.xplus * &e.b),
        xminus: &(&e.b * &x.xminus) - &(&x.xminus * &e.a),
    }
}

/// The supercommutator of two homogeneous elements.
pub fn superbracket(u: &Homogeneous, v: &Homogeneous) -> Result<Homogeneous, SuperError> {
    if u.dims() != v.dims() {
        return Err(SuperError::SizeMismatch {
            expected: u.dims(),
            found: v.dims(),
        });
    }
    Ok(match (u, v) {
        (Homogeneous::Even(p), Homogeneous::Even(q)) => Homogeneous::Even(EvenElement {
            a: commutator(&p.a, &q.a),
            b: commutator(&p.b, &q.b),
        }),
        (Homogeneous::Even(e), Homogeneous::Odd(x)) => Homogeneous::Odd(bracket_even_odd(e, x)),
        (Homogeneous::Odd(x), Homogeneous::Even(e)) => {
            Homogeneous::Odd(bracket_even_odd(e, x).scale(&Rational::from_int(-1)))
        }
        (Homogeneous::Odd(x), Homogeneous::Odd(y)) => Homogeneous::Even(bracket_odd(x, y)?),
    })
}

/// `Tr((X⁺X⁻)^k)` for `k = 1, …, min(m, n)`.
pub fn invariants(x: &OddElement) -> Vec<Rational> {
    let l = x.m.min(x.n);
    let p = &x.xplus * &x.xminus;
    let mut power = p.clone();
    let mut out = Vec::with_capacity(l);
    for k in 1..=l {
        if k > 1 {
            power = &power * &p;
        }
        out.push(power.trace());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd(p: &[&[i64]], q: &[&[i64]]) -> OddElement {
        OddElement::new(Matrix::from_ints(p), Matrix::from_ints(q)).unwrap()
    }

    #[test]
    fn identity_and_scalar_action() {
        let x = odd(&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]);
        assert_eq!(act(&GroupElement::identity(2, 2), &x).unwrap(), x);
        let two = Matrix::identity(2).scale(&Rational::from_int(2));
        let g = GroupElement::new(two, Matrix::identity(2)).unwrap();
        let y = act(&g, &x).unwrap();
        assert_eq!(y.xplus(), &Matrix::identity(2).scale(&Rational::new(1, 2)));
        assert_eq!(y.xminus(), &Matrix::identity(2).scale(&Rational::from_int(2)));
    }

    #[test]
    fn composition_is_a_left_action() {
        let g = GroupElement::new(Matrix::from_ints(&[[1, 1], [0, 1]]), Matrix::from_ints(&[[2]])).unwrap();
        let h = GroupElement::new(Matrix::from_ints(&[[0, 1], [1, 3]]), Matrix::from_ints(&[[-1]])).unwrap();
        let x = odd(&[&[1], &[2]], &[&[3, -1]]);
        let lhs = act(&g.compose(&h), &x).unwrap();
        let rhs = act(&g, &act(&h, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(act(&g.inverse(), &act(&g, &x).unwrap()).unwrap(), x);
    }

    #[test]
    fn size_mismatch_is_reported() {
        let x = OddElement::zero(2, 1);
        assert!(act(&GroupElement::identity(1, 2), &x).is_err());
        assert!(bracket_odd(&x, &OddElement::zero(1, 2)).is_err());
        assert!(OddElement::new(Matrix::zeros(2, 1), Matrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(invariants(&OddElement::zero(2, 3)), vec![Rational::zero(); 2]);
        assert_eq!(invariants(&odd(&[&[1]], &[&[1]])), vec![Rational::one()]);
        let x = odd(&[&[1, 0], &[0, 1]], &[&[0, 1], &[0, 0]]);
        assert_eq!(invariants(&x), vec![Rational::zero(); 2]);
    }

    #[test]
    fn self_bracket_doubles_products() {
        let x = odd(&[&[1, 2], &[0, 1]], &[&[0, 1], &[3, 0]]);
        let b = bracket_odd(&x, &x).unwrap();
        let two = Rational::from_int(2);
        assert_eq!(b.a, (x.xplus() * x.xminus()).scale(&two));
        assert_eq!(b.b, (x.xminus() * x.xplus()).scale(&two));
    }

    #[test]
    fn odd_bracket_matches_supermatrix_anticommutator() {
        let x = odd(&[&[1, 2, 0]], &[&[1], &[0], &[-2]]);
        let y = odd(&[&[0, 1, 5]], &[&[3], &[1], &[1]]);
        let (sx, sy) = (x.to_supermatrix(), y.to_supermatrix());
        let anti = &(&sx * &sy) + &(&sy * &sx);
        let b = bracket_odd(&x, &y).unwrap();
        assert_eq!(anti.block(0, 0, 1, 1), b.a);
        assert_eq!(anti.block(1, 1, 3, 3), b.b);
        assert!(anti.block(0, 1, 1, 3).is_zero());
    }

    #[test]
    fn json_format() {
        let x = odd(&[&[1, 0]], &[&[0], &[2]]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"m":1,"n":2,"xplus":[["1","0"]],"xminus":[["0"],["2"]]}"#);
        assert_eq!(serde_json::from_str::<OddElement>(&s).unwrap(), x);
        let bad = r#"{"m":2,"n":2,"xplus":[["1","0"]],"xminus":[["0"],["2"]]}"#;
        assert!(serde_json::from_str::<OddElement>(bad).is_err());
    }
}
