use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercone::exact_linalg::{Matrix, Rational, Span};
use supercone::superalgebra::{
    bracket_odd, complement_basis, decompose, odd_membership, osp_forms, AlgebraKind, OddElement,
};

fn rand_mat(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| Rational::from_int(rng.gen_range(-3..=3)))
}

fn stack(parts: &[&Matrix]) -> Matrix {
    let cols = parts[0].cols();
    let mut out = Matrix::zeros(parts.iter().map(|p| p.rows()).sum(), cols);
    let mut r = 0;
    for p in parts {
        out.set_block(r, 0, p);
        r += p.rows();
    }
    out
}

fn side(parts: &[&Matrix]) -> Matrix {
    let t: Vec<Matrix> = parts.iter().map(|p| p.transpose()).collect();
    stack(&t.iter().collect::<Vec<_>>()).transpose()
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a * b
}

fn t(a: &Matrix) -> Matrix {
    a.transpose()
}

/// Blocks `[p, p₁]` of one row group of X⁺.
struct Rows {
    p: Matrix,
    p1: Matrix,
}

/// `X⁺ = [[x, x₁], [y, y₁], [z, z₁]]` with `X⁻ = sign · [[x₁ᵗ, z₁ᵗ, y₁ᵗ], [−xᵗ, −zᵗ, −yᵗ]]`.
fn osp_odd(groups: &[Rows; 3], sign: i64) -> OddElement {
    let [x, y, z] = groups;
    let xp = stack(&[&side(&[&x.p, &x.p1]), &side(&[&y.p, &y.p1]), &side(&[&z.p, &z.p1])]);
    let top = side(&[&t(&x.p1), &t(&z.p1), &t(&y.p1)]);
    let bottom = -&side(&[&t(&x.p), &t(&z.p), &t(&y.p)]);
    let xm = stack(&[&top, &bottom]).scale(&Rational::from_int(sign));
    OddElement::new(xp, xm).unwrap()
}

#[test]
fn osp_bracket_matches_displayed_block_formulas() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let kind = AlgebraKind::OspOdd { m, n };
        let mut group = |h: usize| Rows {
            p: rand_mat(&mut rng, h, n),
            p1: rand_mat(&mut rng, h, n),
        };
        let xs = [group(1), group(m), group(m)];
        let ys = [group(1), group(m), group(m)];
        let x = osp_odd(&xs, -1);
        let y = osp_odd(&ys, 1);
        assert!(odd_membership(&kind, &x).unwrap(), "g₁ pattern");
        assert!(!odd_membership(&kind, &y).unwrap() || y.is_zero());

        let e = bracket_odd(&x, &y).unwrap();
        // Column block C pairs with the swapped row group σ(C).
        let sigma = [0, 2, 1];
        let off = [0, 1, 1 + m];
        let size = [1, m, m];
        for rb in 0..3 {
            for cb in 0..3 {
                let (xr, yr) = (&xs[rb], &ys[rb]);
                let (xc, yc) = (&xs[sigma[cb]], &ys[sigma[cb]]);
                let expected = &(&(&mul(&xr.p, &t(&yc.p1)) - &mul(&xr.p1, &t(&yc.p))) - &mul(&yr.p, &t(&xc.p1)))
                    + &mul(&yr.p1, &t(&xc.p));
                assert_eq!(e.a.block(off[rb], off[cb], size[rb], size[cb]), expected, "A[{rb},{cb}] in osp({}|{})", 2 * m + 1, 2 * n);
            }
        }
        let [x0, x1, x2] = &xs;
        let [y0, y1, y2] = &ys;
        let b_block = |first: bool, second: bool| {
            // Top rows pair -p₁ᵗ of X with p₁ᵗ of Y; bottom rows pair pᵗ with -pᵗ.
            let pick = |r: &Rows, one: bool| if one { r.p1.clone() } else { r.p.clone() };
            let lhs = [(x0, y0), (x2, y1), (x1, y2)];
            let mut acc = Matrix::zeros(n, n);
            for (xa, ya) in lhs {
                let xi = if first { -&pick(xa, true) } else { pick(xa, false) };
                let yi = if first { pick(ya, true) } else { -&pick(ya, false) };
                acc = &acc + &mul(&t(&xi), &pick(ya, second));
                acc = &acc + &mul(&t(&yi), &pick(xa, second));
            }
            acc
        };
        assert_eq!(e.b.block(0, 0, n, n), b_block(true, false), "B11");
        assert_eq!(e.b.block(0, n, n, n), b_block(true, true), "B12");
        assert_eq!(e.b.block(n, 0, n, n), b_block(false, false), "B21");
        assert_eq!(e.b.block(n, n, n, n), b_block(false, true), "B22");
    }
}

#[test]
fn q_and_p_sample_brackets() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 3;
    let b = rand_mat(&mut rng, n, n);
    let d = rand_mat(&mut rng, n, n);
    // q(n): x ∈ g₁ has blocks (b, b), y ∈ M₁ has (d, −d).
    let e = bracket_odd(&OddElement::new(b.clone(), b.clone()).unwrap(), &OddElement::new(d.clone(), -&d).unwrap()).unwrap();
    let comm = &(&d * &b) - &(&b * &d);
    assert_eq!(e.a, comm);
    assert_eq!(e.b, -&comm);

    // p(n): x = (b sym, c skew) ∈ g₁, y = (a skew, d sym) ∈ M₁.
    let r1 = rand_mat(&mut rng, n, n);
    let r2 = rand_mat(&mut rng, n, n);
    let sym = |m: &Matrix| m + &m.transpose();
    let skew = |m: &Matrix| m - &m.transpose();
    let (b, c, a, d) = (sym(&r1), skew(&r2), skew(&r1), sym(&r2));
    let e = bracket_odd(&OddElement::new(b.clone(), c.clone()).unwrap(), &OddElement::new(a.clone(), d.clone()).unwrap()).unwrap();
    let top = &(&b * &d) + &(&a * &c);
    assert_eq!(e.a, top);
    assert_eq!(e.b, top.transpose());
}

#[test]
fn osp_forms_shape() {
    let (j, omega) = osp_forms(&AlgebraKind::OspOdd { m: 1, n: 1 }).unwrap();
    assert_eq!(j, Matrix::from_ints(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]));
    assert_eq!(omega, Matrix::from_ints(&[[0, 1], [-1, 0]]));
    assert!(osp_forms(&AlgebraKind::Q { n: 2 }).is_none());
}

#[test]
fn decomposition_is_unique_across_basis_orderings() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for s in ["q(3)", "p(3)", "osp(3|2)", "osp(4|2)", "osp(1|4)", "sl(2|3)"] {
        let kind: AlgebraKind = s.parse().unwrap();
        let (m, n) = kind.ambient();
        let basis = complement_basis(&kind).unwrap();
        let mut reversed = basis.clone();
        reversed.g_odd_basis.reverse();
        reversed.odd_basis.reverse();
        for _ in 0..5 {
            let x = OddElement::new(rand_mat(&mut rng, m, n), rand_mat(&mut rng, n, m)).unwrap();
            let (g, mpart) = basis.decompose(&x).unwrap();
            assert_eq!(g.add(&mpart), x, "{s}");
            assert!(odd_membership(&kind, &g).unwrap(), "{s}");
            let span = Span::from_vectors(2 * m * n, basis.odd_basis.iter().map(|b| b.element.coords()).collect::<Vec<_>>().iter().map(Vec::as_slice));
            assert!(span.contains(&mpart.coords()) || mpart.is_zero(), "{s}");
            assert_eq!(reversed.decompose(&x).unwrap(), (g.clone(), mpart.clone()), "{s}");
            assert_eq!(decompose(&kind, &x).unwrap(), (g, mpart));
        }
    }
}

#[test]
fn p_decomposition_splits_symmetric_and_skew() {
    let kind = AlgebraKind::P { n: 2 };
    let xp = Matrix::from_ints(&[[1, 4], [0, 2]]);
    let xm = Matrix::from_ints(&[[3, 1], [5, -1]]);
    let (g, m) = decompose(&kind, &OddElement::new(xp, xm).unwrap()).unwrap();
    assert_eq!(*g.xplus(), Matrix::from_ints(&[[1, 2], [2, 2]]));
    assert_eq!(*g.xminus(), Matrix::from_ints(&[[0, -2], [2, 0]]));
    assert_eq!(*m.xplus(), Matrix::from_ints(&[[0, 2], [-2, 0]]));
    assert_eq!(*m.xminus(), Matrix::from_ints(&[[3, 3], [3, -1]]));
}
