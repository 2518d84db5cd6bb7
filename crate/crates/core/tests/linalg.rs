use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercone::exact_linalg::{conjugate_partition, jordan_matrix, partition_from_ranks, Matrix, Rational};
use supercone::nilcone::random_gl;

fn random_low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let k = rng.gen_range(0..=rows.min(cols));
    let left = Matrix::from_fn(rows, k, |_, _| Rational::from_int(rng.gen_range(-2..=2)));
    let right = Matrix::from_fn(k, cols, |_, _| Rational::from_int(rng.gen_range(-2..=2)));
    &left * &right
}

fn first_nonzero(m: &Matrix, col: usize) -> Option<usize> {
    (0..m.rows()).find(|&i| !m[(i, col)].is_zero())
}

fn zero_columns_rightmost(m: &Matrix) -> bool {
    let zero: Vec<bool> = (0..m.cols()).map(|j| first_nonzero(m, j).is_none()).collect();
    zero.windows(2).all(|w| !w[0] || w[1])
}

fn pivot_alone_in_row(m: &Matrix) -> bool {
    (0..m.cols()).all(|j| match first_nonzero(m, j) {
        None => true,
        Some(i) => (0..m.cols()).all(|k| k == j || m[(i, k)].is_zero()),
    })
}

fn pivots_descend(m: &Matrix) -> bool {
    let pivots: Vec<usize> = (0..m.cols()).filter_map(|j| first_nonzero(m, j)).collect();
    pivots.windows(2).all(|w| w[0] < w[1])
}

fn unit_pivots(m: &Matrix) -> bool {
    (0..m.cols()).all(|j| first_nonzero(m, j).is_none_or(|i| m[(i, j)].is_one()))
}

fn is_column_echelon(m: &Matrix) -> bool {
    zero_columns_rightmost(m) && pivot_alone_in_row(m) && pivots_descend(m) && unit_pivots(m)
}

#[test]
fn echelon_predicates_on_small_examples() {
    assert!(is_column_echelon(&Matrix::from_ints(&[[1, 0], [0, 0], [0, 1]])));
    let zero_left = Matrix::from_ints(&[[0, 1], [0, 0], [0, 0]]);
    assert!(!zero_columns_rightmost(&zero_left));
    let shared_row = Matrix::from_ints(&[[1, 1], [0, 0], [0, 0]]);
    assert!(!pivot_alone_in_row(&shared_row));
    let ascending = Matrix::from_ints(&[[0, 1], [1, 0], [0, 0]]);
    assert!(!pivots_descend(&ascending));
    assert!(!unit_pivots(&Matrix::from_ints(&[[2, 0], [0, 1]])));

    let m = Matrix::from_ints(&[[0, 2], [0, 0], [1, 0]]);
    let ce = m.column_echelon();
    assert_eq!(ce.echelon, Matrix::from_ints(&[[1, 0], [0, 0], [0, 1]]));
    assert_eq!(&m * &ce.transform, ce.echelon);
    assert_eq!(ce.pivot_rows, vec![0, 2]);
}

#[test]
fn column_echelon_of_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_low_rank(&mut rng, rows, cols);
        let ce = m.column_echelon();
        assert!(is_column_echelon(&ce.echelon), "{m:?} -> {:?}", ce.echelon);
        assert_eq!(&m * &ce.transform, ce.echelon);
        assert!((&ce.transform * &ce.transform_inv).is_identity());
        assert_eq!(ce.pivot_rows.len(), m.rank());

        // The row twin: transposing gives reduced row echelon form.
        let re = m.rref();
        assert!(is_column_echelon(&re.reduced.transpose()));
        assert_eq!(&re.transform * &m, re.reduced);
    }
}

#[test]
fn rank_normal_form_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fixed = [
        Matrix::from_ints(&[[0, 0], [0, 0]]),
        Matrix::from_ints(&[[1, 2, 3], [2, 4, 6]]),
        Matrix::from_ints(&[[0, 1], [1, 0], [1, 1]]),
    ];
    let random = (0..200).map(|_| {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        random_low_rank(&mut rng, r, c)
    });
    for m in fixed.into_iter().chain(random) {
        let f = m.rank_normal_form();
        let expect = Matrix::partial_identity(m.rows(), m.cols(), f.rank);
        assert_eq!(&(&f.a_inv * &m) * &f.b, expect, "{m:?}");
        assert!((&f.a * &f.a_inv).is_identity());
        assert!((&f.b * &f.b_inv).is_identity());
        assert_eq!(f.rank, m.rank());
    }
}

#[test]
fn lower_block_triangular_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let (r, k) = (rng.gen_range(1..=4), rng.gen_range(0..=3));
        let b11 = random_gl(&mut rng, r);
        let b22 = random_gl(&mut rng, k);
        let b21 = Matrix::from_fn(k, r, |_, _| Rational::from_int(rng.gen_range(-3..=3)));
        let b = Matrix::from_blocks(&b11, &Matrix::zeros(r, k), &b21, &b22);
        // [[B11, 0], [B21, B22]]⁻¹ = [[B11⁻¹, 0], [-B22⁻¹ B21 B11⁻¹, B22⁻¹]]
        let i11 = b11.inverse().unwrap();
        let i22 = b22.inverse().unwrap();
        let lower = -&(&(&i22 * &b21) * &i11);
        let formula = Matrix::from_blocks(&i11, &Matrix::zeros(r, k), &lower, &i22);
        assert_eq!(b.inverse().unwrap(), formula);
    }
}

#[test]
fn jordan_partition_matches_ranks_of_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let partitions: [&[usize]; 6] = [&[1], &[2], &[3, 1], &[2, 2], &[4, 2, 1], &[3, 3, 2, 1, 1]];
    for &p in &partitions {
        for _ in 0..10 {
            let n: usize = p.iter().sum();
            let g = random_gl(&mut rng, n);
            let nil = &(&g * &jordan_matrix(p)) * &g.inverse().unwrap();
            let jf = nil.nilpotent_jordan().unwrap();
            assert_eq!(jf.partition, p);
            assert_eq!(partition_from_ranks(&nil), p);
            assert_eq!(&(&jf.basis_inv * &nil) * &jf.basis, jordan_matrix(p));
            for k in 1..=n as u32 {
                assert_eq!(nil.pow(k).rank(), jordan_matrix(p).pow(k).rank());
            }
        }
    }
    assert_eq!(conjugate_partition(&[3, 1]), vec![2, 1, 1]);
    assert!(Matrix::from_ints(&[[1, 0], [0, 0]]).nilpotent_jordan().is_err());
}

#[test]
fn rational_parsing_and_display() {
    let half: Rational = "2/4".parse().unwrap();
    assert_eq!(half, Rational::new(1, 2));
    assert_eq!(half.to_string(), "1/2");
    assert_eq!("-3".parse::<Rational>().unwrap(), Rational::from_int(-3));
    assert!("1/0".parse::<Rational>().is_err());
    assert!("x".parse::<Rational>().is_err());
}
