//! Membership in the nilpotent cone `𝒩` and the self-commuting variety
//! `𝒳 = {x : [x, x] = 0}`, and seeded sampling of cone elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_linalg::{Matrix, Rational};
use crate::orbit_census::{ds_params, enumerate_reps, rep_matrix, CensusError, OrbitParams};
use crate::superalgebra::{
    act, complement_basis, invariants, odd_membership, AlgebraKind, GroupElement, OddElement, SuperError,
};

/// All Fuks invariants `Tr((X⁺X⁻)^k)` vanish.
pub fn in_nilcone_gl(x: &OddElement) -> bool {
    invariants(x).iter().all(Rational::is_zero)
}

/// `x ∈ g₁` and `x` is nilpotent in the ambient `gl`.
pub fn in_nilcone(kind: &AlgebraKind, x: &OddElement) -> Result<bool, SuperError> {
    Ok(odd_membership(kind, x)? && in_nilcone_gl(x))
}

pub fn in_self_commuting(x: &OddElement) -> bool {
    (x.xplus() * x.xminus()).is_zero() && (x.xminus() * x.xplus()).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Algebra(#[from] SuperError),
    #[error("orbit parameters can only be given for gl kinds")]
    ParamsRequireGl,
}

#[derive(Debug, Clone, Default)]
pub struct SampleOptions {
    /// Representative to conjugate (gl only). A random census entry otherwise.
    pub params: Option<OrbitParams>,
    /// Restrict to `𝒳`.
    pub self_commuting_only: bool,
}

fn small_nonzero<R: Rng>(rng: &mut R) -> i64 {
    *[-2, -1, 1, 2].choose(rng).unwrap()
}

/// A random invertible `n×n` integer matrix `P·L·D·U` with unit triangular
/// `L`, `U`, a permutation `P` and a diagonal `D` of small nonzero entries.
pub fn random_gl<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = Rational::from_int(rng.gen_range(-2..=2));
            upper[(j, i)] = Rational::from_int(rng.gen_range(-2..=2));
        }
    }
    let diag: Vec<Rational> = (0..n).map(|_| Rational::from_int(small_nonzero(rng))).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    &(&(&Matrix::permutation(&perm) * &lower) * &Matrix::diagonal(&diag)) * &upper
}

pub fn random_group_element<R: Rng>(rng: &mut R, m: usize, n: usize) -> GroupElement {
    GroupElement::new(random_gl(rng, m), random_gl(rng, n)).expect("LDU products are invertible")
}

/// Cayley transform `(I − E)⁻¹(I + E)` of a random element `E` of `g₀`,
/// which lies in the orthosymplectic group.
fn random_osp_group<R: Rng>(rng: &mut R, kind: &AlgebraKind) -> GroupElement {
    let basis = complement_basis(kind).expect("osp has a complement");
    let (mm, nn) = kind.ambient();
    loop {
        let mut a = Matrix::zeros(mm, mm);
        let mut b = Matrix::zeros(nn, nn);
        for e in &basis.g_even_basis {
            if rng.gen_bool(0.4) {
                let c = Rational::from_int(small_nonzero(rng));
                a = &a + &e.element.a.scale(&c);
                b = &b + &e.element.b.scale(&c);
            }
        }
        let cayley = |e: &Matrix| -> Option<Matrix> {
            let id = Matrix::identity(e.rows());
            Some(&(&id - e).inverse().ok()? * &(&id + e))
        };
        if let (Some(ga), Some(gb)) = (cayley(&a), cayley(&b)) {
            return GroupElement::new(ga, gb).expect("Cayley images are invertible");
        }
    }
}

/// A random element of the even group of `kind`, acting on `g₁`.
pub fn random_g0<R: Rng>(rng: &mut R, kind: &AlgebraKind) -> GroupElement {
    let (m, n) = kind.ambient();
    match kind {
        AlgebraKind::Gl { .. } | AlgebraKind::Sl { .. } => random_group_element(rng, m, n),
        AlgebraKind::Q { .. } => {
            let p = random_gl(rng, n);
            GroupElement::new(p.clone(), p).expect("invertible")
        }
        AlgebraKind::P { .. } => {
            let p = random_gl(rng, n);
            let q = p.inverse().expect("invertible").transpose();
            GroupElement::new(p, q).expect("invertible")
        }
        AlgebraKind::OspOdd { .. } | AlgebraKind::OspEven { .. } => random_osp_group(rng, kind),
    }
}

const ATTEMPTS: usize = 200;

/// Sparse combinations of the `g₁` basis, kept when they land in the target
/// variety. Falls back to zero.
fn search_g1<R: Rng>(rng: &mut R, kind: &AlgebraKind, self_commuting: bool) -> OddElement {
    let basis = complement_basis(kind).expect("non-gl kind");
    let (m, n) = kind.ambient();
    for _ in 0..ATTEMPTS {
        let terms = rng.gen_range(1..=3);
        let mut x = OddElement::zero(m, n);
        for _ in 0..terms {
            let e = basis.g_odd_basis.choose(rng).expect("g₁ is nonzero");
            x = x.add(&e.element.scale(&Rational::from_int(small_nonzero(rng))));
        }
        let accept = if self_commuting { in_self_commuting(&x) } else { in_nilcone_gl(&x) };
        if accept {
            return x;
        }
    }
    OddElement::zero(m, n)
}

/// A seeded random element of `𝒩` (or of `𝒳`) for `kind`.
///
/// For `gl`, a census representative is conjugated by a random group
/// element. For the other kinds there is no representative list, so a cone
/// element of `g₁` is found by search and then moved by the even group.
pub fn sample_nilcone(kind: &AlgebraKind, seed: u64, opts: &SampleOptions) -> Result<OddElement, SampleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (m, n) = kind.ambient();
    let base = if let AlgebraKind::Gl { .. } = kind {
        let params = match &opts.params {
            Some(p) => p.clone(),
            None => {
                let pool = if opts.self_commuting_only { ds_params(m, n) } else { enumerate_reps(m, n) };
                pool.choose(&mut rng).expect("census is nonempty").clone()
            }
        };
        rep_matrix(&params, m, n)?
    } else {
        if opts.params.is_some() {
            return Err(SampleError::ParamsRequireGl);
        }
        search_g1(&mut rng, kind, opts.self_commuting_only)
    };
    let g = random_g0(&mut rng, kind);
    Ok(act(&g, &base)?)
}
