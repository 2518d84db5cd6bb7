//! Orbit representatives of `G₀ = GL_m × GL_n` on the nilpotent cone of
//! `gl(m|n)`, their parameters, and a rank fingerprint for telling orbits
//! apart.
//!
//! A representative has `Y⁺ = diag(I_r, 0)` and
//!
//! ```text
//!        ⎡ J   C  0 ⎤
//! Y⁻ =   ⎢ R   0  0 ⎥
//!        ⎣ 0   0  ξ ⎦     ξ = diag(I_s, 0)
//! ```
//!
//! where `J` is an upper nilpotent Jordan matrix with blocks
//! `k₁ ≥ … ≥ k_t`, column `p` of `C` is the unit vector at the last row of
//! some block, and row `q` of `R` is the unit covector at the first column of
//! some block. Pivot positions are 1-based, as in the display above.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::exact_linalg::{jordan_matrix, Matrix, Rational};
use crate::nilcone::in_self_commuting;
use crate::superalgebra::OddElement;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CensusError {
    #[error("invalid orbit parameters for gl({m}|{n}): {reason}")]
    InvalidParams { m: usize, n: usize, reason: String },
}

/// Block end rows `f(j) = k₁+…+k_j` and block start columns `1 + k₁+…+k_{j−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PivotMaps {
    pub f: Vec<usize>,
    pub g_map: Vec<usize>,
}

impl PivotMaps {
    pub fn new(partition: &[usize]) -> Self {
        let mut f = Vec::with_capacity(partition.len());
        let mut g_map = Vec::with_capacity(partition.len());
        let mut acc = 0;
        for &k in partition {
            g_map.push(acc + 1);
            acc += k;
            f.push(acc);
        }
        PivotMaps { f, g_map }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitParams {
    pub r: usize,
    pub partition: Vec<usize>,
    /// Rows `i_p` hit by the columns of `C`, strictly increasing.
    pub c_pivots: Vec<usize>,
    /// Columns `j_q` hit by the rows of `R`, strictly increasing.
    pub r_pivots: Vec<usize>,
    pub s: usize,
}

impl OrbitParams {
    pub fn zero() -> Self {
        OrbitParams {
            r: 0,
            partition: Vec::new(),
            c_pivots: Vec::new(),
            r_pivots: Vec::new(),
            s: 0,
        }
    }

    pub fn r1(&self) -> usize {
        self.c_pivots.len()
    }

    pub fn r2(&self) -> usize {
        self.r_pivots.len()
    }

    pub fn pivot_maps(&self) -> PivotMaps {
        PivotMaps::new(&self.partition)
    }

    pub fn validate(&self, m: usize, n: usize) -> Result<(), CensusError> {
        let fail = |reason: String| Err(CensusError::InvalidParams { m, n, reason });
        if self.r > m.min(n) {
            return fail(format!("r = {} exceeds min(m, n)", self.r));
        }
        if self.partition.iter().any(|&k| k == 0) || self.partition.windows(2).any(|w| w[0] < w[1]) {
            return fail("partition must be weakly decreasing and positive".into());
        }
        if self.partition.iter().sum::<usize>() != self.r {
            return fail(format!("partition does not sum to r = {}", self.r));
        }
        let maps = self.pivot_maps();
        let increasing_subset = |v: &[usize], of: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|p| of.contains(p));
        if !increasing_subset(&self.c_pivots, &maps.f) {
            return fail("C pivots must be increasing block end rows".into());
        }
        if !increasing_subset(&self.r_pivots, &maps.g_map) {
            return fail("R pivots must be increasing block start columns".into());
        }
        if self.r1() > m - self.r || self.r2() > n - self.r {
            return fail("too many pivots for the free block".into());
        }
        if self.s > (n - self.r - self.r2()).min(m - self.r - self.r1()) {
            return fail(format!("s = {} does not fit", self.s));
        }
        Ok(())
    }

    /// Per-block pivot flags `(has C pivot, has R pivot)`.
    pub fn block_flags(&self) -> Vec<(bool, bool)> {
        let maps = self.pivot_maps();
        (0..self.partition.len())
            .map(|j| (self.c_pivots.contains(&maps.f[j]), self.r_pivots.contains(&maps.g_map[j])))
            .collect()
    }

    /// Blocks of equal size can be permuted freely, so only one ordering of
    /// their flags is listed: both pivots first, then C only, R only, none.
    pub fn is_normalized(&self) -> bool {
        let flags = self.block_flags();
        (1..flags.len()).all(|j| self.partition[j] != self.partition[j - 1] || flag_rank(flags[j - 1]) <= flag_rank(flags[j]))
    }
}

fn flag_rank((c, r): (bool, bool)) -> u8 {
    match (c, r) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 2,
        (false, false) => 3,
    }
}

const FLAG_ORDER: [(bool, bool); 4] = [(true, true), (true, false), (false, true), (false, false)];

/// Partitions of `r` in lexicographically increasing order of their parts.
fn partitions(r: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=rest.min(max) {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, r, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn params_from_flags(partition: &[usize], flags: &[(bool, bool)]) -> OrbitParams {
    let maps = PivotMaps::new(partition);
    let pick = |pos: &[usize], sel: fn(&(bool, bool)) -> bool| -> Vec<usize> {
        flags.iter().zip(pos).filter(|(f, _)| sel(f)).map(|(_, &p)| p).collect()
    };
    OrbitParams {
        r: partition.iter().sum(),
        partition: partition.to_vec(),
        c_pivots: pick(&maps.f, |f| f.0),
        r_pivots: pick(&maps.g_map, |f| f.1),
        s: 0,
    }
}

/// All non-decreasing flag sequences of length `len` in `FLAG_ORDER` rank.
fn sorted_flag_runs(len: usize) -> Vec<Vec<(bool, bool)>> {
    fn go(len: usize, min: usize, cur: &mut Vec<(bool, bool)>, out: &mut Vec<Vec<(bool, bool)>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (i, &f) in FLAG_ORDER.iter().enumerate().skip(min) {
            cur.push(f);
            go(len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, &mut Vec::new(), &mut out);
    out
}

fn push_with_s(m: usize, n: usize, mut p: OrbitParams, out: &mut Vec<OrbitParams>) {
    let r = p.r;
    if p.r1() > m - r || p.r2() > n - r {
        return;
    }
    for s in 0..=(n - r - p.r2()).min(m - r - p.r1()) {
        p.s = s;
        out.push(p.clone());
    }
}

/// One parameter tuple per orbit, ordered by `r`, then partition, then pivot
/// sets (lexicographically), then `s`.
pub fn enumerate_reps(m: usize, n: usize) -> Vec<OrbitParams> {
    let mut out = Vec::new();
    for r in 0..=m.min(n) {
        for partition in partitions(r) {
            // Runs of equal parts; each run takes a sorted flag sequence.
            let mut runs: Vec<usize> = Vec::new();
            for (j, &k) in partition.iter().enumerate() {
                if j > 0 && partition[j - 1] == k {
                    *runs.last_mut().unwrap() += 1;
                } else {
                    runs.push(1);
                }
            }
            let mut flag_lists: Vec<Vec<(bool, bool)>> = vec![Vec::new()];
            for &len in &runs {
                let choices = sorted_flag_runs(len);
                flag_lists = flag_lists
                    .iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut v = prefix.clone();
                            v.extend_from_slice(c);
                            v
                        })
                    })
                    .collect();
            }
            let mut shapes: Vec<OrbitParams> = flag_lists.iter().map(|f| params_from_flags(&partition, f)).collect();
            shapes.sort_by(|a, b| (&a.c_pivots, &a.r_pivots).cmp(&(&b.c_pivots, &b.r_pivots)));
            for p in shapes {
                push_with_s(m, n, p, &mut out);
            }
        }
    }
    out
}

/// Every tuple of the literal parametrization, including the pivot
/// placements that differ only by permuting equal blocks. Same order as
/// [`enumerate_reps`].
pub fn enumerate_theorem_shapes(m: usize, n: usize) -> Vec<OrbitParams> {
    let mut out = Vec::new();
    for r in 0..=m.min(n) {
        for partition in partitions(r) {
            let t = partition.len();
            let mut shapes = Vec::new();
            for code in 0..(1usize << (2 * t)) {
                let flags: Vec<(bool, bool)> = (0..t).map(|j| (code >> (2 * j) & 1 == 1, code >> (2 * j + 1) & 1 == 1)).collect();
                shapes.push(params_from_flags(&partition, &flags));
            }
            shapes.sort_by(|a, b| (&a.c_pivots, &a.r_pivots).cmp(&(&b.c_pivots, &b.r_pivots)));
            for p in shapes {
                push_with_s(m, n, p, &mut out);
            }
        }
    }
    out
}

pub fn rep_matrix(p: &OrbitParams, m: usize, n: usize) -> Result<OddElement, CensusError> {
    p.validate(m, n)?;
    let r = p.r;
    let one = Rational::one();
    let xplus = Matrix::partial_identity(m, n, r);
    let mut xminus = Matrix::zeros(n, m);
    xminus.set_block(0, 0, &jordan_matrix(&p.partition));
    for (q, &i) in p.c_pivots.iter().enumerate() {
        xminus[(i - 1, r + q)] = one.clone();
    }
    for (q, &j) in p.r_pivots.iter().enumerate() {
        xminus[(r + q, j - 1)] = one.clone();
    }
    for a in 0..p.s {
        xminus[(r + p.r2() + a, r + p.r1() + a)] = one.clone();
    }
    Ok(OddElement::new(xplus, xminus).expect("block shapes"))
}

/// Ranks of the alternating words `X⁺, X⁺X⁻, X⁺X⁻X⁺, …` and
/// `X⁻, X⁻X⁺, …` of lengths `1..=m+n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitSignature {
    pub plus_first: Vec<usize>,
    pub minus_first: Vec<usize>,
}

pub fn orbit_signature(x: &OddElement) -> OrbitSignature {
    let len = x.m() + x.n();
    let ranks = |first: &Matrix, second: &Matrix| {
        let mut out = Vec::with_capacity(len);
        let mut word = first.clone();
        for l in 1..=len {
            let rank = word.rank();
            out.push(rank);
            if rank == 0 {
                out.resize(len, 0);
                break;
            }
            if l < len {
                word = &word * if l % 2 == 1 { second } else { first };
            }
        }
        out
    };
    OrbitSignature {
        plus_first: ranks(x.xplus(), x.xminus()),
        minus_first: ranks(x.xminus(), x.xplus()),
    }
}

/// Representatives of the orbits in the self-commuting variety: `J = 0`,
/// no pivots, and `r + s ≤ min(m, n)`.
pub fn ds_params(m: usize, n: usize) -> Vec<OrbitParams> {
    let l = m.min(n);
    let mut out = Vec::new();
    for r in 0..=l {
        for s in 0..=l - r {
            out.push(OrbitParams {
                r,
                partition: vec![1; r],
                c_pivots: Vec::new(),
                r_pivots: Vec::new(),
                s,
            });
        }
    }
    out
}

/// The `(r, s)` pairs of [`ds_params`].
pub fn ds_reps(m: usize, n: usize) -> Vec<(usize, usize)> {
    ds_params(m, n).into_iter().map(|p| (p.r, p.s)).collect()
}

/// The census entries whose representative squares to zero.
pub fn self_commuting_filter(m: usize, n: usize) -> Vec<OrbitParams> {
    enumerate_reps(m, n)
        .into_iter()
        .filter(|p| in_self_commuting(&rep_matrix(p, m, n).expect("enumerated params are valid")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub m: usize,
    pub n: usize,
    pub orbit_count: usize,
    pub ds_count: usize,
}

/// Streams the census as JSON lines followed by a summary line. With
/// `ds_only`, only the self-commuting representatives are written.
pub fn write_census<W: Write + ?Sized>(out: &mut W, m: usize, n: usize, ds_only: bool) -> io::Result<CensusSummary> {
    let reps = enumerate_reps(m, n);
    let ds = ds_params(m, n);
    for p in if ds_only { &ds } else { &reps } {
        serde_json::to_writer(&mut *out, p)?;
        writeln!(out)?;
    }
    let summary = CensusSummary {
        m,
        n,
        orbit_count: reps.len(),
        ds_count: ds.len(),
    };
    serde_json::to_writer(&mut *out, &summary)?;
    writeln!(out)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_reps(1, 1).len(), 3);
        assert_eq!(enumerate_reps(2, 1).len(), 4);
        assert_eq!(enumerate_reps(1, 2).len(), 4);
        assert_eq!(enumerate_reps(2, 2).len(), 10);
        assert_eq!(enumerate_reps(3, 3).len(), 27);
    }

    #[test]
    fn one_one_census() {
        let reps = enumerate_reps(1, 1);
        assert_eq!(reps[0], OrbitParams::zero());
        assert_eq!(reps[1], OrbitParams { s: 1, ..OrbitParams::zero() });
        assert_eq!(reps[2].r, 1);
    }

    #[test]
    fn literal_shapes_overcount() {
        let literal = enumerate_theorem_shapes(3, 3);
        let normal = enumerate_reps(3, 3);
        assert_eq!(literal.len(), 31);
        assert!(normal.iter().all(|p| literal.contains(p)));
        assert_eq!(literal.iter().filter(|p| p.is_normalized()).count(), normal.len());
    }

    #[test]
    fn rep_matrix_examples() {
        let p = OrbitParams {
            r: 1,
            partition: vec![1],
            c_pivots: vec![1],
            r_pivots: vec![],
            s: 0,
        };
        let y = rep_matrix(&p, 2, 2).unwrap();
        assert_eq!(*y.xplus(), Matrix::from_ints(&[[1, 0], [0, 0]]));
        assert_eq!(*y.xminus(), Matrix::from_ints(&[[0, 1], [0, 0]]));

        let p = OrbitParams { s: 1, ..OrbitParams::zero() };
        let y = rep_matrix(&p, 2, 2).unwrap();
        assert!(y.xplus().is_zero());
        assert_eq!(*y.xminus(), Matrix::from_ints(&[[1, 0], [0, 0]]));
        assert!(rep_matrix(&OrbitParams::zero(), 2, 3).unwrap().is_zero());
    }

    #[test]
    fn validation() {
        let bad = OrbitParams {
            r: 2,
            partition: vec![2],
            c_pivots: vec![1],
            r_pivots: vec![],
            s: 0,
        };
        assert!(bad.validate(3, 3).is_err());
        let bad = OrbitParams { s: 2, ..OrbitParams::zero() };
        assert!(bad.validate(1, 3).is_err());
    }

    #[test]
    fn signatures_separate_the_census() {
        for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)] {
            let reps = enumerate_reps(m, n);
            let sigs: HashSet<_> = reps.iter().map(|p| orbit_signature(&rep_matrix(p, m, n).unwrap())).collect();
            assert_eq!(sigs.len(), reps.len(), "({m},{n})");
        }
    }

    #[test]
    fn ds_matches_filter() {
        for m in 1..=4 {
            for n in 1..=4 {
                let l = m.min(n);
                assert_eq!(ds_reps(m, n).len(), (l + 1) * (l + 2) / 2);
                let mut filtered = self_commuting_filter(m, n);
                let mut ds = ds_params(m, n);
                filtered.sort();
                ds.sort();
                assert_eq!(filtered, ds);
            }
        }
    }

    #[test]
    fn census_stream() {
        let mut buf = Vec::new();
        let summary = write_census(&mut buf, 1, 1, false).unwrap();
        assert_eq!(summary.orbit_count, 3);
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.lines().last().unwrap().contains("\"orbit_count\":3"));
    }
}
