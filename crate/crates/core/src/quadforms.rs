//! Quadratic forms over GF(3) attached to codewords of `C(E)`, and the weight
//! they predict through the number of zeros of the form.
//!
//! For `a = (a_t)` the codeword with symbols `Σ_t Tr(a_t x^{3^{k_t}+1})` at
//! `x = α^i` equals `F(ρ(x))`, where `F(x) = x S xᵀ` with
//! `S_ij = 2⁻¹(B_ij + B_ji)` and `B_ij = Tr(Σ_t a_t α^{i·3^{k_t}} α^j)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::field::{gf3, FieldContext, FieldElement, MAX_DEGREE};
use crate::linalg::TernaryMatrix;
use crate::spectra::{fold_codewords, Budget};

/// `F(x) = x S xᵀ` with `S` symmetric over GF(3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    m: usize,
    s: Vec<u8>,
}

/// Congruence-diagonal form: the nonzero diagonal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub entries: Vec<u8>,
}

impl Diagonal {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Product of the nonzero diagonal entries (1 for the zero form).
    pub fn discriminant(&self) -> u8 {
        self.entries.iter().fold(1, |acc, &d| gf3::mul(acc, d))
    }
}

impl QuadraticForm {
    /// From a row-major `m × m` symmetric matrix.
    pub fn new(m: usize, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != m * m {
            return Err(Error::Domain(format!("{} entries for a {m}×{m} matrix", entries.len())));
        }
        if entries.iter().any(|&x| x > 2) {
            return Err(Error::Domain("entries must lie in GF(3)".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if entries[i * m + j] != entries[j * m + i] {
                    return Err(Error::Domain(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(QuadraticForm { m, s: entries })
    }

    pub fn zero(m: usize) -> Self {
        QuadraticForm { m, s: vec![0; m * m] }
    }

    /// `Σ d_i x_i²`.
    pub fn diagonal(d: &[u8]) -> Result<Self> {
        let m = d.len();
        let mut s = vec![0; m * m];
        for (i, &x) in d.iter().enumerate() {
            s[i * m + i] = x;
        }
        Self::new(m, s)
    }

    pub fn from_matrix(s: &TernaryMatrix) -> Result<Self> {
        let m = s.nrows();
        if s.ncols() != m {
            return Err(Error::Domain("Gram matrix must be square".into()));
        }
        Self::new(m, (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| s.get(i, j)).collect())
    }

    pub fn matrix(&self) -> TernaryMatrix {
        let m = self.m;
        let rows: Vec<Vec<u8>> = (0..m).map(|i| self.s[i * m..(i + 1) * m].to_vec()).collect();
        TernaryMatrix::from_symbol_rows(m, &rows).expect("GF(3) entries")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.s[i * self.m + j]
    }

    pub fn evaluate(&self, x: &[u8]) -> u8 {
        let m = self.m;
        let mut acc = 0u32;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                acc += (x[i] * x[j] * self.s[i * m + j]) as u32;
            }
        }
        (acc % 3) as u8
    }

    pub fn diagonalize(&self) -> Diagonal {
        let mut s = self.s.clone();
        diagonalize_in_place(self.m, &mut s)
    }

    pub fn rank(&self) -> usize {
        self.diagonalize().rank()
    }

    /// `N(F = 0)` from rank and discriminant.
    pub fn zero_count(&self) -> u64 {
        zero_count_from(self.m, &self.diagonalize())
    }

    /// `N(F = 0)` by evaluating `F` on all of GF(3)^m.
    pub fn brute_force_zero_count(&self) -> u64 {
        let mut x = vec![0u8; self.m];
        let mut zeros = 0;
        loop {
            zeros += (self.evaluate(&x) == 0) as u64;
            let mut i = 0;
            while i < self.m && x[i] == 2 {
                x[i] = 0;
                i += 1;
            }
            if i == self.m {
                return zeros;
            }
            x[i] += 1;
        }
    }

    /// `(3^m - N(F = 0)) / 2`.
    pub fn predicted_weight(&self) -> Result<u64> {
        weight_from_zeros(self.m, self.zero_count())
    }
}

/// Symmetric Gaussian congruence on a row-major `m × m` matrix.
pub fn diagonalize_in_place(m: usize, s: &mut [u8]) -> Diagonal {
    let mut entries = Vec::new();
    for k in 0..m {
        let pivot = (k..m).find(|&p| s[p * m + p] != 0);
        let p = match pivot {
            Some(p) => p,
            None => {
                let Some((i, j)) = (k..m)
                    .flat_map(|i| (k..m).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && s[i * m + j] != 0)
                else {
                    break;
                };
                // x_i -> x_i + x_j makes S_ii = 2 S_ij nonzero.
                for c in 0..m {
                    s[i * m + c] = gf3::add(s[i * m + c], s[j * m + c]);
                }
                for r in 0..m {
                    s[r * m + i] = gf3::add(s[r * m + i], s[r * m + j]);
                }
                i
            }
        };
        if p != k {
            for c in 0..m {
                s.swap(p * m + c, k * m + c);
            }
            for r in 0..m {
                s.swap(r * m + p, r * m + k);
            }
        }
        let d = s[k * m + k];
        let inv = gf3::inv(d);
        for r in k + 1..m {
            let f = gf3::mul(s[r * m + k], inv);
            if f == 0 {
                continue;
            }
            for c in 0..m {
                s[r * m + c] = gf3::sub(s[r * m + c], gf3::mul(f, s[k * m + c]));
            }
            for c in 0..m {
                s[c * m + r] = gf3::sub(s[c * m + r], gf3::mul(f, s[c * m + k]));
            }
        }
        entries.push(d);
    }
    Diagonal { entries }
}

/// `3^{m-1}` for odd rank `s`; otherwise
/// `3^{m-1} + η((-1)^{s/2} Δ) · 2 · 3^{m-(s+2)/2}`.
pub fn zero_count_from(m: usize, d: &Diagonal) -> u64 {
    let s = d.rank();
    let p = 3u64.pow(m as u32 - 1);
    if s % 2 == 1 {
        return p;
    }
    let sign = gf3::eta(d.discriminant()) * gf3::eta(2).pow((s / 2) as u32);
    let excess = 2 * 3u64.pow((m - (s + 2) / 2) as u32);
    if sign > 0 {
        p + excess
    } else {
        p - excess
    }
}

fn weight_from_zeros(m: usize, zeros: u64) -> Result<u64> {
    let total = 3u64.pow(m as u32);
    if zeros > total || (total - zeros) % 2 != 0 {
        return Err(Error::Inconsistent(format!("{zeros} zeros give no integral weight")));
    }
    Ok((total - zeros) / 2)
}

/// The form of `Σ_t Tr(a_t x^{3^{k_t}+1})`.
pub fn gram_matrix_for(ctx: &FieldContext, ks: &[usize], a: &[FieldElement]) -> Result<QuadraticForm> {
    if ks.len() != a.len() {
        return Err(Error::Domain(format!("{} exponents but {} coefficients", ks.len(), a.len())));
    }
    let m = ctx.m();
    let mut b = vec![0u8; m * m];
    for (&k, &at) in ks.iter().zip(a) {
        if at.is_zero() {
            continue;
        }
        let q = 3u64.pow(k as u32);
        for i in 0..m {
            let z = ctx.mul(at, ctx.alpha_pow(i as u64 * q));
            for j in 0..m {
                let t = ctx.trace(ctx.mul(z, ctx.alpha_pow(j as u64)));
                b[i * m + j] = gf3::add(b[i * m + j], t);
            }
        }
    }
    let mut s = vec![0u8; m * m];
    for i in 0..m {
        for j in 0..m {
            s[i * m + j] = gf3::mul(2, gf3::add(b[i * m + j], b[j * m + i]));
        }
    }
    QuadraticForm::new(m, s)
}

/// The form of `Tr(Σ_{t=0}^{⌊m/2⌋} a_t x^{3^t+1})`.
pub fn gram_matrix(ctx: &FieldContext, a: &[FieldElement]) -> Result<QuadraticForm> {
    let m = ctx.m();
    if a.len() != m / 2 + 1 {
        return Err(Error::Domain(format!("expected {} coefficients, got {}", m / 2 + 1, a.len())));
    }
    let ks: Vec<usize> = (0..a.len()).collect();
    gram_matrix_for(ctx, &ks, a)
}

/// Forms of the generator rows of a cyclic code, in row order.
pub fn row_forms(ctx: &FieldContext, code: &CyclicCode) -> Result<Vec<QuadraticForm>> {
    code.row_origins()
        .iter()
        .map(|o| gram_matrix_for(ctx, &[o.k], &[ctx.alpha_pow(o.basis as u64)]))
        .collect()
}

/// Outcome of comparing predicted and actual weights over many codewords.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: u64,
    pub mismatches: u64,
    /// Information vector of the first mismatch found.
    pub first_mismatch: Option<Vec<u8>>,
    /// `(rank, weight) → count`.
    pub rank_weight: BTreeMap<(usize, usize), u64>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checked > 0 && self.mismatches == 0
    }

    fn record(&mut self, rank: usize, actual: usize, predicted: u64, info: &[u8]) {
        self.checked += 1;
        *self.rank_weight.entry((rank, actual)).or_default() += 1;
        if predicted != actual as u64 {
            self.mismatches += 1;
            if self.first_mismatch.is_none() {
                self.first_mismatch = Some(info.to_vec());
            }
        }
    }

    fn merge(mut self, other: OracleReport) -> OracleReport {
        self.checked += other.checked;
        self.mismatches += other.mismatches;
        if self.first_mismatch.is_none() {
            self.first_mismatch = other.first_mismatch;
        }
        for (k, v) in other.rank_weight {
            *self.rank_weight.entry(k).or_default() += v;
        }
        self
    }

    /// Whether every rank/weight pair follows the parity rule: odd rank gives
    /// `3^{m-1}`, even rank `s > 0` gives `3^{m-1} ± 3^{m-1-s/2}`.
    pub fn follows_rank_parity(&self, m: usize) -> bool {
        let p = 3usize.pow(m as u32 - 1);
        self.rank_weight.keys().all(|&(s, w)| match s {
            0 => w == 0,
            s if s % 2 == 1 => w == p,
            s => {
                let d = 3usize.pow((m - 1 - s / 2) as u32);
                w == p - d || w == p + d
            }
        })
    }
}

struct SweepState {
    report: OracleReport,
    prev: Vec<u8>,
    s: [u8; MAX_DEGREE * MAX_DEGREE],
    scratch: [u8; MAX_DEGREE * MAX_DEGREE],
}

/// Checks `predicted_weight = wt(c)` for every codeword of `code`, updating
/// the Gram matrix by one generator-row form per enumeration step.
pub fn sweep_oracle(ctx: &FieldContext, code: &CyclicCode, budget: Budget) -> Result<OracleReport> {
    let m = ctx.m();
    let mm = m * m;
    let forms = row_forms(ctx, code)?;
    let dim = code.dim();
    fold_codewords(
        code.code(),
        budget,
        || SweepState {
            report: OracleReport::default(),
            prev: vec![0; dim],
            s: [0; MAX_DEGREE * MAX_DEGREE],
            scratch: [0; MAX_DEGREE * MAX_DEGREE],
        },
        |st, c| {
            for (j, (&now, was)) in c.info().iter().zip(st.prev.iter_mut()).enumerate() {
                if now != *was {
                    let delta = gf3::sub(now, *was);
                    for (x, &y) in st.s[..mm].iter_mut().zip(&forms[j].s) {
                        *x = gf3::add(*x, gf3::mul(delta, y));
                    }
                    *was = now;
                }
            }
            st.scratch[..mm].copy_from_slice(&st.s[..mm]);
            let d = diagonalize_in_place(m, &mut st.scratch[..mm]);
            let predicted = weight_from_zeros(m, zero_count_from(m, &d)).unwrap_or(u64::MAX);
            st.report.record(d.rank(), c.weight(), predicted, c.info());
        },
        |a, b| SweepState {
            report: a.report.merge(b.report),
            ..a
        },
    )
    .map(|st| st.report)
}

/// Checks `samples` codewords with uniformly random information vectors,
/// building each Gram matrix directly from the coefficients `a_t`.
pub fn sample_oracle(ctx: &FieldContext, code: &CyclicCode, samples: u64, seed: u64) -> Result<OracleReport> {
    let ks = code.exponents().exponents().to_vec();
    let origins = code.row_origins();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OracleReport::default();
    for _ in 0..samples {
        let info: Vec<u8> = (0..code.dim()).map(|_| rng.gen_range(0..3u8)).collect();
        let mut a = vec![FieldElement::ZERO; ks.len()];
        for (o, &u) in origins.iter().zip(&info) {
            let term = ctx.scale(ctx.alpha_pow(o.basis as u64), u);
            a[o.slot] = ctx.add(a[o.slot], term);
        }
        let form = gram_matrix_for(ctx, &ks, &a)?;
        let weight = code.encode(&info).weight();
        let d = form.diagonalize();
        report.record(d.rank(), weight, form.predicted_weight()?, &info);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_code, ExponentSet};

    fn for_all_vectors(m: usize, mut f: impl FnMut(&[u8])) {
        let mut x = vec![0u8; m];
        loop {
            f(&x);
            let mut i = 0;
            while i < m && x[i] == 2 {
                x[i] = 0;
                i += 1;
            }
            if i == m {
                return;
            }
            x[i] += 1;
        }
    }

    #[test]
    fn eta_of_minus_one() {
        assert_eq!(gf3::eta(2), -1);
    }

    #[test]
    fn zero_form() {
        let ctx = FieldContext::new(5).unwrap();
        let f = gram_matrix(&ctx, &[FieldElement::ZERO; 3]).unwrap();
        assert_eq!(f, QuadraticForm::zero(5));
        assert_eq!((f.rank(), f.zero_count(), f.predicted_weight()), (0, 243, Ok(0)));
    }

    #[test]
    fn difference_of_squares() {
        for m in 2..=6 {
            let mut d = vec![0u8; m];
            d[0] = 1;
            d[1] = 2;
            let f = QuadraticForm::diagonal(&d).unwrap();
            let p = 3u64.pow(m as u32 - 2);
            assert_eq!(f.zero_count(), 3 * p + 2 * p);
            assert_eq!(f.predicted_weight(), Ok(2 * p));
        }
    }

    #[test]
    fn sum_of_three_squares() {
        let f = QuadraticForm::diagonal(&[1, 1, 1]).unwrap();
        assert_eq!(f.zero_count(), f.brute_force_zero_count());
    }

    #[test]
    fn off_diagonal_only() {
        // F = 2·x0·x1 needs the x_i -> x_i + x_j step.
        let f = QuadraticForm::new(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.zero_count(), f.brute_force_zero_count());
    }

    #[test]
    fn gram_matches_trace_pointwise() {
        let ctx = FieldContext::new(3).unwrap();
        let f = gram_matrix(&ctx, &[FieldElement::ONE, FieldElement::ZERO]).unwrap();
        for x in ctx.elements() {
            let expected = ctx.trace(ctx.mul(x, x));
            assert_eq!(f.evaluate(&ctx.coeffs(x)), expected);
        }
    }

    #[test]
    fn gram_length_checked() {
        let ctx = FieldContext::new(5).unwrap();
        assert!(matches!(gram_matrix(&ctx, &[FieldElement::ONE; 2]), Err(Error::Domain(_))));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(QuadraticForm::new(2, vec![0, 1, 2, 0]).is_err());
    }

    #[test]
    fn formula_matches_brute_force_for_all_small_forms() {
        for m in 1..=3 {
            let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
            for_all_vectors(pairs.len(), |v| {
                let mut s = vec![0u8; m * m];
                for (&(i, j), &x) in pairs.iter().zip(v) {
                    s[i * m + j] = x;
                    s[j * m + i] = x;
                }
                let f = QuadraticForm::new(m, s).unwrap();
                assert_eq!(f.zero_count(), f.brute_force_zero_count(), "{f:?}");
            });
        }
    }

    #[test]
    fn sweep_at_m3() {
        let ctx = FieldContext::new(3).unwrap();
        let code = build_code(&ctx, &ExponentSet::new(3, &[0, 1]).unwrap()).unwrap();
        let r = sweep_oracle(&ctx, &code, Budget::default()).unwrap();
        assert_eq!((r.checked, r.mismatches), (729, 0));
        assert!(r.follows_rank_parity(3));
        let s = sample_oracle(&ctx, &code, 200, 7).unwrap();
        assert_eq!((s.checked, s.mismatches), (200, 0));
    }
}
