//! The ternary cyclic codes `C(E)` of length `(3^m - 1)/2`.
//!
//! For `E = {k_0 < … < k_l}` with `k_l <= m/2`, the codeword attached to
//! `(a_0, …, a_l)` has symbol `Tr(Σ_j a_j α^{(3^{k_j}+1) i})` at coordinate `i`.

use crate::code::TernaryCode;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::linalg::{RowReducer, TernaryMatrix, TernaryVector};

/// Exponents `k_0 < k_1 < … < k_l`, all at most `m/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentSet {
    m: usize,
    ks: Vec<usize>,
}

impl ExponentSet {
    pub fn new(m: usize, ks: &[usize]) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::Domain("exponent set is empty".into()));
        }
        if ks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "exponents {ks:?} are not strictly increasing"
            )));
        }
        let top = *ks.last().unwrap();
        if 2 * top > m {
            return Err(Error::Domain(format!(
                "exponent {top} exceeds m/2 for m = {m}"
            )));
        }
        Ok(ExponentSet { m, ks: ks.to_vec() })
    }

    /// `{0, 1, …, ⌊m/2⌋}`.
    pub fn full(m: usize) -> Self {
        ExponentSet {
            m,
            ks: (0..=m / 2).collect(),
        }
    }

    /// `E = {0, 1}`, the first code of the three-weight family.
    pub fn first_family(m: usize) -> Result<Self> {
        Self::new(m, &[0, 1])
    }

    /// `E = {(m-3)/2, (m-1)/2}` for odd `m >= 3`.
    pub fn second_family(m: usize) -> Result<Self> {
        if m < 3 || m % 2 == 0 {
            return Err(Error::Domain(format!(
                "the second family needs odd m >= 3, got {m}"
            )));
        }
        Self::new(m, &[(m - 3) / 2, (m - 1) / 2])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn exponents(&self) -> &[usize] {
        &self.ks
    }

    pub fn len(&self) -> usize {
        self.ks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ks.is_empty()
    }
}

/// Degree of the minimal polynomial of `α^{-(3^k+1)}` over GF(3).
///
/// Computed as the least `d >= 1` with `(3^k+1)·3^d ≡ 3^k+1 (mod 3^m-1)` and
/// checked against the closed form (`m` when `k < m/2`, `m/2` when `k = m/2`).
pub fn minimal_poly_degree(m: usize, k: usize) -> Result<usize> {
    if m == 0 || 2 * k > m {
        return Err(Error::Domain(format!("k = {k} exceeds m/2 for m = {m}")));
    }
    let modulus = 3u128.pow(m as u32) - 1;
    let e = (3u128.pow(k as u32) + 1) % modulus;
    let mut d = 1;
    let mut cur = (e * 3) % modulus;
    while cur != e {
        cur = (cur * 3) % modulus;
        d += 1;
    }
    let closed = if 2 * k < m { m } else { m / 2 };
    if d != closed {
        return Err(Error::Inconsistent(format!(
            "coset of 3^{k}+1 mod 3^{m}-1 has size {d}, expected {closed}"
        )));
    }
    Ok(d)
}

/// Predicted dimension of `C(E)`.
pub fn code_dimension(m: usize, exps: &ExponentSet) -> Result<usize> {
    if exps.m() != m {
        return Err(Error::Domain(format!(
            "exponent set built for m = {}, asked for m = {m}",
            exps.m()
        )));
    }
    let by_cosets = exps
        .exponents()
        .iter()
        .map(|&k| minimal_poly_degree(m, k))
        .sum::<Result<usize>>()?;
    let l = exps.len() - 1;
    let top = *exps.exponents().last().unwrap();
    let closed = if 2 * top < m {
        (l + 1) * m
    } else {
        (2 * l + 1) * m / 2
    };
    if by_cosets != closed {
        return Err(Error::Inconsistent(format!(
            "dimension {by_cosets} from cosets disagrees with closed form {closed}"
        )));
    }
    Ok(closed)
}

/// A generator row of `C(E)` corresponds to `a_j = α^b`, all other `a`'s zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowOrigin {
    /// Index into the exponent set.
    pub slot: usize,
    /// The exponent `k_slot`.
    pub k: usize,
    /// Which basis element `α^b` the coefficient is.
    pub basis: usize,
}

/// `C(E)` together with the coefficient that produced each generator row.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    exps: ExponentSet,
    code: TernaryCode,
    origins: Vec<RowOrigin>,
}

impl CyclicCode {
    pub fn exponents(&self) -> &ExponentSet {
        &self.exps
    }

    pub fn code(&self) -> &TernaryCode {
        &self.code
    }

    pub fn into_code(self) -> TernaryCode {
        self.code
    }

    pub fn row_origins(&self) -> &[RowOrigin] {
        &self.origins
    }
}

impl std::ops::Deref for CyclicCode {
    type Target = TernaryCode;
    fn deref(&self) -> &TernaryCode {
        &self.code
    }
}

/// The evaluation vector of `Tr(α^b · x^{3^k+1})` at `x = α^i`, `0 <= i < n`.
pub fn trace_row(ctx: &FieldContext, traces: &[u8], k: usize, b: usize) -> TernaryVector {
    let group = ctx.group_order() as usize;
    let n = group / 2;
    let e = (3usize.pow(k as u32) + 1) % group;
    let mut row = TernaryVector::zeros(n);
    let mut exp = b % group;
    for i in 0..n {
        row.set(i, traces[exp]);
        exp = (exp + e) % group;
    }
    row
}

/// Builds `C(E)` with rows ordered by exponent slot, then basis index.
///
/// When `k = m/2` only half of the basis coefficients give independent rows;
/// rows that do not raise the rank are skipped. The final rank must equal
/// [`code_dimension`] or construction fails.
pub fn build_code(ctx: &FieldContext, exps: &ExponentSet) -> Result<CyclicCode> {
    let m = ctx.m();
    if m < 3 {
        return Err(Error::Domain(format!("C(E) needs m >= 3, got {m}")));
    }
    let expected = code_dimension(m, exps)?;
    let traces = ctx.trace_of_powers();
    let n = ctx.group_order() as usize / 2;

    let mut reducer = RowReducer::new(n);
    let mut rows = Vec::with_capacity(expected);
    let mut origins = Vec::with_capacity(expected);
    for (slot, &k) in exps.exponents().iter().enumerate() {
        for b in 0..m {
            let row = trace_row(ctx, &traces, k, b);
            if reducer.insert(&row) {
                rows.push(row);
                origins.push(RowOrigin { slot, k, basis: b });
            }
        }
    }
    if rows.len() != expected {
        return Err(Error::Inconsistent(format!(
            "C({:?}) at m = {m} has rank {} but dimension {expected} was predicted",
            exps.exponents(),
            rows.len()
        )));
    }
    let label = format!("C({}) m={m}", join(exps.exponents()));
    let code = TernaryCode::from_generator(TernaryMatrix::new(n, rows)?, label)?;
    Ok(CyclicCode {
        exps: exps.clone(),
        code,
        origins,
    })
}

fn join(ks: &[usize]) -> String {
    ks.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_poly_examples() {
        assert_eq!(minimal_poly_degree(5, 2), Ok(5));
        assert_eq!(minimal_poly_degree(4, 2), Ok(2));
        assert_eq!(minimal_poly_degree(3, 0), Ok(3));
        assert!(matches!(minimal_poly_degree(5, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn dimension_examples() {
        let d = |m, ks: &[usize]| code_dimension(m, &ExponentSet::new(m, ks).unwrap()).unwrap();
        assert_eq!(d(5, &[0, 1]), 10);
        assert_eq!(d(5, &[0, 1, 2]), 15);
        assert_eq!(d(4, &[0, 2]), 6);
        for m in 3..=8 {
            assert_eq!(
                code_dimension(m, &ExponentSet::full(m)).unwrap(),
                m * (m + 1) / 2
            );
        }
    }

    #[test]
    fn exponent_set_validation() {
        assert!(ExponentSet::new(5, &[]).is_err());
        assert!(ExponentSet::new(5, &[1, 1]).is_err());
        assert!(ExponentSet::new(5, &[2, 1]).is_err());
        assert!(ExponentSet::new(5, &[0, 3]).is_err());
        assert!(ExponentSet::new(4, &[0, 2]).is_ok());
        assert_eq!(ExponentSet::second_family(5).unwrap().exponents(), &[1, 2]);
        assert!(ExponentSet::second_family(4).is_err());
    }

    #[test]
    fn small_m_rejected() {
        let ctx = FieldContext::new(2).unwrap();
        assert!(build_code(&ctx, &ExponentSet::new(2, &[0]).unwrap()).is_err());
    }

    #[test]
    fn first_family_m3_is_cyclic() {
        let ctx = FieldContext::new(3).unwrap();
        let c = build_code(&ctx, &ExponentSet::first_family(3).unwrap()).unwrap();
        assert_eq!((c.n(), c.dim()), (13, 6));
        assert!(c.shift_closure_check());
        assert_eq!(c.generator().null_space().nrows(), 7);
    }
}
