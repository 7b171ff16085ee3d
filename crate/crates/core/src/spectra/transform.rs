//! Shortening, puncturing, and counting codewords that are nonzero on a set.

use num_bigint::{BigInt, BigUint};

use crate::code::TernaryCode;
use crate::error::{Error, Result};
use crate::exact::{binomial, to_count};

use super::enumerate::{fold_codewords, merge_histograms, Budget};
use super::enumerate_distribution_with;

/// Sorted, distinct coordinate positions, strictly fewer than the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositionSet {
    n: usize,
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new(n: usize, positions: &[usize]) -> Result<Self> {
        let mut p = positions.to_vec();
        p.sort_unstable();
        p.dedup();
        if p.len() != positions.len() {
            return Err(Error::Domain(format!("repeated position in {positions:?}")));
        }
        if let Some(&bad) = p.iter().find(|&&i| i >= n) {
            return Err(Error::Domain(format!("position {bad} outside length {n}")));
        }
        if p.len() >= n && n > 0 {
            return Err(Error::Domain(format!(
                "{} positions leave nothing of a length-{n} code",
                p.len()
            )));
        }
        Ok(PositionSet { n, positions: p })
    }

    pub fn empty(n: usize) -> Self {
        PositionSet {
            n,
            positions: Vec::new(),
        }
    }

    /// `{0, 1, …, t-1}`.
    pub fn prefix(n: usize, t: usize) -> Result<Self> {
        Self::new(n, &(0..t).collect::<Vec<_>>())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.positions
    }
}

fn check_length(code: &TernaryCode, t: &PositionSet) -> Result<()> {
    if t.n() != code.n() {
        return Err(Error::Domain(format!(
            "positions for length {} applied to a length-{} code",
            t.n(),
            code.n()
        )));
    }
    Ok(())
}

fn describe(t: &PositionSet) -> String {
    let s: Vec<String> = t.as_slice().iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

/// The codewords vanishing on `T`, with the coordinates of `T` deleted.
///
/// The resulting dimension is `dim - |T|` whenever `|T|` is below the dual
/// distance; otherwise it is whatever the linear algebra gives.
pub fn shorten(code: &TernaryCode, t: &PositionSet) -> Result<TernaryCode> {
    check_length(code, t)?;
    if t.is_empty() {
        return Ok(code.clone());
    }
    let g = code.generator();
    // Coefficient vectors u with u·G vanishing on T.
    let coefficients = g.select_columns(t.as_slice()).transpose().null_space();
    let rows: Vec<_> = coefficients
        .rows()
        .iter()
        .map(|u| g.combine(&u.symbols()).without_positions(t.as_slice()))
        .collect();
    let generator = crate::linalg::TernaryMatrix::new(code.n() - t.len(), rows)?;
    TernaryCode::from_generator(
        generator,
        format!("shortened of {} on {}", code.label(), describe(t)),
    )
}

/// All codewords with the coordinates of `T` deleted.
pub fn puncture(code: &TernaryCode, t: &PositionSet) -> Result<TernaryCode> {
    check_length(code, t)?;
    if t.is_empty() {
        return Ok(code.clone());
    }
    let generator = code.generator().without_columns(t.as_slice());
    Ok(TernaryCode::from_spanning(
        &generator,
        format!("punctured of {} on {}", code.label(), describe(t)),
    ))
}

/// Histogram of weights of codewords that are nonzero at every position of `T`.
pub fn nonzero_on_histogram(code: &TernaryCode, t: &PositionSet, budget: Budget) -> Result<Vec<u64>> {
    check_length(code, t)?;
    let n = code.n();
    let pos = t.as_slice();
    fold_codewords(
        code,
        budget,
        || vec![0u64; n + 1],
        |h, c| {
            if c.is_nonzero_on(pos) {
                h[c.weight()] += 1;
            }
        },
        merge_histograms,
    )
}

/// `#W_i(C, T)` by filtering every codeword directly.
pub fn count_nonzero_on_direct(code: &TernaryCode, t: &PositionSet, i: usize) -> Result<BigUint> {
    let h = nonzero_on_histogram(code, t, Budget::default())?;
    Ok(h.get(i).copied().unwrap_or(0).into())
}

/// `#W_i(C, T) = A_i(C) - Σ_{j=1}^{|T|} (-1)^{j-1} C(|T|, j) A_i(C_{0..j-1})`.
///
/// Valid when the shortened distributions depend only on `|T|`, which holds
/// for the three-weight family; [`count_nonzero_on_direct`] is the check.
pub fn count_nonzero_on(code: &TernaryCode, t: &PositionSet, i: usize) -> Result<BigUint> {
    check_length(code, t)?;
    if t.len() > 2 {
        return Err(Error::Domain(format!("|T| = {} > 2", t.len())));
    }
    let budget = Budget::default();
    let mut acc = enumerate_distribution_with(code, budget)?.get_int(i);
    let size = t.len() as u64;
    for j in 1..=size {
        let prefix = PositionSet::prefix(code.n(), j as usize)?;
        let shortened = enumerate_distribution_with(&shorten(code, &prefix)?, budget)?;
        let term: BigInt = binomial(size, j) * shortened.get_int(i);
        if j % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    to_count(acc, "inclusion-exclusion count")
}
