//! Exhaustive codeword enumeration.
//!
//! Information vectors are walked in modular ternary Gray order: step `s`
//! increments digit `v_3(s)` (the number of trailing base-3 zeros of `s`) by
//! one, so every step adds exactly one generator row to the running codeword.
//! The space is split into nine chunks by fixing the two highest digits; chunk
//! results are merged in chunk order, which makes every result independent of
//! the number of worker threads.

use rayon::prelude::*;

use crate::code::TernaryCode;
use crate::error::{Error, Result};
use crate::linalg::{add_planes, planes_weight, TernaryVector};

use super::WeightDistribution;

/// Maximum number of codewords an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    max_codewords: u64,
}

/// `3^26` codewords.
pub const DEFAULT_BUDGET: u64 = 2_541_865_828_329;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_codewords: DEFAULT_BUDGET,
        }
    }
}

impl Budget {
    pub fn new(max_codewords: u64) -> Self {
        Budget { max_codewords }
    }

    pub fn max_codewords(&self) -> u64 {
        self.max_codewords
    }

    pub fn check(&self, dim: usize) -> Result<u64> {
        match 3u64.checked_pow(dim as u32) {
            Some(c) if c <= self.max_codewords => Ok(c),
            _ => Err(Error::Size(format!(
                "enumerating 3^{dim} codewords exceeds the budget of {}",
                self.max_codewords
            ))),
        }
    }
}

/// A codeword visited during enumeration.
pub struct Codeword<'a> {
    n: usize,
    ones: &'a [u64],
    twos: &'a [u64],
    info: &'a [u8],
}

impl Codeword<'_> {
    #[inline]
    pub fn weight(&self) -> usize {
        planes_weight(self.ones, self.twos) as usize
    }

    pub fn ones(&self) -> &[u64] {
        self.ones
    }

    pub fn twos(&self) -> &[u64] {
        self.twos
    }

    /// Coefficients on the generator rows.
    pub fn info(&self) -> &[u8] {
        self.info
    }

    #[inline]
    pub fn symbol(&self, i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        ((self.ones[w] >> b) & 1) as u8 | ((((self.twos[w] >> b) & 1) as u8) << 1)
    }

    /// Whether the first nonzero symbol is 1; exactly one of `c`, `-c` passes.
    #[inline]
    pub fn is_sign_canonical(&self) -> bool {
        for (a, b) in self.ones.iter().zip(self.twos) {
            let any = a | b;
            if any != 0 {
                let low = any & any.wrapping_neg();
                return a & low != 0;
            }
        }
        false
    }

    pub fn is_nonzero_on(&self, positions: &[usize]) -> bool {
        positions.iter().all(|&i| self.symbol(i) != 0)
    }

    pub fn to_vector(&self) -> TernaryVector {
        TernaryVector::from_planes(self.n, self.ones.to_vec(), self.twos.to_vec())
    }

    /// Support as a bitset over the packed words.
    pub fn support_bits(&self) -> Vec<u64> {
        self.ones.iter().zip(self.twos).map(|(a, b)| a | b).collect()
    }
}

struct Rows {
    n: usize,
    ones: Vec<Vec<u64>>,
    twos: Vec<Vec<u64>>,
}

impl Rows {
    fn of(code: &TernaryCode) -> Self {
        let g = code.generator();
        Rows {
            n: code.n(),
            ones: g.rows().iter().map(|r| r.ones().to_vec()).collect(),
            twos: g.rows().iter().map(|r| r.twos().to_vec()).collect(),
        }
    }
}

/// Walks the `3^free` words whose top digits are fixed to `prefix`.
fn walk_chunk<S>(rows: &Rows, free: usize, prefix: &[u8], state: &mut S, visit: &(impl Fn(&mut S, &Codeword) + Sync)) {
    let dim = rows.ones.len();
    let words = rows.n.div_ceil(64);
    let mut ones = vec![0u64; words];
    let mut twos = vec![0u64; words];
    let mut info = vec![0u8; dim];
    for (offset, &c) in prefix.iter().enumerate() {
        let r = free + offset;
        info[r] = c;
        for _ in 0..c {
            add_planes(&mut ones, &mut twos, &rows.ones[r], &rows.twos[r]);
        }
    }
    let mut counter = vec![0u8; free + 1];
    loop {
        visit(
            state,
            &Codeword {
                n: rows.n,
                ones: &ones,
                twos: &twos,
                info: &info,
            },
        );
        let mut j = 0;
        while j < free && counter[j] == 2 {
            counter[j] = 0;
            j += 1;
        }
        if j == free {
            break;
        }
        counter[j] += 1;
        info[j] = (info[j] + 1) % 3;
        add_planes(&mut ones, &mut twos, &rows.ones[j], &rows.twos[j]);
    }
}

/// Folds `visit` over every codeword, chunked and merged deterministically.
pub fn fold_codewords<S, I, V, M>(
    code: &TernaryCode,
    budget: Budget,
    init: I,
    visit: V,
    merge: M,
) -> Result<S>
where
    S: Send,
    I: Fn() -> S + Sync,
    V: Fn(&mut S, &Codeword) + Sync,
    M: Fn(S, S) -> S,
{
    budget.check(code.dim())?;
    let rows = Rows::of(code);
    let dim = code.dim();
    let fixed = dim.min(2);
    let free = dim - fixed;
    let chunks: Vec<Vec<u8>> = (0..3usize.pow(fixed as u32))
        .map(|c| (0..fixed).map(|d| ((c / 3usize.pow(d as u32)) % 3) as u8).collect())
        .collect();
    let results: Vec<S> = chunks
        .par_iter()
        .map(|prefix| {
            let mut state = init();
            walk_chunk(&rows, free, prefix, &mut state, &visit);
            state
        })
        .collect();
    let mut iter = results.into_iter();
    let first = iter.next().expect("at least one chunk");
    Ok(iter.fold(first, merge))
}

/// Number of codewords of each weight, as a dense histogram of length `n + 1`.
pub fn weight_histogram(code: &TernaryCode, budget: Budget) -> Result<Vec<u64>> {
    let n = code.n();
    fold_codewords(
        code,
        budget,
        || vec![0u64; n + 1],
        |h, c| h[c.weight()] += 1,
        merge_histograms,
    )
}

pub(crate) fn merge_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Exact weight distribution by visiting all `3^dim` codewords.
pub fn enumerate_distribution(code: &TernaryCode) -> Result<WeightDistribution> {
    enumerate_distribution_with(code, Budget::default())
}

pub fn enumerate_distribution_with(code: &TernaryCode, budget: Budget) -> Result<WeightDistribution> {
    let h = weight_histogram(code, budget)?;
    WeightDistribution::from_histogram(code.n(), code.dim(), &h)
}
