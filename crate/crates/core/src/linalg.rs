//! Vectors and matrices over GF(3).
//!
//! A [`TernaryVector`] keeps two bit planes: bit `i` of `ones` is set when
//! symbol `i` is 1, bit `i` of `twos` when it is 2. The planes are disjoint, so
//! the weight is the popcount of their union and addition is a handful of
//! word-level logic operations.

use crate::error::{Error, Result};
use crate::field::gf3;

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Adds the packed vector `(y1, y2)` into `(x1, x2)`, word by word.
#[inline]
pub fn add_planes(x1: &mut [u64], x2: &mut [u64], y1: &[u64], y2: &[u64]) {
    for i in 0..x1.len() {
        let (a1, a2, b1, b2) = (x1[i], x2[i], y1[i], y2[i]);
        let t = (a1 | b2) ^ (a2 | b1);
        x1[i] = (a2 | b2) ^ t;
        x2[i] = (a1 | b1) ^ t;
    }
}

/// Hamming weight of a packed vector.
#[inline]
pub fn planes_weight(x1: &[u64], x2: &[u64]) -> u32 {
    x1.iter().zip(x2).map(|(a, b)| (a | b).count_ones()).sum()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryVector {
    len: usize,
    ones: Vec<u64>,
    twos: Vec<u64>,
}

impl std::fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = self.symbols().iter().map(|&c| (b'0' + c) as char).collect();
        write!(f, "TernaryVector({s})")
    }
}

impl TernaryVector {
    pub fn zeros(len: usize) -> Self {
        let w = words_for(len);
        TernaryVector {
            len,
            ones: vec![0; w],
            twos: vec![0; w],
        }
    }

    /// Builds a vector from symbols in `{0, 1, 2}`.
    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        let mut v = Self::zeros(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if s > 2 {
                return Err(Error::Domain(format!("symbol {s} at {i} is not in GF(3)")));
            }
            v.set(i, s);
        }
        Ok(v)
    }

    /// Builds a vector from raw planes. Bits past `len` must be clear and the
    /// planes disjoint.
    pub fn from_planes(len: usize, ones: Vec<u64>, twos: Vec<u64>) -> Self {
        debug_assert_eq!(ones.len(), words_for(len));
        debug_assert_eq!(twos.len(), words_for(len));
        debug_assert!(ones.iter().zip(&twos).all(|(a, b)| a & b == 0));
        TernaryVector { len, ones, twos }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ones(&self) -> &[u64] {
        &self.ones
    }

    pub fn twos(&self) -> &[u64] {
        &self.twos
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        let (w, b) = (i / WORD, i % WORD);
        ((self.ones[w] >> b) & 1) as u8 | ((((self.twos[w] >> b) & 1) as u8) << 1)
    }

    #[inline]
    pub fn set(&mut self, i: usize, s: u8) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let (w, b) = (i / WORD, i % WORD);
        let mask = 1u64 << b;
        self.ones[w] &= !mask;
        self.twos[w] &= !mask;
        match s % 3 {
            1 => self.ones[w] |= mask,
            2 => self.twos[w] |= mask,
            _ => {}
        }
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn weight(&self) -> usize {
        planes_weight(&self.ones, &self.twos) as usize
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (w, (a, b)) in self.ones.iter().zip(&self.twos).enumerate() {
            let mut bits = a | b;
            while bits != 0 {
                out.push(w * WORD + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.ones.iter().chain(&self.twos).all(|&w| w == 0)
    }

    /// Position and value of the first nonzero symbol.
    pub fn first_nonzero(&self) -> Option<(usize, u8)> {
        for (w, (a, b)) in self.ones.iter().zip(&self.twos).enumerate() {
            let bits = a | b;
            if bits != 0 {
                let i = w * WORD + bits.trailing_zeros() as usize;
                return Some((i, self.get(i)));
            }
        }
        None
    }

    pub fn add_assign(&mut self, other: &TernaryVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        add_planes(&mut self.ones, &mut self.twos, &other.ones, &other.twos);
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &TernaryVector, c: u8) {
        assert_eq!(self.len, other.len, "length mismatch");
        match c % 3 {
            1 => add_planes(&mut self.ones, &mut self.twos, &other.ones, &other.twos),
            2 => add_planes(&mut self.ones, &mut self.twos, &other.twos, &other.ones),
            _ => {}
        }
    }

    pub fn sub_assign(&mut self, other: &TernaryVector) {
        self.add_scaled(other, 2);
    }

    pub fn negate(&mut self) {
        std::mem::swap(&mut self.ones, &mut self.twos);
    }

    pub fn scaled(&self, c: u8) -> TernaryVector {
        match c % 3 {
            0 => TernaryVector::zeros(self.len),
            1 => self.clone(),
            _ => {
                let mut v = self.clone();
                v.negate();
                v
            }
        }
    }

    pub fn dot(&self, other: &TernaryVector) -> u8 {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut c1 = 0u32;
        let mut c2 = 0u32;
        for i in 0..self.ones.len() {
            let (a1, a2, b1, b2) = (self.ones[i], self.twos[i], other.ones[i], other.twos[i]);
            c1 += ((a1 & b1) | (a2 & b2)).count_ones();
            c2 += ((a1 & b2) | (a2 & b1)).count_ones();
        }
        ((c1 + 2 * c2) % 3) as u8
    }

    /// A copy with the positions in `drop` (sorted, distinct) removed.
    pub fn without_positions(&self, drop: &[usize]) -> TernaryVector {
        let mut out = TernaryVector::zeros(self.len - drop.len());
        let mut d = 0;
        let mut j = 0;
        for i in 0..self.len {
            if d < drop.len() && drop[d] == i {
                d += 1;
                continue;
            }
            out.set(j, self.get(i));
            j += 1;
        }
        out
    }

    /// A copy keeping only the positions in `keep`, in that order.
    pub fn select(&self, keep: &[usize]) -> TernaryVector {
        let mut out = TernaryVector::zeros(keep.len());
        for (j, &i) in keep.iter().enumerate() {
            out.set(j, self.get(i));
        }
        out
    }

    /// The cyclic shift sending coordinate `i` to `i + 1 (mod len)`.
    pub fn cyclic_shift(&self) -> TernaryVector {
        let mut out = TernaryVector::zeros(self.len);
        for i in 0..self.len {
            out.set((i + 1) % self.len, self.get(i));
        }
        out
    }
}

impl std::ops::Add for &TernaryVector {
    type Output = TernaryVector;
    fn add(self, rhs: &TernaryVector) -> TernaryVector {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Neg for &TernaryVector {
    type Output = TernaryVector;
    fn neg(self) -> TernaryVector {
        self.scaled(2)
    }
}

/// A dense matrix over GF(3), stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryMatrix {
    ncols: usize,
    rows: Vec<TernaryVector>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: TernaryMatrix,
    pub pivots: Vec<usize>,
}

impl TernaryMatrix {
    pub fn new(ncols: usize, rows: Vec<TernaryVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Domain(format!(
                "row of length {} in a matrix with {ncols} columns",
                bad.len()
            )));
        }
        Ok(TernaryMatrix { ncols, rows })
    }

    pub fn empty(ncols: usize) -> Self {
        TernaryMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = TernaryVector::zeros(n);
                v.set(i, 1);
                v
            })
            .collect();
        TernaryMatrix { ncols: n, rows }
    }

    pub fn from_symbol_rows(ncols: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| TernaryVector::from_symbols(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ncols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[TernaryVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &TernaryVector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.rows[r].get(c)
    }

    pub fn into_rows(self) -> Vec<TernaryVector> {
        self.rows
    }

    pub fn push_row(&mut self, row: TernaryVector) {
        assert_eq!(row.len(), self.ncols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn transpose(&self) -> TernaryMatrix {
        let rows = (0..self.ncols)
            .map(|c| {
                let mut v = TernaryVector::zeros(self.rows.len());
                for (r, row) in self.rows.iter().enumerate() {
                    v.set(r, row.get(c));
                }
                v
            })
            .collect();
        TernaryMatrix {
            ncols: self.rows.len(),
            rows,
        }
    }

    /// `M · vᵀ`, one symbol per row.
    pub fn mul_vec(&self, v: &TernaryVector) -> TernaryVector {
        let mut out = TernaryVector::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            out.set(i, row.dot(v));
        }
        out
    }

    /// `uᵀ · M`, the combination of rows with coefficients `u`.
    pub fn combine(&self, u: &[u8]) -> TernaryVector {
        assert_eq!(u.len(), self.rows.len(), "coefficient count mismatch");
        let mut out = TernaryVector::zeros(self.ncols);
        for (row, &c) in self.rows.iter().zip(u) {
            out.add_scaled(row, c);
        }
        out
    }

    pub fn without_columns(&self, drop: &[usize]) -> TernaryMatrix {
        TernaryMatrix {
            ncols: self.ncols - drop.len(),
            rows: self.rows.iter().map(|r| r.without_positions(drop)).collect(),
        }
    }

    pub fn select_columns(&self, keep: &[usize]) -> TernaryMatrix {
        TernaryMatrix {
            ncols: keep.len(),
            rows: self.rows.iter().map(|r| r.select(keep)).collect(),
        }
    }

    /// Reduced row-echelon form: leftmost pivots, each scaled to 1, zero rows dropped.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c) != 0) else {
                continue;
            };
            rows.swap(r, p);
            let lead = rows[r].get(c);
            if lead == 2 {
                rows[r].negate();
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r {
                    let x = row.get(c);
                    if x != 0 {
                        row.add_scaled(&pivot_row, gf3::neg(x));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon {
            matrix: TernaryMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    pub fn rref(&self) -> TernaryMatrix {
        self.echelon().matrix
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{w : M · wᵀ = 0}`, one vector per non-pivot column.
    pub fn null_space(&self) -> TernaryMatrix {
        let Echelon { matrix, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.ncols - pivots.len());
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = TernaryVector::zeros(self.ncols);
            v.set(f, 1);
            for (row, &p) in matrix.rows.iter().zip(&pivots) {
                let x = row.get(f);
                if x != 0 {
                    v.set(p, gf3::neg(x));
                }
            }
            basis.push(v);
        }
        TernaryMatrix {
            ncols: self.ncols,
            rows: basis,
        }
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &TernaryVector) -> bool {
        let base = self.rank();
        let mut extended = self.clone();
        extended.push_row(v.clone());
        extended.rank() == base
    }

    /// Whether the two matrices span the same row space.
    pub fn same_row_space(&self, other: &TernaryMatrix) -> bool {
        self.ncols == other.ncols && self.rref() == other.rref()
    }
}

/// A row space built one vector at a time, kept in reduced form so that
/// membership tests cost one pass over the basis.
#[derive(Clone, Debug)]
pub struct RowReducer {
    len: usize,
    basis: Vec<(usize, TernaryVector)>,
}

impl RowReducer {
    pub fn new(len: usize) -> Self {
        RowReducer {
            len,
            basis: Vec::new(),
        }
    }

    pub fn from_matrix(m: &TernaryMatrix) -> Self {
        let mut r = RowReducer::new(m.ncols());
        for row in m.rows() {
            r.insert(row);
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the current basis; zero iff `v` is in the span.
    pub fn reduce(&self, v: &TernaryVector) -> TernaryVector {
        assert_eq!(v.len(), self.len, "length mismatch");
        let mut w = v.clone();
        for (p, b) in &self.basis {
            let x = w.get(*p);
            if x != 0 {
                w.add_scaled(b, gf3::neg(x));
            }
        }
        w
    }

    pub fn contains(&self, v: &TernaryVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &TernaryVector) -> bool {
        let mut w = self.reduce(v);
        let Some((p, lead)) = w.first_nonzero() else {
            return false;
        };
        if lead == 2 {
            w.negate();
        }
        // Keep earlier basis vectors free of the new pivot.
        for (_, b) in self.basis.iter_mut() {
            let x = b.get(p);
            if x != 0 {
                b.add_scaled(&w, gf3::neg(x));
            }
        }
        self.basis.push((p, w));
        true
    }
}
