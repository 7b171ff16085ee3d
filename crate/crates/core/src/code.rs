use crate::error::{Error, Result};
use crate::linalg::{RowReducer, TernaryMatrix, TernaryVector};

/// A linear code over GF(3) given by a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct TernaryCode {
    n: usize,
    generator: TernaryMatrix,
    label: String,
}

impl TernaryCode {
    /// Wraps a generator whose rows must be linearly independent.
    pub fn from_generator(generator: TernaryMatrix, label: impl Into<String>) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.nrows() {
            return Err(Error::Inconsistent(format!(
                "generator has {} rows but rank {rank}",
                generator.nrows()
            )));
        }
        Ok(TernaryCode {
            n: generator.ncols(),
            generator,
            label: label.into(),
        })
    }

    /// The code spanned by the rows of `spanning`, with redundant rows dropped
    /// (first occurrence wins, original order kept).
    pub fn from_spanning(spanning: &TernaryMatrix, label: impl Into<String>) -> Self {
        let mut reducer = RowReducer::new(spanning.ncols());
        let mut rows = Vec::new();
        for row in spanning.rows() {
            if reducer.insert(row) {
                rows.push(row.clone());
            }
        }
        TernaryCode {
            n: spanning.ncols(),
            generator: TernaryMatrix::new(spanning.ncols(), rows).expect("rows share a length"),
            label: label.into(),
        }
    }

    pub fn zero(n: usize) -> Self {
        TernaryCode {
            n,
            generator: TernaryMatrix::empty(n),
            label: format!("zero code of length {n}"),
        }
    }

    /// The whole space GF(3)^n.
    pub fn full(n: usize) -> Self {
        TernaryCode {
            n,
            generator: TernaryMatrix::identity(n),
            label: format!("GF(3)^{n}"),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &TernaryMatrix {
        &self.generator
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The dual code, from the null space of the generator.
    pub fn dual(&self) -> TernaryCode {
        TernaryCode {
            n: self.n,
            generator: self.generator.null_space(),
            label: format!("dual of {}", self.label),
        }
    }

    pub fn contains(&self, v: &TernaryVector) -> bool {
        v.len() == self.n && RowReducer::from_matrix(&self.generator).contains(v)
    }

    /// Whether `v` is orthogonal to every generator row (membership in the dual).
    pub fn is_orthogonal_to(&self, v: &TernaryVector) -> bool {
        self.generator.rows().iter().all(|g| g.dot(v) == 0)
    }

    /// Equality as sets of codewords.
    pub fn same_code(&self, other: &TernaryCode) -> bool {
        self.n == other.n && self.dim() == other.dim() && self.generator.same_row_space(&other.generator)
    }

    /// Whether the code is closed under the cyclic shift `i -> i + 1 (mod n)`.
    pub fn shift_closure_check(&self) -> bool {
        let reducer = RowReducer::from_matrix(&self.generator);
        self.generator
            .rows()
            .iter()
            .all(|g| reducer.contains(&g.cyclic_shift()))
    }

    /// The codeword `Σ u_r g_r`.
    pub fn encode(&self, info: &[u8]) -> TernaryVector {
        self.generator.combine(info)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_code_is_cyclic() {
        assert!(TernaryCode::zero(6).shift_closure_check());
    }

    #[test]
    fn non_cyclic_code_detected() {
        let g = TernaryMatrix::from_symbol_rows(5, &[vec![1, 0, 0, 0, 0], vec![0, 1, 1, 0, 0]])
            .unwrap();
        let code = TernaryCode::from_generator(g, "toy").unwrap();
        let shifted = code.generator().row(1).cyclic_shift();
        // The shifted row raises the rank, so it is outside the code.
        let mut extended = code.generator().clone();
        extended.push_row(shifted);
        assert_eq!(extended.rank(), 3);
        assert!(!code.shift_closure_check());
    }

    #[test]
    fn repetition_code_is_cyclic() {
        let g = TernaryMatrix::from_symbol_rows(4, &[vec![1, 1, 1, 1]]).unwrap();
        let code = TernaryCode::from_generator(g, "rep").unwrap();
        assert!(code.shift_closure_check());
        assert_eq!(code.dual().dim(), 3);
    }

    #[test]
    fn dependent_rows_rejected() {
        let g = TernaryMatrix::from_symbol_rows(3, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        assert!(TernaryCode::from_generator(g.clone(), "bad").is_err());
        assert_eq!(TernaryCode::from_spanning(&g, "ok").dim(), 1);
    }
}
