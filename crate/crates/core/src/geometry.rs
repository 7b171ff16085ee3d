//! The projective space PG(m-1, 3), its lines as a Steiner system, and the
//! projective generalized Reed–Muller codes over its points.
//!
//! Point `i` is the class of `ρ(α^i)` for `0 <= i < N = (3^m - 1)/2`; since
//! `α^N = -1`, a nonzero `x` lies on point `log(x) mod N`.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::code::TernaryCode;
use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::field::{gf3, FieldContext, FieldElement};
use crate::linalg::{TernaryMatrix, TernaryVector};

/// The points of PG(m-1, 3) in the order `i ↦ ρ(α^i)`.
#[derive(Clone, Debug)]
pub struct ProjectivePointSet {
    m: usize,
    points: Vec<Vec<u8>>,
    /// Point index by field-element code; `u32::MAX` for zero.
    index_by_code: Vec<u32>,
}

impl ProjectivePointSet {
    pub fn new(ctx: &FieldContext) -> Self {
        let n = ctx.group_order() / 2;
        let points = (0..n as u64).map(|i| ctx.coeffs(ctx.alpha_pow(i))).collect();
        let index_by_code = (0..ctx.size())
            .map(|c| match ctx.discrete_log(FieldElement::from_code(c)) {
                Ok(l) => l % n,
                Err(_) => u32::MAX,
            })
            .collect();
        ProjectivePointSet {
            m: ctx.m(),
            points,
            index_by_code,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinates of point `i`, i.e. `ρ(α^i)`.
    pub fn point(&self, i: usize) -> &[u8] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    /// The point on which the nonzero element `x` lies.
    pub fn index_of_element(&self, x: FieldElement) -> Option<usize> {
        match self.index_by_code.get(x.code() as usize) {
            Some(&i) if i != u32::MAX => Some(i as usize),
            _ => None,
        }
    }

    /// The point through a nonzero coordinate vector.
    pub fn index_of(&self, v: &[u8]) -> Result<usize> {
        if v.len() != self.m || v.iter().any(|&c| c > 2) {
            return Err(Error::Domain(format!("{v:?} is not a vector of GF(3)^{}", self.m)));
        }
        let code = v.iter().rev().fold(0u32, |acc, &c| acc * 3 + c as u32);
        self.index_of_element(FieldElement::from_code(code))
            .ok_or_else(|| Error::Domain("the zero vector is not a projective point".into()))
    }
}

/// Scales the first nonzero coordinate to 1; `None` for the zero vector.
pub fn canonical_representative(v: &[u8]) -> Option<Vec<u8>> {
    let lead = *v.iter().find(|&&c| c != 0)?;
    let s = gf3::inv(lead);
    Some(v.iter().map(|&c| gf3::mul(c, s)).collect())
}

/// A family of blocks over points `0..v`, each block a sorted index set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSet {
    v: usize,
    k: Option<usize>,
    blocks: Vec<Vec<usize>>,
}

impl BlockSet {
    /// Sorts every block and the family; repeated blocks are an error.
    pub fn new(v: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Domain(format!("block {b:?} repeats a point")));
            }
            if let Some(&bad) = b.iter().find(|&&p| p >= v) {
                return Err(Error::Domain(format!("point {bad} outside 0..{v}")));
            }
        }
        blocks.sort_unstable();
        if let Some(w) = blocks.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("block {:?} repeated", w[0])));
        }
        let k = match blocks.first() {
            Some(b) if blocks.iter().all(|c| c.len() == b.len()) => Some(b.len()),
            _ => None,
        };
        Ok(BlockSet { v, k, blocks })
    }

    /// Like [`BlockSet::new`] but silently merges repeated blocks.
    pub fn deduplicated(v: usize, blocks: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let set: HashSet<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Self::new(v, set)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Common block size, if all blocks have the same size.
    pub fn k(&self) -> Option<usize> {
        self.k
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn without_block(&self, i: usize) -> BlockSet {
        let mut blocks = self.blocks.clone();
        blocks.remove(i);
        BlockSet::new(self.v, blocks).expect("subfamily of a valid block set")
    }

    /// `{"v": …, "k": …, "blocks": [[…], …]}` with blocks in lexicographic order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("block set serializes")
    }

    /// Symbol 1 on the points of block `i`, 0 elsewhere.
    pub fn characteristic_vector(&self, i: usize) -> TernaryVector {
        let mut x = TernaryVector::zeros(self.v);
        for &p in &self.blocks[i] {
            x.set(p, 1);
        }
        x
    }
}

/// Lines of PG(m-1, 3): every `{u, v, u+v, u-v}` for independent `u, v`.
pub fn pg_lines(ctx: &FieldContext) -> Result<BlockSet> {
    if ctx.m() < 2 {
        return Err(Error::Domain(format!("PG({}, 3) has no lines", ctx.m() as i64 - 1)));
    }
    let pts = ProjectivePointSet::new(ctx);
    let n = pts.len();
    let mut seen: HashSet<[usize; 4]> = HashSet::new();
    let mut covered = vec![false; n * n];
    for i in 0..n {
        let u = ctx.alpha_pow(i as u64);
        for j in i + 1..n {
            if covered[i * n + j] {
                continue;
            }
            let v = ctx.alpha_pow(j as u64);
            let on = |x| pts.index_of_element(x).expect("u, v independent");
            let mut line = [i, j, on(ctx.add(u, v)), on(ctx.sub(u, v))];
            line.sort_unstable();
            for a in 0..4 {
                for b in a + 1..4 {
                    covered[line[a] * n + line[b]] = true;
                }
            }
            seen.insert(line);
        }
    }
    BlockSet::new(n, seen.into_iter().map(|l| l.to_vec()))
}

/// `{a², b², (a+b)², (a-b)²}` over `a, b ∈ GF(3^m)*`, `a ≠ ±b`, with the
/// square `α^{2i}` read as point `i`.
pub fn steiner_blocks_squares(ctx: &FieldContext) -> Result<BlockSet> {
    if ctx.m() < 3 {
        return Err(Error::Domain(format!("needs m >= 3, got {}", ctx.m())));
    }
    let group = ctx.group_order() as u64;
    let n = (group / 2) as usize;
    let square_index = |x: FieldElement| -> usize {
        let l = ctx.discrete_log(ctx.mul(x, x)).expect("nonzero square") as usize;
        debug_assert_eq!(l % 2, 0);
        l / 2
    };
    let mut seen: HashSet<[usize; 4]> = HashSet::new();
    for ea in 0..group {
        let a = ctx.alpha_pow(ea);
        for eb in 0..group {
            let b = ctx.alpha_pow(eb);
            let (s, d) = (ctx.add(a, b), ctx.sub(a, b));
            if s.is_zero() || d.is_zero() {
                continue;
            }
            let mut block = [square_index(a), square_index(b), square_index(s), square_index(d)];
            block.sort_unstable();
            seen.insert(block);
        }
    }
    BlockSet::new(n, seen.into_iter().map(|l| l.to_vec()))
}

/// Whether `±χ_B` is orthogonal to every row of `code` for every block `B`.
pub fn blocks_in_dual(code: &TernaryCode, blocks: &BlockSet) -> bool {
    if code.n() != blocks.v() {
        return false;
    }
    (0..blocks.len()).all(|i| {
        let chi = blocks.characteristic_vector(i);
        let neg = chi.scaled(2);
        code.is_orthogonal_to(&chi) && code.is_orthogonal_to(&neg)
    })
}

/// Exponent vectors with entries in `{0, 1, 2}`, even total degree in `(0, 2r]`.
fn pp_exponents(r: usize, m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut e = vec![0u8; m];
    loop {
        let deg: usize = e.iter().map(|&x| x as usize).sum();
        if deg > 0 && deg % 2 == 0 && deg <= 2 * r {
            out.push(e.clone());
        }
        let mut i = 0;
        while i < m && e[i] == 2 {
            e[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
        e[i] += 1;
    }
    out
}

fn evaluate_monomial(exps: &[u8], point: &[u8]) -> u8 {
    exps.iter().zip(point).fold(1u8, |acc, (&e, &x)| match e {
        0 => acc,
        1 => gf3::mul(acc, x),
        _ => gf3::mul(acc, gf3::mul(x, x)),
    })
}

fn prm_rows(ctx: &FieldContext, r: usize) -> Result<Vec<TernaryVector>> {
    let m = ctx.m();
    if r >= m {
        return Err(Error::Domain(format!("order r = {r} must satisfy r <= m - 1 = {}", m - 1)));
    }
    let pts = ProjectivePointSet::new(ctx);
    Ok(pp_exponents(r, m)
        .iter()
        .map(|e| {
            let symbols: Vec<u8> = pts.points().iter().map(|p| evaluate_monomial(e, p)).collect();
            TernaryVector::from_symbols(&symbols).expect("GF(3) symbols")
        })
        .collect())
}

/// `PRM*(r, m-1, 3)`: evaluations of the even-degree polynomials `PP(r, m-1, 3)`.
pub fn prm_star(ctx: &FieldContext, r: usize) -> Result<TernaryCode> {
    let n = ctx.group_order() as usize / 2;
    let rows = prm_rows(ctx, r)?;
    Ok(TernaryCode::from_spanning(
        &TernaryMatrix::new(n, rows)?,
        format!("PRM*({r},{},3)", ctx.m() - 1),
    ))
}

/// `PRM(r, m-1, 3)`: `PRM*` together with the constants.
pub fn prm(ctx: &FieldContext, r: usize) -> Result<TernaryCode> {
    let n = ctx.group_order() as usize / 2;
    let mut rows = vec![TernaryVector::from_symbols(&vec![1; n])?];
    rows.extend(prm_rows(ctx, r)?);
    Ok(TernaryCode::from_spanning(
        &TernaryMatrix::new(n, rows)?,
        format!("PRM({r},{},3)", ctx.m() - 1),
    ))
}

/// Dimension of the code of points and `(r-1)`-flats of PG(m-1, 3):
/// `N - Σ_{i=0}^{r-2} (-1)^i C((r-1-i)(p-1)-1, i) C(m-r+(r-1-i)p, m-1-i)`.
pub fn pd_code_dimension(r: usize, m: usize) -> Result<u64> {
    const P: u64 = 3;
    if r < 2 || r > m {
        return Err(Error::Domain(format!("needs 2 <= r <= m, got r = {r}, m = {m}")));
    }
    let (r, m) = (r as u64, m as u64);
    let n = (BigInt::from(P).pow(m as u32) - 1) / (P - 1);
    let mut sum = BigInt::from(0);
    for i in 0..=r - 2 {
        let term = binomial((r - 1 - i) * (P - 1) - 1, i) * binomial(m - r + (r - 1 - i) * P, m - 1 - i);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    u64::try_from(n - sum).map_err(|e| Error::Inconsistent(format!("dimension out of range: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_code, ExponentSet};

    #[test]
    fn point_map_matches_canonical_form() {
        let ctx = FieldContext::new(3).unwrap();
        let pts = ProjectivePointSet::new(&ctx);
        assert_eq!(pts.len(), 13);
        let canon: HashSet<Vec<u8>> = pts
            .points()
            .iter()
            .map(|p| canonical_representative(p).unwrap())
            .collect();
        assert_eq!(canon.len(), 13);
        for i in 0..26u64 {
            let v = ctx.coeffs(ctx.alpha_pow(i));
            assert_eq!(pts.index_of(&v).unwrap(), (i % 13) as usize);
            let c = canonical_representative(&v).unwrap();
            assert_eq!(pts.index_of(&c).unwrap(), (i % 13) as usize);
        }
        assert!(pts.index_of(&[0, 0, 0]).is_err());
    }

    #[test]
    fn line_counts() {
        assert_eq!(pg_lines(&FieldContext::new(2).unwrap()).unwrap().len(), 1);
        let l3 = pg_lines(&FieldContext::new(3).unwrap()).unwrap();
        assert_eq!((l3.v(), l3.k(), l3.len()), (13, Some(4), 13));
        assert!(pg_lines(&FieldContext::new(1).unwrap()).is_err());
    }

    #[test]
    fn squares_construction_gives_lines() {
        let ctx = FieldContext::new(3).unwrap();
        assert_eq!(steiner_blocks_squares(&ctx).unwrap(), pg_lines(&ctx).unwrap());
    }

    #[test]
    fn block_set_validation_and_json() {
        assert!(BlockSet::new(3, [vec![0, 3]]).is_err());
        assert!(BlockSet::new(3, [vec![0, 1], vec![1, 0]]).is_err());
        assert!(BlockSet::new(3, [vec![1, 1]]).is_err());
        let b = BlockSet::new(4, [vec![2, 3], vec![1, 0]]).unwrap();
        assert_eq!(b.to_json(), r#"{"v":4,"k":2,"blocks":[[0,1],[2,3]]}"#);
    }

    #[test]
    fn lines_are_dual_codewords() {
        let ctx = FieldContext::new(3).unwrap();
        let code = build_code(&ctx, &ExponentSet::full(3)).unwrap();
        assert!(blocks_in_dual(&code, &pg_lines(&ctx).unwrap()));
    }

    #[test]
    fn pp_monomials() {
        assert_eq!(pp_exponents(1, 3).len(), 6);
        assert_eq!(pp_exponents(0, 3).len(), 0);
    }

    #[test]
    fn prm_dimensions() {
        let ctx = FieldContext::new(3).unwrap();
        assert_eq!(prm_star(&ctx, 1).unwrap().dim(), 6);
        assert_eq!(prm(&ctx, 1).unwrap().dim(), 7);
        assert_eq!(prm(&ctx, 0).unwrap().dim(), 1);
        assert!(prm(&ctx, 3).is_err());
    }

    #[test]
    fn pd_dimension_values() {
        assert_eq!(pd_code_dimension(2, 3), Ok(7));
        assert_eq!(pd_code_dimension(2, 5), Ok(106));
        for m in 2..=9 {
            assert_eq!(pd_code_dimension(2, m).unwrap() as usize, (3usize.pow(m as u32) - 1) / 2 - m * (m + 1) / 2);
        }
        for m in 2..=7 {
            assert_eq!(pd_code_dimension(m, m), Ok(1));
        }
        assert!(pd_code_dimension(1, 3).is_err());
        assert!(pd_code_dimension(4, 3).is_err());
    }
}
