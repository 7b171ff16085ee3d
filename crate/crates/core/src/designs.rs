//! Supports of fixed-weight codewords as block designs, pair-coverage
//! verification, and the λ values of the designs held by the three-weight
//! family and its dual.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::TernaryCode;
use crate::error::{Error, Result};
use crate::exact::{binomial, exact_div, pow3, to_integer};
use crate::field::FieldContext;
use crate::geometry::{blocks_in_dual, pg_lines, BlockSet};
use crate::spectra::{
    dual_closed_form, enumerate_distribution_with, fold_codewords, macwilliams_transform, Budget,
};

/// Distinct supports of the codewords of one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supports {
    pub blocks: BlockSet,
    /// Number of codewords with each support, aligned with `blocks.blocks()`.
    pub multiplicities: Vec<u64>,
}

impl Supports {
    /// Whether every support carries exactly the pair `{c, -c}`.
    pub fn is_sign_pairing(&self) -> bool {
        self.multiplicities.iter().all(|&k| k == 2)
    }

    pub fn codewords(&self) -> u64 {
        self.multiplicities.iter().sum()
    }
}

fn bits_to_indices(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            out.push(w * 64 + x.trailing_zeros() as usize);
            x &= x - 1;
        }
    }
    out
}

/// Supports of all weight-`w` codewords, deduplicated with multiplicities.
pub fn supports_of_weight(code: &TernaryCode, w: usize, budget: Budget) -> Result<Supports> {
    if w > code.n() {
        return Err(Error::Domain(format!("weight {w} exceeds length {}", code.n())));
    }
    let counts = fold_codewords(
        code,
        budget,
        HashMap::<Vec<u64>, u64>::new,
        |acc, c| {
            if c.weight() == w {
                *acc.entry(c.support_bits()).or_default() += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    )?;
    let mut pairs: Vec<(Vec<usize>, u64)> = counts
        .into_iter()
        .map(|(bits, k)| (bits_to_indices(&bits), k))
        .collect();
    pairs.sort_unstable();
    let multiplicities = pairs.iter().map(|(_, k)| *k).collect();
    let blocks = BlockSet::new(code.n(), pairs.into_iter().map(|(b, _)| b))?;
    Ok(Supports {
        blocks,
        multiplicities,
    })
}

/// Parameters of a block set after counting pair coverage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Design {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    /// Number of blocks through each pair, when constant.
    pub lambda: Option<u64>,
    /// `b·C(k,2) = λ·C(v,2)`; false when λ is undefined.
    pub counting_identity: bool,
}

impl Design {
    pub fn is_2_design(&self) -> bool {
        self.lambda.is_some() && self.counting_identity
    }

    pub fn is_steiner(&self) -> bool {
        self.is_2_design() && self.lambda == Some(1)
    }
}

/// Counts how many blocks contain each of the `C(v,2)` point pairs.
pub fn verify_2_design(blocks: &BlockSet) -> Result<Design> {
    let v = blocks.v();
    let k = blocks
        .k()
        .ok_or_else(|| Error::Domain("blocks must be non-empty and share one size".into()))?;
    if v < 2 {
        return Err(Error::Domain(format!("{v} points have no pairs")));
    }
    let pairs = v * (v - 1) / 2;
    // Pair (i, j), i < j, at offset i(2v - i - 1)/2 + (j - i - 1).
    let row = |i: usize| i * (2 * v - i - 1) / 2;
    let counts = blocks
        .blocks()
        .par_chunks(256)
        .fold(
            || vec![0u32; pairs],
            |mut acc, chunk| {
                for block in chunk {
                    for (a, &i) in block.iter().enumerate() {
                        let base = row(i);
                        for &j in &block[a + 1..] {
                            acc[base + (j - i - 1)] += 1;
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u32; pairs],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let first = counts[0];
    let lambda = counts.iter().all(|&c| c == first).then_some(first as u64);
    let b = blocks.len();
    let counting_identity = lambda.is_some_and(|l| {
        binomial(k as u64, 2) * BigInt::from(b) == binomial(v as u64, 2) * BigInt::from(l)
    });
    Ok(Design {
        v,
        k,
        b,
        lambda,
        counting_identity,
    })
}

fn check_odd_m(m: u32, min: u32) -> Result<()> {
    if m < min || m % 2 == 0 {
        return Err(Error::Domain(format!("needs odd m >= {min}, got {m}")));
    }
    Ok(())
}

/// `λ = (A_k(C) + A_k(C_{0,1}))/2 - A_k(C_{0})` for supports of weight `k`.
pub fn lambda_primal(a_k: &BigInt, a_k_short1: &BigInt, a_k_short2: &BigInt) -> Result<BigInt> {
    let half = exact_div(&(a_k + a_k_short2), &BigInt::from(2), "(A_k + A_k(C_{0,1}))/2")?;
    Ok(half - a_k_short1)
}

/// The closed forms of λ for the three nonzero weights of the family:
/// `3^{m-2}(3^{m-1} ∓ 3^{(m-1)/2} - 1)` and `2·3^{m-2}(2·3^{m-1} + 1)`.
pub fn lambda_primal_closed_form(m: u32, weight: usize) -> Result<BigInt> {
    check_odd_m(m, 3)?;
    let p = pow3(m - 1);
    let h = pow3((m - 1) / 2);
    let q2 = pow3(m - 2);
    let w = BigInt::from(weight);
    if w == &p - &h {
        Ok(&q2 * (&p - &h - 1))
    } else if w == p {
        Ok(&q2 * 2 * (&p * 2 + 1))
    } else if w == &p + &h {
        Ok(&q2 * (&p + &h - 1))
    } else {
        Err(Error::Domain(format!("{weight} is not a weight of the family at m = {m}")))
    }
}

/// `A = (3^m - 1)(3^m - 3)`, four times the number of ordered pairs of
/// distinct points of PG(m-1, 3).
pub fn ordered_pair_factor(m: u32) -> BigInt {
    (pow3(m) - 1) * (pow3(m) - 3)
}

/// λ of the dual supports of weight `k ∈ 4..=7`:
/// `1`, `3^{m-1} - 9`, `(3/4)(3^{2m-2} - 38·3^{m-2} + 53)`,
/// `(1/20)(3^{3m-2} - 5·3^{2m} + 1006·3^{m-2} - 1000)`.
pub fn lambda_dual(m: u32, k: usize) -> Result<BigInt> {
    check_odd_m(m, 3)?;
    let r = |x: BigInt| BigRational::from_integer(x);
    let n = |x: i64| BigRational::from_integer(BigInt::from(x));
    let value = match k {
        4 => n(1),
        5 => r(pow3(m - 1)) - n(9),
        6 => n(3) / n(4) * (r(pow3(2 * m - 2)) - n(38) * r(pow3(m - 2)) + n(53)),
        7 => {
            (r(pow3(3 * m - 2)) - n(5) * r(pow3(2 * m)) + n(1006) * r(pow3(m - 2)) - n(1000))
                / n(20)
        }
        _ => return Err(Error::Domain(format!("dual λ known for k = 4..=7, got {k}"))),
    };
    to_integer(&value, &format!("λ_{k} at m = {m}"))
}

/// `λ_k = 2k(k-1) A_k(C⊥) / A`, the pair coverage of `A_k(C⊥)/2` blocks of
/// size `k` on `N` points.
pub fn lambda_dual_from_count(m: u32, k: usize, a_k: &BigInt) -> Result<BigInt> {
    let num = a_k * BigInt::from(2 * k * (k - 1));
    exact_div(&num, &ordered_pair_factor(m), &format!("λ_{k} from A_{k}(C⊥)"))
}

/// `A_k(C⊥) = λ_k · A / (2k(k-1))`.
pub fn dual_count_from_lambda(m: u32, k: usize, lambda: &BigInt) -> Result<BigInt> {
    let denom = BigInt::from(2 * k * (k - 1));
    exact_div(&(lambda * ordered_pair_factor(m)), &denom, &format!("A_{k}(C⊥)"))
}

/// The weight-4 dual count from every available route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A4Adjudication {
    pub m: u32,
    /// From the MacWilliams transform (or enumeration) of the code.
    pub computed: BigInt,
    /// `(3^m - 1)(3^{m-1} - 1)/8`.
    pub closed_form: BigInt,
    /// Twice the number of lines of PG(m-1, 3).
    pub twice_blocks: BigInt,
    /// `λ_4 · A / 24` with `λ_4 = 1`.
    pub from_lambda: BigInt,
    /// `A / 8`, kept to show that it differs from the count; `None` when not an integer.
    pub a_over_8: Option<BigInt>,
}

impl A4Adjudication {
    pub fn new(m: u32, computed: BigInt, blocks: usize) -> Result<Self> {
        check_odd_m(m, 3)?;
        let a = ordered_pair_factor(m);
        let eight = BigInt::from(8);
        Ok(A4Adjudication {
            m,
            computed,
            closed_form: (pow3(m) - 1) * (pow3(m - 1) - 1) / &eight,
            twice_blocks: BigInt::from(2 * blocks),
            from_lambda: dual_count_from_lambda(m, 4, &lambda_dual(m, 4)?)?,
            a_over_8: exact_div(&a, &eight, "A/8").ok(),
        })
    }

    /// Computed, closed-form, block and λ-derived values all agree.
    pub fn consistent(&self) -> bool {
        self.computed == self.closed_form
            && self.computed == self.twice_blocks
            && self.computed == self.from_lambda
    }

    /// Whether `A / 8` reproduces the computed count.
    pub fn a_over_8_holds(&self) -> bool {
        self.a_over_8.as_ref() == Some(&self.computed)
    }
}

/// A design verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    pub t: Option<u32>,
    pub lambda: Option<u64>,
    pub is_steiner: bool,
    pub checks: BTreeMap<String, bool>,
}

impl DesignReport {
    pub fn from_design(d: &Design) -> Self {
        let mut checks = BTreeMap::new();
        checks.insert("pair_coverage_constant".into(), d.lambda.is_some());
        checks.insert("counting_identity".into(), d.counting_identity);
        DesignReport {
            v: d.v,
            k: d.k,
            b: d.b,
            t: d.is_2_design().then_some(2),
            lambda: d.lambda,
            is_steiner: d.is_steiner(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&c| c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// The lines of PG(m-1, 3) checked against a code of the family.
#[derive(Clone, Debug)]
pub struct SteinerReport {
    pub report: DesignReport,
    pub blocks: BlockSet,
    pub dual_a4: BigUint,
}

/// Checks that the lines of PG(m-1, 3) are the supports of the weight-4 dual
/// codewords: (a) every `±χ_B` is orthogonal to the code; (b) `A_4(C⊥)`
/// from the MacWilliams transform is twice the number of lines; (c) the lines
/// form a 2-design with `λ = 1`.
pub fn verify_steiner_claim(ctx: &FieldContext, code: &TernaryCode, budget: Budget) -> Result<SteinerReport> {
    let lines = pg_lines(ctx)?;
    let in_dual = blocks_in_dual(code, &lines);
    let dual = macwilliams_transform(&enumerate_distribution_with(code, budget)?)?;
    let dual_a4 = dual.get(4);
    let count_matches = BigUint::from(2 * lines.len()) == dual_a4;
    let design = verify_2_design(&lines)?;
    let mut report = DesignReport::from_design(&design);
    report.checks.insert("characteristic_vectors_in_dual".into(), in_dual);
    report.checks.insert("a4_dual_equals_twice_blocks".into(), count_matches);
    report.checks.insert("steiner_2_design".into(), design.is_steiner());
    Ok(SteinerReport {
        report,
        blocks: lines,
        dual_a4,
    })
}

/// `A_k(C⊥)` for `k ∈ 4..=7` three ways: closed-form dual spectrum,
/// λ-derived count, and the supplied computed value.
pub fn dual_count_agrees(m: u32, k: usize, computed: &BigInt) -> Result<bool> {
    let lambda = lambda_dual(m, k)?;
    let from_lambda = dual_count_from_lambda(m, k, &lambda)?;
    Ok(&from_lambda == computed && &dual_closed_form(m, k)? == computed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_code, ExponentSet};

    #[test]
    fn zero_weight_support() {
        let s = supports_of_weight(&TernaryCode::full(3), 0, Budget::default()).unwrap();
        assert_eq!(s.blocks.blocks(), &[Vec::<usize>::new()]);
        assert_eq!(s.multiplicities, vec![1]);
    }

    #[test]
    fn pg3_lines_are_steiner() {
        let ctx = FieldContext::new(3).unwrap();
        let lines = pg_lines(&ctx).unwrap();
        let d = verify_2_design(&lines).unwrap();
        assert_eq!((d.v, d.k, d.b, d.lambda), (13, 4, 13, Some(1)));
        assert!(d.is_steiner());
        let broken = verify_2_design(&lines.without_block(0)).unwrap();
        assert_eq!(broken.lambda, None);
        assert!(!broken.is_2_design());
    }

    #[test]
    fn mixed_sizes_rejected() {
        let b = BlockSet::new(4, [vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert!(matches!(verify_2_design(&b), Err(Error::Domain(_))));
    }

    #[test]
    fn dual_supports_at_m3() {
        let ctx = FieldContext::new(3).unwrap();
        let code = build_code(&ctx, &ExponentSet::new(3, &[0, 1]).unwrap()).unwrap();
        let s = supports_of_weight(&code.dual(), 4, Budget::default()).unwrap();
        assert_eq!(s.blocks, pg_lines(&ctx).unwrap());
        assert!(s.is_sign_pairing());
    }

    #[test]
    fn primal_lambda_values() {
        let l = |a: i64, b: i64, c: i64| lambda_primal(&a.into(), &b.into(), &c.into()).unwrap();
        assert_eq!(l(10890, 4410, 1764), BigInt::from(1917));
        assert_eq!(l(39446, 13040, 4238), BigInt::from(8802));
        assert_eq!(l(8712, 2232, 558), BigInt::from(2403));
        assert_eq!(lambda_primal_closed_form(5, 72).unwrap(), BigInt::from(1917));
        assert_eq!(lambda_primal_closed_form(5, 81).unwrap(), BigInt::from(8802));
        assert_eq!(lambda_primal_closed_form(5, 90).unwrap(), BigInt::from(2403));
        assert!(lambda_primal_closed_form(5, 80).is_err());
        assert!(matches!(
            lambda_primal(&1.into(), &0.into(), &0.into()),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn dual_lambda_values() {
        let at = |m| (4..=7).map(|k| lambda_dual(m, k).unwrap()).collect::<Vec<_>>();
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(at(5), big(&[1, 72, 4191, 66262]));
        assert_eq!(at(3), big(&[1, 0, 15, 28]));
        for m in [3, 5, 7, 9] {
            assert_eq!(lambda_dual(m, 4).unwrap(), BigInt::from(1));
            for k in 4..=6 {
                assert!(dual_count_agrees(m, k, &dual_closed_form(m, k).unwrap()).unwrap(), "m={m} k={k}");
            }
            // The closed-form λ_7 covers a third of the pairs the weight-7 count implies.
            let from_count = lambda_dual_from_count(m, 7, &dual_closed_form(m, 7).unwrap()).unwrap();
            assert_eq!(from_count, lambda_dual(m, 7).unwrap() * 3);
        }
        assert!(lambda_dual(5, 8).is_err());
    }

    #[test]
    fn a4_adjudication_rejects_a_over_8() {
        let adj = A4Adjudication::new(5, BigInt::from(2420), 1210).unwrap();
        assert!(adj.consistent());
        assert_eq!(adj.a_over_8, Some(BigInt::from(7260)));
        assert!(!adj.a_over_8_holds());
    }

    #[test]
    fn steiner_claim_m3() {
        let ctx = FieldContext::new(3).unwrap();
        let code = build_code(&ctx, &ExponentSet::new(3, &[0, 1]).unwrap()).unwrap();
        let r = verify_steiner_claim(&ctx, &code, Budget::default()).unwrap();
        assert!(r.report.passed(), "{:?}", r.report);
        assert_eq!(r.blocks.len(), 13);
        assert_eq!(r.dual_a4, 26u32.into());
        let v: serde_json::Value = serde_json::from_str(&r.report.to_json()).unwrap();
        for key in ["v", "k", "b", "t", "lambda", "is_steiner", "checks"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
