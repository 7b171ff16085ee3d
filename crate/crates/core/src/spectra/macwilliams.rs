//! The MacWilliams transform over GF(3) and the closed-form dual spectrum of
//! the three-weight family.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, exact_div, pow3, to_count};

use super::WeightDistribution;

/// Coefficients of `(1 + 2z)^{n-i} (1 - z)^i`, i.e. the ternary Krawtchouk
/// values `K_k(i)` for `k = 0..=n`.
pub fn krawtchouk_column(n: usize, i: usize) -> Vec<BigInt> {
    let plus: Vec<BigInt> = (0..=n - i)
        .map(|l| binomial((n - i) as u64, l as u64) << l)
        .collect();
    let minus: Vec<BigInt> = (0..=i)
        .map(|j| {
            let b = binomial(i as u64, j as u64);
            if j % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    let mut out = vec![BigInt::zero(); n + 1];
    for (l, p) in plus.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        for (j, q) in minus.iter().enumerate() {
            out[l + j] += p * q;
        }
    }
    out
}

/// Dual weight distribution `A⊥_k = 3^{-dim} Σ_i A_i K_k(i)`.
pub fn macwilliams_transform(a: &WeightDistribution) -> Result<WeightDistribution> {
    let n = a.n();
    let dim = a.dim();
    if dim > n || !a.is_linear_code_distribution() {
        return Err(Error::Domain(format!(
            "not the distribution of a [{n}, {dim}] linear code: total {}",
            a.total()
        )));
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (i, count) in a.iter() {
        let count = BigInt::from(count.clone());
        for (dst, k) in acc.iter_mut().zip(krawtchouk_column(n, i)) {
            *dst += &count * k;
        }
    }
    let scale = pow3(dim as u32);
    let mut pairs = Vec::new();
    for (k, v) in acc.into_iter().enumerate() {
        let q = exact_div(&v, &scale, &format!("dual count A⊥_{k}"))?;
        pairs.push((k, to_count(q, &format!("dual count A⊥_{k}"))?));
    }
    let out = WeightDistribution::from_pairs(n, n - dim, pairs)?;
    debug_assert!(out.is_linear_code_distribution());
    Ok(out)
}

/// `C(n, 0..=len)` by the multiplicative recurrence.
fn binomial_row(n: u64, len: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(len + 1);
    let mut c = BigInt::one();
    for i in 0..=len as u64 {
        row.push(c.clone());
        c = if i < n { c * (n - i) / (i + 1) } else { BigInt::zero() };
    }
    row
}

/// The closed-form triple sum for the dual of the three-weight family:
/// `3^{2m} A⊥_k = a·S(w₁) + 2^k C(n,k) + b·S(w₂) + c·S(w₃)` with
/// `S(w) = Σ_i (-1)^i C(w,i) C(n-w, k-i) 2^{k-i}`.
struct DualClosedForm {
    m: u32,
    n: usize,
    coefficients: [BigInt; 3],
    weight_rows: [Vec<BigInt>; 3],
    rest_rows: [Vec<BigInt>; 3],
    length_row: Vec<BigInt>,
}

impl DualClosedForm {
    fn new(m: u32) -> Result<Self> {
        if !(3..=31).contains(&m) || m % 2 == 0 {
            return Err(Error::Domain(format!("closed form needs odd 3 <= m <= 31, got {m}")));
        }
        let n = ((3u64.pow(m) - 1) / 2) as usize;
        let full = pow3(m);
        let p = pow3(m - 1);
        let h = pow3((m - 1) / 2);
        let two = BigInt::from(2u8);
        let a = exact_div(&((&p + &h) * (&full - 1)), &two, "a")?;
        // (3^m - 3^{m-1} + 1)(3^m - 1), equal to (2·3^{m-1} + 1)(3^m - 1).
        let b = (&full - &p + 1) * (&full - 1);
        let c = exact_div(&((&p - &h) * (&full - 1)), &two, "c")?;
        let as_u64 = |x: &BigInt| -> u64 { x.try_into().expect("fits in u64") };
        let weights = [as_u64(&(&p - &h)), as_u64(&p), as_u64(&(&p + &h))];
        Ok(DualClosedForm {
            m,
            n,
            coefficients: [a, b, c],
            weight_rows: weights.map(|w| binomial_row(w, n)),
            rest_rows: weights.map(|w| binomial_row(n as u64 - w, n)),
            length_row: binomial_row(n as u64, n),
        })
    }

    fn value(&self, k: usize) -> Result<BigInt> {
        if k > self.n {
            return Err(Error::Domain(format!("k = {k} exceeds length {}", self.n)));
        }
        let mut total = &self.length_row[k] << k;
        for j in 0..3 {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let term = (&self.weight_rows[j][i] * &self.rest_rows[j][k - i]) << (k - i);
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            total += acc * &self.coefficients[j];
        }
        exact_div(&total, &pow3(2 * self.m), &format!("3^(2m) A⊥_{k}"))
    }
}

/// `A_k` of the dual of any code with the three-weight distribution of the
/// `C(0,1)` family, from the closed-form triple sum.
pub fn dual_closed_form(m: u32, k: usize) -> Result<BigInt> {
    DualClosedForm::new(m)?.value(k)
}

/// `(3^m - 1)(3^{m-1} - 1)/8`, the number of weight-4 dual codewords.
pub fn dual_weight4_count(m: u32) -> BigInt {
    ((pow3(m) - 1) * (pow3(m - 1) - 1)) / BigInt::from(8u8)
}

/// The full dual distribution from [`dual_closed_form`].
pub fn dual_closed_form_distribution(m: u32) -> Result<WeightDistribution> {
    let form = DualClosedForm::new(m)?;
    let n = form.n;
    let mut pairs = Vec::new();
    for k in 0..=n {
        let v = form.value(k)?;
        pairs.push((k, to_count(v, "closed-form dual count")?));
    }
    WeightDistribution::from_pairs(n, n - 2 * m as usize, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_space_dual_is_zero() {
        let n = 4;
        let pairs = (0..=n).map(|w| (w, binomial(n as u64, w as u64).magnitude().clone() << w));
        let full = WeightDistribution::from_pairs(n, n, pairs).unwrap();
        assert_eq!(macwilliams_transform(&full).unwrap(), WeightDistribution::zero_code(n));
    }

    #[test]
    fn involution() {
        let rep = WeightDistribution::from_pairs(3, 1, [(0usize, 1u32), (3, 2)]).unwrap();
        let dual = macwilliams_transform(&rep).unwrap();
        assert_eq!(dual.dim(), 2);
        assert_eq!(macwilliams_transform(&dual).unwrap(), rep);
    }

    #[test]
    fn corrupt_input_rejected() {
        let bad = WeightDistribution::from_pairs(3, 2, [(0usize, 1u32), (1, 8)]).unwrap();
        assert!(matches!(macwilliams_transform(&bad), Err(Error::Inconsistent(_))));
        let short = WeightDistribution::from_pairs(3, 1, [(0usize, 1u32)]).unwrap();
        assert!(matches!(macwilliams_transform(&short), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(dual_closed_form(5, 0).unwrap(), BigInt::one());
        assert_eq!(dual_closed_form(5, 4).unwrap(), BigInt::from(2420));
        assert_eq!(dual_closed_form(3, 4).unwrap(), BigInt::from(26));
        assert_eq!(dual_weight4_count(5), BigInt::from(2420));
        for k in 1..4 {
            assert!(dual_closed_form(5, k).unwrap().is_zero());
        }
        assert!(dual_closed_form(4, 1).is_err());
    }

    #[test]
    fn closed_form_matches_transform_of_three_weight_spectrum() {
        for m in [3, 5] {
            let primal = crate::spectra::predicted_three_weight(m).unwrap();
            assert_eq!(dual_closed_form_distribution(m).unwrap(), macwilliams_transform(&primal).unwrap());
        }
    }
}
