//! Pless power moments over GF(3) and the exact solver for distributions
//! supported on a few known weights.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, pow3, stirling2, to_count, to_integer};

use super::WeightDistribution;

const Q: i64 = 3;

/// Solves `A x = b` by Gauss–Jordan elimination over any exact field.
/// Returns `None` when the system is singular.
pub fn solve_linear<T>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>>
where
    T: Num + Clone,
{
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "square system");
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let lead = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() / lead.clone();
        }
        b[col] = b[col].clone() / lead;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let delta = f.clone() * a[col][c].clone();
                a[r][c] = a[r][c].clone() - delta;
            }
            b[r] = b[r].clone() - f * b[col].clone();
        }
    }
    Some(b)
}

/// Right-hand side of the `t`-th power moment for an `[n, dim]` code:
/// `Σ_{i=0}^{t} (-1)^i A⊥_i Σ_{j=i}^{t} j! S(t,j) q^{dim-j} (q-1)^{j-i} C(n-i, n-j)`.
///
/// `dual` holds `A⊥_0, A⊥_1, …`; entries past its end count as zero.
pub fn moment_rhs(n: usize, dim: usize, t: u32, dual: &[BigInt]) -> BigRational {
    let mut total = BigRational::zero();
    for i in 0..=(t as usize) {
        let Some(ai) = dual.get(i) else { break };
        if ai.is_zero() {
            continue;
        }
        let mut inner = BigRational::zero();
        for j in i..=(t as usize) {
            if j > n {
                break;
            }
            let q_pow = if dim >= j {
                BigRational::from_integer(pow3((dim - j) as u32))
            } else {
                BigRational::new(BigInt::one(), pow3((j - dim) as u32))
            };
            let coeff = factorial(j as u64)
                * stirling2(t, j as u64)
                * num_traits::pow(BigInt::from(Q - 1), j - i)
                * binomial((n - i) as u64, (n - j) as u64);
            inner += q_pow * BigRational::from_integer(coeff);
        }
        let term = inner * BigRational::from_integer(ai.clone());
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `Σ_i i^t A_i`.
pub fn power_moment(a: &WeightDistribution, t: u32) -> BigInt {
    a.iter()
        .map(|(w, c)| num_traits::pow(BigInt::from(w), t as usize) * BigInt::from(c.clone()))
        .sum()
}

/// Checks the `t`-th power moment identity between a distribution and its dual.
pub fn moment_holds(a: &WeightDistribution, dual: &WeightDistribution, t: u32) -> bool {
    let dual_prefix: Vec<BigInt> = (0..=t as usize).map(|i| dual.get_int(i)).collect();
    BigRational::from_integer(power_moment(a, t)) == moment_rhs(a.n(), a.dim(), t, &dual_prefix)
}

/// Recovers `A_{w_1}, …, A_{w_s}` of an `[n, dim]` code whose nonzero words
/// all have weights in `weights`, from `A⊥_1, …, A⊥_{s-1}` and the first `s`
/// power moments.
pub fn pless_solve(
    n: usize,
    dim: usize,
    weights: &[usize],
    dual_prefix: &[BigInt],
) -> Result<WeightDistribution> {
    let s = weights.len();
    if s == 0 || s > 4 {
        return Err(Error::Domain(format!("{s} unknown weights; 1..=4 supported")));
    }
    if dual_prefix.len() != s - 1 {
        return Err(Error::Domain(format!(
            "{s} weights need {} dual coefficients, got {}",
            s - 1,
            dual_prefix.len()
        )));
    }
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w > n) {
        return Err(Error::Domain(format!("weight {w} outside 1..={n}")));
    }
    let mut dual = vec![BigInt::one()];
    dual.extend_from_slice(dual_prefix);

    let mut matrix = Vec::with_capacity(s);
    let mut rhs = Vec::with_capacity(s);
    for t in 0..s as u32 {
        matrix.push(
            weights
                .iter()
                .map(|&w| BigRational::from_integer(num_traits::pow(BigInt::from(w), t as usize)))
                .collect::<Vec<_>>(),
        );
        let mut r = moment_rhs(n, dim, t, &dual);
        if t == 0 {
            // A_0 = 1 contributes only to the zeroth moment.
            r -= BigRational::one();
        }
        rhs.push(r);
    }
    let solution = solve_linear(matrix, rhs).ok_or_else(|| {
        Error::Degenerate(format!("moment system for weights {weights:?} is singular"))
    })?;
    let mut pairs = vec![(0usize, num_bigint::BigUint::one())];
    for (&w, x) in weights.iter().zip(solution) {
        let v = to_integer(&x, &format!("A_{w}"))?;
        pairs.push((w, to_count(v, &format!("A_{w}"))?));
    }
    WeightDistribution::from_pairs(n, dim, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_solver_over_small_and_big_rationals() {
        use num_rational::Rational64;
        let i = Rational64::from_integer;
        let x = solve_linear(vec![vec![i(2), i(1)], vec![i(1), i(3)]], vec![i(3), i(5)]).unwrap();
        assert_eq!(x, vec![Rational64::new(4, 5), Rational64::new(7, 5)]);
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        assert!(solve_linear(vec![vec![r(1), r(2)], vec![r(2), r(4)]], vec![r(1), r(2)]).is_none());
    }

    #[test]
    fn single_weight() {
        let d = pless_solve(7, 3, &[4], &[]).unwrap();
        assert_eq!(d.get(4), 26u32.into());
    }

    #[test]
    fn shortened_systems() {
        let d = pless_solve(120, 9, &[72, 81, 90], &[BigInt::zero(), BigInt::zero()]).unwrap();
        assert_eq!(
            (d.get(72), d.get(81), d.get(90)),
            (4410u32.into(), 13040u32.into(), 2232u32.into())
        );
        let d = pless_solve(119, 8, &[72, 81, 90], &[BigInt::zero(), BigInt::from(2)]).unwrap();
        assert_eq!(
            (d.get(72), d.get(81), d.get(90)),
            (1764u32.into(), 4238u32.into(), 558u32.into())
        );
    }

    #[test]
    fn zeroth_and_first_moments_match_closed_forms() {
        // t = 0: q^k; t = 1: q^{k-1}((q-1)n - A⊥_1)
        let n = 120;
        let k = 9;
        assert_eq!(moment_rhs(n, k, 0, &[BigInt::one()]), BigRational::from_integer(pow3(9)));
        assert_eq!(
            moment_rhs(n, k, 1, &[BigInt::one(), BigInt::zero()]),
            BigRational::from_integer(pow3(8) * 2 * 120)
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(pless_solve(10, 2, &[], &[]), Err(Error::Domain(_))));
        assert!(matches!(pless_solve(10, 2, &[3, 4], &[]), Err(Error::Domain(_))));
        assert!(matches!(pless_solve(10, 2, &[3, 3], &[BigInt::zero()]), Err(Error::Degenerate(_))));
        // The moments force A_3 = 1/2.
        assert!(matches!(pless_solve(4, 1, &[1, 3], &[BigInt::from(5)]), Err(Error::Inconsistent(_))));
    }
}
