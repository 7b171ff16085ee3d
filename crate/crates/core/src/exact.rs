//! Exact integer helpers shared by the closed-form formulas.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn big(x: impl Into<BigInt>) -> BigInt {
    x.into()
}

pub fn pow3(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(3u8), e as usize)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Stirling numbers of the second kind, `S(t, j) = (1/j!) Σ_i (-1)^{j-i} C(j,i) i^t`.
pub fn stirling2(t: u32, j: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for i in 0..=j {
        let term = binomial(j, i) * num_traits::pow(BigInt::from(i), t as usize);
        if (j - i) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let (q, r) = acc.div_rem(&factorial(j));
    debug_assert!(r.is_zero());
    q
}

/// `a / b`, failing unless the division is exact.
pub fn exact_div(a: &BigInt, b: &BigInt, what: &str) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::Inconsistent(format!("{what}: division by zero")));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!("{what}: {a}/{b} is not an integer")));
    }
    Ok(q)
}

/// Converts an exact rational to an integer, failing on a fractional value.
pub fn to_integer(x: &BigRational, what: &str) -> Result<BigInt> {
    if !x.is_integer() {
        return Err(Error::Inconsistent(format!("{what}: {x} is not an integer")));
    }
    Ok(x.to_integer())
}

/// Nonnegative conversion used for codeword counts.
pub fn to_count(x: BigInt, what: &str) -> Result<num_bigint::BigUint> {
    if x.is_negative() {
        return Err(Error::Inconsistent(format!("{what}: negative count {x}")));
    }
    Ok(x.magnitude().clone())
}
