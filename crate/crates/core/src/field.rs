//! Arithmetic in GF(3^m).
//!
//! Elements are stored as the base-3 integer of their coefficient vector in
//! the polynomial basis `1, α, …, α^{m-1}` (constant term least significant).
//! The modulus is the lexicographically smallest primitive polynomial of
//! degree `m`, comparing coefficients from the constant term upwards, so every
//! context built for the same `m` is identical.

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 16;

/// Arithmetic in the prime field GF(3), on symbols `0, 1, 2`.
pub mod gf3 {
    #[inline]
    pub fn add(a: u8, b: u8) -> u8 {
        (a + b) % 3
    }

    #[inline]
    pub fn sub(a: u8, b: u8) -> u8 {
        (a + 3 - b) % 3
    }

    #[inline]
    pub fn neg(a: u8) -> u8 {
        (3 - a) % 3
    }

    #[inline]
    pub fn mul(a: u8, b: u8) -> u8 {
        (a * b) % 3
    }

    /// Inverse of a nonzero symbol. Both 1 and 2 are involutions.
    #[inline]
    pub fn inv(a: u8) -> u8 {
        debug_assert!(a != 0, "0 has no inverse in GF(3)");
        a
    }

    /// The quadratic character: 1 on squares, -1 on non-squares, 0 at 0.
    #[inline]
    pub fn eta(a: u8) -> i32 {
        match a % 3 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

/// An element of GF(3^m), encoded as a base-3 integer of its coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw base-3 encoding. The caller is responsible for `code < 3^m`.
    pub const fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete model of GF(3^m) with a fixed primitive element α.
#[derive(Clone, Debug)]
pub struct FieldContext {
    m: usize,
    size: u32,
    /// Monic, `m + 1` coefficients, constant term first.
    modulus: Vec<u8>,
    pow3: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    basis_trace: Vec<u8>,
}

const NO_LOG: u32 = u32::MAX;

impl FieldContext {
    /// Builds GF(3^m) for `1 <= m <= 16`.
    pub fn new(m: usize) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::Size(format!(
                "extension degree m = {m} outside 1..={MAX_DEGREE}"
            )));
        }
        let pow3: Vec<u32> = (0..=m).map(|i| 3u32.pow(i as u32)).collect();
        let size = pow3[m];
        let modulus = smallest_primitive_polynomial(m);

        let group = (size - 1) as usize;
        let mut exp = Vec::with_capacity(group);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = vec![0u8; m];
        cur[0] = 1;
        for i in 0..group {
            let code = encode(&cur);
            debug_assert_eq!(log[code as usize], NO_LOG, "α is not primitive");
            exp.push(code);
            log[code as usize] = i as u32;
            times_x(&mut cur, &modulus);
        }

        let mut ctx = FieldContext {
            m,
            size,
            modulus,
            pow3,
            exp,
            log,
            basis_trace: Vec::new(),
        };
        ctx.basis_trace = (0..m)
            .map(|i| ctx.trace_by_frobenius(ctx.alpha_pow(i as u64)))
            .collect();
        Ok(ctx)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of field elements, `3^m`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the multiplicative group, `3^m - 1`.
    pub fn group_order(&self) -> u32 {
        self.size - 1
    }

    /// Coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// The primitive element α (the residue class of `x`).
    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    /// `α^e`, exponent taken modulo `3^m - 1`.
    #[inline]
    pub fn alpha_pow(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % self.group_order() as u64) as usize])
    }

    /// Builds an element from its coefficients in the polynomial basis.
    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<FieldElement> {
        if coeffs.len() > self.m {
            return Err(Error::Domain(format!(
                "{} coefficients for a degree-{} extension",
                coeffs.len(),
                self.m
            )));
        }
        Ok(FieldElement(encode(coeffs)))
    }

    /// The embedding of a GF(3) symbol.
    pub fn scalar(&self, c: u8) -> FieldElement {
        FieldElement((c % 3) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u8> {
        let mut out = vec![0u8; self.m];
        let mut code = x.0;
        for c in out.iter_mut() {
            *c = (code % 3) as u8;
            code /= 3;
        }
        out
    }

    /// Coefficient `i` of `x` in the polynomial basis.
    #[inline]
    pub fn coeff(&self, x: FieldElement, i: usize) -> u8 {
        ((x.0 / self.pow3[i]) % 3) as u8
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 || b != 0 {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let mut a = x.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 {
            out += ((3 - a % 3) % 3) * place;
            a /= 3;
            place *= 3;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    /// Multiplies by a GF(3) symbol.
    pub fn scale(&self, x: FieldElement, c: u8) -> FieldElement {
        match c % 3 {
            0 => FieldElement::ZERO,
            1 => x,
            _ => self.neg(x),
        }
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let e = self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64;
        self.alpha_pow(e)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let l = self.discrete_log(x)?;
        Ok(self.alpha_pow((self.group_order() - l) as u64))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.is_zero() {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let l = self.log[x.0 as usize] as u128;
        let n = self.group_order() as u128;
        self.alpha_pow(((l * (e as u128 % n)) % n) as u64)
    }

    /// The `i`-th power of Frobenius, `x^(3^i)`.
    pub fn frobenius(&self, x: FieldElement, i: usize) -> FieldElement {
        self.pow(x, 3u64.pow((i % self.m) as u32))
    }

    /// The exponent `e` in `[0, 3^m - 1)` with `α^e = x`.
    pub fn discrete_log(&self, x: FieldElement) -> Result<u32> {
        match self.log.get(x.0 as usize) {
            Some(&l) if l != NO_LOG => Ok(l),
            _ => Err(Error::Domain(format!(
                "discrete log of {} is undefined",
                x.0
            ))),
        }
    }

    /// Whether `x` is a square. Zero counts as a square (`0 = 0^2`).
    pub fn is_square(&self, x: FieldElement) -> bool {
        x.is_zero() || self.log[x.0 as usize] % 2 == 0
    }

    /// The absolute trace `Tr(x) = x + x^3 + … + x^(3^(m-1))`, computed through
    /// the precomputed traces of the basis elements.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u8 {
        let mut code = x.0;
        let mut acc = 0u32;
        for &t in &self.basis_trace {
            acc += (code % 3) * t as u32;
            code /= 3;
        }
        (acc % 3) as u8
    }

    /// The trace evaluated by summing the Frobenius conjugates directly.
    pub fn trace_by_frobenius(&self, x: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut conj = x;
        for _ in 0..self.m {
            acc = self.add(acc, conj);
            conj = self.pow(conj, 3);
        }
        debug_assert!(acc.0 < 3, "trace left the prime field");
        acc.0 as u8
    }

    /// `Tr(α^e)` for every `e` in `[0, 3^m - 1)`.
    pub fn trace_of_powers(&self) -> Vec<u8> {
        self.exp.iter().map(|&c| self.trace(FieldElement(c))).collect()
    }
}

fn encode(coeffs: &[u8]) -> u32 {
    coeffs
        .iter()
        .rev()
        .fold(0u32, |acc, &c| acc * 3 + (c % 3) as u32)
}

/// Multiplies a residue (degree < m) by `x` modulo the monic `modulus`.
fn times_x(cur: &mut [u8], modulus: &[u8]) {
    let m = cur.len();
    let top = cur[m - 1];
    for j in (1..m).rev() {
        cur[j] = cur[j - 1];
    }
    cur[0] = 0;
    if top != 0 {
        // x^m = -(f_0 + f_1 x + … + f_{m-1} x^{m-1})
        for j in 0..m {
            cur[j] = gf3::sub(cur[j], gf3::mul(top, modulus[j]));
        }
    }
}

fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
    let m = a.len();
    let mut acc = vec![0u8; m];
    // Horner over the coefficients of b, highest first.
    for &bc in b.iter().rev() {
        times_x(&mut acc, modulus);
        if bc != 0 {
            for (dst, &ac) in acc.iter_mut().zip(a) {
                *dst = gf3::add(*dst, gf3::mul(ac, bc));
            }
        }
    }
    acc
}

fn x_pow_mod(e: u64, modulus: &[u8]) -> Vec<u8> {
    let m = modulus.len() - 1;
    let mut result = vec![0u8; m];
    result[0] = 1;
    let mut base = vec![0u8; m];
    if m == 1 {
        // x ≡ -f_0
        base[0] = gf3::neg(modulus[0]);
    } else {
        base[1] = 1;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &base, modulus);
        }
        base = poly_mul_mod(&base, &base, modulus);
        e >>= 1;
    }
    result
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `x` has multiplicative order exactly `3^m - 1` modulo `modulus`.
pub fn is_primitive(modulus: &[u8]) -> bool {
    let m = modulus.len() - 1;
    if m == 0 || modulus[m] != 1 || modulus[0] == 0 {
        return false;
    }
    let order = 3u64.pow(m as u32) - 1;
    let mut one = vec![0u8; m];
    one[0] = 1;
    if x_pow_mod(order, modulus) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|p| x_pow_mod(order / p, modulus) != one)
}

/// The lexicographically smallest primitive monic polynomial of degree `m`,
/// comparing `(f_0, f_1, …, f_{m-1})` with the constant term first.
pub fn smallest_primitive_polynomial(m: usize) -> Vec<u8> {
    let count = 3u64.pow(m as u32);
    for idx in 0..count {
        let mut poly = vec![0u8; m + 1];
        let mut rest = idx;
        for i in (0..m).rev() {
            poly[i] = (rest % 3) as u8;
            rest /= 3;
        }
        poly[m] = 1;
        if is_primitive(&poly) {
            return poly;
        }
    }
    unreachable!("a primitive polynomial of every degree exists")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_two() {
        let ctx = FieldContext::new(1).unwrap();
        assert_eq!(ctx.modulus(), &[1, 1]);
        assert_eq!(ctx.alpha(), FieldElement::from_code(2));
        assert_eq!(ctx.group_order(), 2);
    }

    #[test]
    fn alpha_order_m3() {
        let ctx = FieldContext::new(3).unwrap();
        let a = ctx.alpha();
        for e in 1..26 {
            assert_ne!(ctx.pow(a, e), FieldElement::ONE, "order divides {e}");
        }
        assert_eq!(ctx.pow(a, 26), FieldElement::ONE);
    }

    #[test]
    fn alpha_order_m5_by_squaring() {
        let ctx = FieldContext::new(5).unwrap();
        // Independent of the tables: repeated squaring on the polynomial.
        let modulus = ctx.modulus().to_vec();
        let one = {
            let mut v = vec![0u8; 5];
            v[0] = 1;
            v
        };
        assert_eq!(x_pow_mod(242, &modulus), one);
        assert_ne!(x_pow_mod(121, &modulus), one);
        assert_ne!(x_pow_mod(22, &modulus), one);
        assert_eq!(prime_factors(242), vec![2, 11]);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(FieldContext::new(0), Err(Error::Size(_))));
        assert!(matches!(FieldContext::new(17), Err(Error::Size(_))));
    }

    #[test]
    fn modulus_is_smallest_primitive() {
        for m in 1..=6 {
            let chosen = smallest_primitive_polynomial(m);
            assert!(is_primitive(&chosen));
            // No smaller candidate in (f_0, …, f_{m-1}) order is primitive.
            let key = |p: &[u8]| p[..m].to_vec();
            let count = 3u64.pow(m as u32);
            for idx in 0..count {
                let mut poly = vec![0u8; m + 1];
                let mut rest = idx;
                for i in (0..m).rev() {
                    poly[i] = (rest % 3) as u8;
                    rest /= 3;
                }
                poly[m] = 1;
                if key(&poly) >= key(&chosen) {
                    break;
                }
                assert!(!is_primitive(&poly), "{poly:?} precedes {chosen:?}");
            }
        }
    }

    #[test]
    fn trace_examples() {
        let ctx3 = FieldContext::new(3).unwrap();
        assert_eq!(ctx3.trace(FieldElement::ZERO), 0);
        assert_eq!(ctx3.trace(FieldElement::ONE), 0);
        let ctx5 = FieldContext::new(5).unwrap();
        assert_eq!(ctx5.trace(FieldElement::ONE), 2);
    }

    #[test]
    fn discrete_log_examples() {
        let ctx = FieldContext::new(3).unwrap();
        assert_eq!(ctx.discrete_log(FieldElement::ONE), Ok(0));
        assert_eq!(ctx.discrete_log(ctx.alpha()), Ok(1));
        let minus_one = ctx.scalar(2);
        assert_eq!(ctx.alpha_pow(13), minus_one);
        assert_eq!(ctx.discrete_log(minus_one), Ok(13));
        assert!(matches!(
            ctx.discrete_log(FieldElement::ZERO),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn inverse_and_squares() {
        let ctx = FieldContext::new(4).unwrap();
        for x in ctx.elements().skip(1) {
            assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), FieldElement::ONE);
            assert_eq!(ctx.is_square(x), ctx.discrete_log(x).unwrap() % 2 == 0);
        }
    }
}
