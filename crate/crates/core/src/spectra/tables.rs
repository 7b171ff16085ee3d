//! Closed-form weight distributions of the three-weight family and of its
//! shortened and punctured codes, for odd `m`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{exact_div, pow3, to_count};

use super::WeightDistribution;

struct Params {
    m: u32,
    n: usize,
    p: BigInt,
    h: BigInt,
    q2: BigInt,
    full: BigInt,
}

impl Params {
    fn new(m: u32) -> Result<Self> {
        if m < 3 || m % 2 == 0 || m > 31 {
            return Err(Error::Domain(format!("closed forms need odd 3 <= m <= 31, got {m}")));
        }
        Ok(Params {
            m,
            n: ((3u64.pow(m) - 1) / 2) as usize,
            p: pow3(m - 1),
            h: pow3((m - 1) / 2),
            q2: pow3(m - 2),
            full: pow3(m),
        })
    }
}

fn build(n: usize, dim: usize, entries: Vec<(BigInt, BigInt)>) -> Result<WeightDistribution> {
    let mut pairs = vec![(0usize, num_bigint::BigUint::from(1u8))];
    for (w, c) in entries.into_iter().filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign) {
        let w = usize::try_from(&w).map_err(|_| Error::Inconsistent(format!("weight {w}")))?;
        pairs.push((w, to_count(c, &format!("A_{w}"))?));
    }
    let d = WeightDistribution::from_pairs(n, dim, pairs)?;
    if !d.is_linear_code_distribution() {
        return Err(Error::Inconsistent(format!(
            "closed form for [{n}, {dim}] sums to {}",
            d.total()
        )));
    }
    Ok(d)
}

/// `(3^{m-1} ± 3^{(m-1)/2})(3^m - 1)/2` and `(2·3^{m-1} + 1)(3^m - 1)` at the
/// three weights `3^{m-1} - 3^{(m-1)/2}`, `3^{m-1}`, `3^{m-1} + 3^{(m-1)/2}`.
pub fn predicted_three_weight(m: u32) -> Result<WeightDistribution> {
    let s = Params::new(m)?;
    let (p, h, f) = (&s.p, &s.h, &s.full);
    let two = BigInt::from(2);
    build(
        s.n,
        2 * m as usize,
        vec![
            (p - h, exact_div(&((p + h) * (f - 1)), &two, "A_low")?),
            (p.clone(), (p * 2 + 1) * (f - 1)),
            (p + h, exact_div(&((p - h) * (f - 1)), &two, "A_high")?),
        ],
    )
}

fn shortened_entries(s: &Params, t: u32) -> Result<Vec<(BigInt, BigInt)>> {
    let (p, h) = (&s.p, &s.h);
    Ok(match t {
        1 => {
            let two = BigInt::from(2);
            vec![
                (p - h, exact_div(&((p + h * 2 - 1) * (p + h)), &two, "A_low")?),
                (p.clone(), (p * 2 + 1) * (p - 1)),
                (p + h, exact_div(&((p - h * 2 - 1) * (p - h)), &two, "A_high")?),
            ]
        }
        2 => {
            let six = BigInt::from(6);
            vec![
                (p - h, exact_div(&((p + h * 2 - 1) * (p + h * 3)), &six, "A_low")?),
                (p.clone(), (p * 2 + 1) * (&s.q2 - 1)),
                (p + h, exact_div(&((p - h * 2 - 1) * (p - h * 3)), &six, "A_high")?),
            ]
        }
        _ => return Err(Error::Domain(format!("t = {t}; closed forms exist for t = 1, 2"))),
    })
}

/// Distribution of the code shortened on any `t` positions, `t ∈ {1, 2}`.
pub fn predicted_shortened(m: u32, t: u32) -> Result<WeightDistribution> {
    let s = Params::new(m)?;
    let entries = shortened_entries(&s, t)?;
    build(s.n - t as usize, 2 * m as usize - t as usize, entries)
}

/// Distribution of the code punctured on any `t` positions, `t ∈ {1, 2}`.
pub fn predicted_punctured(m: u32, t: u32) -> Result<WeightDistribution> {
    let s = Params::new(m)?;
    let mut entries = shortened_entries(&s, t)?;
    let (p, h, q2) = (&s.p, &s.h, &s.q2);
    match t {
        1 => entries.extend([
            (p - h - 1, p * (p - 1)),
            (p - 1, p * 2 * (p * 2 + 1)),
            (p + h - 1, p * (p - 1)),
        ]),
        2 => entries.extend([
            (p - h - 1, q2 * 2 * (p + h * 2 - 1)),
            (p - h - 2, q2 * 2 * (p - h - 1)),
            (p - 1, q2 * 4 * (p * 2 + 1)),
            (p - 2, q2 * 4 * (p * 2 + 1)),
            (p + h - 1, q2 * 2 * (p - h * 2 - 1)),
            (p + h - 2, q2 * 2 * (p + h - 1)),
        ]),
        _ => unreachable!("validated by shortened_entries"),
    }
    build(s.n - t as usize, 2 * s.m as usize, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(d: &WeightDistribution, expected: &[(usize, u64)]) {
        let got: Vec<(usize, u64)> = d
            .iter()
            .filter(|(w, _)| *w > 0)
            .map(|(w, c)| (w, u64::try_from(c).unwrap()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn three_weight_values() {
        check(&predicted_three_weight(3).unwrap(), &[(6, 156), (9, 494), (12, 78)]);
        check(&predicted_three_weight(5).unwrap(), &[(72, 10890), (81, 39446), (90, 8712)]);
    }

    #[test]
    fn shortened_values() {
        check(&predicted_shortened(5, 1).unwrap(), &[(72, 4410), (81, 13040), (90, 2232)]);
        check(&predicted_shortened(5, 2).unwrap(), &[(72, 1764), (81, 4238), (90, 558)]);
        assert_eq!(predicted_shortened(3, 2).unwrap().total(), 81u32.into());
    }

    #[test]
    fn punctured_values() {
        check(
            &predicted_punctured(5, 1).unwrap(),
            &[(71, 6480), (72, 4410), (80, 26406), (81, 13040), (89, 6480), (90, 2232)],
        );
        check(
            &predicted_punctured(5, 2).unwrap(),
            &[
                (70, 3834),
                (71, 5292),
                (72, 1764),
                (79, 17604),
                (80, 17604),
                (81, 4238),
                (88, 4806),
                (89, 3348),
                (90, 558),
            ],
        );
    }

    #[test]
    fn every_odd_m_sums_correctly() {
        for m in [3, 5, 7, 9, 11] {
            for t in [1, 2] {
                predicted_shortened(m, t).unwrap();
                predicted_punctured(m, t).unwrap();
            }
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(predicted_three_weight(4).is_err());
        assert!(predicted_shortened(5, 3).is_err());
        assert!(predicted_punctured(1, 1).is_err());
    }
}
