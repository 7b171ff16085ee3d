use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact number of codewords of each weight. Zero entries are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    dim: usize,
    counts: BTreeMap<usize, BigUint>,
}

impl WeightDistribution {
    pub fn new(n: usize, dim: usize, counts: BTreeMap<usize, BigUint>) -> Result<Self> {
        if let Some((&w, _)) = counts.range(n + 1..).next() {
            return Err(Error::Domain(format!("weight {w} exceeds length {n}")));
        }
        let counts = counts.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(WeightDistribution { n, dim, counts })
    }

    /// From `(weight, count)` pairs; repeated weights are summed.
    pub fn from_pairs<C: Into<BigUint>>(
        n: usize,
        dim: usize,
        pairs: impl IntoIterator<Item = (usize, C)>,
    ) -> Result<Self> {
        let mut counts: BTreeMap<usize, BigUint> = BTreeMap::new();
        for (w, c) in pairs {
            *counts.entry(w).or_default() += c.into();
        }
        Self::new(n, dim, counts)
    }

    pub fn from_histogram(n: usize, dim: usize, histogram: &[u64]) -> Result<Self> {
        Self::from_pairs(n, dim, histogram.iter().enumerate().map(|(w, &c)| (w, c)))
    }

    /// The distribution `{0: 1}` of the zero code.
    pub fn zero_code(n: usize) -> Self {
        WeightDistribution {
            n,
            dim: 0,
            counts: BTreeMap::from([(0, BigUint::one())]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A_w`, zero when absent.
    pub fn get(&self, w: usize) -> BigUint {
        self.counts.get(&w).cloned().unwrap_or_default()
    }

    pub fn get_int(&self, w: usize) -> BigInt {
        BigInt::from(self.get(w))
    }

    /// Nonzero `(weight, count)` entries in increasing weight order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(&w, c)| (w, c))
    }

    pub fn support_weights(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    /// Smallest nonzero weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// `Σ A_i = 3^dim` and `A_0 = 1`.
    pub fn is_linear_code_distribution(&self) -> bool {
        self.total() == num_traits::pow(BigUint::from(3u8), self.dim) && self.get(0).is_one()
    }

    /// All `n + 1` entries as signed integers.
    pub fn dense(&self) -> Vec<BigInt> {
        (0..=self.n).map(|w| self.get_int(w)).collect()
    }

    /// The weight enumerator written as `1 + A z^w + …`.
    pub fn enumerator_string(&self) -> String {
        let terms: Vec<String> = self
            .iter()
            .map(|(w, c)| match w {
                0 => c.to_string(),
                _ => format!("{c}z^{w}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("distribution serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Domain(format!("bad distribution JSON: {e}")))
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}, k={}] {}", self.n, self.dim, self.enumerator_string())
    }
}

struct Counts<'a>(&'a BTreeMap<usize, BigUint>);

impl Serialize for Counts<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (w, c) in self.0 {
            map.serialize_entry(&w.to_string(), &c.to_string())?;
        }
        map.end()
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("WeightDistribution", 3)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("counts", &Counts(&self.counts))?;
        s.end()
    }
}

#[derive(Deserialize)]
struct RawDistribution {
    n: usize,
    dim: usize,
    counts: BTreeMap<String, String>,
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDistribution::deserialize(deserializer)?;
        let mut counts = BTreeMap::new();
        for (w, c) in raw.counts {
            let w: usize = w.parse().map_err(D::Error::custom)?;
            let c: BigUint = c.parse().map_err(D::Error::custom)?;
            counts.insert(w, c);
        }
        WeightDistribution::new(raw.n, raw.dim, counts).map_err(D::Error::custom)
    }
}
