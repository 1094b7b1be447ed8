//! Graded free modules (as multisets of twists) and finitely supported
//! dimension functions.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{RaoError, Result};

/// `C(n, k)` for small arguments, zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Dimension of the degree-`v` part of `k[x0..x3]`.
pub fn dim_r(v: i64) -> i64 {
    if v < 0 {
        0
    } else {
        binomial(v + 3, 3)
    }
}

/// `(v+1)(v+2)(v+3)/6`, the Euler characteristic of `O(v)` on P^3, for every `v`.
pub fn chi_o(v: i64) -> i64 {
    (v + 1) * (v + 2) * (v + 3) / 6
}

/// `⊕ R(k)^{m_k}` stored as twist `k` → multiplicity `m_k > 0`.
///
/// A summand `R(-i)` generated in degree `i` has twist `-i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeModule(BTreeMap<i32, u32>);

impl FreeModule {
    pub fn new() -> Self {
        FreeModule(BTreeMap::new())
    }

    pub fn from_twists(pairs: impl IntoIterator<Item = (i32, u32)>) -> Self {
        let mut m = FreeModule::new();
        for (twist, mult) in pairs {
            m.add_summand(twist, mult);
        }
        m
    }

    /// Build from generator degrees, i.e. `R(-i)^{m}` for each `(i, m)`.
    pub fn from_generator_degrees(pairs: impl IntoIterator<Item = (i32, u32)>) -> Self {
        Self::from_twists(pairs.into_iter().map(|(i, m)| (-i, m)))
    }

    pub fn add_summand(&mut self, twist: i32, mult: u32) {
        if mult > 0 {
            *self.0.entry(twist).or_insert(0) += mult;
        }
    }

    /// Removes `mult` copies of `R(twist)`; fails if fewer are present.
    pub fn remove_summand(&mut self, twist: i32, mult: u32) -> Result<()> {
        if mult == 0 {
            return Ok(());
        }
        let have = self.mult(twist);
        if have < mult {
            return Err(RaoError::inconsistent(format!(
                "cannot remove R({twist})^{mult} from a module with only {have} copies"
            )));
        }
        if have == mult {
            self.0.remove(&twist);
        } else {
            self.0.insert(twist, have - mult);
        }
        Ok(())
    }

    pub fn mult(&self, twist: i32) -> u32 {
        self.0.get(&twist).copied().unwrap_or(0)
    }

    /// Multiplicity of generators in degree `i`, i.e. of `R(-i)`.
    pub fn mult_in_degree(&self, i: i32) -> u32 {
        self.mult(-i)
    }

    pub fn rank(&self) -> u64 {
        self.0.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.0.iter().map(|(&k, &m)| (k, m))
    }

    /// `(generator degree, multiplicity)` pairs in increasing degree.
    pub fn generator_degrees(&self) -> impl Iterator<Item = (i32, u32)> + '_ {
        self.0.iter().rev().map(|(&k, &m)| (-k, m))
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            out.add_summand(k, m);
        }
        out
    }

    /// `self ⊖ other`, failing when some multiplicity would go negative.
    pub fn checked_difference(&self, other: &FreeModule) -> Option<FreeModule> {
        let mut out = self.clone();
        for (k, m) in other.iter() {
            out.remove_summand(k, m).ok()?;
        }
        Some(out)
    }

    pub fn twisted(&self, shift: i32) -> FreeModule {
        FreeModule(self.0.iter().map(|(&k, &m)| (k + shift, m)).collect())
    }

    pub fn repeated(&self, times: u32) -> FreeModule {
        FreeModule(self.0.iter().filter(|_| times > 0).map(|(&k, &m)| (k, m * times)).collect())
    }

    /// `Hom(-, R)`: `R(k)` becomes `R(-k)`.
    pub fn dual(&self) -> FreeModule {
        FreeModule(self.0.iter().map(|(&k, &m)| (-k, m)).collect())
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(k, m)| if *m == 1 { format!("R({k})") } else { format!("R({k})^{m}") }).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `r` copies of the Koszul resolution of `k(-t)`:
/// `[R(-t)^r, R(-t-1)^{4r}, R(-t-2)^{6r}, R(-t-3)^{4r}, R(-t-4)^r]`.
pub fn koszul_shape(t: i32, r: i64) -> Result<[FreeModule; 5]> {
    if r <= 0 {
        return Err(RaoError::InvalidArgument(format!("Koszul multiplicity must be positive, got {r}")));
    }
    let r = r as u32;
    Ok(std::array::from_fn(|k| FreeModule::from_twists([(-t - k as i32, binomial(4, k as i64) as u32 * r)])))
}

/// Splits `a` and `b` into their degreewise-minimum common part and the two leftovers.
pub fn module_cancel(a: &FreeModule, b: &FreeModule) -> (FreeModule, FreeModule, FreeModule) {
    let mut common = FreeModule::new();
    for (k, m) in a.iter() {
        common.add_summand(k, m.min(b.mult(k)));
    }
    let rest_a = a.checked_difference(&common).expect("common part is a submultiset");
    let rest_b = b.checked_difference(&common).expect("common part is a submultiset");
    (common, rest_a, rest_b)
}

/// A finitely supported function degree → dimension, such as `v ↦ dim M_v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i32, u64>);

impl GradedDims {
    pub fn new() -> Self {
        GradedDims(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i32, u64)>) -> Self {
        let mut g = GradedDims::new();
        for (v, d) in pairs {
            g.set(v, d);
        }
        g
    }

    pub fn set(&mut self, v: i32, dim: u64) {
        if dim == 0 {
            self.0.remove(&v);
        } else {
            self.0.insert(v, dim);
        }
    }

    pub fn get(&self, v: i32) -> u64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    /// `v ↦ self(shift - v)`, the dimension function of a graded dual twisted by `shift`.
    pub fn reflected(&self, shift: i32) -> GradedDims {
        GradedDims(self.0.iter().map(|(&k, &v)| (shift - k, v)).collect())
    }
}
