//! Graded Betti numbers of an ideal and the numerics they determine.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::FreeModule;
use crate::error::{RaoError, Result};

type Rows = BTreeMap<u8, BTreeMap<i32, u32>>;

/// `β_{j,i}` for `j ∈ {1,2,3}`, keyed by the positive generator degree `i`.
///
/// Zero entries and empty rows are never stored, so structural equality is
/// equality of tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Rows", into = "Rows")]
pub struct BettiTable {
    rows: [BTreeMap<i32, u32>; 3],
}

impl TryFrom<Rows> for BettiTable {
    type Error = String;

    fn try_from(raw: Rows) -> std::result::Result<Self, String> {
        let mut t = BettiTable::new();
        for (j, row) in raw {
            if !(1..=3).contains(&j) {
                return Err(format!("Betti row {j} is out of range (expected 1, 2 or 3)"));
            }
            for (i, m) in row {
                t.set(j as usize, i, m);
            }
        }
        Ok(t)
    }
}

impl From<BettiTable> for Rows {
    fn from(t: BettiTable) -> Rows {
        (1..=3u8).filter(|&j| !t.rows[j as usize - 1].is_empty()).map(|j| (j, t.rows[j as usize - 1].clone())).collect()
    }
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(degree, multiplicity)` lists for rows 1, 2, 3.
    pub fn from_rows(b1: &[(i32, u32)], b2: &[(i32, u32)], b3: &[(i32, u32)]) -> Self {
        let mut t = BettiTable::new();
        for (j, row) in [b1, b2, b3].into_iter().enumerate() {
            for &(i, m) in row {
                t.add(j + 1, i, m);
            }
        }
        t
    }

    pub fn from_modules(f1: &FreeModule, f2: &FreeModule, f3: &FreeModule) -> Self {
        let mut t = BettiTable::new();
        for (j, f) in [f1, f2, f3].into_iter().enumerate() {
            t.set_row(j + 1, f);
        }
        t
    }

    fn check_row(j: usize) {
        assert!((1..=3).contains(&j), "Betti row index {j} out of range");
    }

    pub fn get(&self, j: usize, i: i32) -> u32 {
        Self::check_row(j);
        self.rows[j - 1].get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, j: usize, i: i32, m: u32) {
        Self::check_row(j);
        if m == 0 {
            self.rows[j - 1].remove(&i);
        } else {
            self.rows[j - 1].insert(i, m);
        }
    }

    pub fn add(&mut self, j: usize, i: i32, m: u32) {
        let cur = self.get(j, i);
        self.set(j, i, cur + m);
    }

    /// `(degree, multiplicity)` pairs of row `j` in increasing degree.
    pub fn row(&self, j: usize) -> impl Iterator<Item = (i32, u32)> + '_ {
        Self::check_row(j);
        self.rows[j - 1].iter().map(|(&i, &m)| (i, m))
    }

    /// Row `j` as the free module `⊕ R(-i)^{β_{j,i}}`.
    pub fn module(&self, j: usize) -> FreeModule {
        FreeModule::from_generator_degrees(self.row(j))
    }

    pub fn set_row(&mut self, j: usize, f: &FreeModule) {
        Self::check_row(j);
        self.rows[j - 1] = f.generator_degrees().collect();
    }

    pub fn row_is_empty(&self, j: usize) -> bool {
        Self::check_row(j);
        self.rows[j - 1].is_empty()
    }

    pub fn rank(&self, j: usize) -> u64 {
        self.row(j).map(|(_, m)| m as u64).sum()
    }

    /// `(j, i, β_{j,i})` for every nonzero entry.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, u32)> + '_ {
        (1..=3).flat_map(move |j| self.row(j).map(move |(i, m)| (j, i, m)))
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.entries().map(|(_, i, _)| i).max()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.entries().map(|(_, i, _)| i).min()
    }

    /// Initial degree `min{i : β_{1,i} > 0}`.
    pub fn initial_degree(&self) -> Option<i32> {
        self.rows[0].keys().next().copied()
    }

    /// `S_n = Σ_j (-1)^{j+1} Σ_i i^n β_{j,i}`.
    pub fn power_sum(&self, n: u32) -> i128 {
        self.entries()
            .map(|(j, i, m)| {
                let sign = if j % 2 == 1 { 1 } else { -1 };
                sign * (i as i128).pow(n) * m as i128
            })
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=3 {
            let row: Vec<String> = self.row(j).map(|(i, m)| format!("{i}:{m}")).collect();
            writeln!(f, "β{j}: {{{}}}", row.join(", "))?;
        }
        Ok(())
    }
}

/// Degree and arithmetic genus read off the Betti table of a curve ideal:
/// `d = -S₂/2` and `g = -S₃/6 - 2d + 1`.
pub fn hilbert_numerics(betti: &BettiTable) -> Result<(i64, i64)> {
    let (s0, s1) = (betti.power_sum(0), betti.power_sum(1));
    if s0 != 1 || s1 != 0 {
        return Err(RaoError::NotCurveIdeal(format!("S0 = {s0} (expected 1), S1 = {s1} (expected 0)")));
    }
    let s2 = betti.power_sum(2);
    let s3 = betti.power_sum(3);
    if s2 % 2 != 0 {
        return Err(RaoError::inconsistent(format!("S2 = {s2} is odd, so the degree is not an integer")));
    }
    let d = -s2 / 2;
    if s3 % 6 != 0 {
        return Err(RaoError::inconsistent(format!("S3 = {s3} is not divisible by 6, so the genus is not an integer")));
    }
    let g = -s3 / 6 - 2 * d + 1;
    if d < 1 {
        return Err(RaoError::NotCurveIdeal(format!("degree {d} is not positive")));
    }
    Ok((d as i64, g as i64))
}
