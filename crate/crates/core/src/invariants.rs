//! Numerical invariants of a curve computed from its Betti table and the
//! dimensions of its Rao module.

use serde::{Deserialize, Serialize};

use crate::algebra::{chi_o, dim_r, GradedDims, DEFAULT_CHARACTERISTIC};
use crate::error::{RaoError, Result};
use crate::resolution::{hilbert_numerics, BettiTable};

/// Hom dimensions a caller may assert for curves whose Rao module is not
/// determined by its dimensions (non-Buchsbaum, or diameter above 2).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomOverrides {
    #[serde(rename = "hom_I_M_0", default, skip_serializing_if = "Option::is_none")]
    pub hom_i_m_0: Option<u64>,
    #[serde(rename = "hom_I_M_-4", default, skip_serializing_if = "Option::is_none")]
    pub hom_i_m_m4: Option<u64>,
    #[serde(rename = "hom_M_E_0", default, skip_serializing_if = "Option::is_none")]
    pub hom_m_e_0: Option<u64>,
    #[serde(rename = "hom_M_E_-4", default, skip_serializing_if = "Option::is_none")]
    pub hom_m_e_m4: Option<u64>,
    #[serde(rename = "hom_M_M_0", default, skip_serializing_if = "Option::is_none")]
    pub hom_m_m_0: Option<u64>,
    /// The caller asserts `₀Ext^i(M,M) = 0` for `i ≥ 2`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ext_vanishing: bool,
}

/// The JSON shape of a curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInput {
    #[serde(default = "default_char")]
    pub char: u32,
    pub betti: BettiTable,
    #[serde(default)]
    pub rao: GradedDims,
    #[serde(default)]
    pub buchsbaum: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overrides: Option<HomOverrides>,
}

fn default_char() -> u32 {
    DEFAULT_CHARACTERISTIC
}

/// A validated curve: Betti table, Rao dimensions and the derived numerics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CurveInput", into = "CurveInput")]
pub struct CurveData {
    input: CurveInput,
    d: i64,
    g: i64,
    s: i32,
    b: Option<i32>,
    c: Option<i32>,
    e: i32,
}

impl TryFrom<CurveInput> for CurveData {
    type Error = RaoError;

    fn try_from(input: CurveInput) -> Result<Self> {
        CurveData::from_input(input)
    }
}

impl From<CurveData> for CurveInput {
    fn from(cd: CurveData) -> CurveInput {
        cd.input
    }
}

/// `(s, b, c, e, diam)`; `b` and `c` are `None` for ACM curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryDegrees {
    pub s: i32,
    pub b: Option<i32>,
    pub c: Option<i32>,
    pub e: i32,
    pub diam: i32,
}

impl CurveData {
    pub fn new(betti: BettiTable, rao: GradedDims, buchsbaum: bool) -> Result<Self> {
        Self::from_input(CurveInput { char: DEFAULT_CHARACTERISTIC, betti, rao, buchsbaum, overrides: None })
    }

    /// A curve whose Rao module is a k-vector space read off `β₃`:
    /// `dim M_t = β_{3,t+4}`.
    pub fn buchsbaum_from_betti(betti: BettiTable) -> Result<Self> {
        let rao = buchsbaum_rao_from_betti(&betti);
        Self::new(betti, rao, true)
    }

    pub fn with_overrides(mut self, overrides: Option<HomOverrides>) -> Self {
        self.input.overrides = overrides;
        self
    }

    pub fn with_characteristic(mut self, p: u32) -> Self {
        self.input.char = p;
        self
    }

    pub fn from_input(input: CurveInput) -> Result<Self> {
        let (d, g) = hilbert_numerics(&input.betti)?;
        let s = input.betti.initial_degree().expect("a curve ideal has generators");
        let mut cd = CurveData { b: input.rao.min_degree(), c: input.rao.max_degree(), input, d, g, s, e: 0 };
        let mut problems = cd.structural_problems();
        if problems.is_empty() {
            match cd.scan_e() {
                Ok(e) => cd.e = e,
                Err(msg) => problems.push(msg),
            }
        }
        if problems.is_empty() {
            problems.extend(cd.cohomology_problems());
        }
        if problems.is_empty() {
            Ok(cd)
        } else {
            Err(RaoError::Inconsistent(problems))
        }
    }

    fn structural_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let betti = &self.input.betti;
        for (j, i, _) in betti.entries() {
            if i < j as i32 {
                out.push(format!(
                    "β_{{{j},{i}}} is nonzero but a minimal resolution of a proper ideal has β_{{j,i}} = 0 for i < j"
                ));
            }
        }
        for j in 1..3 {
            let lower = betti.row(j).map(|(i, _)| i).min();
            let upper = betti.row(j + 1).map(|(i, _)| i).min();
            if let (Some(a), Some(b)) = (lower, upper) {
                if b <= a {
                    out.push(format!("β_{} starts in degree {b}, not above the start {a} of β_{j}", j + 1));
                }
            }
        }
        if self.input.rao.is_zero() && !betti.row_is_empty(3) {
            out.push("Rao module is zero but β₃ is nonzero (an ACM curve has projective dimension 2)".into());
        }
        if !self.input.rao.is_zero() && betti.row_is_empty(3) {
            out.push("Rao module is nonzero but β₃ is empty".into());
        }
        if self.is_buchsbaum() && self.diam() <= 2 {
            let expected = buchsbaum_rao_from_betti(betti);
            if expected != self.input.rao {
                out.push(format!(
                    "Buchsbaum Rao dimensions must equal β₃ shifted by 4: expected {}, got {}",
                    serde_json::to_string(&expected).unwrap(),
                    serde_json::to_string(&self.input.rao).unwrap()
                ));
            }
        }
        out
    }

    /// Validation window for the nonnegativity checks.
    fn check_window(&self) -> (i32, i32) {
        let (lo, hi) = self.window();
        (lo.min(self.b.unwrap_or(lo) - 4), hi.max(self.c.unwrap_or(hi) + 4))
    }

    fn cohomology_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (lo, hi) = self.check_window();
        for v in lo..=hi {
            let gamma = self.gamma(v);
            if gamma < 0 {
                out.push(format!("γ({v}) = {gamma} is negative"));
            }
            let sigma = self.sigma(v);
            if sigma < 0 {
                out.push(format!("σ({v}) = {sigma} is negative (Rao dimensions incompatible with the Betti table)"));
            }
        }
        if self.gamma(self.s) <= 0 {
            out.push(format!("γ(s) must be positive at the initial degree s = {}", self.s));
        }
        out
    }

    fn e_scan_start(&self) -> i32 {
        let top = self.input.betti.max_degree().unwrap_or(0);
        self.c.map_or(top, |c| top.max(c + 2)) + 1
    }

    fn scan_e(&self) -> std::result::Result<i32, String> {
        let start = self.e_scan_start();
        for v in start..start + 16 {
            if self.sigma(v) != 0 {
                return Err(format!("σ({v}) = {} does not vanish above the regularity bound {start}", self.sigma(v)));
            }
        }
        let mut v = start;
        while v > start - 2000 {
            if self.sigma(v) != 0 {
                return Ok(v);
            }
            v -= 1;
        }
        Err("σ vanishes identically, which no curve allows".into())
    }

    pub fn input(&self) -> &CurveInput {
        &self.input
    }

    pub fn betti(&self) -> &BettiTable {
        &self.input.betti
    }

    pub fn rao(&self) -> &GradedDims {
        &self.input.rao
    }

    pub fn characteristic(&self) -> u32 {
        self.input.char
    }

    pub fn overrides(&self) -> Option<&HomOverrides> {
        self.input.overrides.as_ref()
    }

    /// Buchsbaum as flagged, or automatically when the diameter is at most 1.
    pub fn is_buchsbaum(&self) -> bool {
        self.input.buchsbaum || self.diam() <= 1
    }

    pub fn is_acm(&self) -> bool {
        self.input.rao.is_zero()
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn genus(&self) -> i64 {
        self.g
    }

    pub fn s(&self) -> i32 {
        self.s
    }

    pub fn b(&self) -> Option<i32> {
        self.b
    }

    pub fn c(&self) -> Option<i32> {
        self.c
    }

    pub fn e(&self) -> i32 {
        self.e
    }

    pub fn diam(&self) -> i32 {
        match (self.b, self.c) {
            (Some(b), Some(c)) => c - b + 1,
            _ => 0,
        }
    }

    pub fn boundary_degrees(&self) -> BoundaryDegrees {
        BoundaryDegrees { s: self.s, b: self.b, c: self.c, e: self.e, diam: self.diam() }
    }

    /// The window `[-(maxdeg+4), maxdeg+4]` used for the reflection identity.
    pub fn window(&self) -> (i32, i32) {
        let m = self.input.betti.max_degree().unwrap_or(0) + 4;
        (-m, m)
    }

    /// `γ(v) = h⁰(I_C(v))`.
    pub fn gamma(&self, v: i32) -> i64 {
        self.input.betti.entries().map(|(j, i, m)| sign(j) * m as i64 * dim_r((v - i) as i64)).sum()
    }

    /// `ρ(v) = h¹(I_C(v)) = dim M_v`.
    pub fn rho(&self, v: i32) -> i64 {
        self.input.rao.get(v) as i64
    }

    /// `σ(v) = h¹(O_C(v)) = h²(I_C(v))`, from the Euler characteristic.
    pub fn sigma(&self, v: i32) -> i64 {
        let v64 = v as i64;
        let chi = chi_o(v64) - (self.d * v64 + 1 - self.g);
        chi - self.gamma(v) + self.rho(v) + dim_r(-v64 - 4)
    }

    /// `h^j(I_C(v))` for `j = 0, 1, 2`.
    pub fn h(&self, j: usize, v: i32) -> i64 {
        match j {
            0 => self.gamma(v),
            1 => self.rho(v),
            2 => self.sigma(v),
            _ => panic!("h^{j} is not tracked"),
        }
    }

    /// `δ^j(v) = Σ_{j'} (-1)^{j'+1} Σ_i β_{j',i} h^j(I_C(i+v))`.
    pub fn delta(&self, j: usize, v: i32) -> i64 {
        self.input.betti.entries().map(|(jj, i, m)| sign(jj) * m as i64 * self.h(j, i + v)).sum()
    }

    pub fn delta_table(&self, lo: i32, hi: i32) -> Vec<DeltaRow> {
        (lo..=hi).map(|v| DeltaRow { v, delta: [self.delta(0, v), self.delta(1, v), self.delta(2, v)] }).collect()
    }

    pub fn cohomology_table(&self, lo: i32, hi: i32) -> Vec<CohomologyRow> {
        (lo..=hi).map(|v| CohomologyRow { v, gamma: self.gamma(v), rho: self.rho(v), sigma: self.sigma(v) }).collect()
    }

    pub fn euler_identities(&self) -> EulerReport {
        let d = self.d;
        let first = 1 - self.delta(0, 0);
        let second = 4 * d + self.delta(2, 0) - self.delta(1, 0);
        let third = 1 + self.delta(2, -4) - self.delta(1, -4);
        let window = self.window();
        let reflection_failures: Vec<i32> = (window.0..=window.1)
            .filter(|&v| {
                let v64 = v as i64;
                chi_o(v64) - (2 * d * v64 + 4 * d) != self.delta(0, v) - self.delta(0, -v - 4)
            })
            .collect();
        EulerReport {
            sides: [first, second, third],
            window,
            passed: first == second && second == third && reflection_failures.is_empty(),
            reflection_failures,
        }
    }
}

fn sign(j: usize) -> i64 {
    if j % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `dim M_t = β_{3,t+4}`, the Rao dimensions of a Buchsbaum curve.
pub fn buchsbaum_rao_from_betti(betti: &BettiTable) -> GradedDims {
    GradedDims::from_pairs(betti.row(3).map(|(i, m)| (i - 4, m as u64)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeltaRow {
    pub v: i32,
    pub delta: [i64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub v: i32,
    pub gamma: i64,
    pub rho: i64,
    pub sigma: i64,
}

/// The three expressions `1-δ⁰(0)`, `4d+δ²(0)-δ¹(0)`, `1+δ²(-4)-δ¹(-4)` and
/// the degrees where `χ(O(v)) - (2dv+4d) = δ⁰(v) - δ⁰(-v-4)` fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub sides: [i64; 3],
    pub window: (i32, i32),
    pub reflection_failures: Vec<i32>,
    pub passed: bool,
}

// Free-function spellings for callers that prefer them.

pub fn gamma(cd: &CurveData, v: i32) -> i64 {
    cd.gamma(v)
}

pub fn rho(cd: &CurveData, v: i32) -> i64 {
    cd.rho(v)
}

pub fn sigma(cd: &CurveData, v: i32) -> i64 {
    cd.sigma(v)
}

pub fn delta(cd: &CurveData, j: usize, v: i32) -> i64 {
    cd.delta(j, v)
}

pub fn boundary_degrees(cd: &CurveData) -> BoundaryDegrees {
    cd.boundary_degrees()
}

pub fn euler_identities(cd: &CurveData) -> EulerReport {
    cd.euler_identities()
}
