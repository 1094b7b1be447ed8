//! Resolution surgery under generization, on Betti shapes only.

use serde::Serialize;

use crate::algebra::{module_cancel, FreeModule, GradedDims};
use crate::error::{RaoError, Result};
use crate::invariants::CurveData;
use crate::rao::{rao_form, RaoForm};
use crate::resolution::BettiTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MoveKind {
    CancelCommon { factor: FreeModule },
    CancelL4F2 { t: i32, m: u32 },
    CancelL4F1 { t: i32, m: u32 },
}

/// What stays constant along the generization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Conserved {
    #[serde(rename = "constant γ and M")]
    GammaAndM,
    #[serde(rename = "constant γ")]
    Gamma,
    #[serde(rename = "constant σ")]
    Sigma,
}

impl std::fmt::Display for Conserved {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Conserved::GammaAndM => "constant γ and M",
            Conserved::Gamma => "constant γ",
            Conserved::Sigma => "constant σ",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GenerizationMove {
    pub kind: MoveKind,
    pub conserved: Conserved,
    /// Nothing was removed.
    pub identity: bool,
    pub result: CurveData,
    /// `₀hom(M'_[t], E')` after a L4/F2 cancellation, `₀hom(I', M'_[t])` after L4/F1.
    pub hom_count: Option<u64>,
    /// After L4/F2: how many copies of `R(-t-3)` may additionally cancel between
    /// β₂ and β₁, as a closed interval. The result table keeps all of them.
    pub degree_t3_cancellation: Option<(u32, u32)>,
    pub notes: Vec<String>,
}

fn buchsbaum_form(cd: &CurveData) -> Result<RaoForm> {
    if !cd.is_buchsbaum() || cd.diam() > 2 {
        return Err(RaoError::Unsupported(format!(
            "generization moves need a Buchsbaum curve with diam M ≤ 2 (diam = {}, Buchsbaum = {})",
            cd.diam(),
            cd.is_buchsbaum()
        )));
    }
    rao_form(cd)
}

fn rebuild(cd: &CurveData, betti: BettiTable, rao: GradedDims) -> Result<CurveData> {
    let mut input = cd.input().clone();
    input.betti = betti;
    input.rao = rao;
    input.buchsbaum = true;
    input.overrides = None;
    let out = CurveData::from_input(input)?;
    if (out.degree(), out.genus()) != (cd.degree(), cd.genus()) {
        return Err(RaoError::inconsistent(format!(
            "generization changed (d,g) from ({},{}) to ({},{})",
            cd.degree(),
            cd.genus(),
            out.degree(),
            out.genus()
        )));
    }
    Ok(out)
}

/// Removes the full common free factor of `F2` and `F1`.
pub fn cancel_common(cd: &CurveData) -> Result<GenerizationMove> {
    let rf = rao_form(cd)?;
    let (common, f2, f1) = module_cancel(&rf.f2, &rf.f1);
    let betti = BettiTable::from_modules(&f1, &rf.l3.direct_sum(&f2), &rf.l4);
    let identity = common.is_empty();
    let mut notes = Vec::new();
    if identity {
        notes.push("F2 and F1 share no free factor; identity move".into());
    }
    Ok(GenerizationMove {
        kind: MoveKind::CancelCommon { factor: common },
        conserved: Conserved::GammaAndM,
        identity,
        result: rebuild(cd, betti, cd.rao().clone())?,
        hom_count: None,
        degree_t3_cancellation: None,
        notes,
    })
}

/// Checks that the Koszul `L2` of the other graded pieces has no generator in
/// degree `deg`.
fn l2_free_in_degree(rf: &RaoForm, t: i32, deg: i32) -> bool {
    rf.degrees().into_iter().filter(|&u| u != t).all(|u| u + 2 != deg)
}

fn check_bound(what: &str, m: u32, r: u64, other: u64) -> Result<()> {
    let bound = r.min(other);
    if m as u64 > bound {
        return Err(RaoError::InvalidArgument(format!("{what}: m = {m} exceeds min(r, {}) = {bound}", other)));
    }
    Ok(())
}

/// Cancels `R(-t-4)^m` from `L4` against the same factor in `F2`.
pub fn cancel_l4_f2(cd: &CurveData, t: i32, m: u32) -> Result<GenerizationMove> {
    let rf = buchsbaum_form(cd)?;
    let n = rf.n_tuple(t);
    check_bound("L4/F2 cancellation", m, n.r, n.b1)?;
    let mut notes = Vec::new();
    let hom_count = if l2_free_in_degree(&rf, t, t + 4) {
        Some((n.r - m as u64) * (n.b1 - m as u64))
    } else {
        notes.push(format!("L2 of the other pieces has a generator in degree {}; hom count not guaranteed", t + 4));
        None
    };
    if m == 0 {
        notes.push("m = 0; identity move".into());
        return Ok(GenerizationMove {
            kind: MoveKind::CancelL4F2 { t, m },
            conserved: Conserved::Gamma,
            identity: true,
            result: cd.clone(),
            hom_count,
            degree_t3_cancellation: Some((0, 0)),
            notes,
        });
    }
    let mut betti = cd.betti().clone();
    let (b3, b2) = (betti.get(3, t + 4), betti.get(2, t + 4));
    betti.set(3, t + 4, b3 - m);
    betti.set(2, t + 4, b2 - m);
    let mut rao = cd.rao().clone();
    rao.set(t, n.r - m as u64);
    let upper = (4 * m).min(betti.get(1, t + 3));
    if upper > 0 {
        notes.push(format!(
            "resolution minimal except possibly in degree {}: up to {upper} copies of R({}) may cancel",
            t + 3,
            -t - 3
        ));
    }
    Ok(GenerizationMove {
        kind: MoveKind::CancelL4F2 { t, m },
        conserved: Conserved::Gamma,
        identity: false,
        result: rebuild(cd, betti, rao)?,
        hom_count,
        degree_t3_cancellation: Some((0, upper)),
        notes,
    })
}

/// Cancels `R(-t-4)^m` from `L4` together with `R(-t)^m` from `F1`.
///
/// The new middle terms are only known up to common factors; the result
/// carries the smallest table with the right K-class that keeps the Koszul
/// part of `L3`.
pub fn cancel_l4_f1(cd: &CurveData, t: i32, m: u32) -> Result<GenerizationMove> {
    let rf = buchsbaum_form(cd)?;
    let n = rf.n_tuple(t);
    check_bound("L4/F1 cancellation", m, n.r, n.a2)?;
    if !l2_free_in_degree(&rf, t, t) {
        return Err(RaoError::Unsupported(format!("L2 of the other pieces has a generator in degree {t}")));
    }
    let hom_count = Some((n.r - m as u64) * (n.a2 - m as u64));
    if m == 0 {
        return Ok(GenerizationMove {
            kind: MoveKind::CancelL4F1 { t, m },
            conserved: Conserved::Sigma,
            identity: true,
            result: cd.clone(),
            hom_count,
            degree_t3_cancellation: None,
            notes: vec!["m = 0; identity move".into()],
        });
    }
    let mut rao = cd.rao().clone();
    rao.set(t, n.r - m as u64);
    let old = cd.betti();
    let mut l4 = rf.l4.clone();
    l4.remove_summand(-t - 4, m)?;
    let mut l3 = FreeModule::new();
    for (u, r) in rao.iter() {
        l3.add_summand(-u - 3, 4 * r as u32);
    }
    // net class of β₁ - F2 per degree: old class minus m copies of K(-t)
    let lo = old.min_degree().unwrap_or(t) - 1;
    let hi = old.max_degree().unwrap_or(t) + 5;
    let mut f1 = FreeModule::new();
    let mut f2 = FreeModule::new();
    for i in lo.min(t)..=hi.max(t + 4) {
        let k = i - t;
        let koszul = if (0..=4).contains(&k) { crate::algebra::binomial(4, k as i64) } else { 0 };
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let class = old.get(1, i) as i64 - old.get(2, i) as i64 + old.get(3, i) as i64 - m as i64 * sign * koszul;
        let q = class - l4.mult(-i) as i64 + l3.mult(-i) as i64;
        if q > 0 {
            f1.add_summand(-i, q as u32);
        } else if q < 0 {
            f2.add_summand(-i, (-q) as u32);
        }
    }
    if f1.mult(-t) as u64 != n.a2 - m as u64 {
        return Err(RaoError::inconsistent(format!(
            "L4/F1 cancellation left β_{{1,{t}}} = {} instead of a₂ - m = {}",
            f1.mult(-t),
            n.a2 - m as u64
        )));
    }
    let betti = BettiTable::from_modules(&f1, &l3.direct_sum(&f2), &l4);
    Ok(GenerizationMove {
        kind: MoveKind::CancelL4F1 { t, m },
        conserved: Conserved::Sigma,
        identity: false,
        result: rebuild(cd, betti, rao)?,
        hom_count,
        degree_t3_cancellation: None,
        notes: vec!["middle terms shown with all removable common factors cancelled".into()],
    })
}

/// Every move with `m = 1` that applies to the curve, plus `cancel_common`
/// when it is not the identity.
pub fn available_moves(cd: &CurveData) -> Vec<GenerizationMove> {
    let mut out = Vec::new();
    let Ok(rf) = rao_form(cd) else { return out };
    if let Ok(mv) = cancel_common(cd) {
        if !mv.identity {
            out.push(mv);
        }
    }
    for n in rf.tuples() {
        if n.r * n.b1 > 0 {
            if let Ok(mv) = cancel_l4_f2(cd, n.t, 1) {
                out.push(mv);
            }
        }
        if n.r * n.a2 > 0 {
            if let Ok(mv) = cancel_l4_f1(cd, n.t, 1) {
                out.push(mv);
            }
        }
    }
    out
}
