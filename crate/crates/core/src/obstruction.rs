//! Obstructedness verdicts, dimensions of Hilbert-scheme strata at a curve and
//! the cohomology of its normal sheaf.

use serde::Serialize;

use crate::error::{RaoError, Result};
use crate::invariants::{CurveData, HomOverrides};
use crate::rao::{hom_dims, rao_form, FiveTuple, HomDims, HomOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Obstructed,
    Unobstructed,
    Undetermined,
}

/// A condition that fired, with the numbers that made it fire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Dims {
    #[serde(rename = "dim_H_dg")]
    pub dim_h_dg: Option<i64>,
    #[serde(rename = "dim_H_gamma")]
    pub dim_h_gamma: Option<i64>,
    #[serde(rename = "dim_H_gamma_M")]
    pub dim_h_gamma_m: Option<i64>,
    #[serde(rename = "h0_N")]
    pub h0_n: Option<i64>,
    #[serde(rename = "h1_N")]
    pub h1_n: Option<i64>,
}

/// Scheme isomorphisms at the curve implied by vanishing hom groups. `true`
/// means implied; `false` means not implied, not that it fails.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IsoFlags {
    #[serde(rename = "H_gamma_iso_H_dg")]
    pub h_gamma_iso_h_dg: bool,
    #[serde(rename = "H_gamma_rho_iso_H_gamma")]
    pub h_gamma_rho_iso_h_gamma: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub trigger: Vec<Condition>,
    pub theorem: String,
    pub hypotheses_checked: Vec<String>,
    pub missing_hypotheses: Vec<String>,
    pub dims: Dims,
    pub iso_flags: IsoFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalSheafDims {
    #[serde(rename = "h0_N")]
    pub h0: i64,
    #[serde(rename = "h1_N")]
    pub h1: i64,
}

/// Missing hypotheses, as a value rather than an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Undetermined {
    pub missing: Vec<String>,
}

pub const RULE_ACM: &str = "ACM: the Rao module vanishes, so every hom group does";
pub const RULE_DIAM1: &str = "diameter-one Betti criterion (obstructed iff a critical product is nonzero)";
pub const RULE_COMPONENT: &str = "diameter-one Buchsbaum component criterion on per-component 5-tuples";
pub const RULE_VANISH_IM: &str = "vanishing of hom(I,M) in degrees 0 and -4";
pub const RULE_VANISH_ME: &str = "vanishing of hom(M,E) in degrees 0 and -4";
pub const RULE_VANISH_MIXED: &str = "vanishing of hom(I,M) and hom(M,E) in degree 0 with Ext2(M,M) = 0 in degree 0";
pub const RULE_NONE: &str = "no applicable criterion";

/// The three critical products for a diameter-one module in degree `c`,
/// read from the full Betti rows.
pub fn diam1_products(cd: &CurveData, c: i32) -> [(String, u64, u64); 3] {
    let b = cd.betti();
    let (b1c, b1c4) = (b.get(1, c) as u64, b.get(1, c + 4) as u64);
    let (b2c, b2c4) = (b.get(2, c) as u64, b.get(2, c + 4) as u64);
    [
        (format!("β_{{1,{c}}}·β_{{2,{}}}", c + 4), b1c, b2c4),
        (format!("β_{{1,{}}}·β_{{2,{}}}", c + 4, c + 4), b1c4, b2c4),
        (format!("β_{{1,{c}}}·β_{{2,{c}}}"), b1c, b2c),
    ]
}

const DIAM1_NAMES: [&str; 3] = ["β_{1,c}·β_{2,c+4}", "β_{1,c+4}·β_{2,c+4}", "β_{1,c}·β_{2,c}"];

/// The per-component conditions on one 5-tuple: `a₂b₁`, `a₁b₁`, `a₂b₂`.
pub fn component_products(n: &FiveTuple) -> [(&'static str, u64, u64); 3] {
    [("a2·b1", n.a2, n.b1), ("a1·b1", n.a1, n.b1), ("a2·b2", n.a2, n.b2)]
}

/// `4d + δ²(0) + ₋₄hom(I,M) + ₋₄hom(M,E)`, valid for unobstructed curves with
/// `₀Ext^i(M,M) = 0` for `2 ≤ i ≤ 4`.
pub fn common_dimension(cd: &CurveData, h: &HomDims) -> i64 {
    4 * cd.degree() + cd.delta(2, 0) + h.hom_i_m_m4 as i64 + h.hom_m_e_m4 as i64
}

fn iso_flags(h: Option<&HomDims>) -> IsoFlags {
    match h {
        Some(h) => IsoFlags { h_gamma_iso_h_dg: h.hom_i_m_0 == 0, h_gamma_rho_iso_h_gamma: h.hom_m_e_0 == 0 },
        None => IsoFlags::default(),
    }
}

/// The sufficient vanishing conditions; returns the rule and the dimension
/// when one applies (`None` dimension if it depends on an unknown Ext²).
fn sufficient(cd: &CurveData, h: &HomDims, checked: &mut Vec<String>) -> Option<(&'static str, Option<i64>)> {
    let base = 4 * cd.degree() + cd.delta(2, 0) - cd.delta(1, 0);
    let (im0, im4, me0, me4) = (h.hom_i_m_0, h.hom_i_m_m4, h.hom_m_e_0, h.hom_m_e_m4);
    checked.push(format!("hom(I,M): degree 0 = {im0}, degree -4 = {im4}"));
    checked.push(format!("hom(M,E): degree 0 = {me0}, degree -4 = {me4}"));
    if im0 == 0 && im4 == 0 {
        return Some((RULE_VANISH_IM, Some(base)));
    }
    if me0 == 0 && me4 == 0 {
        let dim = h.ext_vanishing.then_some(base + im4 as i64 + im0 as i64);
        return Some((RULE_VANISH_ME, dim));
    }
    if im0 == 0 && me0 == 0 && h.ext_vanishing {
        return Some((RULE_VANISH_MIXED, Some(base + im4 as i64)));
    }
    None
}

/// Decides obstructedness where the available criteria reach, and reports
/// which hypotheses were missing otherwise.
pub fn classify(cd: &CurveData, overrides: Option<&HomOverrides>) -> Verdict {
    let owned;
    let cd = match overrides {
        Some(o) => {
            owned = cd.clone().with_overrides(Some(o.clone()));
            &owned
        }
        None => cd,
    };
    let homs = hom_dims(cd);
    let h = homs.known();
    let mut v = Verdict {
        status: Status::Undetermined,
        trigger: Vec::new(),
        theorem: RULE_NONE.into(),
        hypotheses_checked: Vec::new(),
        missing_hypotheses: Vec::new(),
        dims: Dims::default(),
        iso_flags: iso_flags(h),
    };

    if cd.is_acm() {
        v.status = Status::Unobstructed;
        v.theorem = RULE_ACM.into();
        v.hypotheses_checked.push("M = 0".into());
        v.dims.dim_h_dg = Some(4 * cd.degree() + cd.delta(2, 0) - cd.delta(1, 0));
    } else if cd.diam() == 1 {
        let c = cd.c().unwrap();
        let r = cd.rho(c);
        v.theorem = RULE_DIAM1.into();
        v.hypotheses_checked.push(format!("M of diameter 1 concentrated in degree c = {c}, r = {r}"));
        for ((concrete, x, y), generic) in diam1_products(cd, c).into_iter().zip(DIAM1_NAMES) {
            if x * y != 0 {
                v.trigger.push(Condition {
                    name: generic.into(),
                    detail: format!("{generic} = {x}·{y} ≠ 0 (c = {c}, {concrete})"),
                });
            }
        }
        if v.trigger.is_empty() {
            v.status = Status::Unobstructed;
            let b = cd.betti();
            let extra = b.get(1, c + 4) as i64 + b.get(2, c) as i64;
            v.dims.dim_h_dg = Some(4 * cd.degree() + cd.delta(2, 0) + r * extra);
        } else {
            v.status = Status::Obstructed;
        }
    } else if let (Ok(rf), Some(h)) = (rao_form(cd), h) {
        // Buchsbaum of diameter 2
        v.theorem = RULE_COMPONENT.into();
        v.hypotheses_checked.push("Buchsbaum, diameter 2, so Ext2(M,M) vanishes in degree 0".into());
        for n in rf.tuples() {
            for (name, x, y) in component_products(&n) {
                if x * y != 0 {
                    v.trigger.push(Condition {
                        name: format!("{name} at t = {}", n.t),
                        detail: format!("{name} = {x}·{y} ≠ 0 at t = {} (r = {})", n.t, n.r),
                    });
                }
            }
        }
        if !v.trigger.is_empty() {
            v.status = Status::Obstructed;
        } else if let Some((rule, dim)) = sufficient(cd, h, &mut v.hypotheses_checked) {
            v.status = Status::Unobstructed;
            v.theorem = rule.into();
            v.dims.dim_h_dg = dim;
        } else {
            v.theorem = RULE_NONE.into();
            v.missing_hypotheses.push(
                "per-component products vanish but no sufficient vanishing condition holds; \
                 for diameter 2 the known necessary and sufficient conditions leave this case open"
                    .into(),
            );
        }
    } else {
        match &homs {
            HomOutcome::Known(h) => match sufficient(cd, h, &mut v.hypotheses_checked) {
                Some((rule, dim)) => {
                    v.status = Status::Unobstructed;
                    v.theorem = rule.into();
                    v.dims.dim_h_dg = dim;
                }
                None => v.missing_hypotheses.push(
                    "supplied hom dimensions satisfy no sufficient vanishing condition (ext_vanishing must be \
                     asserted for the mixed condition)"
                        .into(),
                ),
            },
            HomOutcome::Undetermined { missing } => v.missing_hypotheses.extend(missing.iter().cloned()),
        }
    }

    v.dims = dims(cd, &v, h);
    v
}

/// Fills in every dimension the verdict and hom data determine.
fn dims(cd: &CurveData, v: &Verdict, h: Option<&HomDims>) -> Dims {
    let mut out = v.dims.clone();
    if let Some(h) = h {
        out.dim_h_gamma_m = Some(1 + cd.delta(2, -4) - h.hom_m_m_0 as i64);
        if let Ok(ns) = normal_sheaf(cd, h) {
            out.h0_n = Some(ns.h0);
            out.h1_n = Some(ns.h1);
        }
    }
    out.dim_h_gamma = dim_h_gamma(cd).ok().flatten();
    if out.dim_h_gamma.is_none() && v.iso_flags.h_gamma_iso_h_dg {
        out.dim_h_gamma = out.dim_h_dg;
    }
    out
}

/// `dim H(d,g)` at the curve; refused unless the curve is known unobstructed.
pub fn dim_h_dg(v: &Verdict) -> Result<i64> {
    match (v.status, v.dims.dim_h_dg) {
        (Status::Unobstructed, Some(d)) => Ok(d),
        (Status::Unobstructed, None) => {
            Err(RaoError::Refused("unobstructed, but the dimension depends on Ext2(M,M), which is not known".into()))
        }
        (Status::Obstructed, _) => Err(RaoError::Refused(
            "the curve is obstructed; the Hilbert scheme is singular there and the tangent-space formulas do not \
             give its dimension"
                .into(),
        )),
        (Status::Undetermined, _) => {
            Err(RaoError::Refused("obstructedness is undetermined, so no dimension formula applies".into()))
        }
    }
}

/// Dimension of the postulation stratum for a diameter-one module with
/// `M_{-4} = 0`: `Ok(None)` when it is singular there.
pub fn dim_h_gamma(cd: &CurveData) -> Result<Option<i64>> {
    if cd.diam() != 1 {
        return Err(RaoError::Unsupported("the postulation-stratum test needs a diameter-one Rao module".into()));
    }
    let c = cd.c().unwrap();
    if cd.rho(-4) != 0 {
        return Err(RaoError::Unsupported("the postulation-stratum test needs M_{-4} = 0".into()));
    }
    let b = cd.betti();
    if b.get(1, c + 4) * b.get(2, c + 4) != 0 {
        return Ok(None);
    }
    let r = cd.rho(c);
    let extra = b.get(1, c + 4) as i64 + b.get(2, c) as i64 - b.get(1, c) as i64;
    Ok(Some(4 * cd.degree() + cd.delta(2, 0) + r * extra))
}

/// `h¹(N_C) = δ²(0) + ₋₄hom(I,M) + ₋₄hom(M,E)` and `h⁰ = 4d + h¹`.
pub fn normal_sheaf(cd: &CurveData, h: &HomDims) -> std::result::Result<NormalSheafDims, Undetermined> {
    if !h.ext_vanishing {
        return Err(Undetermined {
            missing: vec!["Ext^i(M,M) = 0 in degree 0 for i ≥ 2 is not known (assert ext_vanishing)".into()],
        });
    }
    let h1 = cd.delta(2, 0) + h.hom_i_m_m4 as i64 + h.hom_m_e_m4 as i64;
    Ok(NormalSheafDims { h0: 4 * cd.degree() + h1, h1 })
}

/// Normal-sheaf dimensions straight from a curve.
pub fn normal_sheaf_of(cd: &CurveData) -> std::result::Result<NormalSheafDims, Undetermined> {
    match hom_dims(cd) {
        HomOutcome::Known(h) => normal_sheaf(cd, &h),
        HomOutcome::Undetermined { missing } => Err(Undetermined { missing }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingCriterion {
    pub holds: bool,
    pub failed: Vec<String>,
    /// `h¹(N_C)` when it can be computed, as a cross-check.
    pub h1_n: Option<i64>,
}

/// Sufficient numerical condition for `H¹(N_C) = 0`.
pub fn h1n_vanishing_criterion(cd: &CurveData) -> VanishingCriterion {
    let (s, e, diam) = (cd.s(), cd.e(), cd.diam());
    let mut failed = Vec::new();
    if diam > 2 {
        failed.push(format!("diam M = {diam} > 2"));
    }
    if e >= s {
        failed.push(format!("e = {e} is not below s = {s}"));
    }
    if diam != 0 {
        let c = cd.c().unwrap();
        if e > c + 1 - diam {
            failed.push(format!("e = {e} exceeds c + 1 - diam = {}", c + 1 - diam));
        }
        if c > s {
            failed.push(format!("c = {c} exceeds s = {s}"));
        }
    }
    let h1_n = normal_sheaf_of(cd).ok().map(|n| n.h1);
    VanishingCriterion { holds: failed.is_empty(), failed, h1_n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedDims;
    use crate::resolution::BettiTable;

    fn buchsbaum(b1: &[(i32, u32)], b2: &[(i32, u32)], b3: &[(i32, u32)]) -> CurveData {
        CurveData::buchsbaum_from_betti(BettiTable::from_rows(b1, b2, b3)).unwrap()
    }

    fn curve_33_117() -> CurveData {
        buchsbaum(&[(7, 5), (8, 1), (9, 1)], &[(8, 4), (9, 1), (10, 2)], &[(9, 1)])
    }

    fn skew() -> CurveData {
        buchsbaum(&[(2, 4)], &[(3, 4)], &[(4, 1)])
    }

    fn cubic() -> CurveData {
        CurveData::new(BettiTable::from_rows(&[(2, 3)], &[(3, 2)], &[]), GradedDims::new(), false).unwrap()
    }

    #[test]
    fn curve_33_117_is_obstructed_by_the_middle_product() {
        let v = classify(&curve_33_117(), None);
        assert_eq!(v.status, Status::Obstructed);
        assert_eq!(v.trigger.len(), 1);
        assert_eq!(v.trigger[0].name, "β_{1,c+4}·β_{2,c+4}");
        assert!(v.trigger[0].detail.starts_with("β_{1,c+4}·β_{2,c+4} = 1·1 ≠ 0 (c = 5"), "{}", v.trigger[0].detail);
        assert!(matches!(dim_h_dg(&v), Err(RaoError::Refused(_))));
        let h1 = v.dims.h1_n.unwrap();
        assert_eq!(h1, curve_33_117().delta(2, 0) + 1);
        assert_eq!(v.dims.h0_n.unwrap() - h1, 4 * 33);
    }

    #[test]
    fn skew_lines_unobstructed_of_dimension_8() {
        let cd = skew();
        let v = classify(&cd, None);
        assert_eq!(v.status, Status::Unobstructed);
        assert_eq!(dim_h_dg(&v).unwrap(), 8);
        assert_eq!((v.dims.h0_n, v.dims.h1_n), (Some(8), Some(0)));
        let crit = h1n_vanishing_criterion(&cd);
        assert!(crit.holds, "{:?}", crit.failed);
        assert_eq!(crit.h1_n, Some(0));
    }

    #[test]
    fn twisted_cubic_dimension_12() {
        let cd = cubic();
        let v = classify(&cd, None);
        assert_eq!(v.status, Status::Unobstructed);
        assert_eq!(v.theorem, RULE_ACM);
        assert_eq!(dim_h_dg(&v).unwrap(), 12);
        assert_eq!(v.dims.dim_h_gamma_m, Some(12));
        assert_eq!(v.dims.dim_h_gamma, Some(12));
        assert!(v.iso_flags.h_gamma_iso_h_dg && v.iso_flags.h_gamma_rho_iso_h_gamma);
        assert!(h1n_vanishing_criterion(&cd).holds);
    }

    #[test]
    fn rab_shape_is_obstructed_by_the_first_product() {
        // (r, a, b) = (1, 1, 1): c = 4
        let cd = buchsbaum(&[(4, 1), (6, 4)], &[(7, 4), (8, 1)], &[(8, 1)]);
        let v = classify(&cd, None);
        assert_eq!(v.status, Status::Obstructed);
        assert_eq!(v.trigger[0].name, "β_{1,c}·β_{2,c+4}");
        assert_eq!(v.dims.h1_n, Some(1));
        let crit = h1n_vanishing_criterion(&cd);
        assert!(!crit.holds);
    }

    #[test]
    fn generization_of_curve_33_117_has_dimension_132_plus_delta() {
        let c2 = buchsbaum(&[(7, 5), (8, 1)], &[(8, 4), (10, 2)], &[(9, 1)]);
        let v = classify(&c2, None);
        assert_eq!(v.status, Status::Unobstructed);
        assert_eq!(dim_h_dg(&v).unwrap(), 132 + c2.delta(2, 0));
        let h = hom_dims(&c2);
        assert_eq!(common_dimension(&c2, h.known().unwrap()), dim_h_dg(&v).unwrap());
    }

    #[test]
    fn postulation_stratum_dimension() {
        let cd = skew();
        assert_eq!(dim_h_gamma(&cd).unwrap(), Some(8));
        assert_eq!(dim_h_gamma(&curve_33_117()).unwrap(), None);
        assert!(dim_h_gamma(&cubic()).is_err());
    }
}
