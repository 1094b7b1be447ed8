//! Liaison by a complete intersection of surfaces of degrees `f` and `g`.

use serde::Serialize;

use crate::algebra::{module_cancel, FreeModule, GradedDims};
use crate::error::{RaoError, Result};
use crate::invariants::CurveData;
use crate::rao::{rao_form, FiveTuple};
use crate::resolution::{hilbert_numerics, BettiTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkageSpec {
    pub f: i32,
    pub g: i32,
    pub valid: bool,
    pub failures: Vec<String>,
}

/// Numerical conditions for linking by surfaces of degrees `f` and `g`: the
/// Rao module vanishes in degrees `f, g, f-4, g-4`, and enough surfaces of
/// those degrees contain the curve.
pub fn linkage_spec(cd: &CurveData, f: i32, g: i32) -> LinkageSpec {
    let mut failures = Vec::new();
    for v in [f, g, f - 4, g - 4] {
        if cd.rho(v) != 0 {
            failures.push(format!("ρ({v}) = {} ≠ 0", cd.rho(v)));
        }
    }
    failures.dedup();
    for (name, v) in [("f", f), ("g", g)] {
        if v < cd.s() {
            failures.push(format!("{name} = {v} is below s = {}", cd.s()));
        }
    }
    if f == g {
        if cd.gamma(f) < 2 {
            failures.push(format!("γ({f}) = {} < 2, no two independent surfaces of degree {f}", cd.gamma(f)));
        }
    } else {
        for v in [f, g] {
            if cd.gamma(v) < 1 {
                failures.push(format!("γ({v}) = 0, no surface of degree {v}"));
            }
        }
    }
    // With a single generator up to degree max(f, g), every surface of that
    // degree through C is a multiple of it and no complete intersection exists.
    let low: u64 = cd.betti().row(1).filter(|&(i, _)| i <= f.max(g)).map(|(_, m)| m as u64).sum();
    if low < 2 {
        failures.push(format!(
            "I_C has {low} minimal generator(s) of degree ≤ {}, too few for a complete intersection",
            f.max(g)
        ));
    }
    if (f as i64) * (g as i64) <= cd.degree() {
        failures.push(format!("fg = {} does not exceed d = {}", f as i64 * g as i64, cd.degree()));
    }
    LinkageSpec { f, g, valid: failures.is_empty(), failures }
}

#[derive(Debug, Clone, Serialize)]
pub struct Linked {
    pub spec: LinkageSpec,
    pub d: i64,
    pub g: i64,
    pub rao: GradedDims,
    pub betti: BettiTable,
    pub tuples: Vec<FiveTuple>,
    /// Obstructedness is preserved by this kind of link.
    pub same_obstructedness: bool,
    #[serde(skip)]
    pub curve: CurveData,
}

/// `(d', g')` of the residual curve.
pub fn linked_numerics(d: i64, g: i64, f: i32, h: i32) -> (i64, i64) {
    let fg = f as i64 * h as i64;
    let s = (f + h) as i64;
    let d2 = fg - d;
    let diff = (s - 4) * (fg - 2 * d);
    (d2, g + diff / 2)
}

/// Links `cd` by a complete intersection of type `(f, g)`.
///
/// The residual resolution is the mapping cone of the dual Rao form,
/// `0 → L0^∨ → L1^∨ ⊕ F1^∨ → L2^∨ ⊕ F2^∨ ⊕ R(-f) ⊕ R(-g)` twisted by `-f-g`,
/// with `F1^∨` cancelled degreewise against `L2^∨ ⊕ R(-f) ⊕ R(-g)`.
pub fn link(cd: &CurveData, f: i32, g: i32) -> Result<Linked> {
    let spec = linkage_spec(cd, f, g);
    if !spec.valid {
        return Err(RaoError::Refused(format!("invalid linkage ({f},{g}): {}", spec.failures.join("; "))));
    }
    let rf = rao_form(cd)?;
    let s = f + g;
    let shift = -s;
    let mut l0 = FreeModule::new();
    let mut l1 = FreeModule::new();
    let mut l2 = FreeModule::new();
    for (t, r) in rf.components.iter() {
        let r = r as u32;
        l0.add_summand(-t, r);
        l1.add_summand(-t - 1, 4 * r);
        l2.add_summand(-t - 2, 6 * r);
    }
    let g3 = l0.dual().twisted(shift);
    let l1d = l1.dual().twisted(shift);
    let f1d = rf.f1.dual().twisted(shift);
    let mut block = l2.dual().twisted(shift);
    block.add_summand(-f, 1);
    block.add_summand(-g, 1);
    let (_, f1d, block) = module_cancel(&f1d, &block);
    let g1 = block.direct_sum(&rf.f2.dual().twisted(shift));
    let betti = BettiTable::from_modules(&g1, &l1d.direct_sum(&f1d), &g3);

    let (d2, g2) = linked_numerics(cd.degree(), cd.genus(), f, g);
    let from_table = hilbert_numerics(&betti)?;
    if from_table != (d2, g2) {
        return Err(RaoError::inconsistent(format!(
            "linked table gives (d,g) = {from_table:?}, liaison formulas give ({d2},{g2})"
        )));
    }
    let rao = cd.rao().reflected(s - 4);
    let mut input = cd.input().clone();
    input.betti = betti.clone();
    input.rao = rao.clone();
    input.overrides = None;
    let curve = CurveData::from_input(input)?;
    let tuples = rao_form(&curve)?.tuples();
    Ok(Linked { spec, d: d2, g: g2, rao, betti, tuples, same_obstructedness: true, curve })
}

/// Reverses a tuple the way linkage does: `(r, a₁, a₂, b₁, b₂) ↦ (r, b₂, b₁, a₂, a₁)`.
pub fn reversed_tuple(n: &FiveTuple, t_linked: i32) -> FiveTuple {
    FiveTuple { t: t_linked, r: n.r, a1: n.b2, a2: n.b1, b1: n.a2, b2: n.a1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::family::rab_family;

    fn skew() -> CurveData {
        CurveData::buchsbaum_from_betti(BettiTable::from_rows(&[(2, 4)], &[(3, 4)], &[(4, 1)])).unwrap()
    }

    #[test]
    fn skew_lines_link_to_skew_lines() {
        let l = link(&skew(), 2, 2).unwrap();
        assert_eq!((l.d, l.g), (2, -1));
        assert_eq!(l.rao, GradedDims::from_pairs([(0, 1)]));
        assert_eq!(l.betti, *skew().betti());
    }

    #[test]
    fn invalid_spec_is_refused() {
        let err = link(&skew(), 2, 4).unwrap_err();
        assert!(matches!(err, RaoError::Refused(ref m) if m.contains("ρ(0)")), "{err}");
        assert!(!linkage_spec(&skew(), 1, 3).valid);
        // a cubic and sextics: every quintic through C is divisible by the cubic
        let cd =
            CurveData::buchsbaum_from_betti(BettiTable::from_rows(&[(3, 1), (6, 4)], &[(7, 5)], &[(8, 1)])).unwrap();
        let spec = linkage_spec(&cd, 3, 5);
        assert!(spec.failures.iter().any(|m| m.contains("too few")), "{:?}", spec.failures);
    }

    #[test]
    fn involution_on_rab_family() {
        let e = rab_family(1, 1, 1).unwrap();
        let cd = &e.curve;
        let (f, g) = (5, 6);
        let once = link(cd, f, g).unwrap();
        let n = rao_form(cd).unwrap().n_tuple(4);
        assert_eq!(once.tuples, vec![reversed_tuple(&n, f + g - 8)]);
        let twice = link(&once.curve, f, g).unwrap();
        assert_eq!((twice.d, twice.g), (cd.degree(), cd.genus()));
        assert_eq!(&twice.rao, cd.rao());
        assert_eq!(twice.tuples, vec![n]);
    }
}
