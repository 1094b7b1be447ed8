//! Rao form of the minimal resolution for Buchsbaum curves of diameter at most
//! two, the 5-tuples attached to each graded piece of `M`, and the hom
//! dimensions they determine.

use serde::Serialize;

use crate::algebra::{koszul_shape, FreeModule, GradedDims};
use crate::error::{RaoError, Result};
use crate::invariants::CurveData;

/// `0 → L4 → L3 ⊕ F2 → F1 → I → 0`, with `M` split into its graded pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RaoForm {
    pub l4: FreeModule,
    pub l3: FreeModule,
    pub f2: FreeModule,
    pub f1: FreeModule,
    /// `t ↦ r_t = dim M_t`.
    pub components: GradedDims,
}

impl RaoForm {
    /// Degrees `t` with `r_t > 0`, increasing.
    pub fn degrees(&self) -> Vec<i32> {
        self.components.iter().map(|(t, _)| t).collect()
    }

    pub fn r(&self, t: i32) -> u64 {
        self.components.get(t)
    }

    /// The sum of all Koszul resolutions `r_t · K(-t)`, term by term.
    pub fn koszul_terms(&self) -> [FreeModule; 5] {
        let mut out: [FreeModule; 5] = Default::default();
        for (t, r) in self.components.iter() {
            let k = koszul_shape(t, r as i64).expect("positive multiplicity");
            for (slot, m) in out.iter_mut().zip(k.iter()) {
                *slot = slot.direct_sum(m);
            }
        }
        out
    }

    /// Reassembled Betti rows `(β₁, β₂, β₃)` as free modules.
    pub fn reassemble(&self) -> (FreeModule, FreeModule, FreeModule) {
        (self.f1.clone(), self.l3.direct_sum(&self.f2), self.l4.clone())
    }

    pub fn n_tuple(&self, t: i32) -> FiveTuple {
        n_tuple(self, t)
    }

    pub fn tuples(&self) -> Vec<FiveTuple> {
        self.degrees().into_iter().map(|t| n_tuple(self, t)).collect()
    }
}

/// `n(C) = (r, a₁, a₂, b₁, b₂)` at the degree `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FiveTuple {
    pub t: i32,
    pub r: u64,
    pub a1: u64,
    pub a2: u64,
    pub b1: u64,
    pub b2: u64,
}

impl FiveTuple {
    pub fn as_array(&self) -> [u64; 5] {
        [self.r, self.a1, self.a2, self.b1, self.b2]
    }
}

/// Splits the Betti table of a Buchsbaum curve with `diam M ≤ 2`.
pub fn rao_form(cd: &CurveData) -> Result<RaoForm> {
    let betti = cd.betti();
    if cd.is_acm() {
        return Ok(RaoForm {
            l4: FreeModule::new(),
            l3: FreeModule::new(),
            f2: betti.module(2),
            f1: betti.module(1),
            components: GradedDims::new(),
        });
    }
    if !cd.is_buchsbaum() {
        return Err(RaoError::Unsupported(
            "Rao form requires explicit resolution of M (curve is not Buchsbaum)".into(),
        ));
    }
    if cd.diam() > 2 {
        return Err(RaoError::Unsupported(format!(
            "Rao form requires explicit resolution of M (diameter {} exceeds 2)",
            cd.diam()
        )));
    }
    let components = cd.rao().clone();
    let mut l4 = FreeModule::new();
    let mut l3 = FreeModule::new();
    for (t, r) in components.iter() {
        l4.add_summand(-t - 4, r as u32);
        l3.add_summand(-t - 3, 4 * r as u32);
    }
    if l4 != betti.module(3) {
        return Err(RaoError::inconsistent(format!("β₃ = {} differs from the Koszul tail {}", betti.module(3), l4)));
    }
    let f2 = betti.module(2).checked_difference(&l3).ok_or_else(|| {
        RaoError::inconsistent(format!(
            "Betti table incompatible with Buchsbaum Rao module: β₂ = {} does not contain L3 = {}",
            betti.module(2),
            l3
        ))
    })?;
    Ok(RaoForm { l4, l3, f2, f1: betti.module(1), components })
}

pub fn n_tuple(rf: &RaoForm, t: i32) -> FiveTuple {
    FiveTuple {
        t,
        r: rf.r(t),
        a1: rf.f1.mult(-t - 4) as u64,
        a2: rf.f1.mult(-t) as u64,
        b1: rf.f2.mult(-t - 4) as u64,
        b2: rf.f2.mult(-t) as u64,
    }
}

/// Hom dimensions attached to one graded piece `M_[t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentHoms {
    pub t: i32,
    #[serde(rename = "hom_I_M_0")]
    pub hom_i_m_0: u64,
    #[serde(rename = "hom_I_M_-4")]
    pub hom_i_m_m4: u64,
    #[serde(rename = "hom_M_E_0")]
    pub hom_m_e_0: u64,
    #[serde(rename = "hom_M_E_-4")]
    pub hom_m_e_m4: u64,
}

/// Where the numbers in [`HomDims`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomSource {
    Buchsbaum,
    Overrides,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomDims {
    pub source: HomSource,
    #[serde(rename = "hom_I_M_0")]
    pub hom_i_m_0: u64,
    #[serde(rename = "hom_I_M_-4")]
    pub hom_i_m_m4: u64,
    #[serde(rename = "hom_M_E_0")]
    pub hom_m_e_0: u64,
    #[serde(rename = "hom_M_E_-4")]
    pub hom_m_e_m4: u64,
    #[serde(rename = "hom_I_E_0")]
    pub hom_i_e_0: i64,
    #[serde(rename = "hom_M_M_0")]
    pub hom_m_m_0: u64,
    /// `₀Ext^i(M,M) = 0` for `i ≥ 2` is known to hold.
    pub ext_vanishing: bool,
    pub components: Vec<ComponentHoms>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HomOutcome {
    Known(HomDims),
    Undetermined { missing: Vec<String> },
}

impl HomOutcome {
    pub fn known(&self) -> Option<&HomDims> {
        match self {
            HomOutcome::Known(h) => Some(h),
            HomOutcome::Undetermined { .. } => None,
        }
    }
}

fn weighted(module: &FreeModule, rao: &GradedDims, shift: i32) -> u64 {
    module.generator_degrees().map(|(i, m)| m as u64 * rao.get(i - shift)).sum()
}

/// Hom dimensions of a Buchsbaum curve with `diam M ≤ 2` from its Rao form.
pub fn hom_dims_from_form(cd: &CurveData, rf: &RaoForm) -> HomDims {
    let rao = cd.rao();
    let components = rf
        .tuples()
        .into_iter()
        .map(|n| ComponentHoms {
            t: n.t,
            hom_i_m_0: n.r * n.a2,
            hom_i_m_m4: n.r * n.a1,
            hom_m_e_0: n.r * n.b1,
            hom_m_e_m4: n.r * n.b2,
        })
        .collect();
    HomDims {
        source: HomSource::Buchsbaum,
        hom_i_m_0: weighted(&rf.f1, rao, 0),
        hom_i_m_m4: weighted(&rf.f1, rao, 4),
        hom_m_e_0: weighted(&rf.f2, rao, 4),
        hom_m_e_m4: weighted(&rf.f2, rao, 0),
        hom_i_e_0: cd.delta(2, 0),
        hom_m_m_0: rf.components.iter().map(|(_, r)| r * r).sum(),
        ext_vanishing: true,
        components,
    }
}

/// Hom dimensions, from the Rao form when it exists and otherwise from the
/// caller's overrides. Missing data is reported, never guessed.
pub fn hom_dims(cd: &CurveData) -> HomOutcome {
    match rao_form(cd) {
        Ok(rf) => HomOutcome::Known(hom_dims_from_form(cd, &rf)),
        Err(err) => {
            let Some(o) = cd.overrides() else {
                return HomOutcome::Undetermined {
                    missing: vec![format!("{err}"), "no hom-dimension overrides supplied".into()],
                };
            };
            let fields = [
                ("hom_I_M_0", o.hom_i_m_0),
                ("hom_I_M_-4", o.hom_i_m_m4),
                ("hom_M_E_0", o.hom_m_e_0),
                ("hom_M_E_-4", o.hom_m_e_m4),
                ("hom_M_M_0", o.hom_m_m_0),
            ];
            let missing: Vec<String> =
                fields.iter().filter(|(_, v)| v.is_none()).map(|(n, _)| format!("override {n} not supplied")).collect();
            if !missing.is_empty() {
                return HomOutcome::Undetermined { missing };
            }
            HomOutcome::Known(HomDims {
                source: HomSource::Overrides,
                hom_i_m_0: o.hom_i_m_0.unwrap(),
                hom_i_m_m4: o.hom_i_m_m4.unwrap(),
                hom_m_e_0: o.hom_m_e_0.unwrap(),
                hom_m_e_m4: o.hom_m_e_m4.unwrap(),
                hom_i_e_0: cd.delta(2, 0),
                hom_m_m_0: o.hom_m_m_0.unwrap(),
                ext_vanishing: o.ext_vanishing,
                components: Vec::new(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::HomOverrides;
    use crate::resolution::BettiTable;

    fn curve_33_117() -> CurveData {
        CurveData::buchsbaum_from_betti(BettiTable::from_rows(
            &[(7, 5), (8, 1), (9, 1)],
            &[(8, 4), (9, 1), (10, 2)],
            &[(9, 1)],
        ))
        .unwrap()
    }

    fn skew() -> CurveData {
        CurveData::buchsbaum_from_betti(BettiTable::from_rows(&[(2, 4)], &[(3, 4)], &[(4, 1)])).unwrap()
    }

    #[test]
    fn skew_lines_form() {
        let cd = skew();
        let rf = rao_form(&cd).unwrap();
        assert_eq!(rf.l4, FreeModule::from_twists([(-4, 1)]));
        assert_eq!(rf.l3, FreeModule::from_twists([(-3, 4)]));
        assert!(rf.f2.is_empty());
        assert_eq!(rf.f1, FreeModule::from_twists([(-2, 4)]));
        assert_eq!(rf.n_tuple(0).as_array(), [1, 0, 0, 0, 0]);
        let h = hom_dims_from_form(&cd, &rf);
        assert_eq!((h.hom_i_m_0, h.hom_i_m_m4, h.hom_m_e_0, h.hom_m_e_m4), (0, 0, 0, 0));
    }

    #[test]
    fn curve_33_117_form() {
        let cd = curve_33_117();
        let rf = rao_form(&cd).unwrap();
        assert_eq!(rf.l4, FreeModule::from_twists([(-9, 1)]));
        assert_eq!(rf.l3, FreeModule::from_twists([(-8, 4)]));
        assert_eq!(rf.f2, FreeModule::from_twists([(-9, 1), (-10, 2)]));
        assert_eq!(rf.f1, FreeModule::from_twists([(-7, 5), (-8, 1), (-9, 1)]));
        assert_eq!(rf.n_tuple(5).as_array(), [1, 1, 0, 1, 0]);
        let h = hom_dims_from_form(&cd, &rf);
        assert_eq!((h.hom_i_m_0, h.hom_i_m_m4, h.hom_m_e_0, h.hom_m_e_m4), (0, 1, 1, 0));
        assert_eq!(h.hom_m_m_0, 1);
        assert_eq!(h.hom_i_e_0, cd.delta(2, 0));
    }

    #[test]
    fn reassembly_reproduces_the_table() {
        for cd in [curve_33_117(), skew()] {
            let rf = rao_form(&cd).unwrap();
            let (b1, b2, b3) = rf.reassemble();
            assert_eq!(BettiTable::from_modules(&b1, &b2, &b3), *cd.betti());
            let [_, _, _, k3, k4] = rf.koszul_terms();
            assert_eq!(k3, rf.l3);
            assert_eq!(k4, rf.l4);
        }
    }

    #[test]
    fn acm_form_is_trivial() {
        let cd = CurveData::new(BettiTable::from_rows(&[(2, 3)], &[(3, 2)], &[]), GradedDims::new(), false).unwrap();
        let rf = rao_form(&cd).unwrap();
        assert!(rf.l4.is_empty() && rf.l3.is_empty());
        assert_eq!(rf.f2, FreeModule::from_twists([(-3, 2)]));
    }

    #[test]
    fn non_buchsbaum_needs_overrides() {
        // a line disjoint from a planar double line: M = k[x3]/(x3^2), not Buchsbaum
        let (_, betti) = crate::resolution::resolve_ideal_text(
            "x0*x2\nx1*x2\nx0*x3^2\nx1*x3^2",
            crate::algebra::RingConfig::default(),
        )
        .unwrap();
        let cd = CurveData::new(betti, GradedDims::from_pairs([(0, 1), (1, 1)]), false).unwrap();
        assert_eq!(cd.diam(), 2);
        assert!(!cd.is_buchsbaum());
        assert!(matches!(rao_form(&cd), Err(RaoError::Unsupported(_))));
        assert!(matches!(hom_dims(&cd), HomOutcome::Undetermined { .. }));
        let partial = HomOverrides { hom_i_m_0: Some(0), ..Default::default() };
        match hom_dims(&cd.clone().with_overrides(Some(partial))) {
            HomOutcome::Undetermined { missing } => assert_eq!(missing.len(), 4),
            other => panic!("expected undetermined, got {other:?}"),
        }
        let full = HomOverrides {
            hom_i_m_0: Some(0),
            hom_i_m_m4: Some(0),
            hom_m_e_0: Some(0),
            hom_m_e_m4: Some(0),
            hom_m_m_0: Some(2),
            ext_vanishing: true,
        };
        let cd = cd.with_overrides(Some(full));
        assert_eq!(hom_dims(&cd).known().unwrap().source, HomSource::Overrides);
    }
}
