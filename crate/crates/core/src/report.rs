//! The full analysis of one curve as a single serializable record.

use serde::Serialize;

use crate::algebra::GradedDims;
use crate::deformation::{available_moves, component_count, ComponentCount, Conserved, MoveKind};
use crate::error::Result;
use crate::invariants::{BoundaryDegrees, CohomologyRow, CurveData, CurveInput, DeltaRow, EulerReport};
use crate::obstruction::{
    classify, h1n_vanishing_criterion, normal_sheaf_of, NormalSheafDims, VanishingCriterion, Verdict,
};
use crate::rao::{hom_dims, rao_form, FiveTuple, HomOutcome, RaoForm};
use crate::resolution::BettiTable;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub d: i64,
    pub g: i64,
    #[serde(flatten)]
    pub boundary: BoundaryDegrees,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveSummary {
    pub kind: MoveKind,
    pub conserved: Conserved,
    pub betti: BettiTable,
    pub rao: GradedDims,
    pub hom_count: Option<u64>,
    pub degree_t3_cancellation: Option<(u32, u32)>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum NormalSheafReport {
    Known(NormalSheafDims),
    Undetermined { undetermined: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input: CurveInput,
    pub invariants: Invariants,
    pub window: (i32, i32),
    pub cohomology: Vec<CohomologyRow>,
    pub delta: Vec<DeltaRow>,
    pub euler: EulerReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rao_form: Option<RaoForm>,
    pub tuples: Vec<FiveTuple>,
    pub homs: HomOutcome,
    pub verdict: Verdict,
    pub normal_sheaf: NormalSheafReport,
    pub h1n_criterion: VanishingCriterion,
    pub moves: Vec<MoveSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentCount>,
}

/// Table window: a few degrees below the Rao module and above `e` and the
/// top Betti degree.
pub fn report_window(cd: &CurveData) -> (i32, i32) {
    let lo = cd.b().map_or(-4, |b| (b - 4).min(-4));
    let top = cd.betti().max_degree().unwrap_or(0).max(cd.e()).max(cd.c().unwrap_or(0));
    (lo, top + 4)
}

pub fn analyze(cd: &CurveData) -> AnalysisReport {
    let window = report_window(cd);
    let rf = rao_form(cd).ok();
    let tuples = rf.as_ref().map(|r| r.tuples()).unwrap_or_default();
    let components = match tuples.as_slice() {
        [n] if n.a1 == 0 && n.b2 == 0 && n.a2 * n.b1 != 0 => {
            let c = cd.c().unwrap();
            Some(component_count((n.r, n.a2, n.b1), cd.s() == c && cd.e() == c))
        }
        _ => None,
    };
    let moves = available_moves(cd)
        .into_iter()
        .map(|m| MoveSummary {
            kind: m.kind,
            conserved: m.conserved,
            betti: m.result.betti().clone(),
            rao: m.result.rao().clone(),
            hom_count: m.hom_count,
            degree_t3_cancellation: m.degree_t3_cancellation,
            notes: m.notes,
        })
        .collect();
    AnalysisReport {
        input: cd.input().clone(),
        invariants: Invariants { d: cd.degree(), g: cd.genus(), boundary: cd.boundary_degrees() },
        window,
        cohomology: cd.cohomology_table(window.0, window.1),
        delta: cd.delta_table(window.0, window.1),
        euler: cd.euler_identities(),
        rao_form: rf,
        tuples,
        homs: hom_dims(cd),
        verdict: classify(cd, None),
        normal_sheaf: match normal_sheaf_of(cd) {
            Ok(n) => NormalSheafReport::Known(n),
            Err(u) => NormalSheafReport::Undetermined { undetermined: u.missing },
        },
        h1n_criterion: h1n_vanishing_criterion(cd),
        moves,
        components,
    }
}

pub fn analyze_input(input: CurveInput) -> Result<AnalysisReport> {
    Ok(analyze(&CurveData::from_input(input)?))
}

impl AnalysisReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Re-derives the report from the echoed input and compares.
    pub fn is_consistent(&self) -> bool {
        analyze_input(self.input.clone()).is_ok_and(|again| again == *self)
    }
}
