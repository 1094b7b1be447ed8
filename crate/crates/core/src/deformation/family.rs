//! Curves given by an Ω-resolution
//! `0 → P → Q ⊕ ⊕_t Ω(-t)^{r_t} → I_C → 0`, their free Betti tables, the
//! `(r, a, b)` family with `s = e = c` and random Buchsbaum tables.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{binomial, module_cancel, FreeModule, GradedDims};
use crate::error::{RaoError, Result};
use crate::invariants::CurveData;
use crate::rao::rao_form;
use crate::resolution::BettiTable;

/// Generator degrees of `Q` and `P`, and `t ↦ r_t` for the `Ω(-t)` summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaShape {
    pub free: FreeModule,
    pub omega: GradedDims,
    pub kernel: FreeModule,
}

impl OmegaShape {
    /// Replaces each `Ω(-t)` by `0 → R(-t-4) → R(-t-3)⁴ → R(-t-2)⁶`, takes the
    /// mapping cone and cancels `P` against the first term degreewise.
    pub fn cone(&self) -> BettiTable {
        let mut b1 = self.free.clone();
        let mut l3 = FreeModule::new();
        let mut l4 = FreeModule::new();
        for (t, r) in self.omega.iter() {
            let r = r as u32;
            b1.add_summand(-t - 2, 6 * r);
            l3.add_summand(-t - 3, 4 * r);
            l4.add_summand(-t - 4, r);
        }
        let (_, kernel, b1) = module_cancel(&self.kernel, &b1);
        BettiTable::from_modules(&b1, &l3.direct_sum(&kernel), &l4)
    }

    pub fn omega_rank(&self) -> u64 {
        self.omega.total()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RabCurve {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    pub c: i32,
    pub d: i64,
    pub g: i64,
    pub shape: OmegaShape,
    pub betti: BettiTable,
    #[serde(skip)]
    pub curve: CurveData,
}

/// Closed forms for `(c, d, g)`.
pub fn rab_numerics(r: u64, a: u64, b: u64) -> (i32, i64, i64) {
    let (r, a, b) = (r as i64, a as i64, b as i64);
    if a == 1 {
        let c = 1 + b + 2 * r;
        let d = binomial(c + 4, 2) - 3 * r - 7;
        (c as i32, d, (c + 1) * d - binomial(c + 4, 3) + 5)
    } else {
        let c = a + b + 2 * r + 1;
        let d = binomial(c + 4, 2) - 3 * a - 3 * r - 6;
        (c as i32, d, (c + 1) * d - binomial(c + 4, 3) + 3 * a + 3)
    }
}

pub fn rab_shape(r: u64, a: u64, b: u64) -> OmegaShape {
    let (c, _, _) = rab_numerics(r, a, b);
    let (r32, a32, b32) = (r as u32, a as u32, b as u32);
    let mut free = FreeModule::new();
    let mut kernel = FreeModule::new();
    free.add_summand(-c, a32);
    free.add_summand(-c - 3, b32 - 1);
    if a == 1 {
        kernel.add_summand(-c - 2, 3 * r32 - 1);
    } else {
        kernel.add_summand(-c - 1, a32 - 2);
        kernel.add_summand(-c - 2, 3 * r32);
    }
    kernel.add_summand(-c - 4, b32);
    OmegaShape { free, omega: GradedDims::from_pairs([(c, r)]), kernel }
}

/// The curve with tuple `(r, 0, a, b, 0)` in degree `c`, checked against the
/// closed forms.
pub fn rab_family(r: u64, a: u64, b: u64) -> Result<RabCurve> {
    if r == 0 || a == 0 || b == 0 {
        return Err(RaoError::InvalidArgument(format!("r, a, b must be positive, got ({r}, {a}, {b})")));
    }
    let (c, d, g) = rab_numerics(r, a, b);
    let shape = rab_shape(r, a, b);
    let betti = shape.cone();
    let curve = CurveData::buchsbaum_from_betti(betti.clone())?;
    let mut problems = Vec::new();
    if (curve.degree(), curve.genus()) != (d, g) {
        problems.push(format!(
            "Betti table gives (d,g) = ({},{}), closed forms give ({d},{g})",
            curve.degree(),
            curve.genus()
        ));
    }
    let n = rao_form(&curve)?.n_tuple(c);
    if n.as_array() != [r, 0, a, b, 0] {
        problems.push(format!("5-tuple {:?} differs from ({r}, 0, {a}, {b}, 0)", n.as_array()));
    }
    if !problems.is_empty() {
        return Err(RaoError::Inconsistent(problems));
    }
    Ok(RabCurve { r, a, b, c, d, g, shape, betti, curve })
}

/// A random Ω-shape whose cone passes every numerical check for a Buchsbaum
/// curve of diameter at most 2. The kernel is put in two adjacent degrees,
/// chosen so that rank and first Chern class come out right, and no lower
/// than any generator of the free part or of an `Ω(-t)`.
pub fn random_buchsbaum<R: Rng + ?Sized>(rng: &mut R) -> Result<(OmegaShape, CurveData)> {
    for _ in 0..10_000 {
        let shape = random_shape(rng);
        let Some(shape) = shape else { continue };
        let Ok(cd) = CurveData::buchsbaum_from_betti(shape.cone()) else { continue };
        if cd.diam() <= 2 && !cd.is_acm() {
            return Ok((shape, cd));
        }
    }
    Err(RaoError::Unsupported("no valid random table found in 10000 draws".into()))
}

fn random_shape<R: Rng + ?Sized>(rng: &mut R) -> Option<OmegaShape> {
    let c: i32 = rng.gen_range(2..=7);
    let mut omega = GradedDims::new();
    omega.set(c, rng.gen_range(1..=3));
    if rng.gen_bool(0.5) {
        omega.set(c - 1, rng.gen_range(1..=2));
    }
    let mut free = FreeModule::new();
    let lo = (c - rng.gen_range(0..=2)).max(1);
    for i in lo..=lo + 3 {
        let m = if i == lo { rng.gen_range(1..=3) } else { rng.gen_range(0..=2) };
        free.add_summand(-i, m);
    }
    let rank = free.rank() as i64 + 3 * omega.total() as i64 - 1;
    let chern: i64 = free.generator_degrees().map(|(i, m)| i as i64 * m as i64).sum::<i64>()
        + omega.iter().map(|(t, r)| r as i64 * (3 * t as i64 + 4)).sum::<i64>();
    if rank < 1 {
        return None;
    }
    let u = chern.div_euclid(rank);
    let top = chern - u * rank;
    let mut kernel = FreeModule::new();
    kernel.add_summand(-(u as i32), (rank - top) as u32);
    kernel.add_summand(-(u as i32) - 1, top as u32);
    // A general map P → N degenerates along a curve once N ⊗ P^∨ is globally
    // generated, i.e. no generator of N sits above the kernel.
    let top_free = free.generator_degrees().filter(|&(_, m)| m > 0).map(|(i, _)| i).max().unwrap_or(lo);
    let top_omega = omega.max_degree().unwrap_or(c) + 2;
    if (u as i32) < top_free.max(top_omega) {
        return None;
    }
    Some(OmegaShape { free, omega, kernel })
}
