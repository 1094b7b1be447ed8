//! Pruning a Schreyer frame to the minimal graded free resolution.

use serde::Serialize;

use crate::algebra::{Poly, Ring, RingConfig};
use crate::error::{RaoError, Result};
use crate::resolution::betti::{hilbert_numerics, BettiTable};
use crate::resolution::groebner::groebner_basis_in;
use crate::resolution::parse::parse_ideal;
use crate::resolution::schreyer::{schreyer_frame, Frame};

/// Dense polynomial matrix, row-major: `rows = rank of target`.
pub type Matrix = Vec<Vec<Poly>>;

/// `0 ← R ← F_1 ← F_2 ← ...` as explicit graded matrices.
///
/// `degrees[k]` lists the generator degrees of `F_k` (with `F_0 = R`), and
/// `maps[k-1]` is `D_k : F_k → F_{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeResolution {
    pub config: RingConfig,
    pub degrees: Vec<Vec<i32>>,
    pub maps: Vec<Matrix>,
}

#[derive(Serialize)]
struct ResolutionJson<'a> {
    char: u32,
    order: crate::algebra::MonomialOrder,
    degrees: &'a [Vec<i32>],
    maps: Vec<Vec<Vec<String>>>,
}

impl FreeResolution {
    /// Length, i.e. the index of the last nonzero `F_k`.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, Vec::len)
    }

    /// Betti numbers of every level, including those a curve never has.
    pub fn betti_levels(&self) -> Vec<std::collections::BTreeMap<i32, u32>> {
        self.degrees[1..]
            .iter()
            .map(|level| {
                let mut row = std::collections::BTreeMap::new();
                for &d in level {
                    *row.entry(d).or_insert(0) += 1;
                }
                row
            })
            .collect()
    }

    /// Betti table of `F_1, F_2, F_3`.
    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new();
        for (k, row) in self.betti_levels().into_iter().enumerate().take(3) {
            for (i, m) in row {
                t.set(k + 1, i, m);
            }
        }
        t
    }

    /// Checks `D_k ∘ D_{k+1} = 0` for every `k`.
    #[allow(clippy::needless_range_loop)]
    pub fn is_complex(&self) -> Result<bool> {
        let ring = Ring::new(self.config)?;
        for k in 1..self.maps.len() {
            let (a, b) = (&self.maps[k - 1], &self.maps[k]);
            for row in a {
                for col in 0..b.first().map_or(0, Vec::len) {
                    let mut acc = Poly::zero();
                    for (mid, entry) in row.iter().enumerate() {
                        if !entry.is_zero() && !b[mid][col].is_zero() {
                            acc = ring.add(&acc, &ring.mul(entry, &b[mid][col])?);
                        }
                    }
                    if !acc.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True when no matrix entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().flatten().flatten().all(|p| !p.is_unit())
    }

    /// Every entry is homogeneous of degree `deg(source) - deg(target)`.
    pub fn is_graded(&self) -> bool {
        self.maps.iter().enumerate().all(|(k, m)| {
            m.iter().enumerate().all(|(r, row)| {
                row.iter().enumerate().all(|(c, p)| {
                    p.is_zero()
                        || (p.is_homogeneous()
                            && p.degree().unwrap() as i32 == self.degrees[k + 1][c] - self.degrees[k][r])
                })
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ring = Ring::new(self.config).expect("configuration was validated on construction");
        let maps = self
            .maps
            .iter()
            .map(|m| m.iter().map(|row| row.iter().map(|p| ring.render(p)).collect()).collect())
            .collect();
        serde_json::to_value(ResolutionJson {
            char: self.config.characteristic,
            order: self.config.order,
            degrees: &self.degrees,
            maps,
        })
        .expect("plain data serializes")
    }
}

fn frame_to_matrices(ring: &Ring, frame: &Frame) -> (Vec<Vec<i32>>, Vec<Matrix>) {
    let degrees: Vec<Vec<i32>> = frame.orders.iter().map(|o| o.degrees.clone()).collect();
    let mut maps = Vec::new();
    for (k, images) in frame.maps.iter().enumerate() {
        let rows = degrees[k].len();
        let mut m: Matrix = vec![vec![Poly::zero(); images.len()]; rows];
        for (col, v) in images.iter().enumerate() {
            let mut per_row: Vec<Vec<_>> = vec![Vec::new(); rows];
            for &(mono, comp, c) in v {
                per_row[comp].push((mono, c));
            }
            for (row, terms) in per_row.into_iter().enumerate() {
                if !terms.is_empty() {
                    m[row][col] = ring.from_terms(terms);
                }
            }
        }
        maps.push(m);
    }
    (degrees[..maps.len() + 1].to_vec(), maps)
}

/// Finds the next unit entry: lowest source degree, then lowest level,
/// column and row.
fn next_unit(degrees: &[Vec<i32>], maps: &[Matrix]) -> Option<(usize, usize, usize)> {
    type Key = (i32, usize, usize, usize);
    let mut best: Option<(Key, (usize, usize, usize))> = None;
    for (k0, m) in maps.iter().enumerate().skip(1) {
        for (a, row) in m.iter().enumerate() {
            for (b, p) in row.iter().enumerate() {
                if p.is_unit() {
                    let key = (degrees[k0 + 1][b], k0, b, a);
                    if best.as_ref().is_none_or(|(bk, _)| key < *bk) {
                        best = Some((key, (k0, a, b)));
                    }
                }
            }
        }
    }
    best.map(|(_, v)| v)
}

/// Splits off the trivial summand `R(-δ) → R(-δ)` at the unit `maps[k0][a][b]`.
fn cancel(ring: &Ring, degrees: &mut [Vec<i32>], maps: &mut [Matrix], k0: usize, a: usize, b: usize) -> Result<()> {
    let u_inv = ring.inv_c(maps[k0][a][b].constant_value().unwrap());
    {
        let m = &mut maps[k0];
        let pivot_row: Vec<Poly> = m[a].clone();
        for (c, row) in m.iter_mut().enumerate() {
            if c == a || row[b].is_zero() {
                continue;
            }
            let factor = ring.scale(&row[b], u_inv);
            for (j, entry) in row.iter_mut().enumerate() {
                if j == b || pivot_row[j].is_zero() {
                    continue;
                }
                *entry = ring.sub(entry, &ring.mul(&factor, &pivot_row[j])?);
            }
        }
        m.remove(a);
        for row in m.iter_mut() {
            row.remove(b);
        }
    }
    if k0 >= 1 {
        for row in maps[k0 - 1].iter_mut() {
            row.remove(a);
        }
    }
    if k0 + 1 < maps.len() {
        maps[k0 + 1].remove(b);
    }
    degrees[k0].remove(a);
    degrees[k0 + 1].remove(b);
    Ok(())
}

/// The minimal graded free resolution of the ideal generated by `gens`,
/// without any check that the ideal defines a curve.
pub fn resolve(ring: &Ring, gens: &[Poly]) -> Result<FreeResolution> {
    let gb = groebner_basis_in(ring, gens)?;
    let frame = schreyer_frame(ring, &gb)?;
    let (mut degrees, mut maps) = frame_to_matrices(ring, &frame);
    while let Some((k0, a, b)) = next_unit(&degrees, &maps) {
        cancel(ring, &mut degrees, &mut maps, k0, a, b)?;
    }
    while maps.last().is_some_and(|m| m.first().is_none_or(Vec::is_empty)) {
        maps.pop();
        degrees.pop();
    }
    Ok(FreeResolution { config: ring.config(), degrees, maps })
}

/// Minimal resolution plus Betti table of a curve ideal.
///
/// Fails with [`RaoError::NotCodimTwo`] when the resolution is longer than
/// three and with [`RaoError::NotCurveIdeal`] when the rank or degree sums
/// are wrong for a curve.
pub fn minimal_free_resolution(gens: &[Poly], cfg: RingConfig) -> Result<(FreeResolution, BettiTable)> {
    let ring = Ring::new(cfg)?;
    let res = resolve(&ring, gens)?;
    if res.length() > 3 {
        let extra: Vec<String> = res.betti_levels()[3..]
            .iter()
            .enumerate()
            .map(|(k, row)| format!("F{} has rank {}", k + 4, row.values().sum::<u32>()))
            .collect();
        return Err(RaoError::NotCodimTwo(extra.join(", ")));
    }
    let betti = res.betti();
    hilbert_numerics(&betti)?;
    Ok((res, betti))
}

/// Parses an ideal file and resolves it.
pub fn resolve_ideal_text(text: &str, cfg: RingConfig) -> Result<(FreeResolution, BettiTable)> {
    let ring = Ring::new(cfg)?;
    let gens = parse_ideal(&ring, text)?;
    minimal_free_resolution(&gens, cfg)
}
