//! Shared test support: an independent Betti-number oracle and curve corpora.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use rao_forge::algebra::{GradedDims, Ring, RingConfig};
use rao_forge::deformation::{rab_family, random_buchsbaum};
use rao_forge::invariants::CurveData;
use rao_forge::resolution::{parse_ideal, BettiTable};

pub const P: u64 = 32003;

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Exponent vectors of degree `d` in four variables, lex-descending.
pub fn monomials(d: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push([a, b, c, d - a - b - c]);
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
#[allow(clippy::needless_range_loop)]
fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * iv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = (rows[k][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(&mut rows, p).len()
}

/// `(R/I)_d` as `R_d` modulo the span of monomial multiples of the generators.
struct Quotient {
    monos: Vec<[u32; 4]>,
    index: HashMap<[u32; 4], usize>,
    basis_rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// Positions of the non-pivot monomials: coordinates of `R/I` in degree `d`.
    free: Vec<usize>,
}

impl Quotient {
    fn new(gens: &[Vec<([u32; 4], u64)>], d: u32, p: u64) -> Self {
        let monos = monomials(d);
        let index: HashMap<[u32; 4], usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows = Vec::new();
        for g in gens {
            let gd: u32 = g[0].0.iter().sum();
            if gd > d {
                continue;
            }
            for m in monomials(d - gd) {
                let mut row = vec![0u64; monos.len()];
                for (e, c) in g {
                    let prod = [e[0] + m[0], e[1] + m[1], e[2] + m[2], e[3] + m[3]];
                    row[index[&prod]] = (row[index[&prod]] + c) % p;
                }
                rows.push(row);
            }
        }
        let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows, p) };
        let free = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
        Quotient { monos, index, basis_rows: rows, pivots, free }
    }

    fn dim(&self) -> usize {
        self.free.len()
    }

    /// Coordinates of the class of a vector in `R_d`.
    fn normal_form(&self, mut v: Vec<u64>, p: u64) -> Vec<u64> {
        for (row, &c) in self.basis_rows.iter().zip(&self.pivots) {
            if v[c] != 0 {
                let f = v[c];
                for j in 0..v.len() {
                    v[j] = (v[j] + (p - f) * row[j]) % p;
                }
            }
        }
        self.free.iter().map(|&c| v[c]).collect()
    }
}

fn subsets(p: usize) -> Vec<Vec<usize>> {
    (0u32..16).filter(|m| m.count_ones() as usize == p).map(|m| (0..4).filter(|k| m >> k & 1 == 1).collect()).collect()
}

/// `β_{j,i}` of `I` as the Koszul homology `H_j(x; R/I)_i`, by plain linear
/// algebra, for `i ≤ max_deg`.
pub fn koszul_betti(gens: &[Vec<([u32; 4], u64)>], max_deg: u32, p: u64) -> BettiTable {
    let quot: HashMap<i64, Quotient> = (0..=max_deg as i64).map(|d| (d, Quotient::new(gens, d as u32, p))).collect();
    let dim = |d: i64| if d < 0 { 0 } else { quot[&d].dim() };
    // Matrix of ∂_j in degree i: K_j ⊗ (R/I)_{i-j} → K_{j-1} ⊗ (R/I)_{i-j+1}.
    let boundary = |j: usize, i: i64| -> Vec<Vec<u64>> {
        if j == 0 || j > 4 || i - (j as i64) < 0 {
            return Vec::new();
        }
        let src_deg = i - j as i64;
        let tgt_deg = src_deg + 1;
        let (sq, tq) = (&quot[&src_deg], &quot[&tgt_deg]);
        let tgt_sets = subsets(j - 1);
        let mut rows = Vec::new();
        for s in subsets(j) {
            for &fc in &sq.free {
                let m = sq.monos[fc];
                let mut row = vec![0u64; tgt_sets.len() * tq.dim()];
                for (pos, &k) in s.iter().enumerate() {
                    let sign_neg = pos % 2 == 1;
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != k).collect();
                    let ti = tgt_sets.iter().position(|t| *t == rest).unwrap();
                    let mut mm = m;
                    mm[k] += 1;
                    let mut v = vec![0u64; tq.monos.len()];
                    v[tq.index[&mm]] = if sign_neg { p - 1 } else { 1 };
                    let nf = tq.normal_form(v, p);
                    for (x, y) in row[ti * tq.dim()..(ti + 1) * tq.dim()].iter_mut().zip(nf) {
                        *x = (*x + y) % p;
                    }
                }
                rows.push(row);
            }
        }
        rows
    };
    let mut table = BettiTable::new();
    for i in 0..=max_deg as i64 - 1 {
        for j in 1..=3usize {
            if i - (j as i64) < 0 {
                continue;
            }
            let cj = subsets(j).len() * dim(i - j as i64);
            let rk_out = rank(boundary(j, i), p);
            let rk_in = if i - (j as i64 + 1) >= 0 { rank(boundary(j + 1, i), p) } else { 0 };
            let h = cj - rk_out - rk_in;
            if h > 0 {
                table.set(j, i as i32, h as u32);
            }
        }
    }
    table
}

/// Parses generators with the library parser and hands the raw terms to the
/// oracle.
pub fn oracle_betti(text: &str, max_deg: u32) -> BettiTable {
    let ring = Ring::new(RingConfig::default()).unwrap();
    let gens: Vec<Vec<([u32; 4], u64)>> = parse_ideal(&ring, text)
        .unwrap()
        .iter()
        .map(|g| {
            g.terms()
                .iter()
                .map(|(m, c)| ([m.0[0] as u32, m.0[1] as u32, m.0[2] as u32, m.0[3] as u32], *c as u64))
                .collect()
        })
        .collect();
    koszul_betti(&gens, max_deg, P)
}

/// Monomial curve ideals with generators of degree at most 4.
pub const CATALOGUE: [(&str, &str); 15] = [
    ("line", "x0\nx1"),
    ("double line", "x0\nx1^2"),
    ("complete intersection (2,2)", "x0^2\nx1^2"),
    ("two lines in a plane", "x0\nx1*x2"),
    ("three lines in a plane", "x0\nx1*x2*x3"),
    ("four lines, CI (2,2)", "x0*x1\nx2*x3"),
    ("skew lines", "x0*x2\nx0*x3\nx1*x2\nx1*x3"),
    ("triple line", "x0^2\nx0*x1\nx1^2"),
    ("three concurrent lines", "x0*x1\nx0*x2\nx1*x2"),
    ("triple planar line", "x0^3\nx1"),
    ("quadruple line", "x0^2\nx0*x1\nx1^3"),
    ("sextuple line", "x0^3\nx0^2*x1\nx0*x1^2\nx1^3"),
    ("double line and skew line", "x0*x2\nx0*x3\nx1^2*x2\nx1^2*x3"),
    ("chain of three lines", "x0*x2\nx0*x3\nx1*x2"),
    ("double planar line and skew line", "x0^2*x2\nx0^2*x3\nx1*x2\nx1*x3"),
];

/// Rao dimensions of the catalogue curves that are not Buchsbaum. Both are a
/// double line disjoint from a line: `M_v` is the cokernel of
/// `H⁰(O(v)) → H⁰(O_X(v)) ⊕ H⁰(O_L(v))`, i.e. `2 - 1` in degree 0 and
/// `(3 + 2) - 4` in degree 1, and surjective from degree 2 on.
pub fn catalogue_rao(name: &str) -> Option<GradedDims> {
    match name {
        "double line and skew line" | "double planar line and skew line" => {
            Some(GradedDims::from_pairs([(0, 1), (1, 1)]))
        }
        _ => None,
    }
}

/// Catalogue curve data: Rao dimensions from β₃ unless listed above.
pub fn catalogue_curve(name: &str, betti: BettiTable) -> CurveData {
    match catalogue_rao(name) {
        Some(rao) => CurveData::new(betti, rao, false).unwrap(),
        None => CurveData::buchsbaum_from_betti(betti).unwrap(),
    }
}

/// Hand-checked tables that appear in the literature on these curves.
pub fn known_tables() -> Vec<CurveData> {
    let bb = |b1: &[(i32, u32)], b2: &[(i32, u32)], b3: &[(i32, u32)]| {
        CurveData::buchsbaum_from_betti(BettiTable::from_rows(b1, b2, b3)).unwrap()
    };
    vec![
        bb(&[(7, 5), (8, 1), (9, 1)], &[(8, 4), (9, 1), (10, 2)], &[(9, 1)]),
        bb(&[(2, 4)], &[(3, 4)], &[(4, 1)]),
        bb(&[(2, 3)], &[(3, 2)], &[]),
        bb(&[(2, 1), (3, 1)], &[(5, 1)], &[]),
    ]
}

/// A random `(r, a, b)` with entries in `1..=max`.
pub fn random_triple<R: Rng>(rng: &mut R, max: u64) -> (u64, u64, u64) {
    (rng.gen_range(1..=max), rng.gen_range(1..=max), rng.gen_range(1..=max))
}

/// Random validated curves: half from the `(r, a, b)` family, half random
/// Buchsbaum Ω-shapes.
pub fn random_corpus<R: Rng>(rng: &mut R, n: usize) -> Vec<CurveData> {
    (0..n)
        .map(|k| {
            if k % 2 == 0 {
                let (r, a, b) = random_triple(rng, 5);
                rab_family(r, a, b).unwrap().curve
            } else {
                random_buchsbaum(rng).unwrap().1
            }
        })
        .collect()
}
