//! Schreyer frames: a (usually non-minimal) free resolution whose syzygies at
//! every level are a Gröbner basis for the order induced from the level below.

use std::cmp::Ordering;

use crate::algebra::{Monomial, Poly, Ring, NVARS};
use crate::error::{RaoError, Result};

/// A vector in a free module: `(monomial, basis index, coefficient)` terms,
/// sorted decreasingly in the module order of its level.
pub(crate) type Vector = Vec<(Monomial, usize, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    a.checked_mul(b).expect("exponent overflow inside the degree cap")
}

/// The induced (Schreyer) order on a free module.
///
/// `m·e_i` is compared through `m · total[i]` in the ring order, then through
/// the chain of basis indices down to the ring, smaller index being larger.
#[derive(Debug, Clone)]
pub(crate) struct LevelOrder {
    pub totals: Vec<Monomial>,
    pub chains: Vec<Vec<u32>>,
    pub degrees: Vec<i32>,
}

impl LevelOrder {
    fn ring_level() -> Self {
        LevelOrder { totals: vec![Monomial::ONE], chains: vec![Vec::new()], degrees: vec![0] }
    }

    pub fn cmp(&self, ring: &Ring, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let ma = mono_mul(a.0, &self.totals[a.1]);
        let mb = mono_mul(b.0, &self.totals[b.1]);
        ring.cmp(&ma, &mb).then_with(|| {
            for (x, y) in self.chains[a.1].iter().zip(&self.chains[b.1]) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        })
    }

    /// The order one level up, for basis elements mapping to `images`.
    fn induced(&self, images: &[Vector]) -> LevelOrder {
        let mut next = LevelOrder { totals: Vec::new(), chains: Vec::new(), degrees: Vec::new() };
        for (i, v) in images.iter().enumerate() {
            let (m, comp, _) = v[0];
            next.totals.push(mono_mul(&m, &self.totals[comp]));
            let mut chain = self.chains[comp].clone();
            chain.push(i as u32);
            next.chains.push(chain);
            next.degrees.push(m.degree() as i32 + self.degrees[comp]);
        }
        next
    }

    pub fn sort(&self, ring: &Ring, mut terms: Vector) -> Vector {
        terms.sort_by(|x, y| self.cmp(ring, (&y.0, y.1), (&x.0, x.1)));
        let mut out: Vector = Vec::with_capacity(terms.len());
        for (m, i, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m && last.1 == i => last.2 = ring.add_c(last.2, c),
                _ => out.push((m, i, c)),
            }
        }
        out.retain(|t| t.2 != 0);
        out
    }

    /// `a - c·m·b`.
    fn sub_scaled(&self, ring: &Ring, a: &Vector, c: u32, m: &Monomial, b: &Vector) -> Vector {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let neg = ring.neg_c(c);
        while i < a.len() || j < b.len() {
            let bt = b.get(j).map(|&(bm, bi, bc)| (mono_mul(&bm, m), bi, ring.mul_c(bc, neg)));
            let ord = match (a.get(i), &bt) {
                (Some(x), Some(y)) => self.cmp(ring, (&x.0, x.1), (&y.0, y.1)),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt.unwrap());
                    j += 1;
                }
                Ordering::Equal => {
                    let y = bt.unwrap();
                    let s = ring.add_c(a[i].2, y.2);
                    if s != 0 {
                        out.push((a[i].0, a[i].1, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

/// Division of `f` by the generators `gens` (all in the module ordered by
/// `ord`). Returns the quotient as a vector one level up and the remainder.
fn divide(ring: &Ring, ord: &LevelOrder, f: &Vector, gens: &[Vector]) -> (Vec<(Monomial, usize, u32)>, Vector) {
    let mut f = f.clone();
    let mut quotient = Vec::new();
    let mut rem = Vec::new();
    while let Some(&(m, comp, c)) = f.first() {
        let hit = gens.iter().enumerate().find(|(_, g)| g[0].1 == comp && g[0].0.divides(&m));
        match hit {
            Some((l, g)) => {
                let (gm, _, gc) = g[0];
                let q = m.quotient(&gm);
                let factor = ring.mul_c(c, ring.inv_c(gc));
                quotient.push((q, l, factor));
                f = ord.sub_scaled(ring, &f, factor, &q, g);
            }
            None => {
                rem.push(f.remove(0));
            }
        }
    }
    (quotient, rem)
}

/// Lex comparison with `x0` most significant, used to arrange generators so
/// that the frame has length at most the number of variables.
fn lex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    b.0.cmp(&a.0)
}

/// The Schreyer frame: `orders[k]` orders `F_k` (`F_0 = R`), `maps[k-1]` holds
/// the images of the basis of `F_k` in `F_{k-1}`.
#[derive(Debug, Clone)]
pub(crate) struct Frame {
    pub orders: Vec<LevelOrder>,
    pub maps: Vec<Vec<Vector>>,
}

/// Upper bound on frame levels; the arrangement above guarantees `NVARS`.
const MAX_LEVELS: usize = NVARS + 1;

fn arrange(images: &mut [Vector]) {
    images.sort_by(|a, b| a[0].1.cmp(&b[0].1).then_with(|| lex_desc(&a[0].0, &b[0].0)));
}

pub(crate) fn schreyer_frame(ring: &Ring, gb: &[Poly]) -> Result<Frame> {
    let mut orders = vec![LevelOrder::ring_level()];
    let mut level1: Vec<Vector> = gb.iter().map(|p| p.terms().iter().map(|&(m, c)| (m, 0, c)).collect()).collect();
    arrange(&mut level1);
    let mut maps = vec![level1];

    loop {
        let below = orders.last().unwrap().clone();
        let gens = maps.last().unwrap().clone();
        let ord = below.induced(&gens);
        let mut syz: Vec<Vector> = Vec::new();
        for i in 0..gens.len() {
            let (lm_i, comp_i, lc_i) = gens[i][0];
            let mut cands: Vec<(Monomial, usize)> = (i + 1..gens.len())
                .filter(|&j| gens[j][0].1 == comp_i)
                .map(|j| (lm_i.lcm(&gens[j][0].0).quotient(&lm_i), j))
                .collect();
            cands.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.1.cmp(&b.1)));
            let mut kept: Vec<(Monomial, usize)> = Vec::new();
            for (u, j) in cands {
                if !kept.iter().any(|(k, _)| k.divides(&u)) {
                    kept.push((u, j));
                }
            }
            for (u, j) in kept {
                let (lm_j, _, lc_j) = gens[j][0];
                let uj = mono_mul(&u, &lm_i).quotient(&lm_j);
                let ci = ring.inv_c(lc_i);
                let cj = ring.inv_c(lc_j);
                let scaled_i = below.sub_scaled(ring, &Vec::new(), ring.neg_c(ci), &u, &gens[i]);
                let s = below.sub_scaled(ring, &scaled_i, cj, &uj, &gens[j]);
                let (q, rem) = divide(ring, &below, &s, &gens);
                if !rem.is_empty() {
                    return Err(RaoError::inconsistent("internal: Schreyer division left a nonzero remainder"));
                }
                let mut terms: Vector = vec![(u, i, ci), (uj, j, ring.neg_c(cj))];
                terms.extend(q.into_iter().map(|(m, l, c)| (m, l, ring.neg_c(c))));
                let v = ord.sort(ring, terms);
                debug_assert_eq!((v[0].0, v[0].1), (u, i));
                syz.push(v);
            }
        }
        orders.push(ord);
        if syz.is_empty() {
            break;
        }
        if maps.len() >= MAX_LEVELS {
            return Err(RaoError::inconsistent("internal: Schreyer frame exceeded the expected length"));
        }
        arrange(&mut syz);
        maps.push(syz);
    }
    Ok(Frame { orders, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingConfig;
    use crate::resolution::groebner::groebner_basis_in;
    use crate::resolution::parse::parse_ideal;

    fn frame(text: &str) -> (Ring, Frame) {
        let r = Ring::new(RingConfig::default()).unwrap();
        let gb = groebner_basis_in(&r, &parse_ideal(&r, text).unwrap()).unwrap();
        let f = schreyer_frame(&r, &gb).unwrap();
        (r, f)
    }

    #[test]
    fn koszul_frame_of_four_variables() {
        let (_, f) = frame("x0\nx1\nx2\nx3");
        let ranks: Vec<usize> = f.maps.iter().map(|m| m.len()).collect();
        assert_eq!(ranks, vec![4, 6, 4, 1]);
    }

    #[test]
    fn leading_terms_are_first() {
        let (r, f) = frame("x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2");
        for (k, level) in f.maps.iter().enumerate() {
            let ord = &f.orders[k];
            for v in level {
                for w in v.windows(2) {
                    assert_eq!(ord.cmp(&r, (&w[0].0, w[0].1), (&w[1].0, w[1].1)), Ordering::Greater);
                }
            }
        }
    }

    #[test]
    fn degrees_are_homogeneous() {
        let (_, f) = frame("x0*x2\nx0*x3\nx1*x2\nx1*x3");
        for (k, level) in f.maps.iter().enumerate() {
            let below = &f.orders[k];
            let here = &f.orders[k + 1];
            for (b, v) in level.iter().enumerate() {
                for &(m, comp, _) in v {
                    assert_eq!(m.degree() as i32 + below.degrees[comp], here.degrees[b]);
                }
            }
        }
    }
}
