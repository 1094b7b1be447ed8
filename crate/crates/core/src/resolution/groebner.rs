//! Buchberger's algorithm with the normal selection strategy and
//! Gebauer–Möller pair elimination.

use crate::algebra::{Monomial, Poly, Ring, RingConfig};
use crate::error::{RaoError, Result};

/// Internal degree above which the engine gives up.
pub const DEGREE_CAP: u32 = 40;

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn lm(p: &Poly) -> Monomial {
    p.leading_monomial().expect("nonzero polynomial")
}

/// `a - c*m*b`, exploiting that `b` is already sorted.
pub(crate) fn sub_mul(ring: &Ring, a: &Poly, c: u32, m: &Monomial, b: &Poly) -> Result<Poly> {
    let scaled = ring.mul_term(b, m, c)?;
    Ok(ring.sub(a, &scaled))
}

/// Full reduction of `f` modulo `basis` (every term, not just the leading one).
pub fn reduce(ring: &Ring, f: &Poly, basis: &[Poly]) -> Result<Poly> {
    let mut f = f.clone();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = f.leading() {
        match basis.iter().find(|g| lm(g).divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let factor = ring.mul_c(c, ring.inv_c(gc));
                f = sub_mul(ring, &f, factor, &m.quotient(&gm), g)?;
            }
            None => {
                rem.push((m, c));
                f = ring.from_terms(f.terms()[1..].to_vec());
            }
        }
    }
    Ok(ring.from_terms(rem))
}

fn s_poly(ring: &Ring, f: &Poly, g: &Poly) -> Result<Poly> {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(&gm);
    let a = ring.mul_term(f, &l.quotient(&fm), ring.inv_c(fc))?;
    let b = ring.mul_term(g, &l.quotient(&gm), ring.inv_c(gc))?;
    Ok(ring.sub(&a, &b))
}

struct State<'r> {
    ring: &'r Ring,
    polys: Vec<Poly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn basis(&self) -> Vec<Poly> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p.clone()).collect()
    }

    /// The Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: Poly) {
        let hm = lm(&h);
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);

        let candidates: Vec<usize> = (0..hi).filter(|&g| self.active[g]).collect();
        let lcm_with = |g: usize| lm(&self.polys[g]).lcm(&hm);

        // criterion M: drop (h,g1) if some other (h,g2) has an lcm dividing it
        let mut kept: Vec<usize> = Vec::new();
        for (k, &g1) in candidates.iter().enumerate() {
            let l1 = lcm_with(g1);
            let coprime = lm(&self.polys[g1]).is_coprime(&hm);
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|&g2| lcm_with(g2).divides(&l1));
            if coprime || !dominated {
                kept.push(g1);
            }
        }
        // criterion F plus the product criterion
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|&g| !lm(&self.polys[g]).is_coprime(&hm))
            .map(|g| Pair { i: g, j: hi, lcm: lcm_with(g) })
            .collect();

        // criterion B on the old pairs
        let polys = &self.polys;
        self.pairs
            .retain(|p| !hm.divides(&p.lcm) || lm(&polys[p.i]).lcm(&hm) == p.lcm || lm(&polys[p.j]).lcm(&hm) == p.lcm);
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(&lm(&self.polys[g])) {
                self.active[g] = false;
            }
        }
    }

    /// Normal strategy: smallest lcm first, ties broken deterministically.
    fn pop_pair(&mut self) -> Option<Pair> {
        let ring = self.ring;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| ring.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Sorts a basis increasingly by (degree, leading monomial).
pub(crate) fn sort_basis(ring: &Ring, basis: &mut [Poly]) {
    basis.sort_by(|a, b| {
        let (ma, mb) = (lm(a), lm(b));
        ma.degree().cmp(&mb.degree()).then_with(|| ring.cmp(&ma, &mb))
    });
}

fn interreduce(ring: &Ring, basis: Vec<Poly>) -> Result<Vec<Poly>> {
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let (head, rest) = (&basis[k], [&basis[..k], &basis[k + 1..]].concat());
        let (m, c) = head.leading().unwrap();
        let tail = ring.from_terms(head.terms()[1..].to_vec());
        let tail = reduce(ring, &tail, &rest)?;
        let full = ring.add(&ring.monomial(m, c), &tail);
        out.push(ring.monic(&full));
    }
    sort_basis(ring, &mut out);
    Ok(out)
}

/// Checks homogeneity and drops zero generators; errors name the 1-based
/// position of the offending generator.
pub(crate) fn check_generators(gens: &[Poly]) -> Result<()> {
    if gens.iter().all(Poly::is_zero) {
        return Err(RaoError::InvalidArgument("the ideal has no nonzero generators".into()));
    }
    for (k, g) in gens.iter().enumerate() {
        if !g.is_homogeneous() {
            return Err(RaoError::NotHomogeneous { index: k + 1 });
        }
    }
    Ok(())
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by increasing leading monomial.
pub fn groebner_basis_in(ring: &Ring, gens: &[Poly]) -> Result<Vec<Poly>> {
    check_generators(gens)?;
    let mut st = State { ring, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| ring.import(g)).collect();
    sort_basis(ring, &mut input);
    for g in input {
        let h = reduce(ring, &g, &st.basis())?;
        if !h.is_zero() {
            st.update(ring.monic(&h));
        }
    }
    while let Some(pair) = st.pop_pair() {
        let degree = pair.lcm.degree();
        if degree > DEGREE_CAP {
            return Err(RaoError::DegreeCap { degree, cap: DEGREE_CAP });
        }
        let s = s_poly(ring, &st.polys[pair.i], &st.polys[pair.j])?;
        let h = reduce(ring, &s, &st.basis())?;
        if !h.is_zero() {
            st.update(ring.monic(&h));
        }
    }
    interreduce(ring, st.basis())
}

/// Convenience wrapper building the ring from a configuration.
pub fn groebner_basis(gens: &[Poly], cfg: RingConfig) -> Result<Vec<Poly>> {
    let ring = Ring::new(cfg)?;
    groebner_basis_in(&ring, gens)
}

/// True when every S-polynomial of `basis` reduces to zero modulo it.
pub fn is_groebner_basis(ring: &Ring, basis: &[Poly]) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce(ring, &s_poly(ring, &basis[i], &basis[j])?, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MonomialOrder;
    use crate::resolution::parse::parse_ideal;

    fn ring() -> Ring {
        Ring::new(RingConfig::default()).unwrap()
    }

    fn gb(text: &str) -> Vec<String> {
        let r = ring();
        let gens = parse_ideal(&r, text).unwrap();
        groebner_basis_in(&r, &gens).unwrap().iter().map(|p| r.render(p)).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        assert_eq!(gb("x0\nx1"), vec!["x1", "x0"]);
    }

    #[test]
    fn twisted_cubic_quadrics_already_form_a_basis() {
        let r = ring();
        let gens = parse_ideal(&r, "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2").unwrap();
        assert!(is_groebner_basis(&r, &gens).unwrap());
        let basis = groebner_basis_in(&r, &gens).unwrap();
        assert_eq!(basis.len(), 3);
        let mut rendered: Vec<String> = basis.iter().map(|p| r.render(p)).collect();
        rendered.sort();
        let mut expected: Vec<String> = gens.iter().map(|p| r.render(&r.monic(p))).collect();
        expected.sort();
        assert_eq!(rendered, expected);
    }

    #[test]
    fn hand_run_two_generator_case() {
        // S(x0^2, x0*x1 + x1^2) = x1 * x0^2 - x0 * (x0*x1 + x1^2) = -x0*x1^2
        // which reduces to x1^3 by the second generator
        let basis = gb("x0^2\nx0*x1 + x1^2");
        assert!(basis.contains(&"x1^3".to_string()), "{basis:?}");
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn rejects_inhomogeneous_and_reports_position() {
        let r = ring();
        let gens = parse_ideal(&r, "x0*x1\nx0 + x1^2").unwrap();
        assert_eq!(groebner_basis_in(&r, &gens), Err(RaoError::NotHomogeneous { index: 2 }));
    }

    #[test]
    fn degree_cap_reports_pair_degree() {
        let r = ring();
        let gens = parse_ideal(&r, "x0^30*x1 - x2^31\nx1^30*x0 - x3^31").unwrap();
        match groebner_basis_in(&r, &gens) {
            Err(RaoError::DegreeCap { degree, cap }) => {
                assert!(degree > cap);
                assert_eq!(cap, DEGREE_CAP);
            }
            other => panic!("expected degree cap, got {other:?}"),
        }
    }

    #[test]
    fn result_is_reduced_and_independent_of_input_order() {
        let r = ring();
        let a = parse_ideal(&r, "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\nx0^2 + x3^2").unwrap();
        let mut b = a.clone();
        b.reverse();
        let ga = groebner_basis_in(&r, &a).unwrap();
        let gb = groebner_basis_in(&r, &b).unwrap();
        assert_eq!(ga, gb);
        assert!(is_groebner_basis(&r, &ga).unwrap());
        for (k, g) in ga.iter().enumerate() {
            let others: Vec<Poly> = ga.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p.clone()).collect();
            for (m, _) in g.terms() {
                assert!(!others.iter().any(|o| lm(o).divides(m)));
            }
        }
    }

    #[test]
    fn lex_order_also_works() {
        let r = Ring::new(RingConfig { characteristic: 32003, order: MonomialOrder::Lex }).unwrap();
        let gens = parse_ideal(&r, "x0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2").unwrap();
        let basis = groebner_basis_in(&r, &gens).unwrap();
        assert!(is_groebner_basis(&r, &basis).unwrap());
    }
}
