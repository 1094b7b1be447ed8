//! Sparse homogeneous polynomials in `k[x0,x1,x2,x3]` over a prime field.
//!
//! Polynomials do not carry their ring: every operation goes through a
//! [`Ring`], which fixes the characteristic and the monomial order. Terms are
//! kept sorted in decreasing order with no zero coefficients.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{RaoError, Result};

pub const NVARS: usize = 4;
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Degrevlex,
    Lex,
}

impl std::str::FromStr for MonomialOrder {
    type Err = RaoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::Degrevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(RaoError::InvalidArgument(format!("unknown monomial order `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingConfig {
    pub characteristic: u32,
    pub order: MonomialOrder,
}

impl Default for RingConfig {
    fn default() -> Self {
        RingConfig { characteristic: DEFAULT_CHARACTERISTIC, order: MonomialOrder::Degrevlex }
    }
}

impl RingConfig {
    pub fn with_characteristic(characteristic: u32) -> Self {
        RingConfig { characteristic, ..Default::default() }
    }
}

/// Exponent vector of a monomial `x0^e0 x1^e1 x2^e2 x3^e3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut e = [0u16; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k].checked_add(other.0[k]).ok_or(RaoError::ExponentOverflow)?;
        }
        Ok(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, assuming `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Monomial {
        debug_assert!(divisor.divides(self));
        let mut e = [0u16; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k] - divisor.0[k];
        }
        Monomial(e)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k].max(other.0[k]);
        }
        Monomial(e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; NVARS];
        for (k, slot) in e.iter_mut().enumerate() {
            *slot = self.0[k].min(other.0[k]);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every monomial of the given total degree, in no particular order.
    pub fn all_of_degree(degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let d = degree as u16;
        for a in 0..=d {
            for b in 0..=(d - a) {
                for c in 0..=(d - a - b) {
                    out.push(Monomial([a, b, c, d - a - b - c]));
                }
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            write!(f, "x{k}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

/// A polynomial as a list of terms sorted decreasingly in the owning ring's order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    /// Total degree of the leading term; for homogeneous input this is the degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(n, _)| n.degree() == d)
            }
        }
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE
    }

    pub fn constant_value(&self) -> Option<u32> {
        if self.is_zero() {
            Some(0)
        } else if self.is_unit() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }
}

/// Arithmetic context: characteristic plus monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ring {
    p: u32,
    order: MonomialOrder,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    pub fn new(cfg: RingConfig) -> Result<Ring> {
        if !is_prime(cfg.characteristic) {
            return Err(RaoError::InvalidArgument(format!("characteristic {} is not prime", cfg.characteristic)));
        }
        if cfg.characteristic >= 1 << 31 {
            return Err(RaoError::InvalidArgument("characteristic must be below 2^31".into()));
        }
        Ok(Ring { p: cfg.characteristic, order: cfg.order })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn config(&self) -> RingConfig {
        RingConfig { characteristic: self.p, order: self.order }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Degrevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for k in (0..NVARS).rev() {
                    match a.0[k].cmp(&b.0[k]) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    // --- scalar arithmetic mod p ---

    pub fn reduce_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add_c(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub_c(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul_c(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg_c(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv_c(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        // Fermat: a^(p-2)
        let mut base = a as u64 % self.p as u64;
        let mut exp = self.p as u64 - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        acc as u32
    }

    // --- polynomial construction ---

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(&self, mut terms: Vec<(Monomial, u32)>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % self.p;
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = self.add_c(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn constant(&self, c: i64) -> Poly {
        self.from_terms(vec![(Monomial::ONE, self.reduce_int(c))])
    }

    pub fn monomial(&self, m: Monomial, c: u32) -> Poly {
        self.from_terms(vec![(m, c)])
    }

    pub fn var(&self, i: usize) -> Poly {
        self.monomial(Monomial::var(i), 1)
    }

    /// Re-sorts a polynomial coming from a ring with a different order.
    pub fn import(&self, p: &Poly) -> Poly {
        self.from_terms(p.terms.clone())
    }

    // --- polynomial arithmetic ---

    fn merge(&self, a: &Poly, b: &Poly, negate_b: bool) -> Poly {
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = a.terms[i];
            let (mb, cb) = b.terms[j];
            let cb = if negate_b { self.neg_c(cb) } else { cb };
            match self.cmp(&ma, &mb) {
                Ordering::Greater => {
                    out.push((ma, ca));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb, cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.add_c(ca, cb);
                    if c != 0 {
                        out.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        for &(m, c) in &b.terms[j..] {
            out.push((m, if negate_b { self.neg_c(c) } else { c }));
        }
        Poly { terms: out }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(a, b, false)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.merge(a, b, true)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|&(m, c)| (m, self.neg_c(c))).collect() }
    }

    pub fn scale(&self, a: &Poly, c: u32) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|&(m, x)| (m, self.mul_c(x, c))).collect() }
    }

    /// `c * m * a`; multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, a: &Poly, m: &Monomial, c: u32) -> Result<Poly> {
        let c = c % self.p;
        if c == 0 {
            return Ok(Poly::zero());
        }
        let terms =
            a.terms.iter().map(|&(n, x)| Ok((n.checked_mul(m)?, self.mul_c(x, c)))).collect::<Result<Vec<_>>>()?;
        Ok(Poly { terms })
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        let mut raw = Vec::with_capacity(a.terms.len() * b.terms.len());
        for &(ma, ca) in &a.terms {
            for &(mb, cb) in &b.terms {
                raw.push((ma.checked_mul(&mb)?, self.mul_c(ca, cb)));
            }
        }
        Ok(self.from_terms(raw))
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.leading() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(a, self.inv_c(c)),
        }
    }

    /// Human-readable form such as `3*x0^2*x2 - x1^3`, with coefficients in
    /// the symmetric range around zero.
    pub fn render(&self, a: &Poly) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        let half = self.p / 2;
        for (k, &(m, c)) in a.terms.iter().enumerate() {
            let (negative, mag) = if c > half { (true, self.p - c) } else { (false, c) };
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m == Monomial::ONE {
                write!(s, "{mag}").unwrap();
            } else if mag == 1 {
                write!(s, "{m}").unwrap();
            } else {
                write!(s, "{mag}*{m}").unwrap();
            }
        }
        s
    }
}
