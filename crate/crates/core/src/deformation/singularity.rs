//! Quadratic part of the local equations of `H(d,g)` at a curve with tuple
//! `(r, 0, a, b, 0)` and `s = e = c`: the entries of `Z·W` for an `a × r`
//! matrix `Z` and an `r × b` matrix `W`.

use serde::Serialize;

use crate::error::{RaoError, Result};
use crate::invariants::CurveData;
use crate::obstruction::normal_sheaf_of;
use crate::rao::rao_form;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadricIdeal {
    pub r: u64,
    pub a: u64,
    pub b: u64,
    /// Number of `Y` variables, the tangent directions that stay in `H_γρ`.
    pub m: i64,
    pub z_vars: Vec<String>,
    pub w_vars: Vec<String>,
    /// Generator `(k, l)` as its list of `(Z_ki, W_il)` products.
    pub terms: Vec<Vec<(String, String)>>,
    pub generators: Vec<String>,
    pub note: String,
}

fn var(name: char, i: u64, j: u64) -> String {
    if i >= 10 || j >= 10 {
        format!("{name}{i}_{j}")
    } else {
        format!("{name}{i}{j}")
    }
}

/// The bilinear generators for given `(r, a, b)` and `m`.
pub fn quadric_ideal(r: u64, a: u64, b: u64, m: i64) -> QuadricIdeal {
    let z_vars = (1..=a).flat_map(|k| (1..=r).map(move |i| var('Z', k, i))).collect();
    let w_vars = (1..=r).flat_map(|i| (1..=b).map(move |l| var('W', i, l))).collect();
    let mut terms = Vec::new();
    for k in 1..=a {
        for l in 1..=b {
            terms.push((1..=r).map(|i| (var('Z', k, i), var('W', i, l))).collect::<Vec<_>>());
        }
    }
    let generators = terms
        .iter()
        .map(|t: &Vec<(String, String)>| t.iter().map(|(z, w)| format!("{z}*{w}")).collect::<Vec<_>>().join(" + "))
        .collect();
    QuadricIdeal {
        r,
        a,
        b,
        m,
        z_vars,
        w_vars,
        terms,
        generators,
        note: "equations modulo the cube of the maximal ideal; higher-order terms are not computed".into(),
    }
}

/// Refuses unless `diam M = 1`, `a₁ = b₂ = 0` and `s = e = c`.
pub fn singularity_ideal(cd: &CurveData) -> Result<QuadricIdeal> {
    let refuse =
        |why: String| Err(RaoError::Refused(format!("singularity ideal needs the (r,0,a,b,0) profile: {why}")));
    if cd.diam() != 1 {
        return refuse(format!("diam M = {}", cd.diam()));
    }
    let c = cd.c().unwrap();
    if cd.s() != c || cd.e() != c {
        return refuse(format!("s = {}, e = {}, c = {c}", cd.s(), cd.e()));
    }
    let n = rao_form(cd)?.n_tuple(c);
    if n.a1 != 0 || n.b2 != 0 {
        return refuse(format!("a₁ = {}, b₂ = {}", n.a1, n.b2));
    }
    let h0 = normal_sheaf_of(cd).map_err(|u| RaoError::Refused(u.missing.join("; ")))?.h0;
    let m = h0 - (n.r * n.a2) as i64 - (n.r * n.b1) as i64;
    Ok(quadric_ideal(n.r, n.a2, n.b1, m))
}

impl QuadricIdeal {
    /// One generator per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.generators {
            out.push_str(g);
            out.push('\n');
        }
        out
    }
}
