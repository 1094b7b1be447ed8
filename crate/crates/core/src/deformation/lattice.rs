//! The lattice of generizations of a curve with 5-tuple `(r, 0, a₂, b₁, 0)` and
//! the component counts it implies.

use std::fmt::Write as _;

use serde::Serialize;

/// `(r, a₂, b₁)`.
pub type Triple = (u64, u64, u64);

/// `C_ij`: `i` L4/F1 steps and `j` L4/F2 steps away from the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeNode {
    pub i: u64,
    pub j: u64,
    pub tuple: Triple,
    pub acm: bool,
    /// Change of `γ(c)`; only L4/F1 steps move the postulation.
    pub gamma_shift: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeEdge {
    pub from: (u64, u64),
    pub to: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lattice {
    pub triple: Triple,
    pub nodes: Vec<LatticeNode>,
    pub edges: Vec<LatticeEdge>,
}

fn node(triple: Triple, i: u64, j: u64) -> LatticeNode {
    let (r, a2, b1) = triple;
    LatticeNode { i, j, tuple: (r - i - j, a2 - i, b1 - j), acm: r == i + j, gamma_shift: -(i as i64) }
}

fn admissible((r, a2, b1): Triple, i: u64, j: u64) -> bool {
    i <= a2 && j <= b1 && i + j <= r
}

/// All `C_ij` with nonnegative coordinates, the curve itself at `(0,0)`.
/// Nodes are ordered by `(i, j)`.
pub fn generization_lattice(triple: Triple) -> Lattice {
    let (r, a2, b1) = triple;
    let rows: Vec<u64> = (0..=a2.min(r)).collect();
    let build = |&i: &u64| -> Vec<LatticeNode> { (0..=b1.min(r - i)).map(|j| node(triple, i, j)).collect() };
    #[cfg(feature = "parallel")]
    let nested: Vec<Vec<LatticeNode>> = {
        use rayon::prelude::*;
        rows.par_iter().map(build).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let nested: Vec<Vec<LatticeNode>> = rows.iter().map(build).collect();
    let nodes: Vec<LatticeNode> = nested.into_iter().flatten().collect();
    let mut edges = Vec::new();
    for n in &nodes {
        for (di, dj) in [(1, 0), (0, 1)] {
            if admissible(triple, n.i + di, n.j + dj) {
                edges.push(LatticeEdge { from: (n.i, n.j), to: (n.i + di, n.j + dj) });
            }
        }
    }
    Lattice { triple, nodes, edges }
}

/// Node count in closed form: `Σ_{i ≤ min(a₂,r)} (min(b₁, r-i) + 1)`.
pub fn lattice_size(triple: Triple) -> u64 {
    let (r, a2, b1) = triple;
    (0..=a2.min(r)).map(|i| b1.min(r - i) + 1).sum()
}

impl Lattice {
    /// Generizations other than the curve itself.
    pub fn proper(&self) -> impl Iterator<Item = &LatticeNode> {
        self.nodes.iter().filter(|n| (n.i, n.j) != (0, 0))
    }

    pub fn to_dot(&self) -> String {
        let (r, a2, b1) = self.triple;
        let mut out = format!("digraph generizations_{r}_{a2}_{b1} {{\n  rankdir=LR;\n");
        for n in &self.nodes {
            let (x, y, z) = n.tuple;
            let style = if n.acm { ", style=filled, fillcolor=lightblue" } else { "" };
            let _ = writeln!(out, "  n{}_{} [label=\"C{}{}\\n({x},{y},{z})\"{style}];", n.i, n.j, n.i, n.j);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{}_{} -> n{}_{};", e.from.0, e.from.1, e.to.0, e.to.1);
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ComponentCount {
    Bounds { lower: u64, upper: u64, exact: Option<u64> },
    Undetermined { reason: String },
}

/// Number of irreducible components of `H(d,g)` through a curve with tuple
/// `(r, 0, a₂, b₁, 0)`. `sec` asserts `s = e = c`.
pub fn component_count(triple: Triple, sec: bool) -> ComponentCount {
    let (r, a2, b1) = triple;
    if r == 0 || a2 * b1 == 0 {
        return ComponentCount::Undetermined { reason: "needs r > 0 and a₂·b₁ ≠ 0".into() };
    }
    if r < a2 + b1 {
        let lower = a2.min(r) + b1.min(r) + 1 - r;
        let upper = r + 1;
        return ComponentCount::Bounds { lower, upper, exact: sec.then_some(lower) };
    }
    if sec {
        return ComponentCount::Bounds { lower: 1, upper: 1, exact: Some(1) };
    }
    ComponentCount::Undetermined { reason: "r ≥ a₂ + b₁ requires s = e = c to conclude".into() }
}

impl std::fmt::Display for ComponentCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ComponentCount::Bounds { exact: Some(n), .. } => write!(f, "exactly {n}"),
            ComponentCount::Bounds { lower, upper, .. } => write!(f, "between {lower} and {upper}"),
            ComponentCount::Undetermined { reason } => write!(f, "undetermined: {reason}"),
        }
    }
}
