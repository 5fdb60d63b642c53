//! The bipartite multigraph Γ of a doubled matrix and its cycle types.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{DoubledMatrix, IotaAction};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    L,
    R,
}

/// A vertex of Γ: row `i` is `(L, i)`, column `j` is `(R, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Node {
    pub side: Side,
    pub index: usize,
}

impl Node {
    pub fn l(index: usize) -> Self {
        Self { side: Side::L, index }
    }

    pub fn r(index: usize) -> Self {
        Self { side: Side::R, index }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::L => write!(f, "L{}", self.index),
            Side::R => write!(f, "R{}", self.index),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CycleType {
    /// Double edge between two ι-fixed points.
    T1,
    /// Two double edges exchanged by ι.
    T2Pair,
    /// Cycle of length 2(2k+1) with one fixed point on each side.
    T3,
    /// Cycle of length 4k with two fixed points on the left.
    T4L,
    /// Cycle of length 4k with two fixed points on the right.
    T4R,
}

/// One component of Γ (a T2 pair counts as one entry).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub kind: CycleType,
    /// Size parameter; 0 for T1 and T2 pairs.
    pub k: usize,
    /// Nodes in walking order. For double edges: `[L i, R j]`, and for a T2
    /// pair both edges one after the other.
    pub nodes: Vec<Node>,
    /// Edges as `(row, column)`, each single edge once, double edges once.
    pub edges: Vec<(usize, usize)>,
}

/// Counts `c₁, c₂, c_{3,k}, c_{4,k,L}, c_{4,k,R}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Census {
    pub c1: usize,
    pub c2: usize,
    pub c3: BTreeMap<usize, usize>,
    pub c4l: BTreeMap<usize, usize>,
    pub c4r: BTreeMap<usize, usize>,
}

impl Census {
    pub fn is_identity_matching(&self) -> bool {
        self.c2 == 0 && self.c3.is_empty() && self.c4l.is_empty() && self.c4r.is_empty()
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.c1 > 0 {
            parts.push(format!("c1={}", self.c1));
        }
        if self.c2 > 0 {
            parts.push(format!("c2={}", self.c2));
        }
        for (name, m) in [("c3", &self.c3), ("c4L", &self.c4l), ("c4R", &self.c4r)] {
            for (k, c) in m {
                parts.push(format!("{name},{k}={c}"));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    pub cycles: Vec<Cycle>,
    pub census: Census,
}

/// Decomposes Γ into cycles and checks that each has type 1–4.
///
/// Errors: [`Error::NotDoublyStochastic`] or [`Error::NotInvariant`] for
/// malformed input, [`Error::NotAVertex`] naming the first offending cycle
/// when the matrix lies in the polytope but is not a vertex.
pub fn classify_graph(doubled: &DoubledMatrix, iota: &IotaAction) -> Result<CycleDecomposition> {
    let d = doubled.d();
    if d != iota.d() {
        return Err(Error::DimensionMismatch { left: d, right: iota.d() });
    }
    doubled.check_sums()?;
    if &iota.apply(doubled) != doubled {
        return Err(Error::NotInvariant);
    }
    let (phi, psi) = (iota.phi(), iota.psi());
    let mut seen_l = vec![false; d];
    let mut seen_r = vec![false; d];
    let mut cycles = Vec::new();
    let mut census = Census::default();
    for start in 0..d {
        if seen_l[start] {
            continue;
        }
        if let Some(j) = (0..d).find(|&j| doubled.get(start, j) == 2) {
            seen_l[start] = true;
            seen_r[j] = true;
            let (fi, fj) = (phi.apply(start), psi.apply(j));
            if fi == start && fj == j {
                census.c1 += 1;
                cycles.push(Cycle {
                    kind: CycleType::T1,
                    k: 0,
                    nodes: vec![Node::l(start), Node::r(j)],
                    edges: vec![(start, j)],
                });
            } else {
                // the partner edge is ι of this one; invariance makes it a
                // double edge as well
                seen_l[fi] = true;
                seen_r[fj] = true;
                census.c2 += 1;
                cycles.push(Cycle {
                    kind: CycleType::T2Pair,
                    k: 0,
                    nodes: vec![Node::l(start), Node::r(j), Node::l(fi), Node::r(fj)],
                    edges: vec![(start, j), (fi, fj)],
                });
            }
            continue;
        }
        let (nodes, edges) = walk(doubled, start);
        for n in &nodes {
            match n.side {
                Side::L => seen_l[n.index] = true,
                Side::R => seen_r[n.index] = true,
            }
        }
        let len = nodes.len();
        let describe = || nodes.iter().map(Node::to_string).collect::<Vec<_>>().join("-");
        let closed = nodes.iter().all(|n| match n.side {
            Side::L => nodes.contains(&Node::l(phi.apply(n.index))),
            Side::R => nodes.contains(&Node::r(psi.apply(n.index))),
        });
        if !closed {
            return Err(Error::NotAVertex(format!(
                "cycle {} of length {len} is moved by the involution",
                describe()
            )));
        }
        let fixed_l = nodes.iter().filter(|n| n.side == Side::L && phi.is_fixed(n.index)).count();
        let fixed_r = nodes.iter().filter(|n| n.side == Side::R && psi.is_fixed(n.index)).count();
        let (kind, k) = match (fixed_l, fixed_r, len % 4) {
            (1, 1, 2) => (CycleType::T3, (len - 2) / 4),
            (2, 0, 0) => (CycleType::T4L, len / 4),
            (0, 2, 0) => (CycleType::T4R, len / 4),
            _ => {
                return Err(Error::NotAVertex(format!(
                    "cycle {} of length {len} has {fixed_l} fixed left and {fixed_r} fixed right points",
                    describe()
                )))
            }
        };
        let bucket = match kind {
            CycleType::T3 => &mut census.c3,
            CycleType::T4L => &mut census.c4l,
            _ => &mut census.c4r,
        };
        *bucket.entry(k).or_insert(0) += 1;
        cycles.push(Cycle { kind, k, nodes, edges });
    }
    Ok(CycleDecomposition { cycles, census })
}

/// Walks the simple cycle through row `start`, taking the smaller column
/// first.
fn walk(doubled: &DoubledMatrix, start: usize) -> (Vec<Node>, Vec<(usize, usize)>) {
    let d = doubled.d();
    let mut nodes = vec![Node::l(start)];
    let mut edges = Vec::new();
    let mut row = start;
    let mut prev_col = usize::MAX;
    loop {
        let col = (0..d).find(|&j| doubled.get(row, j) == 1 && j != prev_col).unwrap();
        edges.push((row, col));
        nodes.push(Node::r(col));
        let next = (0..d).find(|&i| doubled.get(i, col) == 1 && i != row).unwrap();
        if next == start {
            edges.push((start, col));
            break;
        }
        edges.push((next, col));
        nodes.push(Node::l(next));
        row = next;
        prev_col = col;
    }
    (nodes, edges)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `|Aut_ι(Γ)|` from the cycle census.
pub fn aut_order(census: &Census) -> u64 {
    let mut exp = census.c2;
    let mut prod = factorial(census.c1) * factorial(census.c2);
    for &c in census.c3.values() {
        exp += c;
        prod *= factorial(c);
    }
    for &c in census.c4l.values().chain(census.c4r.values()) {
        exp += 2 * c;
        prod *= factorial(c);
    }
    (1u64 << exp) * prod
}

/// Largest `d` accepted by [`aut_order_brute`].
pub const AUT_BRUTE_LIMIT: usize = 6;

/// Counts pairs `(g₁, g₂) ∈ Sym(d)²` commuting with `(φ, ψ)` that fix the
/// doubled matrix.
pub fn aut_order_brute(doubled: &DoubledMatrix, iota: &IotaAction) -> Result<u64> {
    let d = doubled.d();
    if d > AUT_BRUTE_LIMIT {
        return Err(Error::TooLarge { what: "brute-force automorphism count", d, limit: AUT_BRUTE_LIMIT });
    }
    let g1s = iota.phi().centralizer();
    let g2s = iota.psi().centralizer();
    let mut count = 0u64;
    for g1 in &g1s {
        for g2 in &g2s {
            if (0..d).all(|i| (0..d).all(|j| doubled.get(g1[i], g2[j]) == doubled.get(i, j))) {
                count += 1;
            }
        }
    }
    Ok(count)
}
