//! Planting a vertex: polynomials on the Eisenstein lattice `ℤ[ω]`,
//! `ω = e^{iπ/3}`, whose unique optimal transport plan is a given vertex.
//!
//! Every cycle of Γ is laid out as a closed lattice path with unit steps,
//! shifted by `2dk` for the `k`-th cycle so that distinct cycles are far
//! apart. Edges then cost exactly 1 and every other pairing costs more.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, RationalPolynomial};
use crate::invbirkhoff::{CycleType, Node, Side};
use crate::invbirkhoff::{DoubledMatrix, InvariantVertex, IotaAction};

/// `a + bω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EisensteinPoint {
    pub a: i64,
    pub b: i64,
}

impl EisensteinPoint {
    pub const OMEGA: Self = Self { a: 0, b: 1 };
    /// `ω̄ = 1 − ω`
    pub const OMEGA_BAR: Self = Self { a: 1, b: -1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn real(a: i64) -> Self {
        Self { a, b: 0 }
    }

    pub fn conj(self) -> Self {
        Self { a: self.a + self.b, b: -self.b }
    }

    pub fn is_real(self) -> bool {
        self.b == 0
    }

    pub fn shift(self, x: i64) -> Self {
        Self { a: self.a + x, b: self.b }
    }

    /// `|z|² = a² + ab + b²`
    pub fn norm_sqr(self) -> i64 {
        self.a * self.a + self.a * self.b + self.b * self.b
    }

    pub fn dist_sqr(self, other: Self) -> i64 {
        Self { a: self.a - other.a, b: self.b - other.b }.norm_sqr()
    }

    /// `2·Re z = 2a + b`
    pub fn twice_re(self) -> i64 {
        2 * self.a + self.b
    }

    /// Position in the root order used by root isolation: real points
    /// first by value, then pairs by real part and `|Im|`, positive
    /// imaginary part first.
    pub fn root_order(&self, other: &Self) -> Ordering {
        let key = |z: &Self| (!z.is_real(), z.twice_re(), z.b.abs(), z.b < 0);
        key(self).cmp(&key(other))
    }

    pub fn approx(self) -> (f64, f64) {
        (self.a as f64 + self.b as f64 / 2.0, self.b as f64 * 3f64.sqrt() / 2.0)
    }
}

impl fmt::Display for EisensteinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            1 => write!(f, "{}+ω", self.a),
            -1 => write!(f, "{}-ω", self.a),
            b if b < 0 => write!(f, "{}-{}ω", self.a, -b),
            b => write!(f, "{}+{}ω", self.a, b),
        }
    }
}

/// Monic `∏(z − point)`.
pub fn eisenstein_expand(points: &[EisensteinPoint]) -> Result<RationalPolynomial> {
    let mut pending: HashMap<EisensteinPoint, usize> = HashMap::new();
    let mut out = RationalPolynomial::one();
    for &z in points {
        if z.is_real() {
            out = &out * &RationalPolynomial::from_i64(&[-z.a, 1]);
            continue;
        }
        let c = z.conj();
        match pending.get_mut(&c) {
            Some(n) if *n > 0 => {
                *n -= 1;
                out = &out * &RationalPolynomial::from_i64(&[z.norm_sqr(), -z.twice_re(), 1]);
            }
            _ => *pending.entry(z).or_insert(0) += 1,
        }
    }
    if pending.values().any(|&n| n > 0) {
        return Err(Error::NotConjugationClosed);
    }
    Ok(out)
}

/// A planted instance. Rows and columns of `planted` follow the root order of
/// `p` and `q`; `row_perm[i]` is the root index of the input row `i`, and
/// likewise `col_perm` for columns.
#[derive(Clone, Debug)]
pub struct RealizationInstance {
    pub p: RationalPolynomial,
    pub q: RationalPolynomial,
    pub input_vertex: InvariantVertex,
    pub planted: DoubledMatrix,
    pub row_points: Vec<EisensteinPoint>,
    pub col_points: Vec<EisensteinPoint>,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

#[derive(Serialize)]
struct InstanceJson<'a> {
    p: Vec<String>,
    q: Vec<String>,
    planted_doubled: &'a DoubledMatrix,
}

impl Serialize for RealizationInstance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = |p: &RationalPolynomial| p.coeffs().iter().map(fmt_rational).collect();
        InstanceJson { p: coeffs(&self.p), q: coeffs(&self.q), planted_doubled: &self.planted }.serialize(s)
    }
}

/// Unit-step path `0, ω, ω+1, …, ω+(m−1), m, ω̄+(m−1), …, ω̄` of length
/// `2m + 2`, symmetric under conjugation with the two real points at
/// positions 0 and `m + 1`.
fn symmetric_path(m: usize) -> Vec<EisensteinPoint> {
    let m = m as i64;
    let mut out = vec![EisensteinPoint::real(0)];
    out.extend((0..m).map(|t| EisensteinPoint::OMEGA.shift(t)));
    out.push(EisensteinPoint::real(m));
    out.extend((0..m).rev().map(|t| EisensteinPoint::OMEGA_BAR.shift(t)));
    out
}

/// Builds `(p, q)` with `vertex` as unique optimum and checks the lattice
/// invariants exactly.
pub fn realize_vertex(vertex: &InvariantVertex, iota: &IotaAction) -> Result<RealizationInstance> {
    let d = iota.d();
    // revalidates and recomputes the cycles for this iota
    let checked = InvariantVertex::new(vertex.doubled.clone(), iota)?;
    let mut row_points: Vec<Option<EisensteinPoint>> = vec![None; d];
    let mut col_points: Vec<Option<EisensteinPoint>> = vec![None; d];
    let mut groups: Vec<Vec<Node>> = Vec::new();
    let mut place = |n: Node, z: EisensteinPoint| match n.side {
        Side::L => row_points[n.index] = Some(z),
        Side::R => col_points[n.index] = Some(z),
    };
    for (k, cycle) in checked.graph.cycles.iter().enumerate() {
        let offset = (2 * d * (k + 1)) as i64;
        let fixed = |n: &Node| match n.side {
            Side::L => iota.phi().is_fixed(n.index),
            Side::R => iota.psi().is_fixed(n.index),
        };
        match cycle.kind {
            CycleType::T1 => {
                place(cycle.nodes[0], EisensteinPoint::real(offset));
                place(cycle.nodes[1], EisensteinPoint::real(offset + 1));
            }
            CycleType::T2Pair => {
                let pts = [
                    EisensteinPoint::OMEGA,
                    EisensteinPoint::OMEGA.shift(1),
                    EisensteinPoint::OMEGA_BAR,
                    EisensteinPoint::OMEGA_BAR.shift(1),
                ];
                for (n, z) in cycle.nodes.iter().zip(pts) {
                    place(*n, z.shift(offset));
                }
            }
            CycleType::T3 | CycleType::T4L | CycleType::T4R => {
                let side = if cycle.kind == CycleType::T4R { Side::R } else { Side::L };
                let start = cycle.nodes.iter().position(|n| n.side == side && fixed(n)).unwrap();
                let len = cycle.nodes.len();
                let path = symmetric_path(len / 2 - 1);
                for (t, z) in path.into_iter().enumerate() {
                    place(cycle.nodes[(start + t) % len], z.shift(offset));
                }
            }
        }
        groups.push(cycle.nodes.clone());
    }
    let row_points: Vec<EisensteinPoint> = row_points.into_iter().map(Option::unwrap).collect();
    let col_points: Vec<EisensteinPoint> = col_points.into_iter().map(Option::unwrap).collect();
    let point_of = |n: &Node| match n.side {
        Side::L => row_points[n.index],
        Side::R => col_points[n.index],
    };

    for i in 0..d {
        if row_points[iota.phi().apply(i)] != row_points[i].conj() {
            return Err(Error::Consistency(format!("row {i} is not placed conjugate to its φ-image")));
        }
        if col_points[iota.psi().apply(i)] != col_points[i].conj() {
            return Err(Error::Consistency(format!("column {i} is not placed conjugate to its ψ-image")));
        }
        for j in 0..d {
            if checked.doubled.get(i, j) > 0 && row_points[i].dist_sqr(col_points[j]) != 1 {
                return Err(Error::Consistency(format!(
                    "edge ({i}, {j}) joins {} and {} at squared distance {}",
                    row_points[i],
                    col_points[j],
                    row_points[i].dist_sqr(col_points[j])
                )));
            }
        }
    }
    let dd = (d * d) as i64;
    for (x, gx) in groups.iter().enumerate() {
        for gy in &groups[x + 1..] {
            for a in gx {
                for b in gy {
                    if point_of(a).dist_sqr(point_of(b)) < dd {
                        return Err(Error::Consistency(format!("cycles through {a} and {b} are too close")));
                    }
                }
            }
        }
    }

    let order = |pts: &[EisensteinPoint]| {
        let mut idx: Vec<usize> = (0..d).collect();
        idx.sort_by(|&x, &y| pts[x].root_order(&pts[y]));
        let mut perm = vec![0; d];
        for (pos, &i) in idx.iter().enumerate() {
            perm[i] = pos;
        }
        perm
    };
    let row_perm = order(&row_points);
    let col_perm = order(&col_points);
    let mut rows = vec![vec![0u8; d]; d];
    for i in 0..d {
        for j in 0..d {
            rows[row_perm[i]][col_perm[j]] = checked.doubled.get(i, j);
        }
    }
    Ok(RealizationInstance {
        p: eisenstein_expand(&row_points)?,
        q: eisenstein_expand(&col_points)?,
        input_vertex: checked,
        planted: DoubledMatrix::from_rows(&rows)?,
        row_points,
        col_points,
        row_perm,
        col_perm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use crate::invbirkhoff::enumerate_vertices;
    use crate::rootcert::isolate_roots;
    use crate::transport::minimize_over_vertices;

    fn round_trip(inst: &RealizationInstance) -> (DoubledMatrix, BigRational, bool) {
        let pr = isolate_roots(&inst.p, 128).unwrap();
        let qr = isolate_roots(&inst.q, 128).unwrap();
        let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone()).unwrap();
        let vs = enumerate_vertices(&iota).unwrap();
        let sol = minimize_over_vertices(&pr, &qr, &vs, 1024).unwrap();
        (sol.optimal_vertex.doubled, sol.value.mid().clone(), sol.unique && sol.value.contains(&BigRational::from_integer(1.into())))
    }

    #[test]
    fn expand_examples() {
        let w = EisensteinPoint::OMEGA;
        assert_eq!(eisenstein_expand(&[w, w.conj()]).unwrap(), RationalPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(eisenstein_expand(&[EisensteinPoint::real(0)]).unwrap(), RationalPolynomial::from_i64(&[0, 1]));
        assert_eq!(eisenstein_expand(&[w]), Err(Error::NotConjugationClosed));
        assert_eq!(EisensteinPoint::OMEGA_BAR, w.conj());
        assert_eq!(w.conj().conj(), w);
    }

    #[test]
    fn degree_one() {
        let iota = IotaAction::from_signatures((1, 0), (1, 0)).unwrap();
        let v = &enumerate_vertices(&iota).unwrap()[0];
        let inst = realize_vertex(v, &iota).unwrap();
        assert_eq!(inst.p, RationalPolynomial::from_i64(&[-2, 1]));
        assert_eq!(inst.q, RationalPolynomial::from_i64(&[-3, 1]));
    }

    #[test]
    fn all_real_identity_matching() {
        let iota = IotaAction::from_signatures((3, 0), (3, 0)).unwrap();
        for v in enumerate_vertices(&iota).unwrap() {
            let inst = realize_vertex(&v, &iota).unwrap();
            let (opt, _, ok) = round_trip(&inst);
            assert!(ok);
            assert_eq!(opt, inst.planted);
        }
    }

    #[test]
    fn six_cycle() {
        let iota = IotaAction::from_signatures((1, 1), (1, 1)).unwrap();
        let vs = enumerate_vertices(&iota).unwrap();
        let v = vs.iter().find(|v| v.graph.census.c3.get(&1) == Some(&1)).unwrap();
        let inst = realize_vertex(v, &iota).unwrap();
        let mut pts: Vec<_> = inst.row_points.iter().chain(&inst.col_points).map(|z| (z.a - 6, z.b)).collect();
        pts.sort();
        assert_eq!(pts, vec![(0, 0), (0, 1), (1, -1), (1, 1), (2, -1), (2, 0)]);
        let (opt, _, ok) = round_trip(&inst);
        assert!(ok);
        assert_eq!(opt, inst.planted);
    }

    #[test]
    fn every_vertex_of_degree_four() {
        let mut total = 0;
        for (ps, qs) in crate::invbirkhoff::signature_pairs(4) {
            let iota = IotaAction::from_signatures(ps, qs).unwrap();
            for v in enumerate_vertices(&iota).unwrap() {
                let inst = realize_vertex(&v, &iota).unwrap();
                let (opt, _, ok) = round_trip(&inst);
                assert!(ok, "{ps:?} {qs:?}\n{}", v.doubled);
                assert_eq!(opt, inst.planted);
                total += 1;
            }
        }
        assert_eq!(total, 75);
    }
}
