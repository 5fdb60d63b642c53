//! JSON shapes of command results and their plain-text rendering.
//!
//! Rationals are strings `"num/den"` (or `"num"` for integers) so that every
//! value survives a round trip through JSON unchanged.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use wdeg_core::exactnum::fmt_rational;
use wdeg_core::invbirkhoff::Census;
use wdeg_core::realize::EisensteinPoint;
use wdeg_core::{DoubledMatrix, Involution, MinimalFactorStatus, RationalPolynomial};

#[derive(Clone, Debug, Serialize)]
pub struct PolyJson {
    pub text: String,
    /// Ascending by power.
    pub coefficients: Vec<String>,
}

impl PolyJson {
    pub fn new(p: &RationalPolynomial, var: &str) -> Self {
        Self { text: p.to_string_in(var), coefficients: p.coeffs().iter().map(fmt_rational).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Signatures {
    pub p: (usize, usize),
    pub q: (usize, usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeSummary {
    pub dim: usize,
    pub vertex_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub doubled: DoubledMatrix,
    pub census: Census,
    pub aut_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct W2Json {
    /// Midpoint rounded to `digits` decimals.
    pub decimal: String,
    pub digits: usize,
    pub lo: String,
    pub hi: String,
    pub width: String,
    /// Present when the minimal polynomial is linear.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub monic: PolyJson,
    /// Integer coefficients, ascending, content 1, positive leading term.
    pub primitive: Vec<String>,
    pub primitive_text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub admissible_degrees: Vec<usize>,
    pub primes_used: usize,
    pub subsets_examined: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Precision {
    pub roots_bits: u32,
    pub transport_bits: u32,
    pub specialization_bits: u32,
    pub max_bits: u32,
    pub denominator_bound: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub roots_ms: f64,
    pub vertices_ms: f64,
    pub transport_ms: f64,
    pub degree_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub d: usize,
    pub p: PolyJson,
    pub q: PolyJson,
    pub signatures: Signatures,
    pub phi: Involution,
    pub psi: Involution,
    pub polytope: PolytopeSummary,
    pub optimal_vertex: VertexJson,
    pub unique_optimum: bool,
    pub w2: W2Json,
    pub wdeg_bound: u64,
    pub h_specialized: PolyJson,
    pub minimal_factor: FactorJson,
    pub wdeg: usize,
    pub status: MinimalFactorStatus,
    pub certificate: Certificate,
    pub precision: Precision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfCheck {
    pub planted_recovered: bool,
    pub unique: bool,
    pub w2_is_one: bool,
}

impl SelfCheck {
    pub fn passed(&self) -> bool {
        self.planted_recovered && self.unique && self.w2_is_one
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizeReport {
    pub d: usize,
    pub phi: Involution,
    pub psi: Involution,
    pub vertex_index: usize,
    pub vertex_count: usize,
    pub input_doubled: DoubledMatrix,
    pub p: Vec<String>,
    pub q: Vec<String>,
    pub planted_doubled: DoubledMatrix,
    pub p_text: String,
    pub q_text: String,
    /// Lattice point `[a, b]` of `a + bω` for each root of `p`, in root order.
    pub p_points: Vec<(i64, i64)>,
    pub q_points: Vec<(i64, i64)>,
    pub self_check: SelfCheck,
}

pub fn point_pairs(points: &[EisensteinPoint], perm: &[usize]) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 0); points.len()];
    for (i, z) in points.iter().enumerate() {
        out[perm[i]] = (z.a, z.b);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub p: (usize, usize),
    pub q: (usize, usize),
    /// Sorted distinct degree bounds over all vertices.
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WdegTable {
    pub d: usize,
    pub rows: Vec<TableRow>,
}

/// `x` rounded half away from zero to `digits` decimals.
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let n = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int, frac) = (&n / &scale, &n % &scale);
    let sign = if x.is_negative() && !n.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

fn matrix_lines(m: &DoubledMatrix, indent: &str) -> String {
    m.rows()
        .iter()
        .map(|r| format!("{indent}[{}]", r.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let sig = |(a, b): (usize, usize)| format!("{a} real, {b} complex pair{}", if b == 1 { "" } else { "s" });
    let _ = writeln!(s, "p = {}", r.p.text);
    let _ = writeln!(s, "q = {}", r.q.text);
    let _ = writeln!(s, "d = {}; p has {}; q has {}", r.d, sig(r.signatures.p), sig(r.signatures.q));
    let _ = writeln!(s, "phi = {}, psi = {}", r.phi, r.psi);
    let _ = writeln!(s, "invariant polytope: dim {}, {} vertices", r.polytope.dim, r.polytope.vertex_count);
    let _ = writeln!(
        s,
        "optimal vertex (2M), |Aut| = {}{}:",
        r.optimal_vertex.aut_order,
        if r.unique_optimum { "" } else { ", NOT separated from another vertex" }
    );
    let _ = writeln!(s, "{}", matrix_lines(&r.optimal_vertex.doubled, "  "));
    let _ = writeln!(s, "  cycles: {}", r.optimal_vertex.census);
    match &r.w2.exact {
        Some(x) => {
            let _ = writeln!(s, "W2^2 = {x}");
        }
        None => {
            let _ = writeln!(s, "W2^2 = {}...", r.w2.decimal);
        }
    }
    let _ = writeln!(s, "degree bound (d!)^2/|Aut| = {}", r.wdeg_bound);
    let _ = writeln!(s, "specialized orbit polynomial: {}", r.h_specialized.text);
    let _ = writeln!(s, "minimal polynomial: {}", r.minimal_factor.monic.text);
    let _ = writeln!(s, "  primitive form: {}", r.minimal_factor.primitive_text);
    let _ = writeln!(s, "Wdeg = {} ({})", r.wdeg, r.status.as_str());
    if let Some(t) = &r.timings {
        let _ = writeln!(
            s,
            "timings: roots {:.1} ms, vertices {:.1} ms, transport {:.1} ms, degree {:.1} ms, total {:.1} ms",
            t.roots_ms, t.vertices_ms, t.transport_ms, t.degree_ms, t.total_ms
        );
    }
    s
}

pub fn render_realize(r: &RealizeReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertex {} of {} for phi = {}, psi = {}:", r.vertex_index, r.vertex_count, r.phi, r.psi);
    let _ = writeln!(s, "{}", matrix_lines(&r.input_doubled, "  "));
    let _ = writeln!(s, "p = {}", r.p_text);
    let _ = writeln!(s, "q = {}", r.q_text);
    let _ = writeln!(s, "planted vertex in root order:");
    let _ = writeln!(s, "{}", matrix_lines(&r.planted_doubled, "  "));
    let c = &r.self_check;
    if c.passed() {
        let _ = writeln!(s, "self-check passed: the planted vertex is the unique optimum and W2^2 = 1");
    } else {
        let _ = writeln!(
            s,
            "self-check FAILED: recovered {}, unique {}, W2^2 = 1 {}",
            c.planted_recovered, c.unique, c.w2_is_one
        );
    }
    s
}

pub fn render_table(t: &WdegTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "d = {}", t.d);
    for row in &t.rows {
        let vals = row.values.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let _ = writeln!(s, "{:?}, {:?}: {vals}", row.p, row.q);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal(&q(2, 3), 4), "0.6667");
        assert_eq!(decimal(&q(-1, 8), 2), "-0.13");
        assert_eq!(decimal(&q(0, 1), 3), "0.000");
        assert_eq!(decimal(&q(101, 100), 1), "1.0");
        assert_eq!(decimal(&q(7, 2), 0), "4");
        assert_eq!(decimal(&q(-1, 1000), 2), "0.00");
    }
}
