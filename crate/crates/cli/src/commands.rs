use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use wdeg_core::ball::RealBall;
use wdeg_core::exactnum::fmt_rational;
use wdeg_core::galoisdeg::{analyze_degree, wdeg_bound, DegreeOptions, MinimalFactorStatus};
use wdeg_core::invbirkhoff::{dim_formula, enumerate_vertices, polytope, signature_pairs, PolytopeExport};
use wdeg_core::realize::realize_vertex;
use wdeg_core::rootcert::{isolate_roots, refine, RootSystem};
use wdeg_core::transport::{cost_matrix, minimize_over_vertices};
use wdeg_core::{Error, InvariantVertex, IotaAction, RationalPolynomial};

use crate::error::CliError;
use crate::parse::parse_polynomial;
use crate::report::*;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub precision: u32,
    pub max_precision: u32,
    pub denominator_bound: Option<BigInt>,
    pub max_factor_degree: usize,
    pub digits: usize,
    pub timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            precision: 128,
            max_precision: 4096,
            denominator_bound: None,
            max_factor_degree: 6,
            digits: 10,
            timings: false,
        }
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Enclosure of the vertex cost narrow enough to fix `digits` decimals,
/// refining the roots as needed.
fn sharpen(
    pr: &RootSystem,
    qr: &RootSystem,
    vertex: &InvariantVertex,
    value: RealBall,
    digits: usize,
    max_precision: u32,
) -> Result<(RealBall, u32), CliError> {
    let target = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits as u32 + 2));
    let mut value = value;
    let mut bits = pr.precision_bits().min(qr.precision_bits());
    let (mut pr, mut qr) = (pr.clone(), qr.clone());
    while value.width() > target {
        bits = bits.saturating_mul(2);
        if bits > max_precision.max(digits as u32 * 4 + 64) {
            return Err(Error::PrecisionExhausted {
                bits: max_precision,
                reason: format!("cannot resolve {digits} decimals of W2"),
            }
            .into());
        }
        pr = refine(&pr, bits)?;
        qr = refine(&qr, bits)?;
        value = cost_matrix(&pr, &qr)?.vertex_cost(&vertex.doubled);
    }
    Ok((value, bits))
}

/// Full pipeline for one pair of polynomials.
pub fn cmd_analyze(p_src: &str, q_src: &str, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let start = Instant::now();
    let p = parse_polynomial(p_src).map_err(|source| CliError::Parse { which: "p", source })?;
    let q = parse_polynomial(q_src).map_err(|source| CliError::Parse { which: "q", source })?;
    analyze_polynomials(&p, &q, opts, start)
}

pub fn analyze_polynomials(
    p: &RationalPolynomial,
    q: &RationalPolynomial,
    opts: &AnalyzeOptions,
    start: Instant,
) -> Result<AnalysisReport, CliError> {
    let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
    if dp != dq {
        return Err(CliError::Usage(format!("p has degree {dp} but q has degree {dq}")));
    }
    if dp == 0 {
        return Err(Error::DegreeTooSmall.into());
    }
    let mut timings = Timings::default();

    let t = Instant::now();
    let pr = isolate_roots(p, opts.precision)?;
    let qr = isolate_roots(q, opts.precision)?;
    timings.roots_ms = ms(t);

    let t = Instant::now();
    let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone())?;
    let vertices = enumerate_vertices(&iota)?;
    let dim = dim_formula(pr.signature(), qr.signature())?;
    timings.vertices_ms = ms(t);

    let t = Instant::now();
    let sol = minimize_over_vertices(&pr, &qr, &vertices, opts.max_precision)?;
    let (value, _) = sharpen(&pr, &qr, &sol.optimal_vertex, sol.value.clone(), opts.digits, opts.max_precision)?;
    timings.transport_ms = ms(t);

    let t = Instant::now();
    let deg = analyze_degree(
        &sol.optimal_vertex,
        &pr,
        &qr,
        &sol.value,
        &DegreeOptions {
            max_precision: opts.max_precision,
            denominator_bound: opts.denominator_bound.clone(),
            max_factor_degree: opts.max_factor_degree,
            ..DegreeOptions::default()
        },
    )?;
    timings.degree_ms = ms(t);
    timings.total_ms = ms(start);

    let exact = (deg.wdeg == 1 && deg.status != MinimalFactorStatus::BoundOnly)
        .then(|| -deg.minimal_factor.coeffs()[0].clone());
    let shown = exact.clone().unwrap_or_else(|| value.mid().clone());
    let primitive = deg.minimal_factor.primitive_integer();
    let primitive_poly =
        RationalPolynomial::new(primitive.iter().cloned().map(BigRational::from_integer).collect());
    let v = &sol.optimal_vertex;
    Ok(AnalysisReport {
        d: dp,
        p: PolyJson::new(p, "z"),
        q: PolyJson::new(q, "z"),
        signatures: Signatures { p: pr.signature(), q: qr.signature() },
        phi: iota.phi().clone(),
        psi: iota.psi().clone(),
        polytope: PolytopeSummary { dim, vertex_count: vertices.len() },
        optimal_vertex: VertexJson { doubled: v.doubled.clone(), census: v.graph.census.clone(), aut_order: v.aut_order },
        unique_optimum: sol.unique,
        w2: W2Json {
            decimal: decimal(&shown, opts.digits),
            digits: opts.digits,
            lo: fmt_rational(&value.lo()),
            hi: fmt_rational(&value.hi()),
            width: fmt_rational(&value.width()),
            exact: exact.as_ref().map(fmt_rational),
        },
        wdeg_bound: deg.wdeg_bound,
        h_specialized: PolyJson::new(&deg.h_specialized, "t"),
        minimal_factor: FactorJson {
            monic: PolyJson::new(&deg.minimal_factor, "t"),
            primitive: primitive.iter().map(BigInt::to_string).collect(),
            primitive_text: primitive_poly.to_string_in("t"),
        },
        wdeg: deg.wdeg,
        status: deg.status,
        certificate: Certificate {
            admissible_degrees: deg.admissible_degrees,
            primes_used: deg.primes_used,
            subsets_examined: deg.subsets_examined,
        },
        precision: Precision {
            roots_bits: opts.precision,
            transport_bits: sol.precision_bits,
            specialization_bits: deg.precision_bits,
            max_bits: opts.max_precision,
            denominator_bound: deg.denominator_bound.to_string(),
        },
        timings: opts.timings.then_some(timings),
    })
}

fn check_degree(d: usize, p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<(), CliError> {
    for (name, (r, c)) in [("p", p_sig), ("q", q_sig)] {
        if r + 2 * c != d {
            return Err(Error::InconsistentSignature(format!(
                "signature ({r},{c}) of {name} has degree {} but d = {d}",
                r + 2 * c
            ))
            .into());
        }
    }
    Ok(())
}

pub fn cmd_polytope(d: usize, p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<PolytopeExport, CliError> {
    check_degree(d, p_sig, q_sig)?;
    Ok(polytope(p_sig, q_sig)?)
}

/// Plants vertex `index` (in enumeration order) and checks the instance by
/// solving it from scratch.
pub fn cmd_realize(
    d: usize,
    p_sig: (usize, usize),
    q_sig: (usize, usize),
    index: usize,
) -> Result<RealizeReport, CliError> {
    check_degree(d, p_sig, q_sig)?;
    let iota = IotaAction::from_signatures(p_sig, q_sig)?;
    let vertices = enumerate_vertices(&iota)?;
    let vertex = vertices.get(index).ok_or_else(|| {
        CliError::Usage(format!("vertex index {index} out of range: there are {} vertices", vertices.len()))
    })?;
    let inst = realize_vertex(vertex, &iota)?;

    let pr = isolate_roots(&inst.p, 128)?;
    let qr = isolate_roots(&inst.q, 128)?;
    let found = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone())?;
    let sol = minimize_over_vertices(&pr, &qr, &enumerate_vertices(&found)?, 4096)?;
    let self_check = SelfCheck {
        planted_recovered: sol.optimal_vertex.doubled == inst.planted,
        unique: sol.unique,
        w2_is_one: sol.value.contains(&BigRational::one()) && !sol.value.contains(&BigRational::zero()),
    };
    let coeffs = |p: &RationalPolynomial| p.coeffs().iter().map(fmt_rational).collect();
    Ok(RealizeReport {
        d,
        phi: iota.phi().clone(),
        psi: iota.psi().clone(),
        vertex_index: index,
        vertex_count: vertices.len(),
        input_doubled: vertex.doubled.clone(),
        p: coeffs(&inst.p),
        q: coeffs(&inst.q),
        planted_doubled: inst.planted.clone(),
        p_text: inst.p.to_string_in("z"),
        q_text: inst.q.to_string_in("z"),
        p_points: point_pairs(&inst.row_points, &inst.row_perm),
        q_points: point_pairs(&inst.col_points, &inst.col_perm),
        self_check,
    })
}

/// Largest degree accepted by [`cmd_wdeg_table`].
pub const TABLE_LIMIT: usize = 6;

/// Distinct degree bounds over all vertices, for every signature pair.
pub fn cmd_wdeg_table(d: usize) -> Result<WdegTable, CliError> {
    if d == 0 {
        return Err(Error::DegreeTooSmall.into());
    }
    if d > TABLE_LIMIT {
        return Err(Error::TooLarge { what: "degree table", d, limit: TABLE_LIMIT }.into());
    }
    let mut rows = Vec::new();
    for (p, q) in signature_pairs(d) {
        let iota = IotaAction::from_signatures(p, q)?;
        let mut values = BTreeSet::new();
        for v in enumerate_vertices(&iota)? {
            values.insert(wdeg_bound(&v, d)?);
        }
        rows.push(TableRow { p, q, values: values.into_iter().collect() });
    }
    Ok(WdegTable { d, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_pair_is_exact() {
        let r = cmd_analyze("z-1", "z-1", &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.w2.exact.as_deref(), Some("0"));
        assert_eq!(r.minimal_factor.monic.text, "t");
        assert_eq!(r.wdeg, 1);
    }

    #[test]
    fn errors_map_to_exit_codes() {
        let o = AnalyzeOptions::default();
        assert_eq!(cmd_analyze("z^2-2z+1", "z^2-3", &o).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_analyze("z^2-2", "z^3-3", &o).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_analyze("z^2-", "z-3", &o).unwrap_err().exit_code(), 3);
        assert_eq!(cmd_realize(1, (1, 0), (1, 0), 5).unwrap_err().exit_code(), 2);
        assert_eq!(cmd_polytope(3, (1, 1), (1, 0)).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn small_tables() {
        let t = cmd_wdeg_table(1).unwrap();
        assert_eq!(t.rows[0].values, vec![1]);
        let t = cmd_wdeg_table(3).unwrap();
        let v: Vec<_> = t.rows.iter().map(|r| r.values.clone()).collect();
        assert_eq!(v, vec![vec![6], vec![9], vec![18]]);
    }

    #[test]
    fn degree_one_realization() {
        let r = cmd_realize(1, (1, 0), (1, 0), 0).unwrap();
        assert_eq!(r.p, vec!["-2", "1"]);
        assert_eq!(r.q, vec!["-3", "1"]);
        assert!(r.self_check.passed());
    }
}
