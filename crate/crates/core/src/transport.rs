//! Certified transport cost between the root measures of `p` and `q`, and
//! its minimisation over the vertices of `B^ι_d`.
//!
//! `cost(M) = (1/d) Σ M_ij |α_i − β_j|²`, with exactly one factor `1/d`.

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::ball::RealBall;
use crate::error::{Error, Result};
use crate::invbirkhoff::{DoubledMatrix, InvariantVertex};
use crate::rootcert::{refine, RootSystem};

/// Default ceiling for precision escalation.
pub const DEFAULT_MAX_PRECISION: u32 = 4096;

/// Largest `d` accepted by [`brute_force_assignment`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Enclosures of `|α_i − β_j|²`.
#[derive(Clone, Debug)]
pub struct CostMatrix {
    d: usize,
    entries: Vec<RealBall>,
    precision_bits: u32,
}

impl CostMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &RealBall {
        &self.entries[i * self.d + j]
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// `(1/d) Σ (2M)_ij c_ij / 2`
    pub fn vertex_cost(&self, doubled: &DoubledMatrix) -> RealBall {
        let d = self.d;
        let mut acc = RealBall::zero();
        for i in 0..d {
            for j in 0..d {
                match doubled.get(i, j) {
                    0 => {}
                    1 => acc = &acc + self.get(i, j),
                    m => acc = &acc + &self.get(i, j).scale(&BigRational::from_integer(m.into())),
                }
            }
        }
        acc.scale(&BigRational::new(1.into(), (2 * d).into()))
    }

    /// `(1/d) Σ c_{i σ(i)}`
    pub fn permutation_cost(&self, sigma: &[usize]) -> RealBall {
        let mut acc = RealBall::zero();
        for (i, &s) in sigma.iter().enumerate() {
            acc = &acc + self.get(i, s);
        }
        acc.scale(&BigRational::new(1.into(), self.d.into()))
    }
}

/// Builds the certified cost matrix from two root systems.
pub fn cost_matrix(pr: &RootSystem, qr: &RootSystem) -> Result<CostMatrix> {
    let d = pr.degree();
    if d != qr.degree() {
        return Err(Error::DimensionMismatch { left: d, right: qr.degree() });
    }
    let precision_bits = pr.precision_bits().min(qr.precision_bits());
    let a = pr.intervals();
    let b = qr.intervals();
    let mut entries = Vec::with_capacity(d * d);
    for x in &a {
        for y in &b {
            entries.push((x - y).norm_sqr().round(precision_bits + 32));
        }
    }
    Ok(CostMatrix { d, entries, precision_bits })
}

/// Result of the vertex minimisation.
#[derive(Clone, Debug)]
pub struct TransportSolution {
    pub optimal_vertex: InvariantVertex,
    /// Enclosure of `W₂²(p, q)`.
    pub value: RealBall,
    /// False when the optimum could not be separated from another vertex.
    pub unique: bool,
    /// Certified lower bound on (second best − best); zero on a tie and
    /// `None` when there is a single vertex.
    pub runner_up_gap: Option<BigRational>,
    pub precision_bits: u32,
}

/// One-shot ranking at the precision of `cm`.
#[derive(Clone, Debug)]
pub struct Ranking {
    pub costs: Vec<RealBall>,
    /// Index with the smallest upper bound (first on ties).
    pub best: usize,
    /// Indices whose enclosure reaches below the best upper bound.
    pub contenders: Vec<usize>,
}

impl Ranking {
    pub fn is_certified(&self) -> bool {
        self.contenders.len() == 1
    }

    /// `min lo(other) − hi(best)` when certified.
    pub fn gap(&self) -> Option<BigRational> {
        let hi = self.costs[self.best].hi();
        self.costs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != self.best)
            .map(|(_, c)| c.lo() - &hi)
            .min()
    }
}

/// Evaluates every vertex and locates the certified minimum if there is one.
pub fn rank_vertices(cm: &CostMatrix, vertices: &[InvariantVertex]) -> Result<Ranking> {
    if vertices.is_empty() {
        return Err(Error::EmptyVertexList);
    }
    let costs: Vec<RealBall> = vertices.par_iter().map(|v| cm.vertex_cost(&v.doubled)).collect();
    let best = (0..costs.len()).min_by(|&i, &j| costs[i].hi().cmp(&costs[j].hi())).unwrap();
    let bound = costs[best].hi();
    let contenders = (0..costs.len()).filter(|&i| costs[i].lo() <= bound).collect();
    Ok(Ranking { costs, best, contenders })
}

/// Minimises the cost over `vertices`, doubling the root precision while the
/// best enclosure overlaps another, up to `max_precision` bits. If the
/// candidates never separate, the lexicographically least doubled matrix
/// among them is reported with `unique = false`.
pub fn minimize_over_vertices(
    pr: &RootSystem,
    qr: &RootSystem,
    vertices: &[InvariantVertex],
    max_precision: u32,
) -> Result<TransportSolution> {
    if vertices.is_empty() {
        return Err(Error::EmptyVertexList);
    }
    let mut pr = pr.clone();
    let mut qr = qr.clone();
    loop {
        let cm = cost_matrix(&pr, &qr)?;
        let ranking = rank_vertices(&cm, vertices)?;
        let precision_bits = cm.precision_bits();
        if ranking.is_certified() {
            return Ok(TransportSolution {
                optimal_vertex: vertices[ranking.best].clone(),
                value: ranking.costs[ranking.best].clone(),
                unique: true,
                runner_up_gap: ranking.gap(),
                precision_bits,
            });
        }
        let next = precision_bits.saturating_mul(2);
        if next > max_precision {
            let pick = *ranking
                .contenders
                .iter()
                .min_by(|&&i, &&j| vertices[i].doubled.cmp(&vertices[j].doubled))
                .unwrap();
            return Ok(TransportSolution {
                optimal_vertex: vertices[pick].clone(),
                value: ranking.costs[pick].clone(),
                unique: false,
                runner_up_gap: Some(BigRational::zero()),
                precision_bits,
            });
        }
        pr = refine(&pr, next)?;
        qr = refine(&qr, next)?;
    }
}

/// Exhaustive minimum over all `d!` permutations: the first permutation with
/// the smallest upper bound, and the enclosure `[min lo, min hi]` of the
/// true minimum.
pub fn brute_force_assignment(cm: &CostMatrix) -> Result<(Vec<usize>, RealBall)> {
    let d = cm.d;
    if d > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { what: "brute-force assignment", d, limit: BRUTE_FORCE_LIMIT });
    }
    let mut best: Option<(Vec<usize>, BigRational)> = None;
    let mut min_lo: Option<BigRational> = None;
    for sigma in (0..d).permutations(d) {
        let c = cm.permutation_cost(&sigma);
        let (lo, hi) = (c.lo(), c.hi());
        if min_lo.as_ref().map_or(true, |m| &lo < m) {
            min_lo = Some(lo);
        }
        if best.as_ref().map_or(true, |(_, h)| &hi < h) {
            best = Some((sigma, hi));
        }
    }
    let (sigma, hi) = best.expect("at least one permutation");
    Ok((sigma, RealBall::from_endpoints(&min_lo.unwrap(), &hi)))
}
