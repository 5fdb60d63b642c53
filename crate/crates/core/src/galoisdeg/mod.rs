//! Algebraic degree of the Wasserstein distance.
//!
//! For a vertex `M` the cost form `f_M(x, y) = (1/2d) Σ (2M)_ij (x_i − y_j)(x_φ(i) − y_ψ(j))`
//! has a finite orbit under `Sym(d) × Sym(d)`. The product of `t − g(f_M)`
//! over that orbit has symmetric coefficients, so specialising the variables
//! at the roots of `p`, `q` gives a rational polynomial with `W₂²` as a root.

mod factor;
mod modp;
mod orbit;
mod specialize;

use num_bigint::BigInt;
use serde::Serialize;

pub use factor::{integral_scale, minimal_factor, MinimalFactor, MinimalFactorOptions, MinimalFactorStatus};
pub use modp::{degree_sieve, DegreeSieve};
pub use orbit::{orbit, orbit_values, Orbit, OrbitElement, OrbitFingerprint, ORBIT_LIMIT};
pub use specialize::{
    default_denominator_bound, orbit_scale, specialize_hm, specialize_orbit, Specialization, SpecializeOptions,
    Specialized,
};

use crate::ball::RealBall;
use crate::error::{Error, Result};
use crate::exactnum::RationalPolynomial;
use crate::invbirkhoff::{DoubledMatrix, InvariantVertex, Involution, IotaAction};
use crate::rootcert::RootSystem;

/// The quadratic form `f_M` of a vertex, stored through `2M` and `(φ, ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostForm {
    pub doubled: DoubledMatrix,
    pub phi: Involution,
    pub psi: Involution,
    pub aut_order: u64,
}

impl CostForm {
    pub fn new(vertex: &InvariantVertex, iota: &IotaAction) -> Result<Self> {
        if vertex.doubled.d() != iota.d() {
            return Err(Error::DimensionMismatch { left: vertex.doubled.d(), right: iota.d() });
        }
        if &iota.apply(&vertex.doubled) != &vertex.doubled {
            return Err(Error::NotInvariant);
        }
        Ok(Self {
            doubled: vertex.doubled.clone(),
            phi: iota.phi().clone(),
            psi: iota.psi().clone(),
            aut_order: vertex.aut_order,
        })
    }

    pub fn d(&self) -> usize {
        self.doubled.d()
    }
}

/// `(d!)² / |Aut_ι(Γ)|`.
pub fn wdeg_bound(vertex: &InvariantVertex, d: usize) -> Result<u64> {
    let f: u64 = (1..=d as u64).product();
    let group = f * f;
    if vertex.aut_order == 0 || group % vertex.aut_order != 0 {
        return Err(Error::Consistency(format!(
            "|Aut| = {} does not divide (d!)^2 = {group}",
            vertex.aut_order
        )));
    }
    Ok(group / vertex.aut_order)
}

#[derive(Clone, Debug)]
pub struct DegreeOptions {
    pub max_precision: u32,
    pub denominator_bound: Option<BigInt>,
    pub max_factor_degree: usize,
    pub subset_budget: u64,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        Self { max_precision: 4096, denominator_bound: None, max_factor_degree: 6, subset_budget: 1_000_000 }
    }
}

/// Everything learned about the algebraic degree for one instance.
#[derive(Clone, Debug, Serialize)]
pub struct MinPolyReport {
    /// Monic `Φ_{p,q}(h_M)`.
    #[serde(serialize_with = "ser_poly")]
    pub h_specialized: RationalPolynomial,
    #[serde(serialize_with = "ser_poly")]
    pub minimal_factor: RationalPolynomial,
    pub wdeg: usize,
    pub status: MinimalFactorStatus,
    pub wdeg_bound: u64,
    pub admissible_degrees: Vec<usize>,
    pub primes_used: usize,
    pub subsets_examined: u64,
    pub precision_bits: u32,
    #[serde(serialize_with = "ser_display")]
    pub denominator_bound: BigInt,
}

fn ser_poly<S: serde::Serializer>(p: &RationalPolynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string_in("t"))
}

fn ser_display<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Specialises the orbit product of `vertex` at the roots and extracts the
/// factor vanishing at `w2`, an enclosure of `W₂²`.
pub fn analyze_degree(
    vertex: &InvariantVertex,
    pr: &RootSystem,
    qr: &RootSystem,
    w2: &RealBall,
    opts: &DegreeOptions,
) -> Result<MinPolyReport> {
    let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone())?;
    let form = CostForm::new(vertex, &iota)?;
    let bound = wdeg_bound(vertex, form.d())?;
    let orb = orbit(&form)?;
    if orb.len() as u64 != bound {
        return Err(Error::Consistency(format!("orbit has {} forms, expected {bound}", orb.len())));
    }
    let spec = specialize_orbit(
        &form,
        &orb,
        pr,
        qr,
        &SpecializeOptions { max_precision: opts.max_precision, denominator_bound: opts.denominator_bound.clone() },
    )?;
    let mf = minimal_factor(
        &spec.h,
        w2,
        &MinimalFactorOptions {
            max_factor_degree: opts.max_factor_degree,
            subset_budget: opts.subset_budget,
            precision_bits: spec.precision_bits.max(64),
            max_precision: opts.max_precision.max(spec.precision_bits),
        },
    )?;
    Ok(MinPolyReport {
        wdeg: mf.factor.degree().unwrap_or(0),
        h_specialized: spec.h,
        minimal_factor: mf.factor,
        status: mf.status,
        wdeg_bound: bound,
        admissible_degrees: mf.admissible_degrees,
        primes_used: mf.primes_used,
        subsets_examined: mf.subsets_examined,
        precision_bits: spec.precision_bits,
        denominator_bound: spec.denominator_bound,
    })
}
