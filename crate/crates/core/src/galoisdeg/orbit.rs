//! The Galois orbit of a cost form under `G = Sym(d) × Sym(d)`.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;

use super::CostForm;
use crate::ball::ComplexInterval;
use crate::error::{Error, Result};
use crate::rootcert::RootSystem;

/// Largest `d` for which the `(d!)²` sweep is attempted.
pub const ORBIT_LIMIT: usize = 6;

/// Coefficients of `2d · g(f_M)` in the monomials `x_a x_c` (`a ≤ c`),
/// `y_b y_e` (`b ≤ e`) and `x_a y_b`, each table flattened row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitFingerprint {
    pub xx: Vec<i32>,
    pub yy: Vec<i32>,
    pub cross: Vec<i32>,
}

impl OrbitFingerprint {
    /// Fingerprint of `g·f` given that of `f`: variables `x_a ↦ x_{g1[a]}`,
    /// `y_b ↦ y_{g2[b]}`.
    pub fn relabel(&self, d: usize, g1: &[usize], g2: &[usize]) -> Self {
        let mut out = Self { xx: vec![0; self.xx.len()], yy: vec![0; self.yy.len()], cross: vec![0; d * d] };
        for a in 0..d {
            for c in a..d {
                out.xx[tri(d, g1[a], g1[c])] = self.xx[tri(d, a, c)];
                out.yy[tri(d, g2[a], g2[c])] = self.yy[tri(d, a, c)];
            }
            for b in 0..d {
                out.cross[g1[a] * d + g2[b]] = self.cross[a * d + b];
            }
        }
        out
    }
}

fn tri(d: usize, a: usize, c: usize) -> usize {
    let (a, c) = if a <= c { (a, c) } else { (c, a) };
    a * d - a * (a + 1) / 2 + c
}

/// One coset of the stabiliser, represented by its first element in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitElement {
    pub g1: Vec<usize>,
    pub g2: Vec<usize>,
    pub fingerprint: OrbitFingerprint,
}

/// The distinct forms `g(f_M)`; the identity coset comes first.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub d: usize,
    pub elements: Vec<OrbitElement>,
    /// Common multiplicity of every fingerprint, i.e. the stabiliser order.
    pub multiplicity: u64,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

struct Term {
    coef: i32,
    i: usize,
    fi: usize,
    j: usize,
    fj: usize,
}

fn terms(form: &CostForm) -> Vec<Term> {
    let d = form.d();
    let mut out = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = form.doubled.get(i, j);
            if c > 0 {
                out.push(Term { coef: c as i32, i, fi: form.phi.apply(i), j, fj: form.psi.apply(j) });
            }
        }
    }
    out
}

fn fingerprint(terms: &[Term], d: usize, g1: &[usize], g2: &[usize]) -> OrbitFingerprint {
    let t = d * (d + 1) / 2;
    let mut fp = OrbitFingerprint { xx: vec![0; t], yy: vec![0; t], cross: vec![0; d * d] };
    for term in terms {
        // (x_a − y_b)(x_c − y_e)
        let (a, c, b, e) = (g1[term.i], g1[term.fi], g2[term.j], g2[term.fj]);
        fp.xx[tri(d, a, c)] += term.coef;
        fp.yy[tri(d, b, e)] += term.coef;
        fp.cross[a * d + e] -= term.coef;
        fp.cross[c * d + b] -= term.coef;
    }
    fp
}

/// Sweeps `Sym(d)²` in lexicographic order and groups elements by the form
/// they produce. Every form must occur exactly `|Aut_ι(Γ)|` times.
pub fn orbit(form: &CostForm) -> Result<Orbit> {
    let d = form.d();
    if d > ORBIT_LIMIT {
        return Err(Error::TooLarge { what: "Galois orbit sweep over Sym(d)²", d, limit: ORBIT_LIMIT });
    }
    let terms = terms(form);
    let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
    let chunks: Vec<Vec<(OrbitFingerprint, usize, u64)>> = perms
        .par_iter()
        .map(|g1| {
            let mut index: HashMap<OrbitFingerprint, usize> = HashMap::new();
            let mut local: Vec<(OrbitFingerprint, usize, u64)> = Vec::new();
            for (k, g2) in perms.iter().enumerate() {
                let fp = fingerprint(&terms, d, g1, g2);
                match index.get(&fp) {
                    Some(&pos) => local[pos].2 += 1,
                    None => {
                        index.insert(fp.clone(), local.len());
                        local.push((fp, k, 1));
                    }
                }
            }
            local
        })
        .collect();
    let mut index: HashMap<OrbitFingerprint, usize> = HashMap::new();
    let mut elements: Vec<OrbitElement> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for (g1, chunk) in perms.iter().zip(chunks) {
        for (fp, k, c) in chunk {
            match index.get(&fp) {
                Some(&pos) => counts[pos] += c,
                None => {
                    index.insert(fp.clone(), elements.len());
                    elements.push(OrbitElement { g1: g1.clone(), g2: perms[k].clone(), fingerprint: fp });
                    counts.push(c);
                }
            }
        }
    }
    let multiplicity = form.aut_order;
    if let Some(bad) = counts.iter().position(|&c| c != multiplicity) {
        return Err(Error::Consistency(format!(
            "orbit form {bad} occurs {} times, expected |Aut| = {multiplicity}",
            counts[bad]
        )));
    }
    Ok(Orbit { d, elements, multiplicity })
}

/// Evaluates every form of the orbit at the roots, in orbit order.
pub fn orbit_values(form: &CostForm, orbit: &Orbit, pr: &RootSystem, qr: &RootSystem) -> Result<Vec<ComplexInterval>> {
    let d = form.d();
    if pr.degree() != d || qr.degree() != d {
        return Err(Error::DimensionMismatch { left: pr.degree(), right: d });
    }
    if pr.conj_involution() != &form.phi || qr.conj_involution() != &form.psi {
        return Err(Error::Consistency("root systems do not match the form's involutions".into()));
    }
    let prec = pr.precision_bits().min(qr.precision_bits()) + 32;
    let a = pr.intervals();
    let b = qr.intervals();
    let mut xx = Vec::new();
    let mut yy = Vec::new();
    for i in 0..d {
        for j in i..d {
            xx.push((&a[i] * &a[j]).round(prec));
            yy.push((&b[i] * &b[j]).round(prec));
        }
    }
    let cross: Vec<ComplexInterval> =
        a.iter().flat_map(|x| b.iter().map(move |y| (x * y).round(prec))).collect();
    let inv = BigRational::new(1.into(), (2 * d).into());
    let values = orbit
        .elements
        .par_iter()
        .map(|e| {
            let fp = &e.fingerprint;
            let mut acc = ComplexInterval::zero();
            for (coefs, prods) in [(&fp.xx, &xx), (&fp.yy, &yy), (&fp.cross, &cross)] {
                for (&c, p) in coefs.iter().zip(prods.iter()) {
                    if c != 0 {
                        acc = &acc + &p.scale(&BigRational::from_integer(c.into()));
                    }
                }
            }
            acc.scale(&inv).round(prec)
        })
        .collect();
    Ok(values)
}
