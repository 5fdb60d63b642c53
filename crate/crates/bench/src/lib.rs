//! Shared inputs for the benchmarks.

use wdeg_core::ball::RealBall;
use wdeg_core::invbirkhoff::enumerate_vertices;
use wdeg_core::rootcert::{isolate_roots, RootSystem};
use wdeg_core::transport::minimize_over_vertices;
use wdeg_core::{InvariantVertex, IotaAction, RationalPolynomial};

pub struct Example {
    pub name: &'static str,
    /// Coefficients from the constant term up.
    pub p: &'static [i64],
    pub q: &'static [i64],
}

pub const EXAMPLES: &[Example] = &[
    Example { name: "cubic-generic", p: &[-7, -3, 1, 2], q: &[4, -5, -1, 3] },
    Example { name: "cubic-nongeneric", p: &[-1, 0, 0, 1], q: &[3, 4, -5, 1] },
    Example { name: "quartic-complex", p: &[5, 1, 1, 0, 1], q: &[7, -2, 0, 1, 1] },
    Example { name: "quintic", p: &[1, -1, 0, 0, 0, 1], q: &[-3, 2, 0, 1, 0, 1] },
];

pub struct Prepared {
    pub pr: RootSystem,
    pub qr: RootSystem,
    pub vertices: Vec<InvariantVertex>,
    pub optimal: InvariantVertex,
    pub value: RealBall,
}

impl Example {
    pub fn polys(&self) -> (RationalPolynomial, RationalPolynomial) {
        (RationalPolynomial::from_i64(self.p), RationalPolynomial::from_i64(self.q))
    }

    /// Runs every stage up to the transport optimum.
    pub fn prepare(&self, bits: u32) -> Prepared {
        let (p, q) = self.polys();
        let pr = isolate_roots(&p, bits).unwrap();
        let qr = isolate_roots(&q, bits).unwrap();
        let iota = IotaAction::new(pr.conj_involution().clone(), qr.conj_involution().clone()).unwrap();
        let vertices = enumerate_vertices(&iota).unwrap();
        let sol = minimize_over_vertices(&pr, &qr, &vertices, 4096).unwrap();
        Prepared { pr, qr, vertices, optimal: sol.optimal_vertex, value: sol.value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_prepare() {
        for ex in EXAMPLES {
            let prep = ex.prepare(128);
            assert!(!prep.vertices.is_empty(), "{}", ex.name);
        }
    }
}
