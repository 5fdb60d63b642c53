//! Exact computation of the squared Wasserstein distance between the root
//! measures of two rational polynomials, together with its algebraic degree.
//!
//! The pipeline is:
//!
//! 1. [`rootcert`] isolates the roots of `p` and `q` in certified balls and
//!    derives the complex-conjugation involutions `φ`, `ψ`.
//! 2. [`invbirkhoff`] enumerates the vertices of the conjugation-invariant
//!    Birkhoff polytope, classifies their bipartite graphs and counts
//!    automorphisms.
//! 3. [`transport`] minimises the transport cost over those vertices.
//! 4. [`galoisdeg`] specialises the Galois-orbit product of the optimal cost
//!    form to a rational polynomial and extracts the minimal polynomial of
//!    `W₂²(p, q)`.
//! 5. [`realize`] runs the construction backwards: for a given vertex it
//!    builds polynomials on the Eisenstein lattice whose unique optimum is
//!    that vertex.
//!
//! Everything that ends up in a result is exact (big rationals) or carries a
//! rigorous enclosure ([`ball::RealBall`], [`rootcert::ComplexBall`]).

pub mod ball;
pub mod error;
pub mod exactnum;
pub mod galoisdeg;
pub mod invbirkhoff;
pub mod realize;
pub mod rootcert;
pub mod transport;

pub use error::{Error, Result};
pub use exactnum::{RationalMatrix, RationalPolynomial};
pub use galoisdeg::{MinPolyReport, MinimalFactorStatus};
pub use invbirkhoff::{CycleDecomposition, DoubledMatrix, InvariantVertex, Involution, IotaAction};
pub use rootcert::{ComplexBall, RootSystem};
pub use transport::{CostMatrix, TransportSolution};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
