//! The conjugation-invariant Birkhoff polytope `B^ι_d`.
//!
//! A pair of involutions `(φ, ψ)` acts on `d×d` matrices by
//! `(ιM)_{ij} = M_{φ(i)ψ(j)}`. Vertices of the fixed polytope are the
//! midpoints `(P_σ + ιP_σ)/2` whose bipartite multigraph decomposes into
//! cycles of types 1–4; they are stored doubled, as integer matrices with
//! entries in `{0, 1, 2}`.

mod graph;

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{affine_rank, RationalMatrix};

pub use graph::{
    aut_order, aut_order_brute, classify_graph, Census, Cycle, CycleDecomposition, CycleType, Node, Side,
    AUT_BRUTE_LIMIT,
};

/// Largest `d` for which vertices are enumerated.
pub const ENUMERATION_LIMIT: usize = 8;

/// Self-inverse permutation of `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Involution {
    images: Vec<usize>,
}

impl Involution {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if images.iter().any(|&x| x >= d) || images.iter().enumerate().any(|(i, &x)| images[x] != i) {
            return Err(Error::InvalidInvolution(images));
        }
        Ok(Self { images })
    }

    pub fn identity(d: usize) -> Self {
        Self { images: (0..d).collect() }
    }

    /// Fixes `0..n_real` and swaps `n_real + 2t` with `n_real + 2t + 1`.
    pub fn canonical(n_real: usize, n_pairs: usize) -> Self {
        let mut images: Vec<usize> = (0..n_real).collect();
        for t in 0..n_pairs {
            let a = n_real + 2 * t;
            images.extend([a + 1, a]);
        }
        Self { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.images[i] == i
    }

    /// `(fixed points, 2-cycles)`
    pub fn signature(&self) -> (usize, usize) {
        let fixed = (0..self.len()).filter(|&i| self.is_fixed(i)).count();
        (fixed, (self.len() - fixed) / 2)
    }

    /// All permutations of `0..d` commuting with this involution.
    pub fn centralizer(&self) -> Vec<Vec<usize>> {
        let d = self.len();
        (0..d)
            .permutations(d)
            .filter(|g| (0..d).all(|i| g[self.images[i]] == self.images[g[i]]))
            .collect()
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// The pair `(φ, ψ)` acting on `d×d` matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IotaAction {
    phi: Involution,
    psi: Involution,
}

impl IotaAction {
    pub fn new(phi: Involution, psi: Involution) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::DimensionMismatch { left: phi.len(), right: psi.len() });
        }
        Ok(Self { phi, psi })
    }

    /// Canonical involutions for the signatures `(n_real, n_pairs)`.
    pub fn from_signatures(p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<Self> {
        check_signatures(p_sig, q_sig)?;
        Ok(Self { phi: Involution::canonical(p_sig.0, p_sig.1), psi: Involution::canonical(q_sig.0, q_sig.1) })
    }

    pub fn phi(&self) -> &Involution {
        &self.phi
    }

    pub fn psi(&self) -> &Involution {
        &self.psi
    }

    pub fn d(&self) -> usize {
        self.phi.len()
    }

    /// The action with the roles of rows and columns exchanged.
    pub fn swapped(&self) -> Self {
        Self { phi: self.psi.clone(), psi: self.phi.clone() }
    }

    /// `(ιM)_{ij} = M_{φ(i)ψ(j)}`
    pub fn apply(&self, m: &DoubledMatrix) -> DoubledMatrix {
        let d = m.d;
        let mut out = DoubledMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[i * d + j] = m.get(self.phi.apply(i), self.psi.apply(j));
            }
        }
        out
    }
}

fn check_signatures(p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<usize> {
    let dp = p_sig.0 + 2 * p_sig.1;
    let dq = q_sig.0 + 2 * q_sig.1;
    if dp != dq {
        return Err(Error::InconsistentSignature(format!(
            "{p_sig:?} has degree {dp} but {q_sig:?} has degree {dq}"
        )));
    }
    if dp == 0 {
        return Err(Error::InconsistentSignature("degree 0".into()));
    }
    Ok(dp)
}

/// All signatures `(n_real, n_pairs)` of degree `d`, by descending `n_real`.
pub fn signatures(d: usize) -> Vec<(usize, usize)> {
    (0..=d / 2).map(|c| (d - 2 * c, c)).collect()
}

/// Unordered signature pairs of degree `d`, in table order.
pub fn signature_pairs(d: usize) -> Vec<((usize, usize), (usize, usize))> {
    let s = signatures(d);
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in i..s.len() {
            out.push((s[i], s[j]));
        }
    }
    out
}

/// `2M` for a matrix `M` of the polytope; entries in `{0, 1, 2}`. Ordering
/// is lexicographic in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubledMatrix {
    d: usize,
    entries: Vec<u8>,
}

impl DoubledMatrix {
    pub fn zeros(d: usize) -> Self {
        Self { d, entries: vec![0; d * d] }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::ShapeMismatch("doubled matrix must be square".into()));
        }
        Ok(Self { d, entries: rows.concat() })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.d + j]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.entries.chunks(self.d.max(1)).map(<[u8]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.get(i, j);
            }
        }
        out
    }

    /// Every row and column sums to 2.
    pub fn check_sums(&self) -> Result<()> {
        let d = self.d;
        for i in 0..d {
            let row: u32 = (0..d).map(|j| self.get(i, j) as u32).sum();
            let col: u32 = (0..d).map(|j| self.get(j, i) as u32).sum();
            if row != 2 || col != 2 {
                return Err(Error::NotDoublyStochastic { index: i });
            }
        }
        Ok(())
    }

    /// The matrix `M` itself.
    pub fn halved(&self) -> RationalMatrix {
        let entries = self.entries.iter().map(|&e| BigRational::new(e.into(), 2.into())).collect();
        RationalMatrix::new(self.d, self.d, entries).expect("square shape")
    }
}

impl Serialize for DoubledMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl fmt::Display for DoubledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows();
        write!(f, "{}", rows.iter().map(|r| r.iter().join(" ")).join(" / "))
    }
}

/// A vertex of `B^ι_d` with its graph data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantVertex {
    pub doubled: DoubledMatrix,
    pub graph: CycleDecomposition,
    pub aut_order: u64,
}

impl InvariantVertex {
    /// Validates `doubled` as a vertex for `iota`.
    pub fn new(doubled: DoubledMatrix, iota: &IotaAction) -> Result<Self> {
        let graph = classify_graph(&doubled, iota)?;
        let aut_order = aut_order(&graph.census);
        Ok(Self { doubled, graph, aut_order })
    }

    pub fn census(&self) -> &Census {
        &self.graph.census
    }
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let d = sigma.len();
    let mut seen = vec![false; d];
    for &s in sigma {
        if s >= d || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidPermutation(d));
        }
    }
    Ok(())
}

/// `P_σ + ιP_σ`, where `P_σ` has ones at `(i, σ(i))`.
pub fn iota_image(sigma: &[usize], iota: &IotaAction) -> Result<DoubledMatrix> {
    check_permutation(sigma)?;
    let d = iota.d();
    if sigma.len() != d {
        return Err(Error::DimensionMismatch { left: sigma.len(), right: d });
    }
    let mut m = DoubledMatrix::zeros(d);
    for (i, &s) in sigma.iter().enumerate() {
        m.entries[i * d + s] += 1;
        m.entries[iota.phi.apply(i) * d + iota.psi.apply(s)] += 1;
    }
    Ok(m)
}

/// Every vertex of `B^ι_d`, each once, sorted by doubled matrix.
pub fn enumerate_vertices(iota: &IotaAction) -> Result<Vec<InvariantVertex>> {
    let d = iota.d();
    if d > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { what: "vertex enumeration (sweeps d! permutations)", d, limit: ENUMERATION_LIMIT });
    }
    let images: BTreeSet<DoubledMatrix> = (0..d)
        .permutations(d)
        .par_bridge()
        .map(|sigma| iota_image(&sigma, iota).expect("valid permutation"))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    for m in images {
        match InvariantVertex::new(m, iota) {
            Ok(v) => out.push(v),
            Err(Error::NotAVertex(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `(p_ℝ+p_ℂ)(q_ℝ+q_ℂ) − (p_ℝ+p_ℂ+q_ℝ+q_ℂ−1) + p_ℂ·q_ℂ`
pub fn dim_formula(p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<usize> {
    check_signatures(p_sig, q_sig)?;
    let (a, b) = ((p_sig.0 + p_sig.1) as i64, (q_sig.0 + q_sig.1) as i64);
    let v = a * b - (a + b - 1) + (p_sig.1 * q_sig.1) as i64;
    Ok(v as usize)
}

/// Exact dimension of the convex hull of the given vertices.
pub fn vertex_affine_rank(vertices: &[InvariantVertex]) -> Result<usize> {
    let pts: Vec<RationalMatrix> = vertices.iter().map(|v| v.doubled.halved()).collect();
    affine_rank(&pts)
}

/// JSON shape of a vertex in [`PolytopeExport`].
#[derive(Clone, Debug, Serialize)]
pub struct VertexExport {
    pub doubled: DoubledMatrix,
    pub census: Census,
    pub aut_order: u64,
}

/// Vertex-set export: `{d, phi, psi, dim, vertices}`.
#[derive(Clone, Debug, Serialize)]
pub struct PolytopeExport {
    pub d: usize,
    pub phi: Involution,
    pub psi: Involution,
    pub dim: usize,
    pub affine_rank: usize,
    pub vertex_count: usize,
    pub vertices: Vec<VertexExport>,
}

/// Enumerates `B^ι_d` for two signatures and checks the dimension formula
/// against the exact affine rank.
pub fn polytope(p_sig: (usize, usize), q_sig: (usize, usize)) -> Result<PolytopeExport> {
    let iota = IotaAction::from_signatures(p_sig, q_sig)?;
    let vertices = enumerate_vertices(&iota)?;
    let dim = dim_formula(p_sig, q_sig)?;
    let rank = vertex_affine_rank(&vertices)?;
    if dim != rank {
        return Err(Error::Consistency(format!("dimension formula {dim} differs from affine rank {rank}")));
    }
    Ok(PolytopeExport {
        d: iota.d(),
        phi: iota.phi.clone(),
        psi: iota.psi.clone(),
        dim,
        affine_rank: rank,
        vertex_count: vertices.len(),
        vertices: vertices
            .into_iter()
            .map(|v| VertexExport { census: v.graph.census, doubled: v.doubled, aut_order: v.aut_order })
            .collect(),
    })
}
