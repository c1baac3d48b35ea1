//! Synthesis of graphs whose algebras are simple purely infinite with
//! prescribed K-theory `(K₀, [1], K₁)`.
//!
//! The input is a pair of finitely generated abelian groups `G₀`, `G₁`
//! with `rank G₁ ≤ rank G₀`, plus an optional target class `g ∈ G₀` for
//! the unit. The output graph is assembled from two nonnegative integer
//! matrices `T` (size `L×(L−l₀)`, `l₀ = rank G₀ − rank G₁`) and `S`
//! (size `L×L`) chosen so that
//!
//! ```text
//! G₀ ≅ coker T ⊕ ker S,      G₁ ≅ ker T ⊕ coker S,
//! ```
//!
//! via the block matrices
//!
//! ```text
//! Ñ = | 2I  T̃+S+X |        M = | I  S |
//!     |  I  I+S+X |,           | I  I |
//! ```
//!
//! where `T̃` zero-pads `T` to a square and `X` is the tridiagonal
//! all-ones band. One edge is created per nonzero `Ñ` entry (covering
//! degree `Ñ_{k,l}`, winding number `M_{k,l}`); each of the last `l₀`
//! vertices additionally receives an infinite edge family (degree 1,
//! winding 0), which removes its column from the degree-matrix side of
//! the K-theory computation. The diagonal then carries a loop with
//! degree ≥ 2 and winding 1 at every vertex, and the band connects
//! everything, so minimality is always certified and the algebra is
//! simple purely infinite.
//!
//! With no unit target (or target 0) the construction sends the class of
//! `(1,…,1)` to zero. A nonzero target `g` is installed by extending the
//! matrices by one row and column around a representative `a` of `g`
//! with `min aₖ = 0`; the extension requires `ker S = 0`, so the two
//! cases pick `T, S` differently (both choices are re-verified on every
//! run). Every report carries an explicit witness: the integer matrix of
//! a surjection `ℤ^{E⁰} → G₀` that kills the degree-matrix relations,
//! sends `(1,…,1)` to the unit target, and is checked surjective by
//! Smith reduction — which makes it an isomorphism on the cokernel,
//! since finitely generated abelian groups are Hopfian.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{minimality, MinimalityStatus};
use crate::graph::{has_loop, Edge, GraphError, InfiniteEdgeFamily, WeightedGraph};
use crate::intlin::{
    cokernel_group, kernel_basis, AbelianGroup, CokernelPresentation, GroupElement, IntLinError,
    IntMatrix,
};
use crate::jsonint;
use crate::ktheory::{assemble, k_invariants, KInvariants};

/// Errors from the synthesis pipeline.
#[derive(Debug, Error)]
pub enum RealizeError {
    /// The free rank of the K₁ target exceeds that of the K₀ target,
    /// which no graph algebra of this kind can realize.
    #[error("free rank of the K1 target ({k1_rank}) exceeds the free rank of the K0 target ({k0_rank})")]
    RankConstraint {
        /// Free rank of the K₀ target.
        k0_rank: usize,
        /// Free rank of the K₁ target.
        k1_rank: usize,
    },
    /// Invalid group element coordinates.
    #[error("invalid group element: {0}")]
    Element(#[from] IntLinError),
    /// Matrix shapes or signs unsuitable for the block construction.
    #[error("matrix input rejected: {0}")]
    Shape(String),
    /// Graph construction failed.
    #[error(transparent)]
    Graph(#[from] GraphError),
    /// The construction's own verification failed — an internal
    /// contract violation, never a user error.
    #[error("construction verification failed: {0}")]
    Verification(String),
}

// ---------------------------------------------------------------------------
// Specs and reports
// ---------------------------------------------------------------------------

/// A K-group target: a finitely generated abelian group in canonical
/// form, with an optional unit class (meaningful for K₀ only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    group: AbelianGroup,
    unit: Option<GroupElement>,
}

impl GroupSpec {
    /// Builds a spec; unit coordinates (free then torsion, flat) are
    /// validated against the group and normalized.
    pub fn new(group: AbelianGroup, unit: Option<Vec<BigInt>>) -> Result<Self, RealizeError> {
        let unit = match unit {
            None => None,
            Some(coords) => Some(group.element_from_flat(&coords)?),
        };
        Ok(GroupSpec { group, unit })
    }

    /// Spec without a unit target.
    pub fn plain(group: AbelianGroup) -> Self {
        GroupSpec { group, unit: None }
    }

    /// The target group.
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// The unit target, if one was given.
    pub fn unit(&self) -> Option<&GroupElement> {
        self.unit.as_ref()
    }

    /// The unit target, defaulting to zero.
    pub fn unit_or_zero(&self) -> GroupElement {
        self.unit
            .clone()
            .unwrap_or_else(|| self.group.zero_element())
    }
}

/// Outcome of re-verifying a realization from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// Canonical factors of both computed K-groups equal the targets.
    pub factors_match: bool,
    /// The witness is a well-defined surjection sending `(1,…,1)` to
    /// the unit target (zero when no target was given).
    pub unit_match: bool,
    /// Minimality was certified for every vertex pair and the graph has
    /// a loop, so the algebra is simple purely infinite.
    pub minimal_certified: bool,
    /// Names of every failed assertion (empty when all hold).
    pub failures: Vec<String>,
}

impl Verification {
    /// True when every check holds.
    pub fn passed(&self) -> bool {
        self.factors_match && self.unit_match && self.minimal_certified
    }
}

/// A synthesized graph together with its re-verified evidence.
#[derive(Clone, Debug)]
pub struct RealizationReport {
    /// The synthesized graph.
    pub graph: WeightedGraph,
    /// Matrix of the witness surjection `ℤ^{E⁰} → G₀` (rows indexed by
    /// the flat coordinates of the degree-matrix cokernel, columns by
    /// sorted vertices).
    pub witness: IntMatrix,
    /// Invariants recomputed from the graph.
    pub computed: KInvariants,
    /// The K₀ target (with unit).
    pub k0_target: GroupSpec,
    /// The K₁ target.
    pub k1_target: GroupSpec,
    /// Recomputed verification flags; never asserted blindly.
    pub verification: Verification,
}

impl RealizationReport {
    /// True when every verification check holds.
    pub fn verified(&self) -> bool {
        self.verification.passed()
    }

    /// Serializes the report: the graph in the graph schema plus the
    /// witness, computed invariants, targets, and verification flags.
    pub fn to_json(&self) -> String {
        let graph: serde_json::Value =
            serde_json::from_str(&self.graph.to_json()).expect("graph serialization is valid");
        let witness: Vec<Vec<serde_json::Value>> = self
            .witness
            .to_rows()
            .iter()
            .map(|row| row.iter().map(jsonint::to_value).collect())
            .collect();
        let coords =
            |e: &GroupElement| -> Vec<serde_json::Value> {
                e.flat_coords().iter().map(jsonint::to_value).collect()
            };
        let value = serde_json::json!({
            "graph": graph,
            "witness": witness,
            "computed": {
                "k0": self.computed.k0.to_string(),
                "unit": coords(&self.computed.unit),
                "k1": self.computed.k1.to_string(),
            },
            "targets": {
                "k0": self.k0_target.group().to_string(),
                "unit": coords(&self.k0_target.unit_or_zero()),
                "k1": self.k1_target.group().to_string(),
            },
            "verification": self.verification,
        });
        serde_json::to_string_pretty(&value).expect("report serialization is valid")
    }
}

// ---------------------------------------------------------------------------
// Matrix-level constructions
// ---------------------------------------------------------------------------

/// Square diagonal presentation of a group: torsion factors on the
/// diagonal, then one zero diagonal entry per free rank. The cokernel is
/// the group; the kernel is free of the group's free rank.
pub fn diag_presentation(group: &AbelianGroup) -> IntMatrix {
    let n = group.torsion().len() + group.free_rank();
    let mut m = IntMatrix::zero(n, n);
    for (i, d) in group.torsion().iter().enumerate() {
        m.set(i, i, d.clone());
    }
    m
}

/// Builds the `2L×2L` degree and winding matrices from `T` (`L×(L−l₀)`,
/// nonnegative) and `S` (`L×L`, nonnegative):
///
/// ```text
/// Ñ = | 2I  T̃+S+X |        M = | I  S |
///     |  I  I+S+X |,           | I  I |
/// ```
///
/// with `T̃` the zero-padding of `T` to `L×L` and `X` the tridiagonal
/// all-ones band. The degree-matrix cokernel and kernel reproduce those
/// of `T`; the winding side reproduces those of `S`.
pub fn block_embed(t: &IntMatrix, s: &IntMatrix) -> Result<(IntMatrix, IntMatrix), RealizeError> {
    let l = s.rows();
    if s.cols() != l {
        return Err(RealizeError::Shape(format!(
            "S must be square, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if t.rows() != l || t.cols() > l {
        return Err(RealizeError::Shape(format!(
            "T must be {l}x(at most {l}), got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    if l == 0 {
        return Err(RealizeError::Shape("block size must be positive".into()));
    }
    for (name, m) in [("T", t), ("S", s)] {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if m.get(i, j).is_negative() {
                    return Err(RealizeError::Shape(format!(
                        "{name} has a negative entry at ({i}, {j})"
                    )));
                }
            }
        }
    }

    let band = |k: usize, l_ix: usize| -> BigInt {
        if k.abs_diff(l_ix) <= 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    };
    let t_pad = |k: usize, l_ix: usize| -> BigInt {
        if l_ix < t.cols() {
            t.get(k, l_ix).clone()
        } else {
            BigInt::zero()
        }
    };
    let delta = |k: usize, l_ix: usize| -> BigInt {
        if k == l_ix {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    };

    let mut n_big = IntMatrix::zero(2 * l, 2 * l);
    let mut m_big = IntMatrix::zero(2 * l, 2 * l);
    for k in 0..l {
        for j in 0..l {
            // top-left: 2I and I
            n_big.set(k, j, BigInt::from(2) * delta(k, j));
            m_big.set(k, j, delta(k, j));
            // top-right: T̃+S+X and S
            n_big.set(k, l + j, t_pad(k, j) + s.get(k, j) + band(k, j));
            m_big.set(k, l + j, s.get(k, j).clone());
            // bottom-left: I and I
            n_big.set(l + k, j, delta(k, j));
            m_big.set(l + k, j, delta(k, j));
            // bottom-right: I+S+X and I
            n_big.set(l + k, l + j, delta(k, j) + s.get(k, j) + band(k, j));
            m_big.set(l + k, l + j, delta(k, j));
        }
    }
    Ok((n_big, m_big))
}

/// Builds the graph of a degree matrix / winding matrix pair: one vertex
/// per row, one edge per nonzero degree entry (domain = row index,
/// range = column index), and an infinite edge family (degree 1,
/// winding 0) from the designated source row into each of the last
/// `rank_deficit` vertices.
pub fn graph_from_matrices(
    n_big: &IntMatrix,
    m_big: &IntMatrix,
    rank_deficit: usize,
    family_source_row: usize,
) -> Result<WeightedGraph, RealizeError> {
    let nv = n_big.rows();
    if n_big.cols() != nv || m_big.rows() != nv || m_big.cols() != nv {
        return Err(RealizeError::Shape(format!(
            "need equal square matrices, got {}x{} and {}x{}",
            n_big.rows(),
            n_big.cols(),
            m_big.rows(),
            m_big.cols()
        )));
    }
    if nv == 0 {
        return Err(RealizeError::Shape("need at least one vertex".into()));
    }
    if rank_deficit > nv || family_source_row >= nv {
        return Err(RealizeError::Shape(
            "rank deficit or family source out of range".into(),
        ));
    }
    for k in 0..nv {
        for l in 0..nv {
            if n_big.get(k, l).is_negative() {
                return Err(RealizeError::Shape(format!(
                    "negative degree entry at ({k}, {l})"
                )));
            }
            if n_big.get(k, l).is_zero() && !m_big.get(k, l).is_zero() {
                return Err(RealizeError::Shape(format!(
                    "winding entry at ({k}, {l}) has no degree entry"
                )));
            }
        }
    }

    let width = nv.to_string().len();
    let name = |i: usize| format!("v{:0width$}", i + 1);
    let mut edges = Vec::new();
    for k in 0..nv {
        for l in 0..nv {
            if !n_big.get(k, l).is_zero() {
                edges.push(Edge::new(
                    format!("e{:0width$}x{:0width$}", k + 1, l + 1),
                    name(k),
                    name(l),
                    n_big.get(k, l).clone(),
                    m_big.get(k, l).clone(),
                ));
            }
        }
    }
    let families = (nv - rank_deficit..nv)
        .map(|l| InfiniteEdgeFamily::new(name(family_source_row), name(l), 1, 0))
        .collect();
    Ok(WeightedGraph::build(
        (0..nv).map(name).collect(),
        edges,
        families,
    )?)
}

/// `I − M` for a square matrix `M`.
fn id_minus(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = if i == j { BigInt::one() } else { BigInt::zero() };
            out.set(i, j, d - m.get(i, j));
        }
    }
    out
}

/// Extends a base matrix pair by one row and column so that the class
/// of `(1,…,1)` becomes a prescribed nonzero `g`, without changing the
/// K-groups. `pres` must present the cokernel of the degree-side map of
/// `(n_big, rank_deficit)` and send `(1,…,1)` to zero; the winding-side
/// kernel must vanish. Returns the extended degree matrix, the extended
/// winding matrix, and the extended witness matrix.
pub fn adjust_unit_class(
    n_big: &IntMatrix,
    m_big: &IntMatrix,
    pres: &CokernelPresentation,
    g: &GroupElement,
) -> Result<(IntMatrix, IntMatrix, IntMatrix), RealizeError> {
    if g.is_zero() {
        return Err(RealizeError::Shape(
            "unit adjustment needs a nonzero target; the base construction already sends the unit to zero".into(),
        ));
    }
    let nv = n_big.rows();
    if n_big.cols() != nv || m_big.rows() != nv || m_big.cols() != nv || nv == 0 {
        return Err(RealizeError::Shape(
            "unit adjustment needs equal square matrices".into(),
        ));
    }
    if kernel_basis(&id_minus(m_big)).cols() != 0 {
        return Err(RealizeError::Shape(
            "unit adjustment requires a trivial winding-side kernel".into(),
        ));
    }
    let ones = vec![BigInt::one(); nv];
    if !pres.class(&ones)?.is_zero() {
        return Err(RealizeError::Shape(
            "unit adjustment requires the base construction to send (1,…,1) to zero".into(),
        ));
    }

    // Representative of g, shifted by a multiple of (1,…,1) ∈ ker π so
    // that its minimum entry is exactly zero.
    let mut a = pres.representative(g)?;
    let mn = a.iter().min().expect("at least one vertex").clone();
    for x in &mut a {
        *x -= &mn;
    }
    let k0_row = a
        .iter()
        .position(|x| x.is_zero())
        .expect("minimum entry was shifted to zero");

    let n1 = nv + 1;
    let mut n_adj = IntMatrix::zero(n1, n1);
    let mut m_adj = IntMatrix::zero(n1, n1);
    n_adj.set(0, 0, BigInt::from(2));
    m_adj.set(0, 0, BigInt::from(2));
    for l in 0..nv {
        // New row 0 doubles row k₀, with a −2 correction on the diagonal
        // hit; its winding entries are zero.
        let mut v = n_big.get(k0_row, l) * BigInt::from(2);
        if l == k0_row {
            v -= 2;
        }
        n_adj.set(0, 1 + l, v);
    }
    for k in 0..nv {
        // New column 0 carries the representative; winding 1 wherever an
        // edge exists (aₖ ≥ 1), 0 where there is no edge.
        n_adj.set(1 + k, 0, a[k].clone());
        if a[k] > BigInt::zero() {
            m_adj.set(1 + k, 0, BigInt::one());
        }
        for l in 0..nv {
            n_adj.set(1 + k, 1 + l, n_big.get(k, l).clone());
            m_adj.set(1 + k, 1 + l, m_big.get(k, l).clone());
        }
    }

    // Extended witness: π′(x₀, x) = π(x) + (2·x_{k₀} − x₀)·g.
    let w = pres.witness_matrix();
    let g_flat = g.flat_coords();
    let mut w_adj = IntMatrix::zero(w.rows(), n1);
    for r in 0..w.rows() {
        w_adj.set(r, 0, -g_flat[r].clone());
        for k in 0..nv {
            let mut v = w.get(r, k).clone();
            if k == k0_row {
                v += BigInt::from(2) * &g_flat[r];
            }
            w_adj.set(r, 1 + k, v);
        }
    }
    Ok((n_adj, m_adj, w_adj))
}

// ---------------------------------------------------------------------------
// Route selection
// ---------------------------------------------------------------------------

fn base_route(
    g0: &AbelianGroup,
    g1: &AbelianGroup,
    l0: usize,
) -> Result<(WeightedGraph, IntMatrix), RealizeError> {
    let t_len = g0.torsion().len();
    let u_len = g1.torsion().len();
    let r1 = g1.free_rank();
    let l = (t_len + l0).max(u_len + r1).max(1);
    let cols = l - l0;

    // T: identity padding then the K₀ torsion chain on the diagonal;
    // the last l₀ rows stay zero and carry the extra free rank of K₀.
    let mut t = IntMatrix::zero(l, cols);
    let pad = cols - t_len;
    for j in 0..pad {
        t.set(j, j, BigInt::one());
    }
    for (i, d) in g0.torsion().iter().enumerate() {
        t.set(pad + i, pad + i, d.clone());
    }

    // S: the K₁ torsion chain, then one zero diagonal entry per shared
    // free rank (those zeros put ker S into K₀ and coker S into K₁), then
    // identity padding.
    let mut s = IntMatrix::zero(l, l);
    for (i, q) in g1.torsion().iter().enumerate() {
        s.set(i, i, q.clone());
    }
    for i in u_len + r1..l {
        s.set(i, i, BigInt::one());
    }

    let (n_big, m_big) = block_embed(&t, &s)?;
    let graph = graph_from_matrices(&n_big, &m_big, l0, 0)?;
    let witness = k_invariants(&graph).coker_presentation().witness_matrix();
    Ok((graph, witness))
}

/// One-vertex shortcut: a single torsion factor on each side with a
/// unit target that generates K₀ is realized by one loop with degree
/// `p + 1` and winding `q + 1` (or `1 − q` when `p + 1` divides `q + 1`).
fn one_vertex_route(
    g0: &AbelianGroup,
    g: &GroupElement,
    g1: &AbelianGroup,
) -> Option<(WeightedGraph, IntMatrix)> {
    if g0.free_rank() != 0
        || g0.torsion().len() != 1
        || g1.free_rank() != 0
        || g1.torsion().len() > 1
    {
        return None;
    }
    let p = &g0.torsion()[0];
    let c = &g.torsion_coords()[0];
    if !c.gcd(p).is_one() {
        return None;
    }
    let n: BigInt = p + 1;
    let q = g1
        .torsion()
        .first()
        .cloned()
        .unwrap_or_else(BigInt::one);
    let q_plus_one: BigInt = &q + 1;
    let m = if (&q_plus_one % &n).is_zero() {
        BigInt::one() - &q
    } else {
        q_plus_one
    };
    let graph = WeightedGraph::single_loop(n, m);
    let witness = IntMatrix::from_rows(1, 1, vec![vec![c.clone()]]);
    Some((graph, witness))
}

fn adjusted_route(
    g0: &AbelianGroup,
    g1: &AbelianGroup,
    g: &GroupElement,
    l0: usize,
) -> Result<(WeightedGraph, IntMatrix), RealizeError> {
    let t_len = g0.torsion().len();
    let u_len = g1.torsion().len();
    let r0 = g0.free_rank();
    let mut pad = u_len.saturating_sub(t_len + r0);
    let mut l = pad + t_len + r0;
    if l == 0 {
        pad = 1;
        l = 1;
    }
    // cols = pad + t_len + (free rank of K₁)
    let cols = l - l0;

    // T: identity padding and the K₀ torsion chain on the diagonal, r₁
    // zero columns (the free rank of K₁ as ker T), r₀ zero rows (the
    // free rank of K₀ as coker T).
    let mut t = IntMatrix::zero(l, cols);
    for j in 0..pad {
        t.set(j, j, BigInt::one());
    }
    for (i, d) in g0.torsion().iter().enumerate() {
        t.set(pad + i, pad + i, d.clone());
    }

    // S: the K₁ torsion chain then identity padding — injective, as the
    // unit adjustment requires.
    let mut s = IntMatrix::zero(l, l);
    for (i, q) in g1.torsion().iter().enumerate() {
        s.set(i, i, q.clone());
    }
    for i in u_len..l {
        s.set(i, i, BigInt::one());
    }

    let (n_big, m_big) = block_embed(&t, &s)?;
    let base = graph_from_matrices(&n_big, &m_big, l0, 0)?;
    let kb = k_invariants(&base);
    let pres = kb.coker_presentation();
    if pres.group() != g0 {
        return Err(RealizeError::Verification(format!(
            "internal: base cokernel {} does not match the K0 target {}",
            pres.group(),
            g0
        )));
    }
    let (n_adj, m_adj, witness) = adjust_unit_class(&n_big, &m_big, pres, g)?;
    // In the extended vertex set the construction's designated family
    // source (the base construction's first vertex) sits at row 1.
    let graph = graph_from_matrices(&n_adj, &m_adj, l0, 1)?;
    Ok((graph, witness))
}

/// Synthesizes a graph whose algebra has the prescribed `(K₀, [1], K₁)`
/// and re-verifies the result from scratch. Fails if the K₁ free rank
/// exceeds the K₀ free rank (no such graph exists), or — as an internal
/// error — if any verification check fails.
pub fn realize(k0: &GroupSpec, k1: &GroupSpec) -> Result<RealizationReport, RealizeError> {
    let r0 = k0.group().free_rank();
    let r1 = k1.group().free_rank();
    if r1 > r0 {
        return Err(RealizeError::RankConstraint {
            k0_rank: r0,
            k1_rank: r1,
        });
    }
    let l0 = r0 - r1;
    let g = k0.unit_or_zero();

    let (graph, witness) = if g.is_zero() {
        base_route(k0.group(), k1.group(), l0)?
    } else if let Some(found) = one_vertex_route(k0.group(), &g, k1.group()) {
        found
    } else {
        adjusted_route(k0.group(), k1.group(), &g, l0)?
    };

    let computed = k_invariants(&graph);
    let verification = verify_realization(&graph, k0, k1, &witness);
    if !verification.passed() {
        return Err(RealizeError::Verification(verification.failures.join("; ")));
    }
    Ok(RealizationReport {
        graph,
        witness,
        computed,
        k0_target: k0.clone(),
        k1_target: k1.clone(),
        verification,
    })
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Relation columns of a canonical group: one column `dᵢ·e_{free+i}` per
/// torsion factor.
fn relation_columns(group: &AbelianGroup) -> IntMatrix {
    let mut rel = IntMatrix::zero(group.coord_len(), group.torsion().len());
    for (i, d) in group.torsion().iter().enumerate() {
        rel.set(group.free_rank() + i, i, d.clone());
    }
    rel
}

/// Recomputes every claim a realization makes: canonical K-group factors
/// against the targets; the witness being a well-defined surjection that
/// sends `(1,…,1)` to the unit target; and certified minimality plus a
/// loop (simple purely infinite). Nothing is trusted from construction.
pub fn verify_realization(
    graph: &WeightedGraph,
    k0: &GroupSpec,
    k1: &GroupSpec,
    witness: &IntMatrix,
) -> Verification {
    let mut failures = Vec::new();
    let kinv = k_invariants(graph);

    let mut factors_match = true;
    if kinv.k0 != *k0.group() {
        factors_match = false;
        failures.push(format!(
            "K0 factors: computed {}, target {}",
            kinv.k0,
            k0.group()
        ));
    }
    if kinv.k1 != *k1.group() {
        factors_match = false;
        failures.push(format!(
            "K1 factors: computed {}, target {}",
            kinv.k1,
            k1.group()
        ));
    }

    let mut unit_match = true;
    let target_unit = k0.unit_or_zero();
    let coker_group = kinv.coker_presentation().group().clone();
    let a0 = assemble(graph).i0_minus_n();
    let nv = graph.vertices().len();
    if witness.rows() != coker_group.coord_len() || witness.cols() != nv {
        unit_match = false;
        failures.push(format!(
            "witness shape {}x{} does not present {} on {} vertices",
            witness.rows(),
            witness.cols(),
            coker_group,
            nv
        ));
    } else {
        let reduce = |x: &[BigInt]| {
            coker_group
                .element_from_flat(&witness.mul_vec(x))
                .expect("witness row count was checked")
        };
        for j in 0..a0.cols() {
            if !reduce(&a0.column(j)).is_zero() {
                unit_match = false;
                failures.push(format!(
                    "witness does not vanish on degree-matrix column {j}"
                ));
                break;
            }
        }
        let ones = vec![BigInt::one(); nv];
        let ones_class = reduce(&ones);
        if target_unit.is_zero() {
            if !ones_class.is_zero() {
                unit_match = false;
                failures.push("witness sends (1,…,1) to a nonzero class; unit target is zero".into());
            }
            if !kinv.unit.is_zero() {
                unit_match = false;
                failures.push("computed unit class is nonzero; unit target is zero".into());
            }
        } else {
            if kinv.ker_m_rank() != 0 {
                unit_match = false;
                failures.push(
                    "nonzero unit target requires a trivial winding-side kernel".into(),
                );
            }
            if coker_group != *k0.group() {
                unit_match = false;
                failures.push(format!(
                    "witness target {} differs from the K0 target {}",
                    coker_group,
                    k0.group()
                ));
            } else if ones_class != target_unit {
                unit_match = false;
                failures.push(format!(
                    "witness sends (1,…,1) to {:?}, unit target is {:?}",
                    ones_class.flat_coords(),
                    target_unit.flat_coords()
                ));
            }
        }
        // Surjectivity by Smith reduction of [witness | relations]; a
        // surjection between isomorphic finitely generated abelian
        // groups is an isomorphism (they are Hopfian), so together with
        // the factor equality this certifies the witness invertible.
        if !cokernel_group(&witness.hstack(&relation_columns(&coker_group))).is_trivial() {
            unit_match = false;
            failures.push("witness is not surjective onto its target group".into());
        }
    }

    let min = minimality(graph);
    let looped = has_loop(graph).is_some();
    let minimal_certified = min.status == MinimalityStatus::Minimal && looped;
    if min.status != MinimalityStatus::Minimal {
        failures.push(format!("minimality not certified: {:?}", min.status));
    }
    if !looped {
        failures.push("graph has no loop".into());
    }

    Verification {
        factors_match,
        unit_match,
        minimal_certified,
        failures,
    }
}
