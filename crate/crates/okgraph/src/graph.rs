//! Weighted directed graphs, composable paths, fiber periods and exact
//! circle fibers.
//!
//! A [`WeightedGraph`] is a finite vertex set together with finitely many
//! edges, each carrying a covering degree `n(e) ≥ 1` and a winding number
//! `m(e) ∈ ℤ`, plus optionally some [`InfiniteEdgeFamily`] records: a
//! family stands for countably many parallel edges sharing the same
//! endpoints and weights. Families are never materialized — one
//! representative participates in path searches, and the only structural
//! effect of their infinitude is on vertex regularity (a vertex receiving
//! a family receives infinitely many edges).
//!
//! # Path convention
//!
//! A path is a nonempty sequence `(e_1, …, e_k)` with `dom(e_i) =
//! ran(e_{i+1})`; its *range* is `ran(e_1)` (leftmost edge) and its
//! *domain* is `dom(e_k)`. Composition therefore reads right to left, like
//! function composition.
//!
//! # The fiber period `p(μ)`
//!
//! Every edge acts on the unit circle by `z ↦ z^{n(e)}` (domain direction)
//! and `z ↦ z^{m(e)}` (range direction). A path `μ` then maps the fiber
//! over a base point to a finite subset of the circle; [`fiber_image`]
//! computes that subset exactly, and [`p_value`] computes its cardinality
//! `p(μ)` directly by the recursion
//!
//! ```text
//! p(e)      = 1                         if m(e) = 0
//!             n(e)/gcd(n(e), |m(e)|)    otherwise
//! p((e, ν)) = 1                                        if m(e) = 0
//!             n(e)p(ν)/gcd(n(e)p(ν), |m(e)|)           otherwise
//! ```
//!
//! where `e` is the *first* (range-side) edge. The image of the fiber over
//! the base point `1` consists exactly of the `p(μ)`-th roots of unity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jsonint;

/// Errors from graph construction and path assembly.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// Graphs must have at least one vertex.
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    /// Vertex ids must be unique.
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    /// Edge ids must be unique.
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    /// An edge or family referenced an undeclared vertex.
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex {
        /// Offending edge id (or family description).
        edge: String,
        /// The missing vertex.
        vertex: String,
    },
    /// Covering degrees must be at least 1.
    #[error("edge `{0}` has covering degree < 1")]
    InvalidCoveringDegree(String),
    /// A path referenced an edge id that does not exist.
    #[error("unknown edge id `{0}`")]
    UnknownEdgeId(String),
    /// Consecutive path edges must compose (`dom(e_i) = ran(e_{i+1})`).
    #[error("edges `{left}` and `{right}` do not compose")]
    NotComposable {
        /// The earlier (range-side) edge.
        left: String,
        /// The later (domain-side) edge.
        right: String,
    },
    /// Paths must contain at least one edge.
    #[error("path must be nonempty")]
    EmptyPath,
    /// Raw JSON was structurally invalid.
    #[error("graph JSON: {0}")]
    Json(String),
}

/// A single edge `dom → ran` with covering degree `n ≥ 1` and winding
/// number `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    /// Unique identifier.
    pub id: String,
    /// Start (domain) vertex id.
    pub dom: String,
    /// End (range) vertex id.
    pub ran: String,
    /// Covering degree, at least 1.
    #[serde(with = "jsonint")]
    pub n: BigInt,
    /// Winding number, any integer.
    #[serde(with = "jsonint")]
    pub m: BigInt,
}

impl Edge {
    /// Convenience constructor.
    pub fn new(
        id: impl Into<String>,
        dom: impl Into<String>,
        ran: impl Into<String>,
        n: impl Into<BigInt>,
        m: impl Into<BigInt>,
    ) -> Self {
        Edge {
            id: id.into(),
            dom: dom.into(),
            ran: ran.into(),
            n: n.into(),
            m: m.into(),
        }
    }
}

/// A countable family of parallel edges `dom → ran`, all with the same
/// weights. The family is symbolic: it contributes one representative edge
/// to path searches and excludes its range vertex from the regular set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteEdgeFamily {
    /// Start (domain) vertex id shared by every member.
    pub dom: String,
    /// End (range) vertex id shared by every member.
    pub ran: String,
    /// Covering degree of every member, at least 1.
    #[serde(with = "jsonint")]
    pub n: BigInt,
    /// Winding number of every member.
    #[serde(with = "jsonint")]
    pub m: BigInt,
}

impl InfiniteEdgeFamily {
    /// Convenience constructor.
    pub fn new(
        dom: impl Into<String>,
        ran: impl Into<String>,
        n: impl Into<BigInt>,
        m: impl Into<BigInt>,
    ) -> Self {
        InfiniteEdgeFamily {
            dom: dom.into(),
            ran: ran.into(),
            n: n.into(),
            m: m.into(),
        }
    }
}

/// Identifier of an arc in the unified arc list: a real edge (by id) or
/// the representative of an infinite family (by family index).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcId {
    /// A real edge.
    Edge(String),
    /// Representative of the `usize`-th family (in sorted family order).
    Family(usize),
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcId::Edge(id) => write!(f, "{id}"),
            ArcId::Family(k) => write!(f, "~family{k}"),
        }
    }
}

/// One arc of the unified walk structure: a real edge or a family
/// representative, with vertex endpoints resolved to indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// Which edge or family this arc is.
    pub id: ArcId,
    /// Index of the domain vertex.
    pub dom: usize,
    /// Index of the range vertex.
    pub ran: usize,
    /// Covering degree.
    pub n: BigInt,
    /// Winding number.
    pub m: BigInt,
}

/// A finite weighted directed graph with optional infinite edge families.
///
/// Construction normalizes the presentation: vertices, edges and families
/// are sorted by id (resp. by endpoint/weight) so that all downstream
/// computations and serializations are deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    families: Vec<InfiniteEdgeFamily>,
    arcs: Vec<Arc>,
}

/// Validates and builds a [`WeightedGraph`].
///
/// Checks: nonempty vertex set, unique vertex and edge ids, declared
/// endpoints, covering degrees `≥ 1` on edges and families.
pub fn build_graph(
    vertices: Vec<String>,
    edges: Vec<Edge>,
    families: Vec<InfiniteEdgeFamily>,
) -> Result<WeightedGraph, GraphError> {
    WeightedGraph::build(vertices, edges, families)
}

impl WeightedGraph {
    /// See [`build_graph`].
    pub fn build(
        mut vertices: Vec<String>,
        mut edges: Vec<Edge>,
        mut families: Vec<InfiniteEdgeFamily>,
    ) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0].clone()));
            }
        }
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateEdge(w[0].id.clone()));
            }
        }
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        for e in &edges {
            for v in [&e.dom, &e.ran] {
                if !index.contains_key(v.as_str()) {
                    return Err(GraphError::UnknownVertex {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if e.n < BigInt::one() {
                return Err(GraphError::InvalidCoveringDegree(e.id.clone()));
            }
        }
        families.sort_by(|a, b| {
            (&a.dom, &a.ran, &a.n, &a.m).cmp(&(&b.dom, &b.ran, &b.n, &b.m))
        });
        for (k, f) in families.iter().enumerate() {
            let tag = format!("~family{k}");
            for v in [&f.dom, &f.ran] {
                if !index.contains_key(v.as_str()) {
                    return Err(GraphError::UnknownVertex {
                        edge: tag.clone(),
                        vertex: v.clone(),
                    });
                }
            }
            if f.n < BigInt::one() {
                return Err(GraphError::InvalidCoveringDegree(tag));
            }
        }

        let mut arcs = Vec::with_capacity(edges.len() + families.len());
        for e in &edges {
            arcs.push(Arc {
                id: ArcId::Edge(e.id.clone()),
                dom: index[e.dom.as_str()],
                ran: index[e.ran.as_str()],
                n: e.n.clone(),
                m: e.m.clone(),
            });
        }
        for (k, f) in families.iter().enumerate() {
            arcs.push(Arc {
                id: ArcId::Family(k),
                dom: index[f.dom.as_str()],
                ran: index[f.ran.as_str()],
                n: f.n.clone(),
                m: f.m.clone(),
            });
        }
        Ok(WeightedGraph {
            vertices,
            edges,
            families,
            arcs,
        })
    }

    /// The one-vertex graph with a single self-loop of weights `(n, m)`.
    pub fn single_loop(n: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        WeightedGraph::build(
            vec!["v".into()],
            vec![Edge::new("e", "v", "v", n, m)],
            vec![],
        )
        .expect("single loop graph is always valid")
    }

    /// Vertex ids in sorted order (the index order used everywhere).
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// The real edges, sorted by id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The infinite families in sorted order.
    pub fn families(&self) -> &[InfiniteEdgeFamily] {
        &self.families
    }

    /// The unified arc list: edges first (sorted by id), then one
    /// representative per family.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Index of a vertex id, if declared.
    pub fn vertex_index(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    /// Vertex id at an index.
    pub fn vertex_name(&self, ix: usize) -> &str {
        &self.vertices[ix]
    }

    /// Arc indices leaving `dom` (walk direction domain → range).
    pub fn arcs_from(&self, dom: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.dom == dom)
            .map(|(i, _)| i)
    }

    /// Parses the graph interchange JSON.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let raw: RawGraph =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        WeightedGraph::build(raw.vertices, raw.edges, raw.families)
    }

    /// Serializes to the graph interchange JSON (normalized ordering, so
    /// parse → serialize is idempotent after the first round trip).
    pub fn to_json(&self) -> String {
        let raw = RawGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            families: self.families.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("graph serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    #[serde(default)]
    families: Vec<InfiniteEdgeFamily>,
}

// ---------------------------------------------------------------------------
// Regularity
// ---------------------------------------------------------------------------

/// The regular vertices: those receiving at least one and finitely many
/// edges. A vertex targeted by an infinite family receives infinitely many
/// edges and is therefore excluded; a vertex receiving nothing is excluded
/// as well.
pub fn regular_vertices(g: &WeightedGraph) -> Vec<String> {
    let mut incoming = vec![0usize; g.vertices.len()];
    for e in &g.edges {
        let ix = g.vertex_index(&e.ran).unwrap();
        incoming[ix] += 1;
    }
    let mut infinite = vec![false; g.vertices.len()];
    for f in &g.families {
        infinite[g.vertex_index(&f.ran).unwrap()] = true;
    }
    g.vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| incoming[i] > 0 && !infinite[i])
        .map(|(_, v)| v.clone())
        .collect()
}

/// The vertices receiving at least one and finitely many edges of nonzero
/// winding number. Families with `m = 0` neither count nor disqualify;
/// a family with `m ≠ 0` makes the count infinite and disqualifies.
pub fn m_vertices(g: &WeightedGraph) -> Vec<String> {
    let mut incoming = vec![0usize; g.vertices.len()];
    for e in &g.edges {
        if !e.m.is_zero() {
            incoming[g.vertex_index(&e.ran).unwrap()] += 1;
        }
    }
    let mut infinite = vec![false; g.vertices.len()];
    for f in &g.families {
        if !f.m.is_zero() {
            infinite[g.vertex_index(&f.ran).unwrap()] = true;
        }
    }
    g.vertices
        .iter()
        .enumerate()
        .filter(|&(i, _)| incoming[i] > 0 && !infinite[i])
        .map(|(_, v)| v.clone())
        .collect()
}

// ---------------------------------------------------------------------------
// Paths
// ---------------------------------------------------------------------------

/// A composable, nonempty sequence of arcs `(e_1, …, e_k)` with
/// `dom(e_i) = ran(e_{i+1})`. Stored as indices into the owning graph's
/// arc list; all path operations take the graph explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    arcs: Vec<usize>,
}

impl Path {
    /// Builds a path from arc indices, validating composability.
    pub fn new(g: &WeightedGraph, arcs: Vec<usize>) -> Result<Self, GraphError> {
        if arcs.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        for w in arcs.windows(2) {
            let left = &g.arcs()[w[0]];
            let right = &g.arcs()[w[1]];
            if left.dom != right.ran {
                return Err(GraphError::NotComposable {
                    left: left.id.to_string(),
                    right: right.id.to_string(),
                });
            }
        }
        Ok(Path { arcs })
    }

    /// Builds a path from edge ids (family representatives are addressed
    /// as `~family{k}`).
    pub fn from_edge_ids(g: &WeightedGraph, ids: &[&str]) -> Result<Self, GraphError> {
        let arcs = ids
            .iter()
            .map(|id| {
                g.arcs()
                    .iter()
                    .position(|a| a.id.to_string() == *id)
                    .ok_or_else(|| GraphError::UnknownEdgeId(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(g, arcs)
    }

    /// The arc indices, range-side first.
    pub fn arc_indices(&self) -> &[usize] {
        &self.arcs
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    /// Paths are never empty; this is always false.
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The domain vertex index: `dom` of the last edge.
    pub fn domain(&self, g: &WeightedGraph) -> usize {
        g.arcs()[*self.arcs.last().unwrap()].dom
    }

    /// The range vertex index: `ran` of the first edge.
    pub fn range(&self, g: &WeightedGraph) -> usize {
        g.arcs()[self.arcs[0]].ran
    }

    /// Arc identifiers in path order (range side first).
    pub fn ids(&self, g: &WeightedGraph) -> Vec<String> {
        self.arcs.iter().map(|&i| g.arcs()[i].id.to_string()).collect()
    }

    /// Concatenation `self · other` (self on the range side). The domain
    /// of `self` must equal the range of `other`.
    pub fn compose(&self, other: &Path, g: &WeightedGraph) -> Result<Path, GraphError> {
        let mut arcs = self.arcs.clone();
        arcs.extend_from_slice(&other.arcs);
        Path::new(g, arcs)
    }
}

/// The fiber period `p(μ)` of a path, computed by folding the recursion
/// from the domain-side (last) edge towards the range-side (first) edge.
/// Always `≥ 1`.
pub fn p_value(g: &WeightedGraph, path: &Path) -> BigInt {
    let mut p = BigInt::one();
    for &ix in path.arcs.iter().rev() {
        let arc = &g.arcs()[ix];
        p = if arc.m.is_zero() {
            BigInt::one()
        } else {
            let np = &arc.n * &p;
            let d = np.gcd(&arc.m.abs());
            np / d
        };
    }
    p
}

// ---------------------------------------------------------------------------
// Exact circle points
// ---------------------------------------------------------------------------

/// A point `e^{2πiθ}` on the rational circle, stored as the reduced
/// fraction `θ ∈ [0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CirclePoint(Ratio<BigInt>);

impl CirclePoint {
    /// The base point `1` (angle `0`).
    pub fn one() -> Self {
        CirclePoint(Ratio::zero())
    }

    /// The point with angle `num/den` (reduced and wrapped into `[0, 1)`).
    /// Panics if `den = 0`.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let r = Ratio::new(num.into(), den.into());
        CirclePoint(Self::wrap(r))
    }

    fn wrap(r: Ratio<BigInt>) -> Ratio<BigInt> {
        let f = r.floor();
        r - f
    }

    /// The angle as a reduced fraction in `[0, 1)`.
    pub fn theta(&self) -> &Ratio<BigInt> {
        &self.0
    }

    /// The `n` preimages under `z ↦ z^n`: angles `(θ + j)/n`, `0 ≤ j < n`.
    /// Panics if `n` does not fit in `u64` (the enumeration would not be
    /// materializable anyway).
    pub fn nth_roots(&self, n: &BigInt) -> Vec<CirclePoint> {
        assert!(n >= &BigInt::one(), "covering degree must be positive");
        let count = u64::try_from(n).expect("covering degree too large to enumerate roots");
        (0..count)
            .map(|j| {
                let r = (self.0.clone() + Ratio::from_integer(BigInt::from(j)))
                    / Ratio::from_integer(n.clone());
                CirclePoint(Self::wrap(r))
            })
            .collect()
    }

    /// The image under `z ↦ z^m`: angle `m·θ` wrapped into `[0, 1)`.
    pub fn pow(&self, m: &BigInt) -> CirclePoint {
        CirclePoint(Self::wrap(self.0.clone() * Ratio::from_integer(m.clone())))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// The exact image on the circle of the fiber of `z0` under a path: edges
/// are processed right (domain side) to left (range side), alternating the
/// full preimage under `z ↦ z^{n(e)}` with the forward image under
/// `z ↦ z^{m(e)}`. Returns sorted distinct points.
///
/// Over the base point `1` the result is exactly the set of `p(μ)`-th
/// roots of unity (see [`p_value`]).
pub fn fiber_image(g: &WeightedGraph, path: &Path, z0: &CirclePoint) -> Vec<CirclePoint> {
    let mut set: BTreeSet<CirclePoint> = BTreeSet::new();
    set.insert(z0.clone());
    for &ix in path.arcs.iter().rev() {
        let arc = &g.arcs()[ix];
        let mut next = BTreeSet::new();
        for z in &set {
            for root in z.nth_roots(&arc.n) {
                next.insert(root.pow(&arc.m));
            }
        }
        set = next;
    }
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// Path enumeration and connectivity
// ---------------------------------------------------------------------------

/// All paths with `domain = from`, `range = to` and at most `max_len`
/// edges, in depth-first order over sorted arcs. Paths may revisit
/// vertices; families contribute one representative arc each.
pub fn enumerate_paths(
    g: &WeightedGraph,
    from: &str,
    to: &str,
    max_len: usize,
) -> Result<Vec<Path>, GraphError> {
    let from_ix = g.vertex_index(from).ok_or_else(|| GraphError::UnknownVertex {
        edge: "<enumerate_paths>".into(),
        vertex: from.into(),
    })?;
    let to_ix = g.vertex_index(to).ok_or_else(|| GraphError::UnknownVertex {
        edge: "<enumerate_paths>".into(),
        vertex: to.into(),
    })?;
    let mut out = Vec::new();
    // Walk in the domain → range direction, so the collected arc sequence
    // is reversed relative to path order.
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(
        g: &WeightedGraph,
        at: usize,
        to: usize,
        max_len: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Path>,
    ) {
        if stack.len() == max_len {
            return;
        }
        for arc_ix in g.arcs_from(at) {
            let arc = &g.arcs()[arc_ix];
            stack.push(arc_ix);
            if arc.ran == to {
                let arcs: Vec<usize> = stack.iter().rev().copied().collect();
                out.push(Path { arcs });
            }
            dfs(g, arc.ran, to, max_len, stack, out);
            stack.pop();
        }
    }
    dfs(g, from_ix, to_ix, max_len, &mut stack, &mut out);
    Ok(out)
}

/// The shortest loop (path with equal domain and range) if one exists,
/// with deterministic tie-breaking: smallest base vertex first, then
/// breadth-first over sorted arcs. Family representatives count.
pub fn has_loop(g: &WeightedGraph) -> Option<Path> {
    let mut best: Option<(usize, usize, Path)> = None; // (len, base, path)
    for base in 0..g.vertices().len() {
        if let Some(path) = shortest_return(g, base) {
            let len = path.len();
            match &best {
                Some((blen, _, _)) if *blen <= len => {}
                _ => best = Some((len, base, path)),
            }
        }
    }
    best.map(|(_, _, p)| p)
}

/// Shortest closed walk from `base` back to `base` (at least one arc),
/// BFS over sorted arcs; reconstructs the walk through parent pointers.
fn shortest_return(g: &WeightedGraph, base: usize) -> Option<Path> {
    // parent[v] = (prev_vertex, arc) on the BFS tree from `base`.
    let n = g.vertices().len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    queue.push_back(base);
    // `seen[base]` stays false so that re-reaching base closes the walk.
    while let Some(v) = queue.pop_front() {
        for arc_ix in g.arcs_from(v) {
            let w = g.arcs()[arc_ix].ran;
            if w == base {
                // reconstruct: walk arcs from base to v, then this arc
                let mut walk = vec![arc_ix];
                let mut cur = v;
                while cur != base {
                    let (prev, via) = parent[cur].unwrap();
                    walk.push(via);
                    cur = prev;
                }
                // walk is now in reverse walk order = path order
                return Some(Path { arcs: walk });
            }
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, arc_ix));
                queue.push_back(w);
            }
        }
    }
    None
}

/// True if some path (possibly empty) runs from `from` to `to`; every
/// vertex reaches itself via the empty path.
pub fn reachable(g: &WeightedGraph, from: &str, to: &str) -> bool {
    match (g.vertex_index(from), g.vertex_index(to)) {
        (Some(a), Some(b)) => reachable_ix(g, a, b),
        _ => false,
    }
}

pub(crate) fn reachable_ix(g: &WeightedGraph, from: usize, to: usize) -> bool {
    if from == to {
        return true;
    }
    let mut seen = vec![false; g.vertices().len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for arc_ix in g.arcs_from(v) {
            let w = g.arcs()[arc_ix].ran;
            if w == to {
                return true;
            }
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}
