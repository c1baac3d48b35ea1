//! Finite generator–relation presentations of the graph algebras, and
//! circle-algebra block profiles of their Toeplitz-type subalgebras.
//!
//! The algebra of a weighted graph is generated by one partial unitary
//! `u_v` per vertex (with range projection `p_v`) and one partial
//! isometry `s_{e,k}` per edge `e` and index `0 ≤ k < n(e)`, extended
//! notationally by `s_{e,k+n(e)·l} = s_{e,k} u_{d(e)}^l`. The defining
//! relations come in eight types:
//!
//! * (i) `u_v* u_v = u_v u_v* = p_v`,
//! * (ii) the `p_v` are mutually orthogonal,
//! * (iii) `s_{e,k}* s_{e,k} = p_{d(e)}`,
//! * (iv) the range projections `s_{e,k} s_{e,k}*` are mutually
//!   orthogonal,
//! * (v) `s_{e,k} u_{d(e)} = s_{e,k+n(e)}`,
//! * (vi) `u_{r(e)} s_{e,k} = s_{e,k+m(e)}`,
//! * (vii) `p_v = Σ_{e ∈ r⁻¹(v)} Σ_k s_{e,k} s_{e,k}*` for each vertex
//!   that is regular and receives finitely many (at least one)
//!   nonzero-winding edges,
//! * (viii) `p_v − u_v = Σ_{e ∈ r⁻¹(v), m(e)≠0} Σ_k (s_{e,k} −
//!   s_{e,k+m(e)}) s_{e,k}*` for each non-regular vertex receiving
//!   finitely many (at least one) nonzero-winding edges.
//!
//! Indices outside `0 ≤ k < n(e)` are stored through the unique
//! decomposition `k + m(e) = k′ + n(e)·l` with `0 ≤ k′ < n(e)`, recorded
//! as the pair `(k′, l)`. Dropping types (vii)/(viii) presents the
//! Toeplitz extension instead of the algebra itself.
//!
//! An infinite edge family enters through its representative: all its
//! members share `(dom, ran, n, m)`, so their relations are verbatim
//! copies, and a family target is never regular, so the family never
//! contributes terms to (vii); it contributes to (viii) only through its
//! effect on which vertices qualify.
//!
//! For loop-free graphs the Toeplitz-type algebra is a circle algebra:
//! one block `M_{k_v} ⊗ C(𝕋)` per vertex, where `k_v` sums the degree
//! products `n(μ) = Π n(eᵢ)` over all paths `μ` with domain `v`, the
//! empty path counting 1. Relative to an ambient graph, the subalgebra
//! generated by a loop-free subgraph keeps the same block dimensions but
//! may lose circles or whole blocks, governed by which incoming ambient
//! edges were left out.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{has_loop, m_vertices, regular_vertices, Arc, GraphError, WeightedGraph};
use crate::jsonint;

/// Hard cap on the number of materialized isometry generators, to keep
/// presentations of graphs with huge covering degrees from exhausting
/// memory.
pub const MAX_ISOMETRY_GENERATORS: u64 = 1 << 16;

/// Errors from presentation and profile emission.
#[derive(Debug, Error)]
pub enum PresentError {
    /// The graph contains a cycle, so its path space is infinite.
    #[error("graph has a loop through edges [{0}]; the path space is infinite")]
    LoopFound(String),
    /// Profiles require honest finite graphs; an infinite edge family
    /// makes the path space infinite.
    #[error("infinite edge families are not supported here")]
    FamiliesUnsupported,
    /// Covering degrees too large to materialize one generator per index.
    #[error("presentation needs {0} isometry generators, above the cap of {MAX_ISOMETRY_GENERATORS}")]
    TooManyGenerators(BigInt),
    /// The one-vertex reduction is undefined for winding number zero.
    #[error("no reduced one-vertex form exists for winding number 0; use the general presentation")]
    ZeroWinding,
    /// Covering degrees must be positive.
    #[error("covering degree must be at least 1, got {0}")]
    InvalidDegree(BigInt),
    /// The inner graph is not a subgraph of the ambient graph.
    #[error("subgraph violation: {0}")]
    SubgraphViolation(String),
    /// Underlying graph error.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ---------------------------------------------------------------------------
// Star presentations
// ---------------------------------------------------------------------------

/// One isometry generator `s_{e,k}`: an arc identifier and an index
/// `0 ≤ k < n(e)`. Family representatives use their displayed id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryRef {
    /// Arc identifier (edge id, or the displayed family representative).
    pub edge: String,
    /// Index below the arc's covering degree.
    pub k: u64,
}

/// One summand of a type-(viii) relation:
/// `(s_{e,k} − s_{e,k′} u_{d(e)}^l) s_{e,k}*` with `k + m(e) = k′ + n(e)·l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectTerm {
    /// Arc identifier.
    pub edge: String,
    /// Index below the arc's covering degree.
    pub k: u64,
    /// Reduced index of `k + m(e)`.
    pub k_prime: u64,
    /// Quotient of the reduction: `k + m(e) = k′ + n(e)·l`.
    #[serde(with = "jsonint")]
    pub l: BigInt,
}

/// A typed defining relation. The `type` tag in JSON is the lowercase
/// roman numeral of the relation kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Relation {
    /// `u_v* u_v = u_v u_v* = p_v`.
    #[serde(rename = "i")]
    UnitaryPolar {
        /// The vertex `v`.
        vertex: String,
    },
    /// The vertex projections are mutually orthogonal.
    #[serde(rename = "ii")]
    OrthogonalUnits {
        /// All vertices, in sorted order.
        vertices: Vec<String>,
    },
    /// `s_{e,k}* s_{e,k} = p_{d(e)}`.
    #[serde(rename = "iii")]
    IsometryDomain {
        /// Arc identifier.
        edge: String,
        /// Index below the arc's covering degree.
        k: u64,
        /// The domain vertex `d(e)`.
        vertex: String,
    },
    /// The isometry range projections are mutually orthogonal.
    #[serde(rename = "iv")]
    OrthogonalRanges {
        /// Every isometry generator.
        terms: Vec<IsometryRef>,
    },
    /// `s_{e,k} u_{d(e)} = s_{e,k+n(e)}`, i.e. `(k′, l) = (k, 1)`.
    #[serde(rename = "v")]
    DomainShift {
        /// Arc identifier.
        edge: String,
        /// Index below the arc's covering degree.
        k: u64,
        /// Reduced index of `k + n(e)` (always `k`).
        k_prime: u64,
        /// Quotient of the reduction (always 1).
        #[serde(with = "jsonint")]
        l: BigInt,
    },
    /// `u_{r(e)} s_{e,k} = s_{e,k′} u_{d(e)}^l` with
    /// `k + m(e) = k′ + n(e)·l`.
    #[serde(rename = "vi")]
    RangeAction {
        /// Arc identifier.
        edge: String,
        /// Index below the arc's covering degree.
        k: u64,
        /// Reduced index of `k + m(e)`.
        k_prime: u64,
        /// Quotient of the reduction.
        #[serde(with = "jsonint")]
        l: BigInt,
    },
    /// `p_v = Σ s_{e,k} s_{e,k}*` over all arcs into `v`.
    #[serde(rename = "vii")]
    ReceiverSum {
        /// The receiving vertex.
        vertex: String,
        /// All `(e, k)` with `r(e) = v`.
        terms: Vec<IsometryRef>,
    },
    /// `p_v − u_v = Σ (s_{e,k} − s_{e,k′} u_{d(e)}^l) s_{e,k}*` over the
    /// nonzero-winding arcs into `v`.
    #[serde(rename = "viii")]
    SingularDefect {
        /// The receiving vertex.
        vertex: String,
        /// All `(e, k)` with `r(e) = v` and `m(e) ≠ 0`, with their
        /// index reductions.
        terms: Vec<DefectTerm>,
    },
}

/// A finite generator–relation presentation: one partial unitary per
/// vertex, one partial isometry per (arc, index) pair, and the typed
/// relation list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarPresentation {
    /// Generator names `u_<vertex>`, in sorted vertex order.
    pub unitaries: Vec<String>,
    /// Isometry generators in arc order, indices ascending.
    pub isometries: Vec<IsometryRef>,
    /// Typed relations, grouped by type in roman-numeral order.
    pub relations: Vec<Relation>,
}

impl StarPresentation {
    /// Serializes to the presentation interchange schema.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serialization is valid")
    }

    /// Renders the relations in the customary star-algebra notation.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "unitaries: {}", self.unitaries.join(", "));
        let iso = self
            .isometries
            .iter()
            .map(|t| format!("s_{{{},{}}}", t.edge, t.k))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "isometries: {iso}");
        let _ = writeln!(out, "relations:");
        for r in &self.relations {
            let _ = writeln!(out, "  {}", render_relation(r));
        }
        out
    }
}

/// `u_v^l` as text, omitting the exponent 1 and the factor entirely for
/// exponent 0.
fn unitary_power(vertex: &str, l: &BigInt) -> String {
    if l.is_zero() {
        String::new()
    } else if l.is_one() {
        format!(" u_{vertex}")
    } else {
        format!(" u_{vertex}^{l}")
    }
}

fn render_relation(r: &Relation) -> String {
    match r {
        Relation::UnitaryPolar { vertex } => {
            format!("(i)    u_{vertex}* u_{vertex} = u_{vertex} u_{vertex}* = p_{vertex}")
        }
        Relation::OrthogonalUnits { vertices } => {
            let ps = vertices
                .iter()
                .map(|v| format!("p_{v}"))
                .collect::<Vec<_>>()
                .join(", ");
            format!("(ii)   mutually orthogonal projections: {ps}")
        }
        Relation::IsometryDomain { edge, k, vertex } => {
            format!("(iii)  s_{{{edge},{k}}}* s_{{{edge},{k}}} = p_{vertex}")
        }
        Relation::OrthogonalRanges { terms } => {
            let ps = terms
                .iter()
                .map(|t| format!("s_{{{},{}}} s_{{{},{}}}*", t.edge, t.k, t.edge, t.k))
                .collect::<Vec<_>>()
                .join(", ");
            format!("(iv)   mutually orthogonal projections: {ps}")
        }
        Relation::DomainShift {
            edge,
            k,
            k_prime,
            l,
        } => format!(
            "(v)    s_{{{edge},{k}}} u_dom = s_{{{edge},{k_prime}}}{}",
            unitary_power("dom", &(l - 1))
        ),
        Relation::RangeAction {
            edge,
            k,
            k_prime,
            l,
        } => format!(
            "(vi)   u_ran s_{{{edge},{k}}} = s_{{{edge},{k_prime}}}{}",
            unitary_power("dom", l)
        ),
        Relation::ReceiverSum { vertex, terms } => {
            let sum = terms
                .iter()
                .map(|t| format!("s_{{{},{}}} s_{{{},{}}}*", t.edge, t.k, t.edge, t.k))
                .collect::<Vec<_>>()
                .join(" + ");
            format!("(vii)  p_{vertex} = {sum}")
        }
        Relation::SingularDefect { vertex, terms } => {
            let sum = terms
                .iter()
                .map(|t| {
                    format!(
                        "(s_{{{},{}}} - s_{{{},{}}}{}) s_{{{},{}}}*",
                        t.edge,
                        t.k,
                        t.edge,
                        t.k_prime,
                        unitary_power("dom", &t.l),
                        t.edge,
                        t.k
                    )
                })
                .collect::<Vec<_>>()
                .join(" + ");
            format!("(viii) p_{vertex} - u_{vertex} = {sum}")
        }
    }
}

/// The unique decomposition `k + m = k′ + n·l` with `0 ≤ k′ < n`.
fn decompose(k: u64, m: &BigInt, n: &BigInt) -> (u64, BigInt) {
    let shifted: BigInt = BigInt::from(k) + m;
    let k_prime = shifted.mod_floor(n);
    let l = (&shifted - &k_prime) / n;
    (
        k_prime
            .to_u64()
            .expect("reduced index is below the generator cap"),
        l,
    )
}

/// Emits the typed presentation of a graph's algebra; with
/// `toeplitz = true` the receiver relations (vii)/(viii) are dropped,
/// presenting the Toeplitz extension instead.
pub fn star_presentation(
    g: &WeightedGraph,
    toeplitz: bool,
) -> Result<StarPresentation, PresentError> {
    let mut total = BigInt::zero();
    for a in g.arcs() {
        total += &a.n;
    }
    if total > BigInt::from(MAX_ISOMETRY_GENERATORS) {
        return Err(PresentError::TooManyGenerators(total));
    }
    let degree = |a: &Arc| a.n.to_u64().expect("total degree is capped");

    let unitaries = g.vertices().iter().map(|v| format!("u_{v}")).collect();
    let mut isometries = Vec::new();
    for a in g.arcs() {
        for k in 0..degree(a) {
            isometries.push(IsometryRef {
                edge: a.id.to_string(),
                k,
            });
        }
    }

    let mut relations = Vec::new();
    for v in g.vertices() {
        relations.push(Relation::UnitaryPolar { vertex: v.clone() });
    }
    if g.vertices().len() >= 2 {
        relations.push(Relation::OrthogonalUnits {
            vertices: g.vertices().to_vec(),
        });
    }
    for a in g.arcs() {
        for k in 0..degree(a) {
            relations.push(Relation::IsometryDomain {
                edge: a.id.to_string(),
                k,
                vertex: g.vertex_name(a.dom).to_string(),
            });
        }
    }
    if isometries.len() >= 2 {
        relations.push(Relation::OrthogonalRanges {
            terms: isometries.clone(),
        });
    }
    for a in g.arcs() {
        for k in 0..degree(a) {
            relations.push(Relation::DomainShift {
                edge: a.id.to_string(),
                k,
                k_prime: k,
                l: BigInt::one(),
            });
        }
    }
    for a in g.arcs() {
        for k in 0..degree(a) {
            let (k_prime, l) = decompose(k, &a.m, &a.n);
            relations.push(Relation::RangeAction {
                edge: a.id.to_string(),
                k,
                k_prime,
                l,
            });
        }
    }

    if !toeplitz {
        let regular: BTreeSet<String> = regular_vertices(g).into_iter().collect();
        let winding: BTreeSet<String> = m_vertices(g).into_iter().collect();
        for v in g.vertices() {
            if !winding.contains(v) {
                continue;
            }
            let vix = g.vertex_index(v).expect("own vertex");
            if regular.contains(v) {
                let mut terms = Vec::new();
                for a in g.arcs() {
                    if a.ran == vix {
                        for k in 0..degree(a) {
                            terms.push(IsometryRef {
                                edge: a.id.to_string(),
                                k,
                            });
                        }
                    }
                }
                relations.push(Relation::ReceiverSum {
                    vertex: v.clone(),
                    terms,
                });
            } else {
                let mut terms = Vec::new();
                for a in g.arcs() {
                    if a.ran == vix && !a.m.is_zero() {
                        for k in 0..degree(a) {
                            let (k_prime, l) = decompose(k, &a.m, &a.n);
                            terms.push(DefectTerm {
                                edge: a.id.to_string(),
                                k,
                                k_prime,
                                l,
                            });
                        }
                    }
                }
                relations.push(Relation::SingularDefect {
                    vertex: v.clone(),
                    terms,
                });
            }
        }
    }

    Ok(StarPresentation {
        unitaries,
        isometries,
        relations,
    })
}

// ---------------------------------------------------------------------------
// One-vertex reduced presentations
// ---------------------------------------------------------------------------

/// The reduced presentation of a one-loop graph algebra with covering
/// degree `n ≥ 1` and winding number `m ≠ 0`, after regrouping the
/// isometries along `d = gcd(n, |m|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ReducedPresentation {
    /// `gcd(n, |m|) = 1`: a unitary `u` and a single isometry `s` with
    /// `u* u = u u* = s* s = Σ_{k<n} u^k s s* u^{−k} = 1` and
    /// `u^n s = s u^m`.
    TwoGenerator {
        /// The covering degree `n`.
        #[serde(with = "jsonint")]
        degree: BigInt,
        /// The winding number `m`.
        #[serde(with = "jsonint")]
        winding: BigInt,
    },
    /// `d = gcd(n, |m|) > 1`: a unitary `u` and isometries `s_{i,k}`
    /// (`0 ≤ i < d`, `0 ≤ k < n/d`) with `Σ s_{i,k} s_{i,k}* = 1`,
    /// `u s_{i,k} = s_{i,k+1}` for `k < n/d − 1`, and
    /// `u s_{i,n/d−1} = s_{i,0} u^{m/d}`.
    Regrouped {
        /// The covering degree `n`.
        #[serde(with = "jsonint")]
        degree: BigInt,
        /// The winding number `m`.
        #[serde(with = "jsonint")]
        winding: BigInt,
        /// `gcd(n, |m|)`, the number of isometry families.
        #[serde(with = "jsonint")]
        gcd: BigInt,
        /// `n / gcd`, the indices per family.
        #[serde(with = "jsonint")]
        block_length: BigInt,
        /// `m / gcd`, the exponent in the wrap-around relation.
        #[serde(with = "jsonint")]
        final_exponent: BigInt,
    },
}

impl ReducedPresentation {
    /// Serializes to JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reduced presentation serialization is valid")
    }

    /// Renders the reduced relations in the customary notation.
    pub fn render_text(&self) -> String {
        match self {
            ReducedPresentation::TwoGenerator { degree, winding } => {
                let mut out = String::new();
                let _ = writeln!(out, "generators: a unitary u and an isometry s");
                let _ = writeln!(
                    out,
                    "  (i)  u* u = u u* = s* s = sum_{{k=0}}^{{{}}} u^k s s* u^-k = 1",
                    degree - 1
                );
                let _ = writeln!(out, "  (ii) u^{degree} s = s u^{winding}");
                out
            }
            ReducedPresentation::Regrouped {
                gcd,
                block_length,
                final_exponent,
                ..
            } => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "generators: a unitary u and isometries s_{{i,k}} for 0 <= i < {gcd}, 0 <= k < {block_length}"
                );
                let _ = writeln!(out, "  sum_{{i,k}} s_{{i,k}} s_{{i,k}}* = 1");
                let _ = writeln!(
                    out,
                    "  u s_{{i,k}} = s_{{i,k+1}} for 0 <= k < {}",
                    block_length - 1
                );
                let _ = writeln!(
                    out,
                    "  u s_{{i,{}}} = s_{{i,0}} u^{final_exponent}",
                    block_length - 1
                );
                out
            }
        }
    }
}

/// Reduced presentation of the one-loop algebra with covering degree `n`
/// and winding number `m`. Errors on `n < 1`, and on `m = 0`, where no
/// reduced form exists (use the general presentation instead).
pub fn one_vertex_reduced(n: &BigInt, m: &BigInt) -> Result<ReducedPresentation, PresentError> {
    if n < &BigInt::one() {
        return Err(PresentError::InvalidDegree(n.clone()));
    }
    if m.is_zero() {
        return Err(PresentError::ZeroWinding);
    }
    let d = n.gcd(&m.abs());
    if d.is_one() {
        Ok(ReducedPresentation::TwoGenerator {
            degree: n.clone(),
            winding: m.clone(),
        })
    } else {
        Ok(ReducedPresentation::Regrouped {
            degree: n.clone(),
            winding: m.clone(),
            block_length: n / &d,
            final_exponent: m / &d,
            gcd: d,
        })
    }
}

// ---------------------------------------------------------------------------
// Circle-algebra profiles
// ---------------------------------------------------------------------------

/// One direct summand of a circle-algebra profile: a matrix block
/// `M_dim`, tensored with the circle functions when `circle` holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileBlock {
    /// The vertex the block is attached to.
    pub vertex: String,
    /// Matrix dimension `k_v ≥ 1`.
    #[serde(with = "jsonint")]
    pub dim: BigInt,
    /// Whether the block is `M_dim ⊗ C(𝕋)` rather than plain `M_dim`.
    pub circle: bool,
}

/// A finite direct sum of (possibly circle-tensored) matrix blocks, in
/// sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleAlgebraProfile {
    /// The blocks; vertices contributing no block are absent.
    pub blocks: Vec<ProfileBlock>,
}

impl CircleAlgebraProfile {
    /// Serializes to the profile interchange schema.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serialization is valid")
    }

    /// Sum of all block dimensions.
    pub fn total_dim(&self) -> BigInt {
        self.blocks.iter().map(|b| &b.dim).sum()
    }

    /// Renders the profile as a direct sum.
    pub fn render_text(&self) -> String {
        if self.blocks.is_empty() {
            return "0".to_string();
        }
        self.blocks
            .iter()
            .map(|b| {
                if b.circle {
                    format!("M_{} (x) C(T) [{}]", b.dim, b.vertex)
                } else {
                    format!("M_{} [{}]", b.dim, b.vertex)
                }
            })
            .collect::<Vec<_>>()
            .join(" (+) ")
    }
}

/// Rejects graphs whose path space is infinite (families or cycles).
fn require_finite_paths(f: &WeightedGraph) -> Result<(), PresentError> {
    if !f.families().is_empty() {
        return Err(PresentError::FamiliesUnsupported);
    }
    if let Some(cycle) = has_loop(f) {
        return Err(PresentError::LoopFound(cycle.ids(f).join(", ")));
    }
    Ok(())
}

/// Sums the degree products of every path with domain `v` (the empty
/// path counts 1), by explicit path enumeration.
fn lambda_count(f: &WeightedGraph, v: &str) -> Result<BigInt, PresentError> {
    let mut total = BigInt::one();
    let horizon = f.vertices().len();
    for w in f.vertices() {
        for path in crate::graph::enumerate_paths(f, v, w, horizon)? {
            let mut product = BigInt::one();
            for &ix in path.arc_indices() {
                product *= &f.arcs()[ix].n;
            }
            total += product;
        }
    }
    Ok(total)
}

/// The circle-algebra profile of the Toeplitz-type algebra of a finite
/// loop-free graph: one block `M_{k_v} ⊗ C(𝕋)` per vertex, with `k_v`
/// the degree-weighted path count into `v`'s domain side.
pub fn toeplitz_profile(f: &WeightedGraph) -> Result<CircleAlgebraProfile, PresentError> {
    require_finite_paths(f)?;
    let mut blocks = Vec::new();
    for v in f.vertices() {
        blocks.push(ProfileBlock {
            vertex: v.clone(),
            dim: lambda_count(f, v)?,
            circle: true,
        });
    }
    Ok(CircleAlgebraProfile { blocks })
}

/// The profile of the subalgebra generated by a loop-free subgraph `f`
/// inside the algebra of an ambient graph `e`. Block dimensions are the
/// same path counts as in [`toeplitz_profile`]; the block at `v` loses
/// its circle factor when `v` receives finitely many (at least one)
/// nonzero-winding ambient arcs and every ambient arc into `v` outside
/// `f` has winding zero (with at least one such outside arc), and
/// disappears entirely when the outside arcs are all zero-winding but
/// none exist.
pub fn relative_profile(
    e: &WeightedGraph,
    f: &WeightedGraph,
) -> Result<CircleAlgebraProfile, PresentError> {
    if !f.families().is_empty() {
        return Err(PresentError::SubgraphViolation(
            "inner graph must not carry infinite edge families".into(),
        ));
    }
    for v in f.vertices() {
        if e.vertex_index(v).is_none() {
            return Err(PresentError::SubgraphViolation(format!(
                "vertex {v} is not in the ambient graph"
            )));
        }
    }
    for inner in f.edges() {
        let matched = e.edges().iter().any(|outer| {
            outer.id == inner.id
                && outer.dom == inner.dom
                && outer.ran == inner.ran
                && outer.n == inner.n
                && outer.m == inner.m
        });
        if !matched {
            return Err(PresentError::SubgraphViolation(format!(
                "edge {} does not match an ambient edge",
                inner.id
            )));
        }
    }
    require_finite_paths(f)?;

    let winding: BTreeSet<String> = m_vertices(e).into_iter().collect();
    let inner_ids: BTreeSet<&str> = f.edges().iter().map(|x| x.id.as_str()).collect();
    let mut blocks = Vec::new();
    for v in f.vertices() {
        let vix = e.vertex_index(v).expect("checked above");
        let outside: Vec<&Arc> = e
            .arcs()
            .iter()
            .filter(|a| {
                a.ran == vix
                    && match &a.id {
                        crate::graph::ArcId::Edge(id) => !inner_ids.contains(id.as_str()),
                        crate::graph::ArcId::Family(_) => true,
                    }
            })
            .collect();
        let outside_all_zero = outside.iter().all(|a| a.m.is_zero());
        let in_winding = winding.contains(v);
        let matrix_only = in_winding && outside_all_zero && !outside.is_empty();
        let dropped = in_winding && outside_all_zero && outside.is_empty();
        if dropped {
            continue;
        }
        blocks.push(ProfileBlock {
            vertex: v.clone(),
            dim: lambda_count(f, v)?,
            circle: !matrix_only,
        });
    }
    Ok(CircleAlgebraProfile { blocks })
}
