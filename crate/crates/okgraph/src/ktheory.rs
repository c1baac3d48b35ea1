//! K-theory of the circle-fibered graph algebras: the covering-degree and
//! winding-number matrices, the K-groups with the class of the unit, and
//! a closed-form single-vertex reference table.
//!
//! For a weighted graph the two K-groups are
//!
//! ```text
//! K₀ ≅ coker(I₀ − N) ⊕ ker(I₁ − M)
//! K₁ ≅ ker(I₀ − N) ⊕ coker(I₁ − M)
//! ```
//!
//! where `N` sums covering degrees and `M` sums winding numbers of
//! parallel edges, rows run over all vertices and columns over the
//! regularity-restricted vertex sets, and `I₀`, `I₁` are the coordinate
//! embeddings of the column sets. The class of the unit is the image of
//! `(1, …, 1) ∈ ℤ^{E⁰}` in the cokernel summand of K₀.
//!
//! # Coordinate convention
//!
//! Order is fixed once and for all so reports are deterministic: K₀'s
//! free coordinates list the `ker(I₁ − M)` summand first, then the free
//! part of `coker(I₀ − N)`; torsion coordinates all come from the
//! cokernel. The unit is therefore zero on the leading kernel block.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{m_vertices, regular_vertices, WeightedGraph};
use crate::intlin::{
    cokernel_group, kernel_basis, AbelianGroup, CokernelPresentation, GroupElement, IntLinError,
    IntMatrix,
};
use crate::jsonint;

/// The integer matrices of a weighted graph, with their column index
/// maps. Rows of both matrices run over all vertices in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMatrices {
    /// Covering-degree sums; columns indexed by `rg_m_columns`.
    pub n_matrix: IntMatrix,
    /// Winding-number sums; columns indexed by `m_columns`.
    pub m_matrix: IntMatrix,
    /// Row index map: all vertices, sorted.
    pub vertices: Vec<String>,
    /// Column vertices of `n_matrix`: regular vertices that also receive
    /// finitely many (and at least one) nonzero-winding edges.
    pub rg_m_columns: Vec<String>,
    /// Column vertices of `m_matrix`: vertices receiving finitely many
    /// (and at least one) nonzero-winding edges.
    pub m_columns: Vec<String>,
}

impl KMatrices {
    /// `I₀ − N`: the coordinate embedding of the `rg_m_columns` minus the
    /// covering-degree matrix. Shape `|E⁰| × |rg_m_columns|`.
    pub fn i0_minus_n(&self) -> IntMatrix {
        embed_minus(&self.vertices, &self.rg_m_columns, &self.n_matrix)
    }

    /// `I₁ − M`: the coordinate embedding of the `m_columns` minus the
    /// winding-number matrix. Shape `|E⁰| × |m_columns|`.
    pub fn i1_minus_m(&self) -> IntMatrix {
        embed_minus(&self.vertices, &self.m_columns, &self.m_matrix)
    }
}

fn embed_minus(rows: &[String], cols: &[String], a: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(rows.len(), cols.len());
    for (i, v) in rows.iter().enumerate() {
        for (j, w) in cols.iter().enumerate() {
            let delta = if v == w { BigInt::one() } else { BigInt::zero() };
            out.set(i, j, delta - a.get(i, j));
        }
    }
    out
}

/// Builds the covering-degree and winding-number matrices of a graph.
///
/// Entries are summed over parallel edges. Infinite families never
/// contribute: a vertex receiving any family is not a regular column, a
/// vertex receiving a nonzero-winding family is not a winding column, and
/// zero-winding family members add zero to winding sums.
pub fn assemble(g: &WeightedGraph) -> KMatrices {
    let vertices = g.vertices().to_vec();
    let regular = regular_vertices(g);
    let m_cols = m_vertices(g);
    let rg_m_cols: Vec<String> = m_cols
        .iter()
        .filter(|v| regular.binary_search(v).is_ok())
        .cloned()
        .collect();

    let row_ix = |v: &str| vertices.binary_search_by(|x| x.as_str().cmp(v)).unwrap();
    let col_ix = |cols: &[String], v: &str| cols.binary_search_by(|x| x.as_str().cmp(v)).ok();

    let mut n_matrix = IntMatrix::zero(vertices.len(), rg_m_cols.len());
    let mut m_matrix = IntMatrix::zero(vertices.len(), m_cols.len());
    for e in g.edges() {
        let i = row_ix(&e.dom);
        if let Some(j) = col_ix(&rg_m_cols, &e.ran) {
            n_matrix.set(i, j, n_matrix.get(i, j) + &e.n);
        }
        if let Some(j) = col_ix(&m_cols, &e.ran) {
            m_matrix.set(i, j, m_matrix.get(i, j) + &e.m);
        }
    }
    KMatrices {
        n_matrix,
        m_matrix,
        vertices,
        rg_m_columns: rg_m_cols,
        m_columns: m_cols,
    }
}

/// The K-groups of a graph together with the class of the unit in K₀.
#[derive(Clone, Debug)]
pub struct KInvariants {
    /// K₀, in canonical invariant-factor form.
    pub k0: AbelianGroup,
    /// K₁, in canonical invariant-factor form.
    pub k1: AbelianGroup,
    /// Class of the unit in `k0` (zero on the kernel summand).
    pub unit: GroupElement,
    coker_n: CokernelPresentation,
    ker_m_rank: usize,
}

impl PartialEq for KInvariants {
    fn eq(&self, other: &Self) -> bool {
        self.k0 == other.k0 && self.k1 == other.k1 && self.unit == other.unit
    }
}
impl Eq for KInvariants {}

impl KInvariants {
    /// The cokernel summand of K₀ with its coordinate maps.
    pub fn coker_presentation(&self) -> &CokernelPresentation {
        &self.coker_n
    }

    /// Rank of the `ker(I₁ − M)` summand of K₀ (the leading free block).
    pub fn ker_m_rank(&self) -> usize {
        self.ker_m_rank
    }

    /// Maps a vector in `ℤ^{E⁰}` to its K₀ class (through the cokernel
    /// summand; the kernel coordinates of the result are zero).
    pub fn k0_class(&self, x: &[BigInt]) -> Result<GroupElement, IntLinError> {
        let c = self.coker_n.class(x)?;
        self.embed_coker_element(&c)
    }

    fn embed_coker_element(&self, c: &GroupElement) -> Result<GroupElement, IntLinError> {
        let mut free = vec![BigInt::zero(); self.ker_m_rank];
        free.extend(c.free_coords().iter().cloned());
        self.k0.element(free, c.torsion_coords().to_vec())
    }
}

/// Computes K₀, K₁ and the unit class of a graph.
pub fn k_invariants(g: &WeightedGraph) -> KInvariants {
    let km = assemble(g);
    let a0 = km.i0_minus_n();
    let a1 = km.i1_minus_m();

    let coker_n = CokernelPresentation::new(&a0);
    let ker_m_rank = kernel_basis(&a1).cols();
    let k0 = coker_n.group().with_extra_free_rank(ker_m_rank);

    let ker_n_rank = kernel_basis(&a0).cols();
    let k1 = cokernel_group(&a1).with_extra_free_rank(ker_n_rank);

    let ones = vec![BigInt::one(); a0.rows()];
    let unit_in_coker = coker_n
        .class(&ones)
        .expect("ones vector always matches row count");
    let mut free = vec![BigInt::zero(); ker_m_rank];
    free.extend(unit_in_coker.free_coords().iter().cloned());
    let unit = k0
        .element(free, unit_in_coker.torsion_coords().to_vec())
        .expect("embedded unit coordinates always fit");

    KInvariants {
        k0,
        k1,
        unit,
        coker_n,
        ker_m_rank,
    }
}

/// Closed-form K-theory of the one-vertex graph with a single loop of
/// weights `(n, m)`, read off a hand-checked table. Completely
/// independent of [`k_invariants`]; used as an oracle against it.
///
/// The table (rows by `n`, columns by `m`):
///
/// ```text
///              m = 0        m = 1                 m ∉ {0, 1}
/// n = 1        (ℤ, ℤ)       (ℤ², ℤ²)              (ℤ, ℤ ⊕ ℤ/|m−1|)
/// n ≥ 2        (ℤ, ℤ)       (ℤ ⊕ ℤ/(n−1), ℤ)      (ℤ/(n−1), ℤ/|m−1|)
/// ```
///
/// with unit class `1` in the `m = 0` and `m ∉ {0,1}` columns (free
/// generator resp. torsion generator) and `(0, 1)` in the `m = 1` column.
///
/// Panics if `n < 1`.
pub fn one_vertex_reference(n: i64, m: i64) -> KInvariants {
    assert!(n >= 1, "covering degree must be at least 1");
    let km = assemble(&WeightedGraph::single_loop(n, m));
    // The presentation bookkeeping is rebuilt from the matrices (it is
    // coordinate plumbing, not the invariant being checked); the groups
    // and unit below come from the closed-form table only.
    let coker_n = CokernelPresentation::new(&km.i0_minus_n());

    let (k0, k1, unit);
    if m == 0 {
        k0 = AbelianGroup::free(1);
        k1 = AbelianGroup::free(1);
        unit = k0.element(vec![BigInt::one()], vec![]).unwrap();
    } else if m == 1 {
        if n == 1 {
            k0 = AbelianGroup::free(2);
            k1 = AbelianGroup::free(2);
            unit = k0
                .element(vec![BigInt::zero(), BigInt::one()], vec![])
                .unwrap();
        } else {
            k0 = AbelianGroup::from_cyclic_factors(1, &[BigInt::from(n - 1)]);
            k1 = AbelianGroup::free(1);
            let torsion = if n == 2 { vec![] } else { vec![BigInt::one()] };
            unit = k0.element(vec![BigInt::zero()], torsion).unwrap();
        }
    } else if n == 1 {
        k0 = AbelianGroup::free(1);
        k1 = AbelianGroup::from_cyclic_factors(1, &[BigInt::from((m - 1).abs())]);
        unit = k0.element(vec![BigInt::one()], vec![]).unwrap();
    } else {
        k0 = AbelianGroup::from_cyclic_factors(0, &[BigInt::from(n - 1)]);
        k1 = AbelianGroup::from_cyclic_factors(0, &[BigInt::from((m - 1).abs())]);
        let torsion = if n == 2 { vec![] } else { vec![BigInt::one()] };
        unit = k0.element(vec![], torsion).unwrap();
    }

    let ker_m_rank = if m == 1 { 1 } else { 0 };
    KInvariants {
        k0,
        k1,
        unit,
        coker_n,
        ker_m_rank,
    }
}

/// The serialized K-theory report of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KReport {
    /// K₀ in canonical display form, e.g. `"Z^2 + Z/4"`.
    pub k0: String,
    /// K₁ in canonical display form.
    pub k1: String,
    /// Flat coordinates of the unit class in K₀.
    #[serde(with = "jsonint::vec")]
    pub unit: Vec<BigInt>,
    /// Covering-degree matrix, row-major.
    #[serde(with = "jsonint::mat")]
    pub n_matrix: Vec<Vec<BigInt>>,
    /// Winding-number matrix, row-major.
    #[serde(with = "jsonint::mat")]
    pub m_matrix: Vec<Vec<BigInt>>,
    /// Column vertices of `n_matrix`.
    pub rg_m_columns: Vec<String>,
    /// Column vertices of `m_matrix`.
    pub m_columns: Vec<String>,
}

/// Computes the full K-theory report of a graph.
pub fn report(g: &WeightedGraph) -> KReport {
    let km = assemble(g);
    let inv = k_invariants(g);
    KReport {
        k0: inv.k0.to_string(),
        k1: inv.k1.to_string(),
        unit: inv.unit.flat_coords(),
        n_matrix: km.n_matrix.to_rows(),
        m_matrix: km.m_matrix.to_rows(),
        rg_m_columns: km.rg_m_columns,
        m_columns: km.m_columns,
    }
}
