//! Property tests for the K-group computation, cross-checked against a
//! determinantal-divisor route that shares no code with the library's
//! elimination.

mod support;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use okgraph::graph::{Edge, WeightedGraph};
use okgraph::intlin::{AbelianGroup, IntMatrix};
use okgraph::ktheory::{assemble, k_invariants};

/// Independent assembly of `I₀ − N` and `I₁ − M`: regularity sets are
/// re-derived from scratch with hash-map counting rather than the
/// library's sorted-vector filters.
fn naive_embedded_matrices(g: &WeightedGraph) -> (IntMatrix, IntMatrix) {
    let verts = g.vertices();
    let ix: BTreeMap<&str, usize> = verts
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();

    let mut in_all = vec![0usize; verts.len()];
    let mut in_nonzero = vec![0usize; verts.len()];
    for e in g.edges() {
        in_all[ix[e.ran.as_str()]] += 1;
        if !e.m.is_zero() {
            in_nonzero[ix[e.ran.as_str()]] += 1;
        }
    }
    let mut family_any = vec![false; verts.len()];
    let mut family_nonzero = vec![false; verts.len()];
    for f in g.families() {
        family_any[ix[f.ran.as_str()]] = true;
        if !f.m.is_zero() {
            family_nonzero[ix[f.ran.as_str()]] = true;
        }
    }
    let m_cols: Vec<usize> = (0..verts.len())
        .filter(|&v| in_nonzero[v] > 0 && !family_nonzero[v])
        .collect();
    let rg_m_cols: Vec<usize> = m_cols
        .iter()
        .copied()
        .filter(|&v| in_all[v] > 0 && !family_any[v])
        .collect();

    let build = |cols: &[usize], take_m: bool| {
        let mut a = IntMatrix::zero(verts.len(), cols.len());
        for (j, &w) in cols.iter().enumerate() {
            a.set(w, j, BigInt::one());
            for e in g.edges() {
                if ix[e.ran.as_str()] == w {
                    let i = ix[e.dom.as_str()];
                    let delta = if take_m { &e.m } else { &e.n };
                    a.set(i, j, a.get(i, j) - delta);
                }
            }
        }
        a
    };
    (build(&rg_m_cols, false), build(&m_cols, true))
}

/// Canonical group of the cokernel of `a`, derived from determinantal
/// divisors plus a free part by rank count.
fn coker_by_minors(a: &IntMatrix) -> AbelianGroup {
    let (rank, factors) = support::invariant_factors_by_minors(a);
    AbelianGroup::from_cyclic_factors(a.rows() - rank, &factors)
}

fn kernel_rank_by_minors(a: &IntMatrix) -> usize {
    let (rank, _) = support::invariant_factors_by_minors(a);
    a.cols() - rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// K₀ and K₁ agree with the determinantal-divisor route.
    #[test]
    fn k_groups_match_minor_oracle(g in support::arbitrary_graph(3, 5)) {
        let inv = k_invariants(&g);
        let (a0, a1) = naive_embedded_matrices(&g);

        let k0 = coker_by_minors(&a0).with_extra_free_rank(kernel_rank_by_minors(&a1));
        let k1 = coker_by_minors(&a1).with_extra_free_rank(kernel_rank_by_minors(&a0));
        prop_assert_eq!(inv.k0, k0);
        prop_assert_eq!(inv.k1, k1);
    }

    /// The free rank of K₁ never exceeds the free rank of K₀.
    #[test]
    fn k1_rank_bounded_by_k0_rank(g in support::arbitrary_graph(4, 7)) {
        let inv = k_invariants(&g);
        prop_assert!(inv.k1.free_rank() <= inv.k0.free_rank());
    }

    /// The unit class does not move when the input vector is shifted by a
    /// relation column.
    #[test]
    fn unit_class_invariant_under_relation_shift(
        g in support::arbitrary_graph(3, 5),
        col_pick in 0usize..8,
    ) {
        let inv = k_invariants(&g);
        let km = assemble(&g);
        let a0 = km.i0_minus_n();
        if a0.cols() > 0 {
            let j = col_pick % a0.cols();
            let shifted: Vec<BigInt> = a0
                .column(j)
                .iter()
                .map(|c| c + BigInt::one())
                .collect();
            prop_assert_eq!(inv.k0_class(&shifted).unwrap(), inv.unit.clone());
        }
    }

    /// Duplicating an existing edge under a fresh id adds its weights to
    /// exactly one entry of each matrix and changes nothing else.
    #[test]
    fn duplicating_an_edge_adds_to_one_entry(
        g in support::arbitrary_graph(3, 5),
        pick in 0usize..8,
    ) {
        let e = g.edges()[pick % g.edges().len()].clone();
        let mut edges = g.edges().to_vec();
        edges.push(Edge::new("zz-dup", e.dom.clone(), e.ran.clone(), e.n.clone(), e.m.clone()));
        let g2 = WeightedGraph::build(g.vertices().to_vec(), edges, g.families().to_vec()).unwrap();

        let km1 = assemble(&g);
        let km2 = assemble(&g2);
        prop_assert_eq!(&km1.rg_m_columns, &km2.rg_m_columns);
        prop_assert_eq!(&km1.m_columns, &km2.m_columns);

        let row = g.vertices().iter().position(|v| *v == e.dom).unwrap();
        for i in 0..km1.n_matrix.rows() {
            for j in 0..km1.n_matrix.cols() {
                let bump = if i == row && km1.rg_m_columns[j] == e.ran {
                    e.n.clone()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(km2.n_matrix.get(i, j) - km1.n_matrix.get(i, j), bump);
            }
        }
        for i in 0..km1.m_matrix.rows() {
            for j in 0..km1.m_matrix.cols() {
                let bump = if i == row && km1.m_columns[j] == e.ran {
                    e.m.clone()
                } else {
                    BigInt::zero()
                };
                prop_assert_eq!(km2.m_matrix.get(i, j) - km1.m_matrix.get(i, j), bump);
            }
        }
    }

    /// Relabeling vertices (reversing the name order) leaves the
    /// canonical group forms unchanged and carries the unit class to an
    /// automorphic element: raw coordinates may differ (the canonical
    /// isomorphism is not unique), but every invariant of the pair
    /// (group, element) must agree — the element's order, the quotient by
    /// the element, and its divisibility profile.
    #[test]
    fn relabeling_preserves_invariants(g in support::arbitrary_graph(4, 6)) {
        let nv = g.vertices().len();
        let rename = |v: &str| {
            let k: usize = v[1..].parse().unwrap();
            format!("w{}", nv - 1 - k)
        };
        let edges = g
            .edges()
            .iter()
            .map(|e| Edge::new(e.id.clone(), rename(&e.dom), rename(&e.ran), e.n.clone(), e.m.clone()))
            .collect();
        let vertices = g.vertices().iter().map(|v| rename(v)).collect();
        let g2 = WeightedGraph::build(vertices, edges, vec![]).unwrap();

        let i1 = k_invariants(&g);
        let i2 = k_invariants(&g2);
        prop_assert_eq!(&i1.k0, &i2.k0);
        prop_assert_eq!(&i1.k1, &i2.k1);
        prop_assert_eq!(
            support::pointed_group_invariants(&i1.k0, &i1.unit),
            support::pointed_group_invariants(&i2.k0, &i2.unit)
        );
    }
}
