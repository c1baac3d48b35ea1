//! Independent oracles shared by the integration and acceptance suites.
//!
//! Everything in here deliberately avoids the code paths it is used to
//! check: invariant factors come from determinantal divisors or from a
//! textbook elimination with a different pivot rule, membership tests go
//! through Cramer's rule, and path weights are computed by memoized
//! recursion instead of explicit path enumeration.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use okgraph::intlin::IntMatrix;

// ---------------------------------------------------------------------------
// Invariant factors via determinantal divisors
// ---------------------------------------------------------------------------

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn minor(a: &IntMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    let k = rows.len();
    let mut m = IntMatrix::zero(k, k);
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            m.set(i, j, a.get(r, c).clone());
        }
    }
    m.det()
}

/// Rank and invariant factors (including trailing factor-1 entries removed)
/// computed from determinantal divisors: `d_k = gcd(k×k minors)` and the
/// `k`-th invariant factor is `d_k / d_{k-1}`. Completely independent of
/// any elimination strategy. Only practical for small matrices.
pub fn invariant_factors_by_minors(a: &IntMatrix) -> (usize, Vec<BigInt>) {
    let n = a.rows().min(a.cols());
    let mut divisors = vec![BigInt::one()]; // d_0 = 1
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                g = g.gcd(&minor(a, &rows, &cols));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let mut factors = Vec::new();
    for k in 1..=rank {
        factors.push(&divisors[k] / &divisors[k - 1]);
    }
    (rank, factors)
}

// ---------------------------------------------------------------------------
// Textbook Smith elimination (different pivot rule, no witnesses)
// ---------------------------------------------------------------------------

/// Diagonal of the Smith form computed by a plain textbook elimination:
/// first nonzero pivot in column-major scan order, columns cleared before
/// rows, divisibility repaired at the end of each step. Returns the full
/// diagonal (`min(rows, cols)` entries, zeros included), normalized
/// nonnegative.
pub fn snf_diagonal_textbook(a: &IntMatrix) -> Vec<BigInt> {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let get = |d: &IntMatrix, i: usize, j: usize| d.get(i, j).clone();
    let bound = rows.min(cols);
    let mut t = 0;
    while t < bound {
        // first nonzero scanning columns left to right, top to bottom
        let mut found = None;
        'scan: for j in t..cols {
            for i in t..rows {
                if !get(&d, i, j).is_zero() {
                    found = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = found else { break };
        swap_rows(&mut d, t, pi);
        swap_cols(&mut d, t, pj);
        loop {
            let mut again = false;
            for i in t + 1..rows {
                while !get(&d, i, t).is_zero() {
                    let q = get(&d, i, t) / get(&d, t, t);
                    add_row(&mut d, i, t, &-q);
                    if !get(&d, i, t).is_zero() {
                        // remainder became the smaller value: swap up
                        swap_rows(&mut d, t, i);
                        again = true;
                    }
                }
            }
            for j in t + 1..cols {
                while !get(&d, t, j).is_zero() {
                    let q = get(&d, t, j) / get(&d, t, t);
                    add_col(&mut d, j, t, &-q);
                    if !get(&d, t, j).is_zero() {
                        swap_cols(&mut d, t, j);
                        again = true;
                    }
                }
            }
            if !again {
                // column might have been re-dirtied by the row pass
                let col_dirty = (t + 1..rows).any(|i| !get(&d, i, t).is_zero());
                if !col_dirty {
                    break;
                }
            }
        }
        // divisibility repair
        let mut offender = None;
        'rep: for i in t + 1..rows {
            for j in t + 1..cols {
                if !get(&d, i, j).is_multiple_of(&get(&d, t, t)) {
                    offender = Some(i);
                    break 'rep;
                }
            }
        }
        if let Some(i) = offender {
            add_row(&mut d, t, i, &BigInt::one());
            continue; // redo step t with the dirtied row
        }
        t += 1;
    }
    (0..bound).map(|i| d.get(i, i).abs()).collect()
}

fn swap_rows(d: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..d.cols() {
        let a = d.get(i, k).clone();
        let b = d.get(j, k).clone();
        d.set(i, k, b);
        d.set(j, k, a);
    }
}

fn swap_cols(d: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for k in 0..d.rows() {
        let a = d.get(k, i).clone();
        let b = d.get(k, j).clone();
        d.set(k, i, b);
        d.set(k, j, a);
    }
}

fn add_row(d: &mut IntMatrix, i: usize, from: usize, q: &BigInt) {
    for k in 0..d.cols() {
        let v = d.get(i, k) + q * d.get(from, k);
        d.set(i, k, v);
    }
}

fn add_col(d: &mut IntMatrix, j: usize, from: usize, q: &BigInt) {
    for k in 0..d.rows() {
        let v = d.get(k, j) + q * d.get(k, from);
        d.set(k, j, v);
    }
}

// ---------------------------------------------------------------------------
// Brute-force cokernel structure via Cramer membership
// ---------------------------------------------------------------------------

/// Membership `x ∈ im(a)` for a *nonsingular square* `a`, decided through
/// Cramer's rule: the unique rational solution is integral iff every
/// column-replacement determinant is divisible by `det(a)`.
pub fn in_image_cramer(a: &IntMatrix, x: &[BigInt]) -> bool {
    let n = a.rows();
    assert_eq!(a.cols(), n);
    let det = a.det();
    assert!(!det.is_zero(), "Cramer membership needs full rank");
    for j in 0..n {
        let mut b = a.clone();
        for i in 0..n {
            b.set(i, j, x[i].clone());
        }
        if !b.det().is_multiple_of(&det) {
            return false;
        }
    }
    true
}

/// The multiset of element orders of `ℤ^n / im(a)` for nonsingular square
/// `a` with small `|det|`, found by brute-force enumeration: every class
/// has a representative in `[0, |det|)^n` because `|det|·e_i ∈ im(a)`.
/// Returns the sorted list of orders, one per group element.
pub fn element_orders_brute_force(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let det = a.det().abs();
    let bound: u64 = (&det).try_into().expect("determinant too large for brute force");
    assert!(bound > 0 && bound <= 12, "oracle is meant for |det| <= 12");

    // Distinct classes.
    let mut reps: Vec<Vec<BigInt>> = Vec::new();
    let mut point = vec![0u64; n];
    loop {
        let x: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        let known = reps.iter().any(|r| {
            let diff: Vec<BigInt> = r.iter().zip(&x).map(|(a, b)| a - b).collect();
            in_image_cramer(a, &diff)
        });
        if !known {
            reps.push(x);
        }
        // odometer over [0, bound)^n
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            point[k] += 1;
            if point[k] < bound {
                break;
            }
            point[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }

    // Order of each class: smallest t >= 1 with t·x in the image.
    let mut orders: Vec<BigInt> = reps
        .iter()
        .map(|x| {
            let mut t = 1u64;
            loop {
                let tx: Vec<BigInt> = x.iter().map(|c| c * BigInt::from(t)).collect();
                if in_image_cramer(a, &tx) {
                    return BigInt::from(t);
                }
                t += 1;
                assert!(t <= bound, "order exceeded group order");
            }
        })
        .collect();
    orders.sort();
    orders
}

/// The multiset of element orders of `⊕ ℤ/d_i` predicted from invariant
/// factors (the group must be finite and small).
pub fn element_orders_from_factors(factors: &[BigInt]) -> Vec<BigInt> {
    let mut orders = vec![BigInt::one()];
    for d in factors {
        let du: u64 = d.try_into().expect("factor too large");
        let mut next = Vec::new();
        for ord in &orders {
            for c in 0..du {
                let coord_order = &du / du.gcd(&c); // order of c in Z/du
                next.push(ord.lcm(&BigInt::from(coord_order)));
            }
        }
        orders = next;
    }
    orders.sort();
    orders
}

// ---------------------------------------------------------------------------
// Graph oracles
// ---------------------------------------------------------------------------

use num_rational::Ratio;
use okgraph::graph::{Path, WeightedGraph};

fn wrap_unit(r: Ratio<BigInt>) -> Ratio<BigInt> {
    let f = r.floor();
    r - f
}

/// Fiber image on the circle by explicit enumeration of root-choice
/// tuples: every combination of branch indices `(j_1, …, j_k)` with
/// `j_i < n(e_i)` is traced through the alternating root/power maps via
/// an odometer, then deduplicated. Independent of the set-fold used by
/// the library. Returns sorted distinct angles in `[0, 1)`.
pub fn fiber_brute_force(
    g: &WeightedGraph,
    path: &Path,
    z0: &Ratio<BigInt>,
) -> Vec<Ratio<BigInt>> {
    // Arcs processed domain-side first (reverse of path order).
    let arcs: Vec<_> = path
        .arc_indices()
        .iter()
        .rev()
        .map(|&i| &g.arcs()[i])
        .collect();
    let radices: Vec<u64> = arcs
        .iter()
        .map(|a| u64::try_from(&a.n).expect("degree too large for brute force"))
        .collect();
    let mut digits = vec![0u64; arcs.len()];
    let mut out = std::collections::BTreeSet::new();
    loop {
        let mut theta = wrap_unit(z0.clone());
        for (a, &j) in arcs.iter().zip(&digits) {
            theta = (theta + Ratio::from_integer(BigInt::from(j)))
                / Ratio::from_integer(a.n.clone());
            theta = wrap_unit(theta * Ratio::from_integer(a.m.clone()));
        }
        out.insert(theta);
        let mut k = 0;
        loop {
            if k == digits.len() {
                return out.into_iter().collect();
            }
            digits[k] += 1;
            if digits[k] < radices[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// For each vertex `v`, the sum over all paths with domain `v` (the empty
/// path included) of the product of their covering degrees, by memoized
/// recursion: `W(v) = 1 + Σ_{e : dom(e) = v} n(e) · W(ran(e))`. Only
/// terminates on loop-free graphs. Indexed by vertex index.
pub fn weighted_path_counts(g: &WeightedGraph) -> Vec<BigInt> {
    fn w(g: &WeightedGraph, v: usize, memo: &mut Vec<Option<BigInt>>) -> BigInt {
        if let Some(x) = &memo[v] {
            return x.clone();
        }
        let mut total = BigInt::one();
        for a in g.arcs() {
            if a.dom == v {
                total += &a.n * w(g, a.ran, memo);
            }
        }
        memo[v] = Some(total.clone());
        total
    }
    let mut memo = vec![None; g.vertices().len()];
    (0..g.vertices().len())
        .map(|v| w(g, v, &mut memo))
        .collect()
}

// ---------------------------------------------------------------------------
// Random graph generation (proptest strategies)
// ---------------------------------------------------------------------------

use okgraph::graph::Edge;
use proptest::prelude::*;

/// Random graph: up to `max_v` vertices and `max_e` edges with degrees
/// 1–4 and winding numbers in [-3, 3].
pub fn arbitrary_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = WeightedGraph> {
    (1usize..=max_v).prop_flat_map(move |nv| {
        proptest::collection::vec((0..nv, 0..nv, 1i64..=4, -3i64..=3), 1..=max_e).prop_map(
            move |specs| {
                let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
                let edges = specs
                    .iter()
                    .enumerate()
                    .map(|(k, (d, r, n, m))| {
                        Edge::new(
                            format!("e{k}"),
                            format!("v{d}"),
                            format!("v{r}"),
                            *n,
                            *m,
                        )
                    })
                    .collect();
                WeightedGraph::build(vertices, edges, vec![]).unwrap()
            },
        )
    })
}

// ---------------------------------------------------------------------------
// Invariants of a pointed group (group, distinguished element)
// ---------------------------------------------------------------------------

use okgraph::intlin::{cokernel_group, solve_in_image, AbelianGroup, GroupElement};

/// The relation columns of a canonical-form group on its flat coordinate
/// lattice: one column `d_i · e_{r+i}` per torsion factor.
fn relation_matrix(g: &AbelianGroup) -> IntMatrix {
    let r = g.free_rank();
    let t = g.torsion().len();
    let mut rel = IntMatrix::zero(r + t, t);
    for i in 0..t {
        rel.set(r + i, i, g.torsion()[i].clone());
    }
    rel
}

/// Invariants of the pair (group, element) that do not depend on the
/// chosen coordinates: the element's order (0 = infinite), the canonical
/// form of the quotient by the element, and which small multipliers `d`
/// admit a solution of `d·x = element`.
pub fn pointed_group_invariants(
    group: &AbelianGroup,
    a: &GroupElement,
) -> (BigInt, AbelianGroup, Vec<bool>) {
    let rel = relation_matrix(group);

    let order = if a.free_coords().iter().any(|c| !c.is_zero()) {
        BigInt::zero()
    } else {
        let mut o = BigInt::one();
        for (c, d) in a.torsion_coords().iter().zip(group.torsion()) {
            o = o.lcm(&(d / d.gcd(c)));
        }
        o
    };

    let flat = a.flat_coords();
    let a_col = IntMatrix::from_rows(
        flat.len(),
        1,
        flat.iter().map(|x| vec![x.clone()]).collect(),
    );
    let quotient = cokernel_group(&a_col.hstack(&rel));

    let divisibility = (2..=8)
        .map(|d| {
            let mut d_scale = IntMatrix::identity(flat.len());
            for i in 0..flat.len() {
                d_scale.set(i, i, BigInt::from(d));
            }
            solve_in_image(&d_scale.hstack(&rel), &flat)
                .expect("dimensions agree")
                .is_some()
        })
        .collect();

    (order, quotient, divisibility)
}
