//! Property tests for paths, fiber periods and exact circle fibers,
//! cross-checked against the tuple-enumeration oracle in `support`.

mod support;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use proptest::prelude::*;

use okgraph::graph::{fiber_image, p_value, CirclePoint, Path, WeightedGraph};

fn graph_strategy() -> impl Strategy<Value = WeightedGraph> {
    support::arbitrary_graph(4, 6)
}

/// Drives a random walk (domain → range direction) and returns it in path
/// order, or `None` if no step could be taken.
fn walk_path(g: &WeightedGraph, start_seed: usize, choices: &[usize]) -> Option<Path> {
    let nv = g.vertices().len();
    let mut at = (0..nv)
        .map(|off| (start_seed + off) % nv)
        .find(|&v| g.arcs_from(v).next().is_some())?;
    let mut walked = Vec::new();
    for &c in choices {
        let outs: Vec<usize> = g.arcs_from(at).collect();
        if outs.is_empty() {
            break;
        }
        let a = outs[c % outs.len()];
        walked.push(a);
        at = g.arcs()[a].ran;
    }
    if walked.is_empty() {
        return None;
    }
    walked.reverse();
    Some(Path::new(g, walked).expect("walk always composes"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The set-fold fiber agrees with explicit enumeration of all branch
    /// tuples, over arbitrary rational base points.
    #[test]
    fn fiber_matches_tuple_enumeration(
        g in graph_strategy(),
        start in 0usize..4,
        choices in proptest::collection::vec(0usize..8, 1..=4),
        num in 0i64..5,
        den in 1i64..6,
    ) {
        if let Some(path) = walk_path(&g, start, &choices) {
            let z0 = CirclePoint::new(num, den);
            let got: Vec<Ratio<BigInt>> = fiber_image(&g, &path, &z0)
                .iter()
                .map(|c| c.theta().clone())
                .collect();
            let want = support::fiber_brute_force(
                &g,
                &path,
                &Ratio::new(BigInt::from(num), BigInt::from(den)),
            );
            prop_assert_eq!(got, want);
        }
    }

    /// Over any base point the fiber image is a full rotation orbit: it
    /// has exactly `p(μ)` elements, spaced `1/p(μ)` apart.
    #[test]
    fn fiber_is_rotation_orbit_of_size_p(
        g in graph_strategy(),
        start in 0usize..4,
        choices in proptest::collection::vec(0usize..8, 1..=4),
        num in 0i64..5,
        den in 1i64..6,
    ) {
        if let Some(path) = walk_path(&g, start, &choices) {
            let z0 = CirclePoint::new(num, den);
            let img = fiber_image(&g, &path, &z0);
            let p = p_value(&g, &path);
            prop_assert_eq!(BigInt::from(img.len()), p.clone());
            let step = Ratio::new(BigInt::one(), p);
            for w in img.windows(2) {
                prop_assert_eq!(w[1].theta() - w[0].theta(), step.clone());
            }
        }
    }

    /// Extending a path on the range side by an edge `e` divides the new
    /// period into `n(e) · p`: always `p((e, μ)) | n(e) · p(μ)`.
    #[test]
    fn p_divides_range_extension(
        g in graph_strategy(),
        start in 0usize..4,
        choices in proptest::collection::vec(0usize..8, 1..=4),
        pick in 0usize..8,
    ) {
        if let Some(path) = walk_path(&g, start, &choices) {
            let range = path.range(&g);
            let exts: Vec<usize> = g
                .arcs()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.dom == range)
                .map(|(i, _)| i)
                .collect();
            if !exts.is_empty() {
                let e = exts[pick % exts.len()];
                let mut arcs = vec![e];
                arcs.extend_from_slice(path.arc_indices());
                let extended = Path::new(&g, arcs).unwrap();
                let p_old = p_value(&g, &path);
                let p_new = p_value(&g, &extended);
                let bound = &g.arcs()[e].n * &p_old;
                prop_assert_eq!(&bound % &p_new, BigInt::from(0));
            }
        }
    }

    /// Serialization round-trips and is idempotent on the normal form.
    #[test]
    fn json_round_trip(g in graph_strategy()) {
        let text = g.to_json();
        let back = WeightedGraph::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), text);
    }
}
