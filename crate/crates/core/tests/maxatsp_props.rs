mod common;

use std::collections::BTreeSet;

use common::{
    edges_weight, graph, is_tour, matchings_by_edge_order, quadratic_front, random_path_edges,
    shuffle, tour_weight, wv,
};
use mobalance::generate::SeededRng;
use mobalance::maxatsp::{
    claim_witness, contract, contract_in_order, expand, for_each_matching, matching_pareto,
    maxatsp_approx, maxatsp_half_wrapper, tsp_oracle, Edge, HamiltonianCycle, LabeledDigraph,
    PathSet,
};
use mobalance::pareto::{is_alpha_approx_set, Fraction, WeightVector};

fn random_cycle(rng: &mut SeededRng, n: usize) -> HamiltonianCycle {
    HamiltonianCycle::from_order(shuffle(rng, n)).unwrap()
}

#[test]
fn contraction_is_order_independent() {
    let mut rng = SeededRng::new(41);
    for seed in 0..100 {
        let n = rng.index(3, 9);
        let g = graph(n, 2, 30, seed);
        let k = rng.index(0, n - 2);
        let q = PathSet::from_edges(n, &random_path_edges(&mut rng, n, k)).unwrap();
        let base = contract(&g, &q).unwrap();
        let perm = shuffle(&mut rng, q.paths().len());
        let other = contract_in_order(&g, &q, &perm).unwrap();
        assert_eq!(base.graph, other.graph);
        assert_eq!(base.remap, other.remap);
    }
}

#[test]
fn expansion_adds_contracted_weight() {
    let mut rng = SeededRng::new(5);
    for seed in 0..150 {
        let n = rng.index(3, 9);
        let g = graph(n, rng.index(1, 3), 30, seed);
        let k = rng.index(0, n - 2);
        let edges = random_path_edges(&mut rng, n, k);
        let rec = contract(&g, &PathSet::from_edges(n, &edges).unwrap()).unwrap();
        let t = random_cycle(&mut rng, rec.graph.num_vertices());
        let full = expand(&rec, &t).unwrap();
        assert!(is_tour(full.order(), n));
        let lhs = tour_weight(&g, full.order());
        let rhs: Vec<i64> = tour_weight(&rec.graph, t.order())
            .iter()
            .zip(edges_weight(&g, &edges))
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(lhs, rhs);
        // every contracted edge appears in the expanded tour
        let tour: BTreeSet<Edge> = full.edges().into_iter().collect();
        assert!(edges.iter().all(|e| tour.contains(e)));
    }
}

#[test]
fn empty_contraction_and_expansion_are_identities() {
    let g = graph(5, 2, 10, 8);
    let rec = contract(&g, &PathSet::empty()).unwrap();
    assert_eq!(rec.graph, g);
    let t = HamiltonianCycle::from_order(vec![0, 3, 1, 4, 2]).unwrap();
    assert_eq!(expand(&rec, &t).unwrap(), t);
}

/// Pareto front of all matchings, by the include/exclude enumerator.
fn reference_matching_front(g: &LabeledDigraph) -> Vec<Vec<i64>> {
    let all = matchings_by_edge_order(g.num_vertices());
    let weights: Vec<Vec<i64>> = all.iter().map(|m| edges_weight(g, m)).collect();
    let front: BTreeSet<Vec<i64>> = quadratic_front(&weights)
        .into_iter()
        .map(|i| weights[i].clone())
        .collect();
    front.into_iter().collect()
}

#[test]
fn matching_backend_agrees_with_edge_order_enumerator() {
    for n in 1..=6 {
        let mut count = 0usize;
        for_each_matching(n, |_| count += 1);
        assert_eq!(count, matchings_by_edge_order(n).len());
    }
    for seed in 0..20 {
        let g = graph(6, 2, 10, seed);
        let got: Vec<Vec<i64>> = matching_pareto(&g, Fraction::ZERO)
            .unwrap()
            .weights()
            .map(|w| w.components().to_vec())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        assert_eq!(got, reference_matching_front(&g));
    }
}

#[test]
fn two_vertex_matchings() {
    let g = LabeledDigraph::from_fn(2, 2, |u, _| if u == 0 { wv(&[3, 1]) } else { wv(&[1, 3]) })
        .unwrap();
    let set = matching_pareto(&g, Fraction::ZERO).unwrap();
    let ws: BTreeSet<WeightVector> = set.weights().cloned().collect();
    assert_eq!(ws, [wv(&[3, 1]), wv(&[1, 3])].into_iter().collect());
}

#[test]
fn approx_outputs_are_tours_and_half_cover() {
    for (i, n) in [4, 4, 6, 6, 6, 8].into_iter().enumerate() {
        let g = graph(n, 2, 30, 300 + i as u64);
        let out = maxatsp_approx(&g, Fraction::ZERO).unwrap();
        for (t, w) in out.iter() {
            assert!(is_tour(t.order(), n));
            assert_eq!(w.components(), tour_weight(&g, t.order()).as_slice());
        }
        let exact = tsp_oracle(&g).unwrap();
        assert!(is_alpha_approx_set(&out, &exact, Fraction::HALF).is_success());
    }
}

#[test]
fn single_objective_padded() {
    for seed in 0..10 {
        let g = graph(4, 1, 30, seed);
        let out = maxatsp_approx(&g, Fraction::ZERO).unwrap();
        let exact = tsp_oracle(&g).unwrap();
        assert!(is_alpha_approx_set(&out, &exact, Fraction::HALF).is_success());
    }
}

#[test]
fn uniform_weights_are_exact() {
    let g = LabeledDigraph::from_fn(6, 2, |_, _| wv(&[4, 4])).unwrap();
    for out in [
        maxatsp_approx(&g, Fraction::ZERO).unwrap(),
        maxatsp_half_wrapper(&g).unwrap(),
    ] {
        assert!(out.weights().all(|w| w == &wv(&[24, 24])));
        assert!(is_alpha_approx_set(&out, &tsp_oracle(&g).unwrap(), Fraction::ONE).is_success());
    }
}

#[test]
fn wrapper_dominates_plain_approximation() {
    for seed in 0..6 {
        let n = if seed % 2 == 0 { 4 } else { 6 };
        let g = graph(n, 2, 30, 500 + seed);
        let plain = maxatsp_approx(&g, Fraction::ZERO).unwrap();
        let wrapped = maxatsp_half_wrapper(&g).unwrap();
        for w in plain.weights() {
            assert!(wrapped.weights().any(|v| v.ge(w)));
        }
        assert!(
            is_alpha_approx_set(&wrapped, &tsp_oracle(&g).unwrap(), Fraction::HALF).is_success()
        );
    }
}

#[test]
fn wrapper_handles_odd_vertex_counts() {
    for seed in 0..4 {
        let g = graph(5, 2, 30, seed);
        let out = maxatsp_half_wrapper(&g).unwrap();
        assert!(out.iter().all(|(t, _)| is_tour(t.order(), 5)));
    }
}

#[test]
fn oracle_sizes_and_relabeling() {
    let g2 = graph(2, 2, 9, 1);
    assert_eq!(tsp_oracle(&g2).unwrap().len(), 1);

    let g3 = LabeledDigraph::from_fn(3, 2, |u, v| {
        if (v + 3 - u) % 3 == 1 {
            wv(&[5, 1])
        } else {
            wv(&[1, 5])
        }
    })
    .unwrap();
    assert_eq!(tsp_oracle(&g3).unwrap().len(), 2);

    let mut rng = SeededRng::new(77);
    for seed in 0..10 {
        let g = graph(6, 2, 30, 700 + seed);
        let p = shuffle(&mut rng, 6);
        // h(p[u], p[v]) = g(u, v)
        let mut inv = [0; 6];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        let h = LabeledDigraph::from_fn(6, 2, |a, b| g.weight(inv[a], inv[b]).clone()).unwrap();
        let wg: Vec<WeightVector> = tsp_oracle(&g).unwrap().weights().cloned().collect();
        let mut wh: Vec<WeightVector> = tsp_oracle(&h).unwrap().weights().cloned().collect();
        let mut wg_sorted = wg.clone();
        wg_sorted.sort();
        wh.sort();
        assert_eq!(wg_sorted, wh);
    }
}

/// Brute-force version of the claim: some F ⊆ T with |F| ≤ d admits a
/// matching of the contracted graph with 2w'(M') + 2w(F) ≥ w(T).
fn claim_by_enumeration(g: &LabeledDigraph, t: &HamiltonianCycle) -> bool {
    let d = g.dim() + g.dim() % 2;
    let n = g.num_vertices();
    let tw = tour_weight(g, t.order());
    let edges = t.edges();
    let mut subsets: Vec<Vec<Edge>> = vec![vec![]];
    for e in &edges {
        let grown: Vec<Vec<Edge>> = subsets
            .iter()
            .filter(|s| s.len() < d && s.len() + 2 < n)
            .map(|s| {
                let mut s = s.clone();
                s.push(*e);
                s
            })
            .collect();
        subsets.extend(grown);
    }
    subsets.iter().any(|f| {
        let rec = contract(g, &PathSet::from_edges(n, f).unwrap()).unwrap();
        let fw = edges_weight(g, f);
        matchings_by_edge_order(rec.graph.num_vertices())
            .iter()
            .any(|m| {
                let mw = edges_weight(&rec.graph, m);
                (0..g.dim()).all(|c| 2 * mw[c] + 2 * fw[c] >= tw[c])
            })
    })
}

#[test]
fn claim_witness_is_valid_matching_with_bound() {
    let mut rng = SeededRng::new(13);
    for seed in 0..30 {
        let n = if seed % 2 == 0 { 6 } else { 8 };
        let g = graph(n, 2, 30, 900 + seed);
        let t = random_cycle(&mut rng, n);
        let w = claim_witness(&g, &t).unwrap();
        assert!(w.f.num_edges() <= 2);
        let tour: BTreeSet<Edge> = t.edges().into_iter().collect();
        assert!(w.f.edges().iter().all(|e| tour.contains(e)));
        let mut used = BTreeSet::new();
        for &(u, v) in &w.matching {
            assert!(
                used.insert(u) && used.insert(v),
                "contract_F(S) shares a vertex"
            );
        }
        assert!(w.bound_holds(&g, &t));
        if n == 6 {
            assert!(claim_by_enumeration(&g, &t));
        }
    }
}
