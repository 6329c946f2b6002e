//! Contract the path u -> v -> y in a four-vertex graph, take the only tour
//! of the contracted graph and expand it back.
//!
//! cargo run --example contraction

use std::collections::BTreeMap;

use mobalance::maxatsp::{contract, expand, HamiltonianCycle, LabeledDigraph, PathSet};
use mobalance::pareto::WeightVector;

fn main() {
    let names = ["u", "v", "x", "y"];
    let table = [
        ((0, 3), 1),
        ((3, 0), 5),
        ((3, 1), 1),
        ((1, 3), 3),
        ((1, 2), 1),
        ((2, 1), 1),
        ((2, 0), 1),
        ((0, 2), 1),
        ((0, 1), 2),
        ((1, 0), 1),
        ((3, 2), 7),
        ((2, 3), 1),
    ];
    let edges: BTreeMap<_, _> = table
        .iter()
        .map(|&(e, w)| (e, WeightVector::new(vec![w])))
        .collect();
    let g = LabeledDigraph::from_edges(4, 1, &edges).unwrap();

    let q = PathSet::from_edges(4, &[(0, 1), (1, 3)]).unwrap();
    let rec = contract(&g, &q).unwrap();
    let kept: Vec<_> = rec.remap.iter().map(|&v| names[v]).collect();
    println!("contracted vertices: {kept:?}");
    for (a, b) in rec.graph.edges() {
        println!("  ({}, {}) = {}", kept[a], kept[b], rec.graph.weight(a, b));
    }

    let t = HamiltonianCycle::from_order(vec![0, 1]).unwrap();
    let full = expand(&rec, &t).unwrap();
    let tour: Vec<_> = full.order().iter().map(|&v| names[v]).collect();
    println!("expanded tour: {}", tour.join(" -> "));
    println!(
        "w(tour) = {}  w'(T') = {}  w(Q) = {}",
        full.weight(&g),
        t.weight(&rec.graph),
        g.edge_set_weight(&q.edges())
    );
}
