//! For a fixed tour, exhibit the small edge set F and the matching M' whose
//! weight is at least half the tour minus w(F).
//!
//! cargo run --example claim_witness

use mobalance::generate::{generate, GeneratorSpec};
use mobalance::io::Instance;
use mobalance::maxatsp::{claim_witness, HamiltonianCycle};

fn main() {
    let spec = GeneratorSpec::Graph {
        vertices: 8,
        objectives: 2,
        bound: 30,
        seed: 5,
    };
    let Ok(Instance::Graph(g)) = generate(&spec) else {
        unreachable!()
    };
    let t = HamiltonianCycle::from_order(vec![0, 3, 6, 1, 4, 7, 2, 5]).unwrap();
    let w = claim_witness(&g, &t).unwrap();
    println!("tour {t}  weight {}", t.weight(&g));
    println!(
        "F = {:?}  weight {}",
        w.f.edges(),
        g.edge_set_weight(&w.f.edges())
    );
    println!("S = {:?}", w.s);
    println!(
        "M' = {:?}  weight {}  (contracted graph has {} vertices)",
        w.matching,
        w.contraction.graph.edge_set_weight(&w.matching),
        w.contraction.graph.num_vertices()
    );
    println!("2w'(M') + 2w(F) >= w(T): {}", w.bound_holds(&g, &t));
}
