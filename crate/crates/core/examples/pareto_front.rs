//! Filter a handful of weight vectors down to their Pareto front and check
//! an α-cover between two sets.
//!
//! cargo run --example pareto_front

use mobalance::pareto::{is_alpha_approx_set, pareto_filter, Fraction, SolutionSet, WeightVector};

fn main() {
    let points = [
        ("a", [5, 1]),
        ("b", [3, 3]),
        ("c", [1, 5]),
        ("d", [2, 2]),
        ("e", [3, 3]),
        ("f", [0, 4]),
    ];
    let set = SolutionSet::from_entries(
        points
            .iter()
            .map(|(s, w)| (*s, WeightVector::new(w.to_vec()))),
    );
    let front = pareto_filter(set);
    println!("pareto front:");
    for (s, w) in front.iter() {
        println!("  {s} {w}");
    }

    // a coarser set that still covers the front at 1/2
    let coarse = SolutionSet::from_entries([("b", WeightVector::new(vec![3, 3]))]);
    for alpha in [Fraction::HALF, Fraction::new(3, 5).unwrap()] {
        let cert = is_alpha_approx_set(&coarse, &front, alpha);
        match cert.uncovered {
            None => println!("alpha {alpha}: every front point covered"),
            Some(i) => println!("alpha {alpha}: point {} not covered", front.entries()[i].1),
        }
    }
}
