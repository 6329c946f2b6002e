//! Max-ATSP on a seeded six-vertex graph with two objectives: the matching
//! based approximation, the heavy-edge wrapper and the brute-force Pareto set.
//!
//! cargo run --release --example maxatsp

use mobalance::generate::{generate, GeneratorSpec};
use mobalance::io::Instance;
use mobalance::maxatsp::{maxatsp_approx, maxatsp_half_wrapper, tsp_oracle};
use mobalance::pareto::{is_alpha_approx_set, Fraction};

fn main() {
    let spec = GeneratorSpec::Graph {
        vertices: 6,
        objectives: 2,
        bound: 30,
        seed: 11,
    };
    let Ok(Instance::Graph(g)) = generate(&spec) else {
        unreachable!()
    };

    let exact = tsp_oracle(&g).unwrap();
    let approx = maxatsp_approx(&g, Fraction::ZERO).unwrap();
    let wrapped = maxatsp_half_wrapper(&g).unwrap();

    for (name, set) in [
        ("oracle", &exact),
        ("approx", &approx),
        ("wrapper", &wrapped),
    ] {
        println!("{name}: {} tours", set.len());
        for (t, w) in set.iter() {
            println!("  {t}  {w}");
        }
    }
    let cert = is_alpha_approx_set(&approx, &exact, Fraction::HALF);
    println!("approx covers the Pareto set at 1/2: {}", cert.is_success());
    for c in &cert.covers {
        let (n, d) = c.ratio.unwrap_or((1, 1));
        println!("  point {} ratio {n}/{d}", c.reference + 1);
    }
}
