//! Run the three interval balancing searches on seeded instances and print
//! the interval family together with the per-objective slack.
//!
//! cargo run --example balancing

use mobalance::balancing::{balance, slack, verify_balance, Variant};
use mobalance::generate::{generate, GeneratorSpec};
use mobalance::io::Instance;

fn main() {
    for variant in [Variant::Paired, Variant::Integer, Variant::Combinatorial] {
        let spec = GeneratorSpec::Balance {
            variant,
            m: 12,
            n: 2,
            bound: 50,
            seed: 2024,
        };
        let Ok(Instance::Balance(_, inst)) = generate(&spec) else {
            unreachable!()
        };
        let res = balance(&inst, variant).expect("a family always exists");
        let ok = verify_balance(&inst, &res, variant).unwrap();
        println!(
            "{variant:>13}: intervals {}  in {}  out {}",
            res.family, res.in_sum, res.out_sum
        );
        println!("{:>13}  slack {:?}  verified {ok}", "", slack(&inst, &res));
    }
}
