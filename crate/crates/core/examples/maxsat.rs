//! Approximate Pareto set of a bi-objective weighted CNF, compared with the
//! exhaustive Pareto set.
//!
//! cargo run --example maxsat

use mobalance::io::parse_cnf;
use mobalance::maxsat::{maxsat_approx, maxsat_oracle};
use mobalance::pareto::{is_alpha_approx_set, Fraction};

const INSTANCE: &str = "\
c k 2
p cnf 4 6
w 6 0 1 2 0
w 0 6 -1 -2 0
w 4 1 3 0
w 1 4 -3 0
w 3 3 -1 4 0
w 2 5 2 -4 0
";

fn main() {
    let inst = parse_cnf(INSTANCE).unwrap();
    let approx = maxsat_approx(&inst).unwrap();
    let exact = maxsat_oracle(&inst).unwrap();

    println!("approximate set ({} assignments):", approx.len());
    for (a, w) in approx.iter() {
        println!("  {a}  {w}");
    }
    println!("exact Pareto set ({} assignments):", exact.len());
    for (a, w) in exact.iter() {
        println!("  {a}  {w}");
    }

    let cert = is_alpha_approx_set(&approx, &exact, Fraction::HALF);
    for c in &cert.covers {
        let (r, o) = (
            &exact.entries()[c.reference].1,
            &approx.entries()[c.candidate].1,
        );
        println!("  {r} covered by {o}");
    }
    println!("1/2-approximate: {}", cert.is_success());
}
