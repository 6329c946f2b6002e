//! Write a small seeded corpus of every instance kind to a directory and
//! check that each file parses back to the same instance.
//!
//! cargo run --example corpus -- /tmp/corpus

use std::path::PathBuf;

use mobalance::balancing::Variant;
use mobalance::generate::{generate, GeneratorSpec};
use mobalance::io::{digest, parse_any};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("mobalance-corpus"));
    std::fs::create_dir_all(&dir)?;
    let mut specs = Vec::new();
    for seed in 0..3 {
        for variant in [Variant::Paired, Variant::Integer, Variant::Combinatorial] {
            specs.push((
                format!("{variant}-{seed}.bal"),
                GeneratorSpec::Balance {
                    variant,
                    m: 10,
                    n: 2,
                    bound: 50,
                    seed,
                },
            ));
        }
        specs.push((
            format!("cnf-{seed}.wcnf"),
            GeneratorSpec::Cnf {
                vars: 8,
                clauses: 12,
                objectives: 2,
                bound: 20,
                seed,
            },
        ));
        specs.push((
            format!("graph-{seed}.atsp"),
            GeneratorSpec::Graph {
                vertices: 6,
                objectives: 2,
                bound: 30,
                seed,
            },
        ));
    }
    for (name, spec) in specs {
        let inst = generate(&spec)?;
        let path = dir.join(&name);
        std::fs::write(&path, inst.serialize())?;
        let back = parse_any(&std::fs::read_to_string(&path)?)?;
        assert_eq!(back, inst);
        println!("{name:<22} {}", &digest(&inst)[..16]);
    }
    println!("wrote {}", dir.display());
    Ok(())
}
