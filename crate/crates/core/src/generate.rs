//! Seeded random instances.
//!
//! The generator is SplitMix64 seeded directly with the 64-bit seed (state
//! = seed). A uniform draw from `[lo, hi]` is `lo + (next_u64() mod (hi - lo
//! + 1))`. Draws happen in the order the fields are written by the
//! serializers, so a corpus is reproducible from `(spec, seed)` alone.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::balancing::{BalancingInstance, Variant};
use crate::io::Instance;
use crate::maxatsp::LabeledDigraph;
use crate::maxsat::{Clause, CnfInstance, Literal};
use crate::pareto::WeightVector;

pub const MAX_SEQUENCE: usize = 64;
pub const MAX_HALF_DIM: usize = 8;
pub const MAX_VARS: usize = 64;
pub const MAX_CLAUSES: usize = 10_000;
pub const MAX_VERTICES: usize = 64;
pub const MAX_OBJECTIVES: usize = 16;
pub const MAX_BOUND: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("{name} = {value} outside 1..={max}")]
    OutOfRange {
        name: &'static str,
        value: u64,
        max: u64,
    },
}

/// Deterministic uniform draws.
#[derive(Debug, Clone)]
pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[lo, hi]` (inclusive).
    pub fn uniform(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi as i128 - lo as i128 + 1) as u128;
        (lo as i128 + (u128::from(self.next_u64()) % span) as i128) as i64
    }

    pub fn index(&mut self, lo: usize, hi: usize) -> usize {
        self.uniform(lo as i64, hi as i64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    fn vector(&mut self, dim: usize, lo: i64, hi: i64) -> WeightVector {
        WeightVector::new((0..dim).map(|_| self.uniform(lo, hi)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// `x` (and `y`) uniform in `[0, bound]^{2n}`, or `[-bound, bound]` for
    /// the integer variant; `z` is the tightest componentwise bound.
    Balance {
        variant: Variant,
        m: usize,
        n: usize,
        bound: i64,
        seed: u64,
    },
    /// Clause lengths uniform in `1..=min(3, vars)` over distinct variables,
    /// random polarity.
    Cnf {
        vars: usize,
        clauses: usize,
        objectives: usize,
        bound: i64,
        seed: u64,
    },
    Graph {
        vertices: usize,
        objectives: usize,
        bound: i64,
        seed: u64,
    },
}

fn check(name: &'static str, value: usize, max: usize) -> Result<(), GenerateError> {
    if value == 0 || value > max {
        return Err(GenerateError::OutOfRange {
            name,
            value: value as u64,
            max: max as u64,
        });
    }
    Ok(())
}

fn check_bound(bound: i64) -> Result<(), GenerateError> {
    if !(0..=MAX_BOUND).contains(&bound) {
        return Err(GenerateError::OutOfRange {
            name: "bound",
            value: bound.unsigned_abs(),
            max: MAX_BOUND as u64,
        });
    }
    Ok(())
}

pub fn generate(spec: &GeneratorSpec) -> Result<Instance, GenerateError> {
    match *spec {
        GeneratorSpec::Balance {
            variant,
            m,
            n,
            bound,
            seed,
        } => {
            check("m", m, MAX_SEQUENCE)?;
            check("n", n, MAX_HALF_DIM)?;
            check_bound(bound)?;
            Ok(Instance::Balance(
                variant,
                balance_instance(variant, m, n, bound, seed),
            ))
        }
        GeneratorSpec::Cnf {
            vars,
            clauses,
            objectives,
            bound,
            seed,
        } => {
            check("vars", vars, MAX_VARS)?;
            check("clauses", clauses, MAX_CLAUSES)?;
            check("objectives", objectives, MAX_OBJECTIVES)?;
            check_bound(bound)?;
            Ok(Instance::Cnf(cnf_instance(
                vars, clauses, objectives, bound, seed,
            )))
        }
        GeneratorSpec::Graph {
            vertices,
            objectives,
            bound,
            seed,
        } => {
            check("vertices", vertices, MAX_VERTICES)?;
            check("objectives", objectives, MAX_OBJECTIVES)?;
            check_bound(bound)?;
            Ok(Instance::Graph(graph_instance(
                vertices, objectives, bound, seed,
            )))
        }
    }
}

fn balance_instance(
    variant: Variant,
    m: usize,
    n: usize,
    bound: i64,
    seed: u64,
) -> BalancingInstance {
    let mut rng = SeededRng::new(seed);
    let dim = 2 * n;
    let tight = |seqs: &[&Vec<WeightVector>]| {
        let mut z = WeightVector::zeros(dim);
        let mut comps = z.components().to_vec();
        for seq in seqs {
            for v in seq.iter() {
                for (c, &x) in comps.iter_mut().zip(v.components()) {
                    *c = (*c).max(x.abs());
                }
            }
        }
        z = WeightVector::new(comps);
        z
    };
    match variant {
        Variant::Paired => {
            let x: Vec<_> = (0..m).map(|_| rng.vector(dim, 0, bound)).collect();
            let y: Vec<_> = (0..m).map(|_| rng.vector(dim, 0, bound)).collect();
            let z = tight(&[&x, &y]);
            BalancingInstance::paired(n, x, y, z)
        }
        Variant::Integer => {
            let x: Vec<_> = (0..m).map(|_| rng.vector(dim, -bound, bound)).collect();
            let z = tight(&[&x]);
            BalancingInstance::integer(n, x, z)
        }
        Variant::Combinatorial => {
            let x = (0..m).map(|_| rng.vector(dim, 0, bound)).collect();
            let y = (0..m).map(|_| rng.vector(dim, 0, bound)).collect();
            BalancingInstance::combinatorial(n, x, y)
        }
    }
}

fn cnf_instance(vars: usize, count: usize, dim: usize, bound: i64, seed: u64) -> CnfInstance {
    let mut rng = SeededRng::new(seed);
    let mut clauses = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.index(1, vars.min(3));
        let mut pool: Vec<usize> = (0..vars).collect();
        let mut lits = Vec::with_capacity(len);
        for i in 0..len {
            let j = rng.index(i, vars - 1);
            pool.swap(i, j);
            let positive = rng.coin();
            lits.push(Literal {
                var: pool[i],
                positive,
            });
        }
        clauses.push(Clause::new(lits));
        weights.push(rng.vector(dim, 0, bound));
    }
    CnfInstance::new(vars, dim, clauses, weights).expect("generated instance is valid")
}

fn graph_instance(n: usize, dim: usize, bound: i64, seed: u64) -> LabeledDigraph {
    let mut rng = SeededRng::new(seed);
    LabeledDigraph::from_fn(n, dim, |_, _| rng.vector(dim, 0, bound))
        .expect("generated graph is valid")
}
