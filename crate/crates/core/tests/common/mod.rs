//! Independent reference implementations used by the integration tests.
//! Nothing here calls the search code it is compared against.

#![allow(dead_code)]

use mobalance::balancing::{BalancingInstance, Variant};
use mobalance::generate::{generate, GeneratorSpec, SeededRng};
use mobalance::io::Instance;
use mobalance::maxatsp::{Edge, LabeledDigraph};
use mobalance::maxsat::{Assignment, CnfInstance};
use mobalance::pareto::WeightVector;

pub fn wv(c: &[i64]) -> WeightVector {
    WeightVector::new(c.to_vec())
}

pub fn balance_instance(
    variant: Variant,
    m: usize,
    n: usize,
    bound: i64,
    seed: u64,
) -> BalancingInstance {
    match generate(&GeneratorSpec::Balance {
        variant,
        m,
        n,
        bound,
        seed,
    }) {
        Ok(Instance::Balance(_, b)) => b,
        other => panic!("unexpected {other:?}"),
    }
}

pub fn cnf_instance(
    vars: usize,
    clauses: usize,
    objectives: usize,
    bound: i64,
    seed: u64,
) -> CnfInstance {
    match generate(&GeneratorSpec::Cnf {
        vars,
        clauses,
        objectives,
        bound,
        seed,
    }) {
        Ok(Instance::Cnf(c)) => c,
        other => panic!("unexpected {other:?}"),
    }
}

pub fn graph(vertices: usize, objectives: usize, bound: i64, seed: u64) -> LabeledDigraph {
    match generate(&GeneratorSpec::Graph {
        vertices,
        objectives,
        bound,
        seed,
    }) {
        Ok(Instance::Graph(g)) => g,
        other => panic!("unexpected {other:?}"),
    }
}

/// `a` strictly dominates `b`, written out longhand.
pub fn dominates_naive(a: &[i64], b: &[i64]) -> bool {
    let mut strictly = false;
    for i in 0..a.len() {
        if a[i] < b[i] {
            return false;
        }
        if a[i] > b[i] {
            strictly = true;
        }
    }
    strictly
}

/// All-pairs scan: indices of entries no other entry dominates.
pub fn quadratic_front(weights: &[Vec<i64>]) -> Vec<usize> {
    (0..weights.len())
        .filter(|&i| !(0..weights.len()).any(|j| dominates_naive(&weights[j], &weights[i])))
        .collect()
}

/// Every endpoint tuple of length `len` over `1..=m`, nondecreasing, with
/// strict steps where `strict(i)` holds, in lexicographic order. Written
/// recursively so it shares nothing with the library iterator.
pub fn tuples(len: usize, m: usize, strict: &dyn Fn(usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        prefix: &mut Vec<usize>,
        len: usize,
        m: usize,
        strict: &dyn Fn(usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let lo = match prefix.last() {
            None => 1,
            Some(&p) => p + usize::from(strict(prefix.len() - 1)),
        };
        for v in lo..=m {
            prefix.push(v);
            go(prefix, len, m, strict, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, m, strict, &mut out);
    out
}

fn col(v: &WeightVector, c: usize) -> i128 {
    i128::from(v.components()[c])
}

/// Membership of 0-based index `i` for a tuple of 1-based endpoints.
fn inside(tuple: &[usize], i: usize, closed: bool) -> bool {
    let i = i + 1;
    tuple.chunks(2).any(|p| {
        if closed {
            p[0] <= i && i <= p[1]
        } else {
            p[0] <= i && i < p[1]
        }
    })
}

/// Does the tuple satisfy the variant's inequality? Sums recomputed from
/// scratch for every tuple.
pub fn tuple_satisfies(inst: &BalancingInstance, variant: Variant, tuple: &[usize]) -> bool {
    let m = inst.x.len();
    let n = inst.n as i128;
    (0..2 * inst.n).all(|c| match variant {
        Variant::Paired => {
            let y = inst.y.as_ref().unwrap();
            let z = col(inst.z.as_ref().unwrap(), c);
            let mut total = 0;
            let mut mixed = 0;
            for (i, (x, y)) in inst.x.iter().zip(y).enumerate() {
                total += col(x, c) + col(y, c);
                mixed += if inside(tuple, i, false) {
                    col(x, c)
                } else {
                    col(y, c)
                };
            }
            (2 * mixed - total).abs() <= 4 * n * z
        }
        Variant::Integer => {
            let z = col(inst.z.as_ref().unwrap(), c);
            let mut imbalance = 0;
            for i in 0..m {
                let x = col(&inst.x[i], c);
                imbalance += if inside(tuple, i, false) { x } else { -x };
            }
            imbalance.abs() <= 4 * n * z
        }
        Variant::Combinatorial => {
            let y = inst.y.as_ref().unwrap();
            let mut total = 0;
            let mut lhs = 0;
            for (i, (x, y)) in inst.x.iter().zip(y).enumerate() {
                total += col(x, c) + col(y, c);
                lhs += if inside(tuple, i, true) {
                    col(x, c)
                } else {
                    col(y, c)
                };
            }
            for p in tuple.chunks(2) {
                lhs += col(&y[p[1] - 1], c);
            }
            2 * lhs >= total
        }
    })
}

/// First satisfying tuple in the search order of each variant.
pub fn first_satisfying(inst: &BalancingInstance, variant: Variant) -> Option<Vec<usize>> {
    let m = inst.x.len();
    match variant {
        Variant::Paired | Variant::Integer => tuples(2 * inst.n, m, &|_| false)
            .into_iter()
            .find(|t| tuple_satisfies(inst, variant, t)),
        Variant::Combinatorial => (0..=inst.n.min(m)).find_map(|k| {
            tuples(2 * k, m, &|i| i % 2 == 1)
                .into_iter()
                .find(|t| tuple_satisfies(inst, variant, t))
        }),
    }
}

/// Clause-by-clause weight of an assignment.
pub fn naive_weight(inst: &CnfInstance, values: &[bool]) -> Vec<i64> {
    let mut acc = vec![0i64; inst.dim()];
    for (clause, w) in inst.clauses().iter().zip(inst.weights()) {
        let sat = clause
            .literals()
            .iter()
            .any(|l| values[l.var] == l.positive);
        if sat {
            for (a, &c) in acc.iter_mut().zip(w.components()) {
                *a += c;
            }
        }
    }
    acc
}

/// Pareto front over all `2^m` assignments, from the naive evaluator and
/// the quadratic scan. Returned sorted.
pub fn naive_maxsat_front(inst: &CnfInstance) -> Vec<(Vec<i64>, Vec<bool>)> {
    let m = inst.num_vars();
    let all: Vec<Vec<bool>> = (0..1u64 << m)
        .map(|mask| (0..m).map(|v| mask >> v & 1 == 1).collect())
        .collect();
    let weights: Vec<Vec<i64>> = all.iter().map(|a| naive_weight(inst, a)).collect();
    let mut out: Vec<_> = quadratic_front(&weights)
        .into_iter()
        .map(|i| (weights[i].clone(), all[i].clone()))
        .collect();
    out.sort();
    out
}

pub fn assignment_values(a: &Assignment) -> Vec<bool> {
    a.values().to_vec()
}

/// Every directed matching of the complete digraph on `n` vertices, by
/// deciding edges one at a time in a fixed order (include or exclude).
pub fn matchings_by_edge_order(n: usize) -> Vec<Vec<Edge>> {
    let edges: Vec<Edge> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    fn go(
        i: usize,
        edges: &[Edge],
        used: &mut Vec<bool>,
        cur: &mut Vec<Edge>,
        out: &mut Vec<Vec<Edge>>,
    ) {
        if i == edges.len() {
            out.push(cur.clone());
            return;
        }
        go(i + 1, edges, used, cur, out);
        let (u, v) = edges[i];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.push((u, v));
            go(i + 1, edges, used, cur, out);
            cur.pop();
            used[u] = false;
            used[v] = false;
        }
    }
    let mut out = Vec::new();
    go(0, &edges, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn edges_weight(g: &LabeledDigraph, edges: &[Edge]) -> Vec<i64> {
    let mut acc = vec![0i64; g.dim()];
    for &(u, v) in edges {
        for (a, &c) in acc.iter_mut().zip(g.weight(u, v).components()) {
            *a += c;
        }
    }
    acc
}

/// Checks that `order` visits every vertex of an `n`-vertex graph once.
pub fn is_tour(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n
        && order
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Weight of a tour given as a vertex order, closing edge included.
pub fn tour_weight(g: &LabeledDigraph, order: &[usize]) -> Vec<i64> {
    let edges: Vec<Edge> = (0..order.len())
        .map(|i| (order[i], order[(i + 1) % order.len()]))
        .collect();
    edges_weight(g, &edges)
}

/// Random permutation of `0..n`.
pub fn shuffle(rng: &mut SeededRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.index(0, i);
        p.swap(i, j);
    }
    p
}

/// Random set of vertex-disjoint paths with `edges` edges in total, built
/// by cutting a random vertex order into pieces.
pub fn random_path_edges(rng: &mut SeededRng, n: usize, edges: usize) -> Vec<Edge> {
    assert!(edges < n);
    let order = shuffle(rng, n);
    // choose which of the n-1 consecutive pairs of `order` become edges
    let mut slots: Vec<usize> = (0..n - 1).collect();
    for i in 0..edges {
        let j = rng.index(i, n - 2);
        slots.swap(i, j);
    }
    slots[..edges]
        .iter()
        .map(|&s| (order[s], order[s + 1]))
        .collect()
}
