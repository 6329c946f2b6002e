//! Multi-objective weighted MaxSAT.
//!
//! [`maxsat_approx`] returns a ½-approximate Pareto set of truth
//! assignments. For `d = 2k` objectives it enumerates every set `V⁰` of at
//! most `d²` variables fixed to 0, forces to 1 every variable whose negative
//! occurrences (among clauses not yet satisfied by `V⁰`) are heavy relative
//! to what `V⁰` already satisfies, and assigns the remaining variables by
//! every combination of `k` (possibly empty) index intervals. An odd number
//! of objectives is padded with one zero objective.
//!
//! [`maxsat_oracle`] enumerates all `2^m` assignments and returns the exact
//! Pareto set, for certification at small sizes.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::pareto::{pareto_filter, SolutionSet, WeightVector};

/// Default cap on the number of assignments emitted before deduplication.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;
/// Default variable cap for the brute-force oracle.
pub const DEFAULT_ORACLE_CAP: usize = 20;
/// Assignments are packed into a `u64` mask internally.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxSatError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(
        "instance too large: {required} assignments would be emitted, budget is {budget} \
         (raise the budget to override)"
    )]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("oracle supports at most {cap} variables, instance has {vars}")]
    OracleCapExceeded { vars: usize, cap: usize },
}

/// A variable (0-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// DIMACS encoding: `±(var + 1)`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(lit: i64) -> Option<Self> {
        if lit == 0 {
            return None;
        }
        Some(Literal {
            var: lit.unsigned_abs() as usize - 1,
            positive: lit > 0,
        })
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Nonempty set of literals, in first-occurrence order without repeats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let literals = literals.into_iter().unique().collect();
        Clause { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn contains(&self, lit: Literal) -> bool {
        self.literals.contains(&lit)
    }

    /// Contains both `v` and `v̄` for some variable; satisfied by every assignment.
    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| {
            self.contains(Literal {
                var: l.var,
                positive: !l.positive,
            })
        })
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals
            .iter()
            .any(|l| assignment.value(l.var) == l.positive)
    }
}

/// Truth assignment, one bit per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn from_mask(mask: u64, num_vars: usize) -> Self {
        Assignment((0..num_vars).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn value(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Weighted CNF formula with `dim` objectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    num_vars: usize,
    dim: usize,
    clauses: Vec<Clause>,
    weights: Vec<WeightVector>,
}

impl CnfInstance {
    pub fn new(
        num_vars: usize,
        dim: usize,
        clauses: Vec<Clause>,
        weights: Vec<WeightVector>,
    ) -> Result<Self, MaxSatError> {
        let bad = |m: String| Err(MaxSatError::InvalidInstance(m));
        if dim == 0 {
            return bad("need at least one objective".into());
        }
        if clauses.len() != weights.len() {
            return bad(format!(
                "{} clauses but {} weight vectors",
                clauses.len(),
                weights.len()
            ));
        }
        for (i, (c, w)) in clauses.iter().zip(&weights).enumerate() {
            if c.literals.is_empty() {
                return bad(format!("clause {} is empty", i + 1));
            }
            if let Some(l) = c.literals.iter().find(|l| l.var >= num_vars) {
                return bad(format!(
                    "clause {} uses variable {} but there are only {num_vars}",
                    i + 1,
                    l.var + 1
                ));
            }
            if w.dim() != dim {
                return bad(format!(
                    "clause {} has {} objectives, expected {dim}",
                    i + 1,
                    w.dim()
                ));
            }
            if !w.is_non_negative() {
                return bad(format!("clause {} has a negative weight", i + 1));
            }
        }
        Ok(CnfInstance {
            num_vars,
            dim,
            clauses,
            weights,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn weights(&self) -> &[WeightVector] {
        &self.weights
    }

    /// Indices of tautological clauses.
    pub fn tautologies(&self) -> Vec<usize> {
        (0..self.clauses.len())
            .filter(|&i| self.clauses[i].is_tautology())
            .collect()
    }

    /// Sum of the weights of the given clauses.
    pub fn weight_of(&self, clauses: &[usize]) -> WeightVector {
        let mut acc = WeightVector::zeros(self.dim);
        for &c in clauses {
            acc.add_assign(&self.weights[c]);
        }
        acc
    }

    fn padded(&self, dim: usize) -> CnfInstance {
        CnfInstance {
            num_vars: self.num_vars,
            dim,
            clauses: self.clauses.clone(),
            weights: self.weights.iter().map(|w| w.padded(dim)).collect(),
        }
    }
}

/// Sum of the weights of all clauses satisfied by `assignment`.
pub fn assignment_weight(inst: &CnfInstance, assignment: &Assignment) -> WeightVector {
    let mut acc = WeightVector::zeros(inst.dim);
    for (c, w) in inst.clauses.iter().zip(&inst.weights) {
        if c.is_satisfied_by(assignment) {
            acc.add_assign(w);
        }
    }
    acc
}

/// The clauses among `subset` that contain `literal`.
pub fn clause_bucket(inst: &CnfInstance, subset: &[usize], literal: Literal) -> Vec<usize> {
    subset
        .iter()
        .copied()
        .filter(|&c| inst.clauses[c].contains(literal))
        .collect()
}

/// Per-`V⁰` state of the approximation algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatState {
    /// Variables fixed to 0.
    pub v0: Vec<usize>,
    /// Variables forced to 1.
    pub v1: Vec<usize>,
    /// Free variables, in index order.
    pub vprime: Vec<usize>,
    /// Clauses with no negated `V⁰` literal.
    pub g: Vec<usize>,
    /// Clauses of `G` not yet satisfied by `V¹` that mention a free variable.
    pub g_prime: Vec<usize>,
}

/// Builds the state for one `V⁰`. `inst` must already have an even number
/// of objectives `d`; `v1` is `{v ∉ V⁰ : ∃j d·w_j(G[v̄]) > w_j(H∖G)}`.
pub fn sat_state(inst: &CnfInstance, v0: &[usize]) -> SatState {
    let d = inst.dim as i64;
    let all: Vec<usize> = (0..inst.clauses.len()).collect();
    let in_v0 = |v: usize| v0.contains(&v);
    let (g, rest): (Vec<usize>, Vec<usize>) = all.iter().partition(|&&c| {
        !inst.clauses[c]
            .literals
            .iter()
            .any(|l| !l.positive && in_v0(l.var))
    });
    let outside = inst.weight_of(&rest);
    let mut v1 = Vec::new();
    let mut vprime = Vec::new();
    for v in (0..inst.num_vars).filter(|&v| !in_v0(v)) {
        let neg = inst.weight_of(&clause_bucket(inst, &g, Literal::neg(v)));
        let heavy = (0..inst.dim).any(|j| d * neg[j] > outside[j]);
        if heavy {
            v1.push(v);
        } else {
            vprime.push(v);
        }
    }
    let g_prime = g
        .iter()
        .copied()
        .filter(|&c| {
            let lits = &inst.clauses[c].literals;
            !lits.iter().any(|l| l.positive && v1.contains(&l.var))
                && lits.iter().any(|l| vprime.contains(&l.var))
        })
        .collect();
    SatState {
        v0: v0.to_vec(),
        v1,
        vprime,
        g,
        g_prime,
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MaxSatConfig {
    pub budget: u128,
    pub oracle_cap: usize,
}

impl Default for MaxSatConfig {
    fn default() -> Self {
        MaxSatConfig {
            budget: DEFAULT_BUDGET,
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Upper bound on the assignments emitted by [`maxsat_approx`] before
/// deduplication: `Σ_{j <= d²} C(m, j) · m^d` with `d` the padded dimension.
pub fn emitted_upper_bound(num_vars: usize, dim: usize) -> u128 {
    let d = dim + dim % 2;
    let subsets: u128 = (0..=num_vars.min(d * d))
        .map(|j| binomial(num_vars, j))
        .fold(0u128, |a, b| a.saturating_add(b));
    let tuples = (num_vars.max(1) as u128).saturating_pow(d as u32);
    subsets.saturating_mul(tuples)
}

/// Clause satisfaction masks for fast evaluation of packed assignments.
struct PackedClauses {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl PackedClauses {
    fn new(inst: &CnfInstance) -> Self {
        let mut pos = Vec::with_capacity(inst.clauses.len());
        let mut neg = Vec::with_capacity(inst.clauses.len());
        for c in &inst.clauses {
            let (mut p, mut n) = (0u64, 0u64);
            for l in &c.literals {
                if l.positive {
                    p |= 1 << l.var;
                } else {
                    n |= 1 << l.var;
                }
            }
            pos.push(p);
            neg.push(n);
        }
        PackedClauses { pos, neg }
    }

    fn weight(&self, inst: &CnfInstance, mask: u64) -> WeightVector {
        let mut acc = WeightVector::zeros(inst.dim);
        for (i, w) in inst.weights.iter().enumerate() {
            if mask & self.pos[i] != 0 || !mask & self.neg[i] != 0 {
                acc.add_assign(w);
            }
        }
        acc
    }
}

/// Assignments emitted for one `V⁰`, as packed masks.
fn emit_for(inst: &CnfInstance, v0: &[usize], k: usize, out: &mut HashSet<u64>) {
    let state = sat_state(inst, v0);
    let base: u64 = state.v1.iter().fold(0, |m, &v| m | 1 << v);
    let free = &state.vprime;
    if free.is_empty() {
        out.insert(base);
        return;
    }
    let len = free.len();
    // range[p][q]: bits of free[p..=q]
    let mut range = vec![vec![0u64; len]; len];
    for (p, row) in range.iter_mut().enumerate() {
        let mut acc = 0u64;
        for q in p..len {
            acc |= 1 << free[q];
            row[q] = acc;
        }
    }
    // endpoint tuples (a_1, b_1, .., a_k, b_k) over positions in V';
    // a_j > b_j is an empty interval
    let mut tuple = vec![0usize; 2 * k];
    loop {
        let mut mask = base;
        for pair in tuple.chunks(2) {
            if pair[0] <= pair[1] {
                mask |= range[pair[0]][pair[1]];
            }
        }
        out.insert(mask);
        let mut i = 2 * k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < len {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Every assignment the approximation emits for one `V⁰` (0-based
/// variables), before Pareto filtering, sorted.
pub fn emitted_for(inst: &CnfInstance, v0: &[usize]) -> Result<Vec<Assignment>, MaxSatError> {
    let m = inst.num_vars;
    if m > MAX_VARS || v0.iter().any(|&v| v >= m) {
        return Err(MaxSatError::InvalidInstance(format!(
            "V0 {v0:?} outside 0..{m}"
        )));
    }
    let d = inst.dim + inst.dim % 2;
    let mut masks = HashSet::new();
    emit_for(&inst.padded(d), v0, d / 2, &mut masks);
    let mut masks: Vec<u64> = masks.into_iter().collect();
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|mask| Assignment::from_mask(mask, m))
        .collect())
}

/// ½-approximate Pareto set of assignments, with the default budget.
pub fn maxsat_approx(inst: &CnfInstance) -> Result<SolutionSet<Assignment>, MaxSatError> {
    maxsat_approx_with(inst, &MaxSatConfig::default())
}

pub fn maxsat_approx_with(
    inst: &CnfInstance,
    config: &MaxSatConfig,
) -> Result<SolutionSet<Assignment>, MaxSatError> {
    let m = inst.num_vars;
    let required = emitted_upper_bound(m, inst.dim);
    if m > MAX_VARS || required > config.budget {
        return Err(MaxSatError::BudgetExceeded {
            required,
            budget: config.budget,
        });
    }
    let d = inst.dim + inst.dim % 2;
    let work = inst.padded(d);
    let k = d / 2;
    let subsets: Vec<Vec<usize>> = (0..=m.min(d * d))
        .flat_map(|size| (0..m).combinations(size))
        .collect();
    let masks = subsets
        .par_iter()
        .fold(HashSet::new, |mut acc, v0| {
            emit_for(&work, v0, k, &mut acc);
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let packed = PackedClauses::new(&work);
    let set = SolutionSet::from_entries(
        masks
            .into_iter()
            .map(|mask| (Assignment::from_mask(mask, m), packed.weight(&work, mask))),
    );
    let dim = inst.dim;
    Ok(pareto_filter(set.map_weights(|w| w.truncated(dim))))
}

/// Exact Pareto set over all `2^m` assignments.
pub fn maxsat_oracle(inst: &CnfInstance) -> Result<SolutionSet<Assignment>, MaxSatError> {
    maxsat_oracle_with(inst, DEFAULT_ORACLE_CAP)
}

pub fn maxsat_oracle_with(
    inst: &CnfInstance,
    cap: usize,
) -> Result<SolutionSet<Assignment>, MaxSatError> {
    let m = inst.num_vars;
    if m > cap || m >= MAX_VARS {
        return Err(MaxSatError::OracleCapExceeded { vars: m, cap });
    }
    let packed = PackedClauses::new(inst);
    let set = SolutionSet::from_entries(
        (0..1u64 << m).map(|mask| (Assignment::from_mask(mask, m), packed.weight(inst, mask))),
    );
    Ok(pareto_filter(set))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::{is_alpha_approx_set, Fraction};

    fn wv(c: &[i64]) -> WeightVector {
        WeightVector::new(c.to_vec())
    }

    fn unit_clause() -> CnfInstance {
        CnfInstance::new(
            1,
            2,
            vec![Clause::new([Literal::pos(0)])],
            vec![wv(&[2, 2])],
        )
        .unwrap()
    }

    #[test]
    fn weight_examples() {
        let inst = unit_clause();
        assert_eq!(
            assignment_weight(&inst, &Assignment::new(vec![true])),
            wv(&[2, 2])
        );
        assert_eq!(
            assignment_weight(&inst, &Assignment::new(vec![false])),
            wv(&[0, 0])
        );
    }

    #[test]
    fn bucket_examples() {
        let inst = CnfInstance::new(
            1,
            1,
            vec![
                Clause::new([Literal::pos(0)]),
                Clause::new([Literal::neg(0)]),
            ],
            vec![wv(&[1]), wv(&[1])],
        )
        .unwrap();
        assert_eq!(clause_bucket(&inst, &[0, 1], Literal::pos(0)), vec![0]);
        let inst2 = unit_clause();
        assert!(clause_bucket(&inst2, &[0], Literal::neg(0)).is_empty());
    }

    #[test]
    fn single_clause_optimum() {
        let inst = unit_clause();
        let out = maxsat_approx(&inst).unwrap();
        assert!(out.contains_solution(&Assignment::new(vec![true])));
        let oracle = maxsat_oracle(&inst).unwrap();
        assert!(is_alpha_approx_set(&out, &oracle, Fraction::HALF).is_success());
    }

    #[test]
    fn opposite_unit_clauses() {
        let inst = CnfInstance::new(
            1,
            2,
            vec![
                Clause::new([Literal::pos(0)]),
                Clause::new([Literal::neg(0)]),
            ],
            vec![wv(&[1, 0]), wv(&[0, 1])],
        )
        .unwrap();
        let out = maxsat_approx(&inst).unwrap();
        assert_eq!(out.len(), 2);
        let oracle = maxsat_oracle(&inst).unwrap();
        assert_eq!(oracle.len(), 2);
        assert!(is_alpha_approx_set(&out, &oracle, Fraction::HALF).is_success());
    }

    #[test]
    fn oracle_examples() {
        let inst =
            CnfInstance::new(1, 1, vec![Clause::new([Literal::pos(0)])], vec![wv(&[1])]).unwrap();
        let o = maxsat_oracle(&inst).unwrap();
        assert_eq!(o.entries(), &[(Assignment::new(vec![true]), wv(&[1]))]);

        let zero = CnfInstance::new(
            2,
            2,
            vec![Clause::new([Literal::pos(0), Literal::neg(1)])],
            vec![wv(&[0, 0])],
        )
        .unwrap();
        let o = maxsat_oracle(&zero).unwrap();
        assert!(o.weights().all(|w| *w == wv(&[0, 0])));
    }

    #[test]
    fn odd_objectives_padded_and_stripped() {
        let inst = CnfInstance::new(
            2,
            3,
            vec![
                Clause::new([Literal::pos(0)]),
                Clause::new([Literal::neg(0), Literal::pos(1)]),
            ],
            vec![wv(&[1, 2, 3]), wv(&[3, 2, 1])],
        )
        .unwrap();
        let out = maxsat_approx(&inst).unwrap();
        assert!(out.weights().all(|w| w.dim() == 3));
        let oracle = maxsat_oracle(&inst).unwrap();
        assert!(is_alpha_approx_set(&out, &oracle, Fraction::HALF).is_success());
    }

    #[test]
    fn tautology_always_satisfied() {
        let c = Clause::new([Literal::pos(0), Literal::neg(0)]);
        assert!(c.is_tautology());
        let inst = CnfInstance::new(1, 1, vec![c], vec![wv(&[5])]).unwrap();
        assert_eq!(inst.tautologies(), vec![0]);
        for b in [false, true] {
            assert_eq!(
                assignment_weight(&inst, &Assignment::new(vec![b])),
                wv(&[5])
            );
        }
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(CnfInstance::new(1, 1, vec![Clause::new([])], vec![wv(&[1])]).is_err());
        assert!(
            CnfInstance::new(1, 1, vec![Clause::new([Literal::pos(1)])], vec![wv(&[1])]).is_err()
        );
        assert!(
            CnfInstance::new(1, 2, vec![Clause::new([Literal::pos(0)])], vec![wv(&[1])]).is_err()
        );
        assert!(
            CnfInstance::new(1, 1, vec![Clause::new([Literal::pos(0)])], vec![wv(&[-1])]).is_err()
        );
    }

    #[test]
    fn budget_guard() {
        let clauses: Vec<_> = (0..30).map(|v| Clause::new([Literal::pos(v)])).collect();
        let weights = vec![wv(&[1, 1, 1, 1]); 30];
        let inst = CnfInstance::new(30, 4, clauses, weights).unwrap();
        assert!(matches!(
            maxsat_approx(&inst),
            Err(MaxSatError::BudgetExceeded { .. })
        ));
        let cfg = MaxSatConfig {
            budget: 10,
            ..Default::default()
        };
        assert!(maxsat_approx_with(&unit_clause(), &cfg).is_ok());
    }

    #[test]
    fn oracle_cap() {
        let clauses: Vec<_> = (0..21).map(|v| Clause::new([Literal::pos(v)])).collect();
        let inst = CnfInstance::new(21, 1, clauses, vec![wv(&[1]); 21]).unwrap();
        assert_eq!(
            maxsat_oracle(&inst),
            Err(MaxSatError::OracleCapExceeded { vars: 21, cap: 20 })
        );
    }

    #[test]
    fn upper_bound_small() {
        // m = 10, d = 2: (1 + 10 + 45 + 120 + 210) * 10^2
        assert_eq!(emitted_upper_bound(10, 2), 38_600);
        assert_eq!(emitted_upper_bound(10, 1), 38_600);
    }
}
