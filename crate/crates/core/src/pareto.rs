//! Objective vectors, dominance, Pareto filtering and α-cover certificates.
//!
//! Every problem in this crate is a maximisation problem with a vector of
//! integer objectives. A solution `s'` *α-approximates* `s` when
//! `w_i(s') >= α · w_i(s)` for every objective `i`; a set of candidates is an
//! α-approximate Pareto set when every reference point is α-approximated by
//! some candidate. All comparisons here are exact integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Sub};
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParetoError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid fraction `{0}`")]
    InvalidFraction(String),
}

/// Integer objective vector. Signed so the integer balancing variant can
/// use it too; the optimisation problems only ever store non-negative values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(components: Vec<i64>) -> Self {
        WeightVector(components)
    }

    pub fn zeros(dim: usize) -> Self {
        WeightVector(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_non_negative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Componentwise `self >= other`.
    pub fn ge(&self, other: &WeightVector) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &WeightVector) -> bool {
        other.ge(self)
    }

    pub fn checked_add(&self, other: &WeightVector) -> Option<WeightVector> {
        if self.dim() != other.dim() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(WeightVector)
    }

    pub fn checked_scale(&self, factor: i64) -> Option<WeightVector> {
        self.0
            .iter()
            .map(|a| a.checked_mul(factor))
            .collect::<Option<Vec<_>>>()
            .map(WeightVector)
    }

    pub fn add_assign(&mut self, other: &WeightVector) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += *b;
        }
    }

    /// Appends zero objectives until the dimension is `dim`.
    pub fn padded(&self, dim: usize) -> WeightVector {
        let mut c = self.0.clone();
        c.resize(dim.max(c.len()), 0);
        WeightVector(c)
    }

    pub fn truncated(&self, dim: usize) -> WeightVector {
        WeightVector(self.0[..dim.min(self.0.len())].to_vec())
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

impl Index<usize> for WeightVector {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `a` dominates `b`: `a >= b` componentwise and `a != b`.
pub fn dominates(a: &WeightVector, b: &WeightVector) -> Result<bool, ParetoError> {
    if a.dim() != b.dim() {
        return Err(ParetoError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a != b && a.ge(b))
}

/// Non-negative exact fraction `num/den`, used for α and ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };
    pub const HALF: Fraction = Fraction { num: 1, den: 2 };
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, ParetoError> {
        if den == 0 {
            return Err(ParetoError::InvalidFraction(format!("{num}/{den}")));
        }
        Ok(Fraction { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// True for values in `(0, 1]`, the admissible range for α.
    pub fn is_unit_interval(&self) -> bool {
        self.num > 0 && self.num <= self.den
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = ParetoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParetoError::InvalidFraction(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num = n.parse::<u64>().map_err(|_| bad())?;
        let den = d.parse::<u64>().map_err(|_| bad())?;
        Fraction::new(num, den).map_err(|_| bad())
    }
}

/// `candidate` α-approximates `reference`: `den · candidate_i >= num · reference_i`
/// for every objective.
pub fn alpha_covers(candidate: &WeightVector, reference: &WeightVector, alpha: Fraction) -> bool {
    candidate.dim() == reference.dim()
        && candidate
            .components()
            .iter()
            .zip(reference.components())
            .all(|(&c, &r)| {
                i128::from(alpha.den) * i128::from(c) >= i128::from(alpha.num) * i128::from(r)
            })
}

/// Smallest ratio `candidate_i / reference_i` over objectives with a
/// positive reference value, as an exact `(num, den)` pair. `None` when no
/// objective of the reference is positive (every candidate covers it).
pub fn cover_ratio(candidate: &WeightVector, reference: &WeightVector) -> Option<(i64, i64)> {
    let mut best: Option<(i64, i64)> = None;
    for (&c, &r) in candidate.components().iter().zip(reference.components()) {
        if r <= 0 {
            continue;
        }
        best = match best {
            Some((bn, bd)) if i128::from(bn) * i128::from(r) <= i128::from(c) * i128::from(bd) => {
                Some((bn, bd))
            }
            _ => Some((c, r)),
        };
    }
    best
}

fn cmp_ratio(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Greater,
        (Some(_), None) => Ordering::Less,
        (Some((an, ad)), Some((bn, bd))) => {
            (i128::from(an) * i128::from(bd)).cmp(&(i128::from(bn) * i128::from(ad)))
        }
    }
}

/// A list of `(solution, weight)` entries with unique solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet<S> {
    entries: Vec<(S, WeightVector)>,
}

impl<S> Default for SolutionSet<S> {
    fn default() -> Self {
        SolutionSet {
            entries: Vec::new(),
        }
    }
}

impl<S: Ord + Clone> SolutionSet<S> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set, keeping the first occurrence of each solution.
    pub fn from_entries(entries: impl IntoIterator<Item = (S, WeightVector)>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        let entries = entries
            .into_iter()
            .filter(|(s, _)| seen.insert(s.clone()))
            .collect();
        SolutionSet { entries }
    }

    /// Inserts unless the solution is already present. Returns whether it was added.
    pub fn insert(&mut self, solution: S, weight: WeightVector) -> bool {
        if self.entries.iter().any(|(s, _)| *s == solution) {
            return false;
        }
        self.entries.push((solution, weight));
        true
    }

    /// Sorts into canonical order: by weight vector, then by solution.
    pub fn canonicalize(&mut self) {
        self.entries
            .sort_by(|(sa, wa), (sb, wb)| wa.cmp(wb).then_with(|| sa.cmp(sb)));
    }

    pub fn contains_solution(&self, solution: &S) -> bool {
        self.entries.iter().any(|(s, _)| s == solution)
    }

    /// Applies `f` to every weight vector (e.g. to strip padding objectives).
    pub fn map_weights(self, f: impl Fn(&WeightVector) -> WeightVector) -> Self {
        SolutionSet {
            entries: self
                .entries
                .into_iter()
                .map(|(s, w)| {
                    let w = f(&w);
                    (s, w)
                })
                .collect(),
        }
    }
}

impl<S> SolutionSet<S> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(S, WeightVector)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(S, WeightVector)> {
        self.entries
    }

    pub fn weights(&self) -> impl Iterator<Item = &WeightVector> {
        self.entries.iter().map(|(_, w)| w)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(S, WeightVector)> {
        self.entries.iter()
    }
}

/// Keeps exactly the entries whose weight is not dominated by another
/// entry's weight, in canonical order. Entries with equal weights are all
/// retained.
pub fn pareto_filter<S: Ord + Clone>(set: SolutionSet<S>) -> SolutionSet<S> {
    let mut entries = set.entries;
    // A dominating vector is lexicographically larger, so after sorting in
    // descending order only earlier entries can dominate later ones.
    entries.sort_by(|(sa, wa), (sb, wb)| wb.cmp(wa).then_with(|| sa.cmp(sb)));
    let mut kept: Vec<(S, WeightVector)> = Vec::new();
    for (s, w) in entries {
        let dominated = kept
            .iter()
            .any(|(_, k)| k.dim() == w.dim() && k != &w && k.ge(&w));
        if !dominated {
            kept.push((s, w));
        }
    }
    let mut out = SolutionSet { entries: kept };
    out.canonicalize();
    out
}

/// One covered reference point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub reference: usize,
    pub candidate: usize,
    /// Exact min-over-objectives ratio; `None` when the reference is all zero.
    pub ratio: Option<(i64, i64)>,
}

/// Result of checking whether a candidate set α-approximates a reference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxCertificate {
    pub alpha: Fraction,
    pub covers: Vec<Cover>,
    /// Index of the first reference entry no candidate covers.
    pub uncovered: Option<usize>,
}

impl ApproxCertificate {
    pub fn is_success(&self) -> bool {
        self.uncovered.is_none()
    }
}

/// Maps every reference entry to the candidate with the best cover ratio
/// among those that α-cover it. Stops at the first uncovered entry.
pub fn is_alpha_approx_set<S, T>(
    candidates: &SolutionSet<S>,
    reference: &SolutionSet<T>,
    alpha: Fraction,
) -> ApproxCertificate {
    let mut covers = Vec::with_capacity(reference.len());
    for (ri, (_, rw)) in reference.entries().iter().enumerate() {
        let best = candidates
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, (_, cw))| alpha_covers(cw, rw, alpha))
            .map(|(ci, (_, cw))| (ci, cover_ratio(cw, rw)))
            .fold(None::<(usize, Option<(i64, i64)>)>, |acc, cur| match acc {
                Some(a) if cmp_ratio(a.1, cur.1) != Ordering::Less => Some(a),
                _ => Some(cur),
            });
        match best {
            Some((candidate, ratio)) => covers.push(Cover {
                reference: ri,
                candidate,
                ratio,
            }),
            None => {
                return ApproxCertificate {
                    alpha,
                    covers,
                    uncovered: Some(ri),
                }
            }
        }
    }
    ApproxCertificate {
        alpha,
        covers,
        uncovered: None,
    }
}
