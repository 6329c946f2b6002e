//! Discrete vector balancing.
//!
//! Given sequences `x_1..x_m` and `y_1..y_m` of vectors in dimension `2n`,
//! pick `n` index intervals `I` and take `x` inside and `y` outside. The
//! three searches below realise the discrete balancing results:
//!
//! * [`balance_paired`]: half-open intervals `{a_j, .., b_j - 1}` with
//!   `|Σ_{i∈I} x_i + Σ_{i∉I} y_i - ½Σ(x_i + y_i)| <= 2nz`, given `x_i, y_i <= z`.
//! * [`balance_integer`]: signed `x_i` with `-z <= x_i <= z`, and
//!   `|Σ_{i∈I} x_i - Σ_{i∉I} x_i| <= 4nz`.
//! * [`balance_combinatorial`]: at most `n` closed, strictly separated
//!   intervals with `Σ_j y_{b_j} + Σ_{i∈I} x_i + Σ_{i∉I} y_i >= ½Σ(x_i + y_i)`.
//!
//! Existence is guaranteed by a topological argument, so each search simply
//! scans all endpoint tuples in lexicographic order and returns the first
//! that satisfies its inequality. Running out of tuples is an internal
//! invariant violation, reported as [`BalanceError::SearchExhausted`].
//!
//! Indices in an [`IntervalFamily`] are 1-based.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pareto::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalanceError {
    #[error("instance needs m >= 1 and n >= 1 (got m={m}, n={n})")]
    EmptyInstance { m: usize, n: usize },
    #[error("vector {what} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        what: String,
        got: usize,
        expected: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the {0} variant needs the `{1}` sequence")]
    Missing(Variant, &'static str),
    #[error("arithmetic overflow while summing weights")]
    Overflow,
    #[error("malformed interval family: {0}")]
    MalformedFamily(String),
    #[error("internal invariant violated: no endpoint tuple satisfies the {0} bound")]
    SearchExhausted(Variant),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Paired,
    Integer,
    Combinatorial,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Paired => "paired",
            Variant::Integer => "integer",
            Variant::Combinatorial => "combinatorial",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paired" => Ok(Variant::Paired),
            "integer" => Ok(Variant::Integer),
            "combinatorial" => Ok(Variant::Combinatorial),
            other => Err(format!("unknown balancing variant `{other}`")),
        }
    }
}

/// Ordered list of 1-based `(a, b)` endpoint pairs over `{1..m}`.
///
/// For the paired and integer variants each pair denotes the half-open set
/// `{a, .., b-1}` (so `a == b` is empty) and there are exactly `n` pairs.
/// For the combinatorial variant each pair is the closed, nonempty interval
/// `{a, .., b}` and there are `n' <= min(n, m)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalFamily {
    pub m: usize,
    pub intervals: Vec<(usize, usize)>,
}

impl IntervalFamily {
    /// Membership mask over 0-based indices.
    pub fn members(&self, variant: Variant) -> Vec<bool> {
        let mut mask = vec![false; self.m];
        for &(a, b) in &self.intervals {
            let hi = match variant {
                Variant::Combinatorial => b,
                _ => b.saturating_sub(1),
            };
            for i in a..=hi {
                if (1..=self.m).contains(&i) {
                    mask[i - 1] = true;
                }
            }
        }
        mask
    }
}

impl fmt::Display for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|(a, b)| format!("{a}:{b}"))
            .collect();
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancingInstance {
    pub n: usize,
    pub x: Vec<WeightVector>,
    pub y: Option<Vec<WeightVector>>,
    pub z: Option<WeightVector>,
}

impl BalancingInstance {
    pub fn paired(n: usize, x: Vec<WeightVector>, y: Vec<WeightVector>, z: WeightVector) -> Self {
        BalancingInstance {
            n,
            x,
            y: Some(y),
            z: Some(z),
        }
    }

    pub fn integer(n: usize, x: Vec<WeightVector>, z: WeightVector) -> Self {
        BalancingInstance {
            n,
            x,
            y: None,
            z: Some(z),
        }
    }

    pub fn combinatorial(n: usize, x: Vec<WeightVector>, y: Vec<WeightVector>) -> Self {
        BalancingInstance {
            n,
            x,
            y: Some(y),
            z: None,
        }
    }

    pub fn m(&self) -> usize {
        self.x.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    fn y(&self, variant: Variant) -> Result<&[WeightVector], BalanceError> {
        self.y.as_deref().ok_or(BalanceError::Missing(variant, "y"))
    }

    fn z(&self, variant: Variant) -> Result<&WeightVector, BalanceError> {
        self.z.as_ref().ok_or(BalanceError::Missing(variant, "z"))
    }

    /// Checks shape and the variant's componentwise preconditions.
    pub fn validate(&self, variant: Variant) -> Result<(), BalanceError> {
        let (m, n) = (self.m(), self.n);
        if m == 0 || n == 0 {
            return Err(BalanceError::EmptyInstance { m, n });
        }
        let dim = self.dim();
        let check_dim = |what: String, v: &WeightVector| {
            if v.dim() != dim {
                Err(BalanceError::DimensionMismatch {
                    what,
                    got: v.dim(),
                    expected: dim,
                })
            } else {
                Ok(())
            }
        };
        for (i, v) in self.x.iter().enumerate() {
            check_dim(format!("x_{}", i + 1), v)?;
        }
        if variant != Variant::Integer {
            let y = self.y(variant)?;
            if y.len() != m {
                return Err(BalanceError::Precondition(format!(
                    "x has {m} entries but y has {}",
                    y.len()
                )));
            }
            for (i, v) in y.iter().enumerate() {
                check_dim(format!("y_{}", i + 1), v)?;
            }
        }
        if variant != Variant::Combinatorial {
            let z = self.z(variant)?;
            check_dim("z".into(), z)?;
            if !z.is_non_negative() {
                return Err(BalanceError::Precondition("z must be non-negative".into()));
            }
        }
        match variant {
            Variant::Paired => {
                let z = self.z(variant)?;
                for (name, seq) in [("x", &self.x[..]), ("y", self.y(variant)?)] {
                    for (i, v) in seq.iter().enumerate() {
                        if !v.is_non_negative() || !v.le(z) {
                            return Err(BalanceError::Precondition(format!(
                                "{name}_{} = {v} not within 0 <= . <= z = {z}",
                                i + 1
                            )));
                        }
                    }
                }
            }
            Variant::Integer => {
                let z = self.z(variant)?;
                for (i, v) in self.x.iter().enumerate() {
                    let ok = v
                        .components()
                        .iter()
                        .zip(z.components())
                        .all(|(&c, &b)| -b <= c && c <= b);
                    if !ok {
                        return Err(BalanceError::Precondition(format!(
                            "x_{} = {v} not within -z <= . <= z = {z}",
                            i + 1
                        )));
                    }
                }
            }
            Variant::Combinatorial => {
                for (name, seq) in [("x", &self.x[..]), ("y", self.y(variant)?)] {
                    for (i, v) in seq.iter().enumerate() {
                        if !v.is_non_negative() {
                            return Err(BalanceError::Precondition(format!(
                                "{name}_{} = {v} has a negative component",
                                i + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Output of a balancing search.
///
/// * paired: `in_sum = Σ_{i∈I} x_i`, `out_sum = Σ_{i∉I} y_i`
/// * integer: `in_sum = Σ_{i∈I} x_i`, `out_sum = Σ_{i∉I} x_i`
/// * combinatorial: as paired, plus `correction = Σ_j y_{b_j}`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceResult {
    pub variant: Variant,
    pub family: IntervalFamily,
    pub in_sum: WeightVector,
    pub out_sum: WeightVector,
    pub correction: WeightVector,
}

/// Lexicographic enumeration of endpoint tuples `t_1 <= t_2 <= .. <= t_L`
/// in `[lo, hi]`, where selected steps are strict (`t_i < t_{i+1}`).
#[derive(Debug, Clone)]
pub struct EndpointTuples {
    hi: usize,
    strict: Vec<bool>,
    current: Option<Vec<usize>>,
}

impl EndpointTuples {
    /// `strict[i]` constrains the step from position `i` to `i + 1`.
    pub fn new(len: usize, lo: usize, hi: usize, strict: Vec<bool>) -> Self {
        assert_eq!(strict.len(), len.saturating_sub(1));
        let mut first = Vec::with_capacity(len);
        let mut v = lo;
        for i in 0..len {
            if i > 0 && strict[i - 1] {
                v += 1;
            }
            first.push(v);
        }
        let current = if first.last().is_none_or(|&l| l <= hi) {
            Some(first)
        } else {
            None
        };
        EndpointTuples {
            hi,
            strict,
            current,
        }
    }

    /// Tuples `1 <= a_1 <= b_1 <= .. <= a_n <= b_n <= m`.
    pub fn paired(m: usize, n: usize) -> Self {
        Self::new(2 * n, 1, m, vec![false; (2 * n).saturating_sub(1)])
    }

    /// Tuples `1 <= a_1 <= b_1 < a_2 <= b_2 < .. <= b_k <= m`.
    pub fn separated(m: usize, k: usize) -> Self {
        let strict = (0..(2 * k).saturating_sub(1)).map(|i| i % 2 == 1).collect();
        Self::new(2 * k, 1, m, strict)
    }

    fn max_at(&self, i: usize) -> usize {
        let tail_strict = self.strict[i..].iter().filter(|&&s| s).count();
        self.hi - tail_strict
    }
}

impl Iterator for EndpointTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let len = out.len();
        let mut next = out.clone();
        let mut pos = None;
        for i in (0..len).rev() {
            if next[i] < self.max_at(i) {
                pos = Some(i);
                break;
            }
        }
        if let Some(i) = pos {
            next[i] += 1;
            for j in i + 1..len {
                next[j] = next[j - 1] + usize::from(self.strict[j - 1]);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

fn pairs(tuple: &[usize]) -> Vec<(usize, usize)> {
    tuple.chunks(2).map(|c| (c[0], c[1])).collect()
}

/// Prefix sums in `i128`: `prefix[i] = Σ_{j < i} v_j` over 0-based indices.
fn prefix_sums(seq: &[WeightVector], dim: usize) -> Vec<Vec<i128>> {
    let mut out = Vec::with_capacity(seq.len() + 1);
    let mut acc = vec![0i128; dim];
    out.push(acc.clone());
    for v in seq {
        for (a, &c) in acc.iter_mut().zip(v.components()) {
            *a += i128::from(c);
        }
        out.push(acc.clone());
    }
    out
}

fn to_weight(v: &[i128]) -> Result<WeightVector, BalanceError> {
    v.iter()
        .map(|&c| i64::try_from(c).map_err(|_| BalanceError::Overflow))
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector::new)
}

fn sum_over(mask: &[bool], seq: &[WeightVector], inside: bool, dim: usize) -> Vec<i128> {
    let mut acc = vec![0i128; dim];
    for (v, _) in seq.iter().zip(mask).filter(|(_, &b)| b == inside) {
        for (a, &c) in acc.iter_mut().zip(v.components()) {
            *a += i128::from(c);
        }
    }
    acc
}

/// Core of the paired search on already-validated data. Returns the first
/// tuple (lexicographically) whose doubled mixed sum is within `4nz` of
/// the grand total.
fn search_paired(
    x: &[WeightVector],
    y: &[WeightVector],
    z: &WeightVector,
    n: usize,
) -> Option<IntervalFamily> {
    let (m, dim) = (x.len(), z.dim());
    let px = prefix_sums(x, dim);
    let py = prefix_sums(y, dim);
    let total: Vec<i128> = (0..dim).map(|c| px[m][c] + py[m][c]).collect();
    let slack: Vec<i128> = z
        .components()
        .iter()
        .map(|&c| 4 * n as i128 * i128::from(c))
        .collect();
    for tuple in EndpointTuples::paired(m, n) {
        let ok = (0..dim).all(|c| {
            let (mut sx, mut sy) = (0i128, 0i128);
            for p in tuple.chunks(2) {
                // half-open {a..b-1}, 1-based
                sx += px[p[1] - 1][c] - px[p[0] - 1][c];
                sy += py[p[1] - 1][c] - py[p[0] - 1][c];
            }
            let mixed = sx + (py[m][c] - sy);
            (2 * mixed - total[c]).abs() <= slack[c]
        });
        if ok {
            return Some(IntervalFamily {
                m,
                intervals: pairs(&tuple),
            });
        }
    }
    None
}

/// Paired balancing: `n` half-open intervals such that
/// `Σ_{i∈I} x_i + Σ_{i∉I} y_i` is within `±2nz` of `½Σ(x_i + y_i)`.
pub fn balance_paired(inst: &BalancingInstance) -> Result<BalanceResult, BalanceError> {
    let variant = Variant::Paired;
    inst.validate(variant)?;
    let (y, z) = (inst.y(variant)?, inst.z(variant)?);
    let family =
        search_paired(&inst.x, y, z, inst.n).ok_or(BalanceError::SearchExhausted(variant))?;
    let mask = family.members(variant);
    let dim = inst.dim();
    Ok(BalanceResult {
        variant,
        in_sum: to_weight(&sum_over(&mask, &inst.x, true, dim))?,
        out_sum: to_weight(&sum_over(&mask, y, false, dim))?,
        correction: WeightVector::zeros(dim),
        family,
    })
}

/// Integer balancing of signed vectors `-z <= x_i <= z`: the signed
/// partition imbalance `Σ_{i∈I} x_i - Σ_{i∉I} x_i` is within `±4nz`.
///
/// Reduces to [`balance_paired`] via `x'_i = z + x_i`, `y'_i = z - x_i` and
/// bound `2z`.
pub fn balance_integer(inst: &BalancingInstance) -> Result<BalanceResult, BalanceError> {
    let variant = Variant::Integer;
    inst.validate(variant)?;
    let (xs, ys, z2) = integer_substitution(inst)?;
    let family =
        search_paired(&xs, &ys, &z2, inst.n).ok_or(BalanceError::SearchExhausted(variant))?;
    let mask = family.members(variant);
    let dim = inst.dim();
    Ok(BalanceResult {
        variant,
        in_sum: to_weight(&sum_over(&mask, &inst.x, true, dim))?,
        out_sum: to_weight(&sum_over(&mask, &inst.x, false, dim))?,
        correction: WeightVector::zeros(dim),
        family,
    })
}

/// The substitution `x' = z + x`, `y' = z - x`, `z' = 2z` (all non-negative).
pub fn integer_substitution(
    inst: &BalancingInstance,
) -> Result<(Vec<WeightVector>, Vec<WeightVector>, WeightVector), BalanceError> {
    let z = inst.z(Variant::Integer)?;
    let mut xs = Vec::with_capacity(inst.m());
    let mut ys = Vec::with_capacity(inst.m());
    for x in &inst.x {
        xs.push(z.checked_add(x).ok_or(BalanceError::Overflow)?);
        let negx = x.checked_scale(-1).ok_or(BalanceError::Overflow)?;
        ys.push(z.checked_add(&negx).ok_or(BalanceError::Overflow)?);
    }
    let z2 = z.checked_scale(2).ok_or(BalanceError::Overflow)?;
    Ok((xs, ys, z2))
}

/// One-sided balancing with boundary correction: `n' <= min(n, m)` closed
/// intervals `a_1 <= b_1 < a_2 <= .. <= b_{n'}` such that
/// `Σ_j y_{b_j} + Σ_{i∈I} x_i + Σ_{i∉I} y_i >= ½Σ(x_i + y_i)`.
///
/// Scans `n' = 0, 1, ..` and, for each, endpoint tuples lexicographically.
pub fn balance_combinatorial(inst: &BalancingInstance) -> Result<BalanceResult, BalanceError> {
    let variant = Variant::Combinatorial;
    inst.validate(variant)?;
    let y = inst.y(variant)?;
    let (m, dim) = (inst.m(), inst.dim());
    let px = prefix_sums(&inst.x, dim);
    let py = prefix_sums(y, dim);
    let total: Vec<i128> = (0..dim).map(|c| px[m][c] + py[m][c]).collect();
    for k in 0..=inst.n.min(m) {
        for tuple in EndpointTuples::separated(m, k) {
            let ok = (0..dim).all(|c| {
                let (mut sx, mut sy, mut corr) = (0i128, 0i128, 0i128);
                for p in tuple.chunks(2) {
                    // closed {a..b}, 1-based
                    sx += px[p[1]][c] - px[p[0] - 1][c];
                    sy += py[p[1]][c] - py[p[0] - 1][c];
                    corr += i128::from(y[p[1] - 1][c]);
                }
                let lhs = corr + sx + (py[m][c] - sy);
                2 * lhs >= total[c]
            });
            if ok {
                let family = IntervalFamily {
                    m,
                    intervals: pairs(&tuple),
                };
                let mask = family.members(variant);
                let mut corr = WeightVector::zeros(dim);
                for &(_, b) in &family.intervals {
                    corr = corr.checked_add(&y[b - 1]).ok_or(BalanceError::Overflow)?;
                }
                return Ok(BalanceResult {
                    variant,
                    in_sum: to_weight(&sum_over(&mask, &inst.x, true, dim))?,
                    out_sum: to_weight(&sum_over(&mask, y, false, dim))?,
                    correction: corr,
                    family,
                });
            }
        }
    }
    Err(BalanceError::SearchExhausted(variant))
}

/// Dispatches to the search for `variant`.
pub fn balance(inst: &BalancingInstance, variant: Variant) -> Result<BalanceResult, BalanceError> {
    match variant {
        Variant::Paired => balance_paired(inst),
        Variant::Integer => balance_integer(inst),
        Variant::Combinatorial => balance_combinatorial(inst),
    }
}

fn check_family(
    inst: &BalancingInstance,
    family: &IntervalFamily,
    variant: Variant,
) -> Result<(), BalanceError> {
    let m = inst.m();
    let bad = |msg: String| Err(BalanceError::MalformedFamily(msg));
    if family.m != m {
        return bad(format!(
            "family is over {} indices, instance has {m}",
            family.m
        ));
    }
    let ivs = &family.intervals;
    match variant {
        Variant::Paired | Variant::Integer => {
            if ivs.len() != inst.n {
                return bad(format!("expected {} intervals, got {}", inst.n, ivs.len()));
            }
            let mut prev = 1;
            for &(a, b) in ivs {
                if !(prev <= a && a <= b && b <= m) {
                    return bad(format!(
                        "endpoints {a}:{b} break 1 <= a_1 <= b_1 <= .. <= m"
                    ));
                }
                prev = b;
            }
        }
        Variant::Combinatorial => {
            if ivs.len() > inst.n.min(m) {
                return bad(format!("{} intervals exceed min(n, m)", ivs.len()));
            }
            let mut prev: Option<usize> = None;
            for &(a, b) in ivs {
                if a < 1 || a > b || b > m || prev.is_some_and(|p| p >= a) {
                    return bad(format!(
                        "interval {a}:{b} is not nonempty, in range and separated"
                    ));
                }
                prev = Some(b);
            }
        }
    }
    Ok(())
}

/// Recomputes every sum of `result` directly from the instance and checks
/// the variant's inequality. Independent of the search code paths.
pub fn verify_balance(
    inst: &BalancingInstance,
    result: &BalanceResult,
    variant: Variant,
) -> Result<bool, BalanceError> {
    inst.validate(variant)?;
    check_family(inst, &result.family, variant)?;
    let m = inst.m();
    let dim = inst.dim();
    let n = inst.n as i128;
    let mut inside = vec![false; m];
    for &(a, b) in &result.family.intervals {
        let last = if variant == Variant::Combinatorial {
            b
        } else {
            b - 1
        };
        for slot in inside.iter_mut().take(last).skip(a - 1) {
            *slot = true;
        }
    }
    let get = |v: &WeightVector, c: usize| i128::from(v.components()[c]);
    for c in 0..dim {
        let (mut in_x, mut out_x, mut out_y, mut total) = (0i128, 0i128, 0i128, 0i128);
        for i in 0..m {
            let x = get(&inst.x[i], c);
            let y = inst.y.as_ref().map_or(0, |ys| get(&ys[i], c));
            total += x + y;
            if inside[i] {
                in_x += x;
            } else {
                out_x += x;
                out_y += y;
            }
        }
        let ok = match variant {
            Variant::Paired => {
                let z = get(inst.z(variant)?, c);
                get(&result.in_sum, c) == in_x
                    && get(&result.out_sum, c) == out_y
                    && (2 * (in_x + out_y) - total).abs() <= 4 * n * z
            }
            Variant::Integer => {
                let z = get(inst.z(variant)?, c);
                get(&result.in_sum, c) == in_x
                    && get(&result.out_sum, c) == out_x
                    && (in_x - out_x).abs() <= 4 * n * z
            }
            Variant::Combinatorial => {
                let ys = inst.y(variant)?;
                let corr: i128 = result
                    .family
                    .intervals
                    .iter()
                    .map(|&(_, b)| get(&ys[b - 1], c))
                    .sum();
                get(&result.in_sum, c) == in_x
                    && get(&result.out_sum, c) == out_y
                    && get(&result.correction, c) == corr
                    && 2 * (corr + in_x + out_y) >= total
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Signed per-objective slack of a verified result, in the same doubled
/// units as the inequality: for paired `4nz - |2·mixed - total|`, for
/// integer `4nz - |imbalance|`, for combinatorial `2·lhs - total`.
pub fn slack(inst: &BalancingInstance, result: &BalanceResult) -> Vec<i128> {
    let dim = inst.dim();
    let n = inst.n as i128;
    let col = |seq: &[WeightVector], c: usize| seq.iter().map(|v| i128::from(v[c])).sum::<i128>();
    (0..dim)
        .map(|c| match result.variant {
            Variant::Paired => {
                let y = inst.y.as_deref().unwrap_or(&[]);
                let total = col(&inst.x, c) + col(y, c);
                let mixed = i128::from(result.in_sum[c]) + i128::from(result.out_sum[c]);
                4 * n * i128::from(inst.z.as_ref().map_or(0, |z| z[c])) - (2 * mixed - total).abs()
            }
            Variant::Integer => {
                let imb = i128::from(result.in_sum[c]) - i128::from(result.out_sum[c]);
                4 * n * i128::from(inst.z.as_ref().map_or(0, |z| z[c])) - imb.abs()
            }
            Variant::Combinatorial => {
                let y = inst.y.as_deref().unwrap_or(&[]);
                let total = col(&inst.x, c) + col(y, c);
                let lhs = i128::from(result.correction[c])
                    + i128::from(result.in_sum[c])
                    + i128::from(result.out_sum[c]);
                2 * lhs - total
            }
        })
        .collect()
}
