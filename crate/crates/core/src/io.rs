//! Text formats for the three instance kinds.
//!
//! All formats are ASCII, whitespace separated and newline terminated.
//!
//! Balancing (`#` starts a comment line):
//!
//! ```text
//! balance <paired|integer|combinatorial> m=<m> n=<n>
//! <m lines of 2n integers: x_1 .. x_m>
//! <m lines of 2n integers: y_1 .. y_m>     paired, combinatorial
//! <1 line of 2n integers: z>               paired, integer
//! ```
//!
//! Weighted CNF, a DIMACS extension. The `c k <dim>` comment must precede
//! the problem line; every clause sits on one line as `w`, its `dim`
//! weights, then its literals and a terminating `0`:
//!
//! ```text
//! c k 2
//! p cnf 3 2
//! w 3 4 1 -2 0
//! w 1 0 -3 0
//! ```
//!
//! Multi-objective ATSP graph (`#` comments), 1-based vertices, one line
//! per ordered pair:
//!
//! ```text
//! moatsp k=<dim> n=<vertices>
//! u v w_1 .. w_k
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::balancing::{BalancingInstance, Variant};
use crate::maxatsp::{Edge, LabeledDigraph};
use crate::maxsat::{Clause, CnfInstance, Literal};
use crate::pareto::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Any parsed instance, tagged by format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Balance(Variant, BalancingInstance),
    Cnf(CnfInstance),
    Graph(LabeledDigraph),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Balance(..) => "balance",
            Instance::Cnf(_) => "cnf",
            Instance::Graph(_) => "graph",
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            Instance::Balance(v, b) => serialize_balance(*v, b),
            Instance::Cnf(c) => serialize_cnf(c),
            Instance::Graph(g) => serialize_graph(g),
        }
    }
}

/// Detects the format from the first significant line.
pub fn parse_any(text: &str) -> Result<Instance, ParseError> {
    let first = Lines::new(text, &["#"]).peek_first();
    match first.as_deref() {
        Some(l) if l.starts_with("balance") => {
            parse_balance(text).map(|(v, b)| Instance::Balance(v, b))
        }
        Some(l) if l.starts_with("moatsp") => parse_graph(text).map(Instance::Graph),
        _ => parse_cnf(text).map(Instance::Cnf),
    }
}

/// Hex SHA-256 of the canonical serialization.
pub fn digest(inst: &Instance) -> String {
    let hash = Sha256::digest(inst.serialize().as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Significant lines, each split into positioned tokens.
struct Lines<'a> {
    lines: Vec<(usize, Vec<Token<'a>>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, comment_prefixes: &[&str]) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || comment_prefixes.iter().any(|p| trimmed.starts_with(p)) {
                continue;
            }
            let mut toks = Vec::new();
            let mut col = 0;
            for piece in raw.split_inclusive(char::is_whitespace) {
                let t = piece.trim_end();
                if !t.is_empty() {
                    toks.push(Token {
                        text: t,
                        line: i + 1,
                        column: col + 1,
                    });
                }
                col += piece.len();
            }
            lines.push((i + 1, toks));
        }
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn peek_first(&self) -> Option<String> {
        self.lines
            .first()
            .map(|(_, t)| t.iter().map(|t| t.text).collect::<Vec<_>>().join(" "))
    }

    fn next(&mut self, what: &str) -> Result<(usize, &[Token<'a>]), ParseError> {
        match self.lines.get(self.pos) {
            Some((n, toks)) => {
                self.pos += 1;
                Ok((*n, toks))
            }
            None => Err(ParseError {
                line: self.last_line + 1,
                column: 1,
                message: format!("unexpected end of file, expected {what}"),
            }),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.lines.get(self.pos) {
            Some((n, toks)) => Err(ParseError {
                line: *n,
                column: toks.first().map_or(1, |t| t.column),
                message: "unexpected trailing content".into(),
            }),
            None => Ok(()),
        }
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn int<T: std::str::FromStr>(tok: &Token<'_>) -> Result<T, ParseError> {
    tok.text.parse().map_err(|_| {
        err(
            tok.line,
            tok.column,
            format!("expected an integer, found `{}`", tok.text),
        )
    })
}

fn keyed<T: std::str::FromStr>(
    tok: Option<&Token<'_>>,
    key: &str,
    line: usize,
) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| err(line, 1, format!("missing `{key}=`")))?;
    let value = tok
        .text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| {
            err(
                tok.line,
                tok.column,
                format!("expected `{key}=<value>`, found `{}`", tok.text),
            )
        })?;
    value
        .parse()
        .map_err(|_| err(tok.line, tok.column, format!("invalid value for `{key}`")))
}

fn vector_line(lines: &mut Lines<'_>, dim: usize, what: &str) -> Result<WeightVector, ParseError> {
    let (n, toks) = lines.next(what)?;
    if toks.len() != dim {
        return Err(err(
            n,
            1,
            format!("{what}: expected {dim} integers, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(int::<i64>)
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector::new)
}

fn vector_text(v: &WeightVector) -> String {
    v.components()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_balance(text: &str) -> Result<(Variant, BalancingInstance), ParseError> {
    let mut lines = Lines::new(text, &["#"]);
    let (hl, head) = lines.next("header `balance <variant> m=<m> n=<n>`")?;
    if head.first().map(|t| t.text) != Some("balance") {
        return Err(err(hl, 1, "expected `balance` header"));
    }
    let vt = head.get(1).ok_or_else(|| err(hl, 1, "missing variant"))?;
    let variant: Variant = vt.text.parse().map_err(|e: String| err(hl, vt.column, e))?;
    let m: usize = keyed(head.get(2), "m", hl)?;
    let n: usize = keyed(head.get(3), "n", hl)?;
    if head.len() > 4 {
        return Err(err(hl, head[4].column, "unexpected token in header"));
    }
    if m == 0 || n == 0 {
        return Err(err(hl, 1, "m and n must be positive"));
    }
    let dim = 2 * n;
    let x = (0..m)
        .map(|i| vector_line(&mut lines, dim, &format!("x_{}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let y = if variant != Variant::Integer {
        Some(
            (0..m)
                .map(|i| vector_line(&mut lines, dim, &format!("y_{}", i + 1)))
                .collect::<Result<Vec<_>, _>>()?,
        )
    } else {
        None
    };
    let z = if variant != Variant::Combinatorial {
        Some(vector_line(&mut lines, dim, "z")?)
    } else {
        None
    };
    lines.finish()?;
    Ok((variant, BalancingInstance { n, x, y, z }))
}

pub fn serialize_balance(variant: Variant, inst: &BalancingInstance) -> String {
    let mut s = format!("balance {variant} m={} n={}\n", inst.m(), inst.n);
    for v in &inst.x {
        s.push_str(&vector_text(v));
        s.push('\n');
    }
    if variant != Variant::Integer {
        for v in inst.y.iter().flatten() {
            s.push_str(&vector_text(v));
            s.push('\n');
        }
    }
    if variant != Variant::Combinatorial {
        if let Some(z) = &inst.z {
            s.push_str(&vector_text(z));
            s.push('\n');
        }
    }
    s
}

pub fn parse_cnf(text: &str) -> Result<CnfInstance, ParseError> {
    let mut dim: Option<usize> = None;
    // `c k <dim>` is the only meaningful comment; scan comments before the problem line
    for (i, raw) in text.lines().enumerate() {
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            ["c", "k", d] => {
                dim = Some(
                    d.parse()
                        .map_err(|_| err(i + 1, 5, "invalid objective count"))?,
                );
            }
            ["p", ..] => break,
            _ => {}
        }
    }
    let mut lines = Lines::new(text, &["c"]);
    let (pl, p) = lines.next("problem line `p cnf <vars> <clauses>`")?;
    let dim = dim.ok_or_else(|| err(pl, 1, "missing `c k <dim>` line before the problem line"))?;
    if dim == 0 {
        return Err(err(pl, 1, "objective count must be positive"));
    }
    if p.len() != 4 || p[0].text != "p" || p[1].text != "cnf" {
        return Err(err(pl, 1, "expected `p cnf <vars> <clauses>`"));
    }
    let vars: usize = int(&p[2])?;
    let count: usize = int(&p[3])?;
    let mut clauses = Vec::with_capacity(count);
    let mut weights = Vec::with_capacity(count);
    for ci in 0..count {
        let (ln, toks) = lines.next(&format!("clause {} of {count}", ci + 1))?;
        if toks.first().map(|t| t.text) != Some("w") {
            return Err(err(ln, 1, "clause lines start with `w`"));
        }
        if toks.len() < dim + 3 {
            return Err(err(
                ln,
                1,
                format!("clause needs {dim} weights, a literal and `0`"),
            ));
        }
        let w = toks[1..=dim]
            .iter()
            .map(int::<i64>)
            .collect::<Result<Vec<_>, _>>()?;
        let mut lits = Vec::new();
        let rest = &toks[dim + 1..];
        for (j, t) in rest.iter().enumerate() {
            let l: i64 = int(t)?;
            if l == 0 {
                if j + 1 != rest.len() {
                    return Err(err(
                        ln,
                        rest[j + 1].column,
                        "content after clause terminator",
                    ));
                }
                break;
            }
            if j + 1 == rest.len() {
                return Err(err(ln, t.column, "clause not terminated by `0`"));
            }
            if l.unsigned_abs() as usize > vars {
                return Err(err(
                    ln,
                    t.column,
                    format!("variable {} out of range 1..={vars}", l.abs()),
                ));
            }
            lits.push(Literal::from_dimacs(l).expect("nonzero"));
        }
        if lits.is_empty() {
            return Err(err(ln, 1, "empty clause"));
        }
        clauses.push(Clause::new(lits));
        weights.push(WeightVector::new(w));
    }
    lines.finish()?;
    CnfInstance::new(vars, dim, clauses, weights).map_err(|e| err(pl, 1, e.to_string()))
}

pub fn serialize_cnf(inst: &CnfInstance) -> String {
    let mut s = format!(
        "c k {}\np cnf {} {}\n",
        inst.dim(),
        inst.num_vars(),
        inst.clauses().len()
    );
    for (c, w) in inst.clauses().iter().zip(inst.weights()) {
        s.push_str("w ");
        s.push_str(&vector_text(w));
        for l in c.literals() {
            let _ = write!(s, " {l}");
        }
        s.push_str(" 0\n");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<LabeledDigraph, ParseError> {
    let mut lines = Lines::new(text, &["#"]);
    let (hl, head) = lines.next("header `moatsp k=<dim> n=<vertices>`")?;
    if head.first().map(|t| t.text) != Some("moatsp") {
        return Err(err(hl, 1, "expected `moatsp` header"));
    }
    let dim: usize = keyed(head.get(1), "k", hl)?;
    let n: usize = keyed(head.get(2), "n", hl)?;
    if head.len() > 3 {
        return Err(err(hl, head[3].column, "unexpected token in header"));
    }
    if n == 0 || dim == 0 {
        return Err(err(hl, 1, "k and n must be positive"));
    }
    let mut edges: BTreeMap<Edge, WeightVector> = BTreeMap::new();
    for i in 0..n * (n - 1) {
        let (ln, toks) = lines.next(&format!("edge line {} of {}", i + 1, n * (n - 1)))?;
        if toks.len() != dim + 2 {
            return Err(err(ln, 1, format!("expected `u v` and {dim} weights")));
        }
        let u: usize = int(&toks[0])?;
        let v: usize = int(&toks[1])?;
        for (t, x) in [(&toks[0], u), (&toks[1], v)] {
            if x == 0 || x > n {
                return Err(err(
                    ln,
                    t.column,
                    format!("vertex {x} out of range 1..={n}"),
                ));
            }
        }
        if u == v {
            return Err(err(ln, 1, "self-loops are not allowed"));
        }
        let w = toks[2..]
            .iter()
            .map(int::<i64>)
            .collect::<Result<Vec<_>, _>>()?;
        if edges.insert((u - 1, v - 1), WeightVector::new(w)).is_some() {
            return Err(err(ln, 1, format!("duplicate edge {u} {v}")));
        }
    }
    lines.finish()?;
    LabeledDigraph::from_edges(n, dim, &edges).map_err(|e| err(hl, 1, e.to_string()))
}

pub fn serialize_graph(g: &LabeledDigraph) -> String {
    let mut s = format!("moatsp k={} n={}\n", g.dim(), g.num_vertices());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {} {}", u + 1, v + 1, vector_text(g.weight(u, v)));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(c: &[i64]) -> WeightVector {
        WeightVector::new(c.to_vec())
    }

    #[test]
    fn golden_cnf() {
        let text = "c a tiny instance\nc k 2\np cnf 3 2\nw 3 4 1 -2 0\nw 1 0 -3 0\n";
        let parsed = parse_cnf(text).unwrap();
        let built = CnfInstance::new(
            3,
            2,
            vec![
                Clause::new([Literal::pos(0), Literal::neg(1)]),
                Clause::new([Literal::neg(2)]),
            ],
            vec![wv(&[3, 4]), wv(&[1, 0])],
        )
        .unwrap();
        assert_eq!(parsed, built);
        assert_eq!(
            serialize_cnf(&built),
            "c k 2\np cnf 3 2\nw 3 4 1 -2 0\nw 1 0 -3 0\n"
        );
    }

    #[test]
    fn truncated_cnf_names_line() {
        let e = parse_cnf("c k 1\np cnf 2 3\nw 1 1 0\nw 2 -2 0\n").unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("clause 3 of 3"));
    }

    #[test]
    fn cnf_errors() {
        assert!(parse_cnf("p cnf 1 1\nw 1 1 0\n")
            .unwrap_err()
            .message
            .contains("c k"));
        let e = parse_cnf("c k 1\np cnf 1 1\nw 1 2 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 5));
        let e = parse_cnf("c k 1\np cnf 1 1\nw 1 1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_cnf("c k 1\np cnf 1 1\nw x 1 0\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
    }

    #[test]
    fn balance_round_trip_and_errors() {
        let text = "balance paired m=2 n=1\n1 2\n0 1\n2 2\n1 0\n2 2\n";
        let (v, b) = parse_balance(text).unwrap();
        assert_eq!(v, Variant::Paired);
        assert_eq!(b.x, vec![wv(&[1, 2]), wv(&[0, 1])]);
        assert_eq!(serialize_balance(v, &b), text);

        let e = parse_balance("balance integer m=2 n=1\n1 -2\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_balance("balance integer m=1 n=1\n1 2 3\n1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_balance("balance sideways m=1 n=1\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        let e = parse_balance("balance integer m=1 n=1\n1 1\n1 1\n1 1\n").unwrap_err();
        assert!(e.message.contains("trailing"));
    }

    #[test]
    fn graph_round_trip_and_errors() {
        let g = LabeledDigraph::from_fn(3, 2, |u, v| wv(&[u as i64, v as i64])).unwrap();
        let text = serialize_graph(&g);
        assert!(text.starts_with("moatsp k=2 n=3\n1 2 0 1\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);

        let e = parse_graph("moatsp k=1 n=2\n1 2 5\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_graph("moatsp k=1 n=2\n1 2 5\n1 2 4\n").unwrap_err();
        assert!(e.message.contains("duplicate"));
        let e = parse_graph("moatsp k=1 n=2\n1 3 5\n2 1 4\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn detects_format() {
        assert_eq!(
            parse_any("moatsp k=1 n=2\n1 2 1\n2 1 1\n").unwrap().kind(),
            "graph"
        );
        assert_eq!(
            parse_any("c k 1\np cnf 1 1\nw 1 1 0\n").unwrap().kind(),
            "cnf"
        );
        assert_eq!(
            parse_any("# hi\nbalance integer m=1 n=1\n1 1\n1 1\n")
                .unwrap()
                .kind(),
            "balance"
        );
    }

    #[test]
    fn digest_is_stable() {
        let inst = parse_any("moatsp k=1 n=2\n2 1 1\n1 2 1\n").unwrap();
        let d = digest(&inst);
        assert_eq!(d.len(), 64);
        assert_eq!(d, digest(&parse_any(&inst.serialize()).unwrap()));
    }
}
