//! Min-plus arithmetic and the tropical torsion formula `Z`.
//!
//! `a ⊕ b = min(a, b)`, `a ⊙ b = a + b`, `a ⊘ b = a - b`, with `∞` as the
//! additive identity and multiplicative zero. Evaluating `z_gamma(g)` at the
//! `p`-adic valuations of the weights gives the exponent of the `p`-torsion
//! of `H^1` for every odd prime `p`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::graph::{check_prime, components, is_bipartite, Subgraph, WeightedGraph};
use crate::{Error, Result};

pub const MAX_SUBGRAPHS_ENV: &str = "GCOH_MAX_SUBGRAPHS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TropicalValue {
    Finite(i64),
    Infinity,
}

impl TropicalValue {
    pub fn plus(self, other: Self) -> Self {
        use TropicalValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.min(b)),
            (Infinity, x) | (x, Infinity) => x,
        }
    }

    pub fn times(self, other: Self) -> Self {
        use TropicalValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }

    pub fn quotient(self, other: Self) -> Result<Self> {
        use TropicalValue::*;
        match (self, other) {
            (_, Infinity) => Err(Error::DivisionByInfinity),
            (Finite(a), Finite(b)) => Ok(Finite(a - b)),
            (Infinity, _) => Ok(Infinity),
        }
    }

    pub fn clamp_at_zero(self) -> Self {
        match self {
            TropicalValue::Finite(a) => TropicalValue::Finite(a.max(0)),
            TropicalValue::Infinity => TropicalValue::Infinity,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            TropicalValue::Finite(a) => Some(a),
            TropicalValue::Infinity => None,
        }
    }
}

impl From<i64> for TropicalValue {
    fn from(a: i64) -> Self {
        TropicalValue::Finite(a)
    }
}

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropicalValue::Finite(a) => write!(f, "{a}"),
            TropicalValue::Infinity => write!(f, "∞"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalExpr {
    Var(String),
    Const(TropicalValue),
    Plus(Vec<TropicalExpr>),
    Times(Vec<TropicalExpr>),
    Quotient(Box<TropicalExpr>, Box<TropicalExpr>),
    /// `max(x, 0)`
    ClampAtZero(Box<TropicalExpr>),
}

pub type Assignment = BTreeMap<String, TropicalValue>;

impl TropicalExpr {
    pub fn var(id: &str) -> Self {
        TropicalExpr::Var(id.to_string())
    }

    pub fn quotient(num: TropicalExpr, den: TropicalExpr) -> Self {
        TropicalExpr::Quotient(Box::new(num), Box::new(den))
    }

    pub fn clamp(x: TropicalExpr) -> Self {
        TropicalExpr::ClampAtZero(Box::new(x))
    }

    pub fn eval(&self, at: &Assignment) -> Result<TropicalValue> {
        use TropicalExpr::*;
        Ok(match self {
            Var(v) => *at.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Const(c) => *c,
            Plus(xs) => {
                let mut acc = TropicalValue::Infinity;
                for x in xs {
                    acc = acc.plus(x.eval(at)?);
                }
                acc
            }
            Times(xs) => {
                let mut acc = TropicalValue::Finite(0);
                for x in xs {
                    acc = acc.times(x.eval(at)?);
                }
                acc
            }
            Quotient(a, b) => a.eval(at)?.quotient(b.eval(at)?)?,
            ClampAtZero(x) => x.eval(at)?.clamp_at_zero(),
        })
    }

    /// Free variables, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        fn walk(e: &TropicalExpr, out: &mut Vec<String>) {
            use TropicalExpr::*;
            match e {
                Var(v) => out.push(v.clone()),
                Const(_) => {}
                Plus(xs) | Times(xs) => xs.iter().for_each(|x| walk(x, out)),
                Quotient(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                ClampAtZero(x) => walk(x, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

/// Tropical maximum of the given expressions, written as the quotient of the
/// product of all of them by the sum of the products leaving one out.
pub fn tropical_max(xs: Vec<TropicalExpr>) -> TropicalExpr {
    if xs.len() == 1 {
        return xs.into_iter().next().unwrap();
    }
    let den = (0..xs.len())
        .map(|i| TropicalExpr::Times(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()))
        .collect();
    TropicalExpr::quotient(TropicalExpr::Times(xs), TropicalExpr::Plus(den))
}

fn edge_monomial(g: &WeightedGraph, e: usize) -> TropicalExpr {
    let (a, b) = g.edge(e);
    TropicalExpr::Times(vec![TropicalExpr::var(g.id(a)), TropicalExpr::var(g.id(b))])
}

/// Edges of `g` touching `d` but not in it.
fn boundary(d: &Subgraph, g: &WeightedGraph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.edge(e);
            (d.contains_vertex(a) || d.contains_vertex(b)) && !d.contains_edge(e)
        })
        .collect()
}

fn min_vertex(d: &Subgraph, g: &WeightedGraph) -> TropicalExpr {
    TropicalExpr::Plus(d.vertices().iter().map(|&v| TropicalExpr::var(g.id(v))).collect())
}

/// `max(max_e k_e, min_v k_v)`: the last level below which `d` cannot be a
/// component with a vertex under the level.
fn floor_level(d: &Subgraph, g: &WeightedGraph) -> TropicalExpr {
    if d.edges().is_empty() {
        return min_vertex(d, g);
    }
    let mut terms: Vec<_> = d.edges().iter().map(|&e| edge_monomial(g, e)).collect();
    terms.push(min_vertex(d, g));
    tropical_max(terms)
}

/// Number of levels `r` at which `d` is a bipartite component of the
/// reduction that still has a vertex below `r`.
pub fn g_delta(d: &Subgraph, g: &WeightedGraph) -> Result<TropicalExpr> {
    if d.vertices().is_empty() || components(g, d).len() != 1 {
        return Err(Error::Precondition(format!("{} is not connected", d.label(g))));
    }
    if !is_bipartite(g, d) {
        return Err(Error::Precondition(format!("{} is not bipartite", d.label(g))));
    }
    let b = boundary(d, g);
    if b.is_empty() {
        return Err(Error::Precondition(format!("{} has no boundary edges", d.label(g))));
    }
    let f2 = TropicalExpr::Plus(b.iter().map(|&e| edge_monomial(g, e)).collect());
    Ok(TropicalExpr::clamp(TropicalExpr::quotient(f2, floor_level(d, g))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Largest connected component `z_gamma` will enumerate.
    pub max_vertices: usize,
    /// Largest number of candidate subgraphs.
    pub max_subgraphs: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap { max_vertices: 10, max_subgraphs: 200_000 }
    }
}

impl EnumerationCap {
    /// Defaults, with `max_subgraphs` taken from `GCOH_MAX_SUBGRAPHS` when set.
    pub fn from_env() -> Result<Self> {
        let mut cap = Self::default();
        if let Ok(raw) = std::env::var(MAX_SUBGRAPHS_ENV) {
            cap.max_subgraphs = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_SUBGRAPHS_ENV}=`{raw}` is not a count")))?;
        }
        Ok(cap)
    }
}

struct Search<'a> {
    g: &'a WeightedGraph,
    n: usize,
    local: Vec<usize>,
    // local vertex ids of each candidate edge
    ends: Vec<(usize, usize)>,
    slot: Vec<Vec<Option<usize>>>,
    state: Vec<Option<bool>>,
    found: Vec<Vec<usize>>,
    budget: usize,
    limit: usize,
}

impl Search<'_> {
    fn bipartite(&self) -> bool {
        let mut colour = vec![None::<bool>; self.n];
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for (i, &(a, b)) in self.ends.iter().enumerate() {
                    if self.state[i] != Some(true) || (a != v && b != v) {
                        continue;
                    }
                    let w = if a == v { b } else { a };
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn decided(&self, a: usize, b: usize) -> Option<bool> {
        self.slot[a][b].and_then(|i| self.state[i])
    }

    /// No edges `ab, cd` kept with `ac, bd` dropped: the vertex sums would
    /// have to satisfy `a+b+c+d < 2r <= a+b+c+d`.
    fn exchange_free(&self, i: usize) -> bool {
        let (u, w) = self.ends[i];
        let kept: Vec<(usize, usize)> =
            self.ends.iter().zip(&self.state).filter(|(_, s)| **s == Some(true)).map(|(e, _)| *e).collect();
        if self.state[i] == Some(true) {
            for &(c, d) in &kept {
                if c == u || c == w || d == u || d == w {
                    continue;
                }
                for (x, y) in [(c, d), (d, c)] {
                    if self.decided(u, x) == Some(false) && self.decided(w, y) == Some(false) {
                        return false;
                    }
                }
            }
        } else {
            for (a, c) in [(u, w), (w, u)] {
                for &(x, y) in &kept {
                    let b = if x == a { y } else if y == a { x } else { continue };
                    if b == c {
                        continue;
                    }
                    for &(x2, y2) in &kept {
                        let d = if x2 == c { y2 } else if y2 == c { x2 } else { continue };
                        if d == a || d == b {
                            continue;
                        }
                        if self.decided(b, d) == Some(false) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for (i, &(a, b)) in self.ends.iter().enumerate() {
                if self.state[i] != Some(true) || (a != v && b != v) {
                    continue;
                }
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn run(&mut self, edges: &[usize], i: usize) -> Result<()> {
        if i == self.ends.len() {
            if self.connected() {
                if self.found.len() == self.budget {
                    return Err(cap_error(format!("more than {} candidate subgraphs", self.limit)));
                }
                self.found.push((0..i).filter(|&j| self.state[j] == Some(true)).map(|j| edges[j]).collect());
            }
            return Ok(());
        }
        for keep in [true, false] {
            self.state[i] = Some(keep);
            if (!keep || self.bipartite()) && self.exchange_free(i) {
                self.run(edges, i + 1)?;
            }
        }
        self.state[i] = None;
        Ok(())
    }
}

fn cap_error(what: String) -> Error {
    Error::CapExceeded(format!(
        "{what}; raise the cap with {MAX_SUBGRAPHS_ENV} or --max-vertices, or use the complete-graph formula for K_n"
    ))
}

/// Connected bipartite subgraphs that can be a component of some reduction,
/// excluding the components of `g` themselves.
pub fn candidate_subgraphs(g: &WeightedGraph, cap: EnumerationCap) -> Result<Vec<Subgraph>> {
    let mut out = Vec::new();
    for comp in components(g, &g.full()) {
        let verts = comp.vertices().to_vec();
        if verts.len() > cap.max_vertices {
            return Err(cap_error(format!(
                "a component has {} vertices, the enumeration cap is {}",
                verts.len(),
                cap.max_vertices
            )));
        }
        for mask in 1u64..(1u64 << verts.len()) {
            let local: Vec<usize> = (0..verts.len()).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
            let induced = g.induced(&local);
            if components(g, &induced).len() != 1 {
                continue;
            }
            let edges = induced.edges().to_vec();
            let ends: Vec<(usize, usize)> = edges
                .iter()
                .map(|&e| {
                    let (a, b) = g.edge(e);
                    let (x, y) = (local.binary_search(&a).unwrap(), local.binary_search(&b).unwrap());
                    (x.min(y), x.max(y))
                })
                .collect();
            let mut slot = vec![vec![None; local.len()]; local.len()];
            for (i, &(a, b)) in ends.iter().enumerate() {
                slot[a][b] = Some(i);
                slot[b][a] = Some(i);
            }
            let mut search = Search {
                g,
                n: local.len(),
                local: local.clone(),
                ends,
                slot,
                state: vec![None; edges.len()],
                found: Vec::new(),
                budget: cap.max_subgraphs - out.len(),
                limit: cap.max_subgraphs,
            };
            search.run(&edges, 0)?;
            for es in search.found {
                let d = Subgraph::new(search.g, search.local.clone(), es)?;
                if d != comp {
                    out.push(d);
                }
            }
        }
    }
    Ok(out)
}

/// Tropical product of `g_delta` over all candidate subgraphs. A bipartite
/// component also divides out its stable chain, the levels strictly between
/// its smallest vertex valuation and the level where it first appears, which
/// carry free rather than torsion classes.
pub fn z_gamma(g: &WeightedGraph, cap: EnumerationCap) -> Result<TropicalExpr> {
    let candidates = candidate_subgraphs(g, cap)?;
    let mut factors = Vec::new();
    for comp in components(g, &g.full()) {
        let mut local = Vec::new();
        for d in candidates.iter().filter(|d| d.is_subgraph_of(&comp)) {
            local.push(g_delta(d, g)?);
        }
        let product = TropicalExpr::Times(local);
        if is_bipartite(g, &comp) {
            let chain = TropicalExpr::quotient(floor_level(&comp, g), min_vertex(&comp, g));
            factors.push(TropicalExpr::quotient(product, chain));
        } else {
            factors.push(product);
        }
    }
    Ok(if factors.len() == 1 { factors.pop().unwrap() } else { TropicalExpr::Times(factors) })
}

/// `σ_i`: tropical sum over `i`-subsets of their products; evaluates to the
/// sum of the `i` smallest values.
pub fn elementary_symmetric(i: usize, vars: &[String]) -> Result<TropicalExpr> {
    if i == 0 || i > vars.len() {
        return Err(Error::Precondition(format!("σ_{i} needs 1 <= i <= {}", vars.len())));
    }
    Ok(TropicalExpr::Plus(
        vars.iter()
            .combinations(i)
            .map(|xs| TropicalExpr::Times(xs.into_iter().map(|v| TropicalExpr::var(v)).collect()))
            .collect(),
    ))
}

/// `σ_1^(n-3) ⊙ σ_3` in the given variables.
pub fn z_complete(vars: &[String]) -> Result<TropicalExpr> {
    let n = vars.len();
    if n < 3 {
        return Err(Error::Precondition(format!("the complete-graph formula needs n >= 3, got {n}")));
    }
    let s1 = elementary_symmetric(1, vars)?;
    let mut factors = vec![s1; n - 3];
    factors.push(elementary_symmetric(3, vars)?);
    Ok(TropicalExpr::Times(factors))
}

/// `z_complete` in the vertex ids of `g`, which must be a complete graph.
pub fn z_complete_for(g: &WeightedGraph) -> Result<TropicalExpr> {
    let n = g.vertex_count();
    if g.edge_count() != n * n.saturating_sub(1) / 2 {
        return Err(Error::Precondition("graph is not complete".into()));
    }
    z_complete(g.ids())
}

/// Short form such as `σ₁² ⊙ σ₃`.
pub fn z_complete_symbolic(n: usize) -> Result<String> {
    if n < 3 {
        return Err(Error::Precondition(format!("the complete-graph formula needs n >= 3, got {n}")));
    }
    if n == 3 {
        return Ok("σ₃".into());
    }
    let sup: String = (n - 3)
        .to_string()
        .chars()
        .map(|c| ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'][c.to_digit(10).unwrap() as usize])
        .collect();
    Ok(format!("σ₁{sup} ⊙ σ₃"))
}

/// `v -> val_p(k_v)`; the formula is only claimed for odd primes.
pub fn valuation_assignment(g: &WeightedGraph, p: u64) -> Result<Assignment> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::NotApplicable("the tropical formula is stated for odd primes only".into()));
    }
    Ok(g.ids()
        .iter()
        .cloned()
        .zip(g.vertex_valuations(p).into_iter().map(|v| TropicalValue::Finite(v.into())))
        .collect())
}

/// Exponent of the `p`-torsion predicted by `z_gamma`.
pub fn tropical_torsion_exponent(g: &WeightedGraph, p: u64, cap: EnumerationCap) -> Result<i64> {
    let at = valuation_assignment(g, p)?;
    z_gamma(g, cap)?
        .eval(&at)?
        .finite()
        .ok_or_else(|| Error::Invariant("Z evaluated to ∞ at finite valuations".into()))
}

/// Reads `{"R": 3, "G": 0, "B": "∞"}`.
pub fn parse_assignment(text: &str) -> Result<Assignment> {
    let raw: BTreeMap<String, serde_json::Value> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_iter()
        .map(|(k, v)| {
            let val = match &v {
                serde_json::Value::Number(n) => n.as_i64().map(TropicalValue::Finite),
                serde_json::Value::String(s) if s == "∞" || s.eq_ignore_ascii_case("inf") => {
                    Some(TropicalValue::Infinity)
                }
                serde_json::Value::String(s) => s.parse().ok().map(TropicalValue::Finite),
                _ => None,
            };
            val.map(|x| (k.clone(), x)).ok_or_else(|| Error::Parse(format!("bad value {v} for `{k}`")))
        })
        .collect()
}

// ---- rendering and parsing

fn is_plain_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "max"
}

fn write_list(f: &mut fmt::Formatter<'_>, op: &str, xs: &[TropicalExpr]) -> fmt::Result {
    match xs {
        [] => write!(f, "({op})"),
        [x] => write!(f, "({op} {x})"),
        _ => {
            write!(f, "(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}

impl fmt::Display for TropicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TropicalExpr::*;
        match self {
            Var(v) if is_plain_ident(v) => write!(f, "{v}"),
            Var(v) => write!(f, "\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\"")),
            Const(c) => write!(f, "{c}"),
            Plus(xs) => write_list(f, "⊕", xs),
            Times(xs) => write_list(f, "⊙", xs),
            Quotient(a, b) => write!(f, "({a} ⊘ {b})"),
            ClampAtZero(x) => write!(f, "max({x}, 0)"),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of tropical expression", self.pos))
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{s}`")))
        }
    }

    fn op(&mut self) -> Option<char> {
        ['⊕', '⊙', '⊘'].into_iter().find(|op| self.eat(op.encode_utf8(&mut [0; 4])))
    }

    fn expr(&mut self) -> Result<TropicalExpr> {
        match self.peek() {
            None => Err(self.err("unexpected end")),
            Some('(') => {
                self.pos += 1;
                if let Some(op) = self.op() {
                    let xs = if self.eat(")") { vec![] } else { vec![self.expr()?] };
                    if !xs.is_empty() {
                        self.expect(")")?;
                    }
                    return match op {
                        '⊕' => Ok(TropicalExpr::Plus(xs)),
                        '⊙' => Ok(TropicalExpr::Times(xs)),
                        _ => Err(self.err("⊘ needs two operands")),
                    };
                }
                let first = self.expr()?;
                let op = self.op().ok_or_else(|| self.err("expected an operator"))?;
                let mut xs = vec![first, self.expr()?];
                while !self.eat(")") {
                    if self.op() != Some(op) {
                        return Err(self.err(&format!("expected `{op}` or `)`")));
                    }
                    xs.push(self.expr()?);
                }
                match op {
                    '⊕' => Ok(TropicalExpr::Plus(xs)),
                    '⊙' => Ok(TropicalExpr::Times(xs)),
                    _ if xs.len() == 2 => {
                        let b = xs.pop().unwrap();
                        Ok(TropicalExpr::quotient(xs.pop().unwrap(), b))
                    }
                    _ => Err(self.err("⊘ takes exactly two operands")),
                }
            }
            Some('∞') => {
                self.pos += '∞'.len_utf8();
                Ok(TropicalExpr::Const(TropicalValue::Infinity))
            }
            Some('"') => {
                self.pos += 1;
                let mut id = String::new();
                let mut chars = self.src[self.pos..].char_indices();
                loop {
                    match chars.next() {
                        None => return Err(self.err("unterminated string")),
                        Some((i, '"')) => {
                            self.pos += i + 1;
                            return Ok(TropicalExpr::Var(id));
                        }
                        Some((_, '\\')) => match chars.next() {
                            Some((_, c)) => id.push(c),
                            None => return Err(self.err("unterminated string")),
                        },
                        Some((_, c)) => id.push(c),
                    }
                }
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let start = self.pos;
                self.pos += 1;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n = self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))?;
                Ok(TropicalExpr::Const(TropicalValue::Finite(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let word = &self.src[start..self.pos];
                if word == "max" {
                    self.expect("(")?;
                    let x = self.expr()?;
                    self.expect(",")?;
                    self.expect("0")?;
                    self.expect(")")?;
                    return Ok(TropicalExpr::clamp(x));
                }
                Ok(TropicalExpr::Var(word.to_string()))
            }
            Some(c) => Err(self.err(&format!("unexpected `{c}`"))),
        }
    }
}

impl FromStr for TropicalExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}
