//! Finite acyclic quivers, the text format they are read from, and the
//! Euler and Coxeter matrices of their path algebras.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Q};

/// A finite quiver without loops or oriented cycles. Vertex `i` is the
/// `i`-th declared label; arrow `a` is `arrows[a] = (source, target)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    name: Option<String>,
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::UnknownVertex(format!("#{}", s.max(t))));
            }
            if s == t {
                return Err(Error::Loop(labels[s].clone()));
            }
        }
        let q = Quiver {
            name: None,
            labels,
            arrows,
        };
        if let Some(v) = q.vertex_on_cycle() {
            return Err(Error::Cycle(q.labels[v].clone()));
        }
        Ok(q)
    }

    /// Builds a quiver whose vertices are labelled `1..=n`; arrows are given
    /// as 0-based index pairs.
    pub fn numbered(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), arrows.to_vec())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].0 == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].1 == v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_from(v).next().is_none()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows_to(v).next().is_none()
    }

    /// `#arrows(i -> j)`
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    fn vertex_on_cycle(&self) -> Option<usize> {
        let order = self.kahn();
        if order.len() == self.n() {
            return None;
        }
        (0..self.n()).find(|v| !order.contains(v))
    }

    fn kahn(&self) -> Vec<usize> {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.pop() {
            order.push(v);
            let mut next = Vec::new();
            for a in self.arrows_from(v) {
                let t = self.arrows[a].1;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    next.push(t);
                }
            }
            next.sort_unstable_by(|a, b| b.cmp(a));
            ready.extend(next);
            ready.sort_unstable_by(|a, b| b.cmp(a));
        }
        order
    }

    /// Vertices with every arrow pointing from an earlier to a later one;
    /// ties are broken by vertex index.
    pub fn topological_order(&self) -> Vec<usize> {
        self.kahn()
    }

    /// An ordering in which every vertex is a sink once the earlier ones have
    /// been reflected (targets before sources).
    pub fn sink_admissible_order(&self) -> Vec<usize> {
        let mut o = self.kahn();
        o.reverse();
        o
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                let w = if s == v {
                    t
                } else if t == v {
                    s
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// The same vertices with every arrow reversed (arrow indices kept).
    pub fn opposite(&self) -> Quiver {
        Quiver {
            name: self.name.clone(),
            labels: self.labels.clone(),
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Reverses the arrows incident to `k`, keeping arrow indices.
    pub fn reflect_at(&self, k: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
            .collect();
        Quiver {
            name: self.name.clone(),
            labels: self.labels.clone(),
            arrows,
        }
    }

    /// `paths[i][j]` = number of paths from `i` to `j`, trivial path included.
    pub fn path_counts(&self) -> IntMatrix {
        let n = self.n();
        let mut m = IntMatrix::zeros(n, n);
        // Process sources last so that every path count from a successor is
        // already final.
        for &i in self.sink_admissible_order().iter() {
            m[(i, i)] = 1;
            for a in self.arrows_from(i) {
                let t = self.arrows[a].1;
                for j in 0..n {
                    m[(i, j)] += m[(t, j)];
                }
            }
        }
        m
    }

    /// Paths starting at `i`, as arrow sequences, grouped by end vertex.
    /// Within a group the order is deterministic (depth-first, arrow index).
    pub fn paths_from(&self, i: usize) -> Vec<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.n()];
        let mut stack = vec![(i, Vec::new())];
        while let Some((v, p)) = stack.pop() {
            let succ: Vec<usize> = self.arrows_from(v).collect();
            for &a in succ.iter().rev() {
                let mut q = p.clone();
                q.push(a);
                stack.push((self.arrows[a].1, q));
            }
            out[v].push(p);
        }
        for group in &mut out {
            group.sort();
        }
        out
    }

    pub fn euler_matrix(&self) -> EulerMatrix {
        let n = self.n();
        let mut e = IntMatrix::identity(n);
        for &(s, t) in &self.arrows {
            e[(s, t)] -= 1;
        }
        EulerMatrix(e)
    }

    /// Text in the format accepted by [`parse_quiver`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(n) = &self.name {
            s.push_str(&format!("quiver {n}\n"));
        }
        s.push_str("vertices: ");
        s.push_str(&self.labels.join(" "));
        s.push_str("\narrows:");
        for &(a, b) in &self.arrows {
            s.push_str(&format!(" {}->{}", self.labels[a], self.labels[b]));
        }
        s.push('\n');
        s
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `E` with `<x, y> = x^T E y`; `E[i][i] = 1`, `E[i][j] = -#arrows(i -> j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerMatrix(pub IntMatrix);

impl EulerMatrix {
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        bilinear(&self.0, x, y)
    }

    pub fn quadratic(&self, x: &[i64]) -> i64 {
        self.bilinear(x, x)
    }

    /// `(<x,y> + <y,x>) / 2`
    pub fn sym_pair(&self, x: &[i64], y: &[i64]) -> Q {
        Q::new(self.bilinear(x, y) + self.bilinear(y, x), 2)
    }

    /// `Phi = -E^{-1} E^T`, so that `<x,y> = -<y, Phi x>`.
    pub fn coxeter(&self) -> Result<CoxeterMatrix> {
        let e_inv = self
            .0
            .to_q()
            .inverse()
            .ok_or_else(|| Error::Internal("singular Euler matrix".into()))?;
        let et = self.0.transpose().to_q();
        let phi = (&e_inv * &et).scale(&Q::from_int(-1));
        let et_inv = et
            .inverse()
            .ok_or_else(|| Error::Internal("singular Euler matrix".into()))?;
        let phi_inv = (&et_inv * &self.0.to_q()).scale(&Q::from_int(-1));
        let to_int = |m: crate::matrix::QMatrix| {
            m.to_int()
                .ok_or_else(|| Error::Internal("non-integral Coxeter matrix".into()))
        };
        Ok(CoxeterMatrix {
            phi: to_int(phi)?,
            inv: to_int(phi_inv)?,
        })
    }
}

/// `x^T M y` for an integer matrix.
pub fn bilinear(m: &IntMatrix, x: &[i64], y: &[i64]) -> i64 {
    assert_eq!(x.len(), m.rows(), "dimension mismatch");
    assert_eq!(y.len(), m.cols(), "dimension mismatch");
    let mut s = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            s += xi * m[(i, j)] * yj;
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    pub phi: IntMatrix,
    pub inv: IntMatrix,
}

impl CoxeterMatrix {
    /// `Phi x`; on dimension vectors of non-projective indecomposables this
    /// is `dim tau M`.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.phi.mul_vec(x)
    }

    pub fn apply_inv(&self, x: &[i64]) -> Vec<i64> {
        self.inv.mul_vec(x)
    }

    /// `Phi^k x` for any integer `k`.
    pub fn power(&self, k: i64, x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        for _ in 0..k.unsigned_abs() {
            v = if k > 0 { self.apply(&v) } else { self.apply_inv(&v) };
        }
        v
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

#[derive(PartialEq)]
enum Section {
    None,
    Vertices,
    Arrows,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && !s.contains("->")
        && !s
            .chars()
            .any(|c| matches!(c, ',' | '(' | ')' | ':' | '[' | ']' | '"'))
}

/// Parses the line-oriented quiver format:
///
/// ```text
/// quiver T33          # optional name
/// vertices: 1 2 2' 3 3'
/// arrows: 2->1 2'->1 3->2 3'->2'
/// ```
///
/// `#` starts a comment. Section bodies may continue on following lines.
/// Arrow tokens may be chained (`3->2->1`) and may carry spaces around `->`.
pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut name = None;
    let mut vertices: Vec<Token> = Vec::new();
    let mut arrow_tokens: Vec<Token> = Vec::new();
    let mut section = Section::None;
    let mut saw_vertices = false;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut rest = content;
        let mut offset = 0;
        let trimmed = content.trim_start();
        let lead = content.len() - trimmed.len();
        if let Some(after) = trimmed.strip_prefix("quiver") {
            if after.is_empty() || after.starts_with(char::is_whitespace) {
                let n = after.trim();
                if n.is_empty() {
                    return Err(syntax(line_no, lead + 1, "`quiver` needs a name"));
                }
                name = Some(n.to_string());
                section = Section::None;
                continue;
            }
        }
        for (kw, sec) in [("vertices:", Section::Vertices), ("arrows:", Section::Arrows)] {
            if let Some(after) = trimmed.strip_prefix(kw) {
                if sec == Section::Vertices {
                    if saw_vertices {
                        return Err(syntax(line_no, lead + 1, "second `vertices:` section"));
                    }
                    saw_vertices = true;
                }
                section = sec;
                offset = lead + kw.len();
                rest = after;
                break;
            }
        }
        let tokens = split_tokens(rest, line_no, offset);
        if tokens.is_empty() {
            continue;
        }
        match section {
            Section::None => {
                let t = &tokens[0];
                return Err(syntax(
                    t.line,
                    t.column,
                    format!("expected `quiver`, `vertices:` or `arrows:`, found `{}`", t.text),
                ));
            }
            Section::Vertices => vertices.extend(tokens),
            Section::Arrows => arrow_tokens.extend(tokens),
        }
    }

    if !saw_vertices {
        return Err(syntax(1, 1, "missing `vertices:` section"));
    }
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for t in &vertices {
        if !valid_label(t.text) {
            return Err(syntax(t.line, t.column, format!("invalid vertex label `{}`", t.text)));
        }
        if index.insert(t.text.to_string(), labels.len()).is_some() {
            return Err(Error::DuplicateVertex(t.text.to_string()));
        }
        labels.push(t.text.to_string());
    }

    let arrows = parse_arrows(&arrow_tokens, &index)?;
    for &(s, t) in &arrows {
        if s == t {
            return Err(Error::Loop(labels[s].clone()));
        }
    }
    let q = Quiver::new(labels, arrows)?;
    Ok(match name {
        Some(n) => q.with_name(n),
        None => q,
    })
}

fn split_tokens(s: &str, line: usize, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push(Token {
                    text: &s[b..i],
                    line,
                    column: offset + b + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push(Token {
            text: &s[b..],
            line,
            column: offset + b + 1,
        });
    }
    out
}

fn parse_arrows(tokens: &[Token], index: &HashMap<String, usize>) -> Result<Vec<(usize, usize)>> {
    // Re-join tokens so that `a -> b` and `a-> b` read like `a->b`, while
    // remembering where each piece came from for error positions.
    let mut chains: Vec<Vec<(&str, usize, usize)>> = Vec::new();
    let mut pending_arrow = false;
    for t in tokens {
        let pieces: Vec<&str> = t.text.split("->").collect();
        let mut col = t.column;
        let starts_with_arrow = t.text.starts_with("->");
        let mut parts = Vec::new();
        for (k, p) in pieces.iter().enumerate() {
            parts.push((*p, t.line, col));
            col += p.len() + if k + 1 < pieces.len() { 2 } else { 0 };
        }
        if pending_arrow || starts_with_arrow {
            let Some(chain) = chains.last_mut() else {
                return Err(syntax(t.line, t.column, "arrow without a source"));
            };
            // Leading empty piece stands for the `->` already consumed.
            let skip = usize::from(starts_with_arrow);
            if chain.last().is_some_and(|p| p.0.is_empty()) {
                chain.pop();
            }
            chain.extend(parts.into_iter().skip(skip));
        } else {
            chains.push(parts);
        }
        pending_arrow = t.text.ends_with("->");
    }

    let mut arrows = Vec::new();
    for chain in &chains {
        if chain.len() < 2 {
            let (text, line, col) = chain[0];
            return Err(syntax(line, col, format!("expected `src->tgt`, found `{text}`")));
        }
        let mut ids = Vec::with_capacity(chain.len());
        for &(text, line, col) in chain {
            if text.is_empty() {
                return Err(syntax(line, col, "missing vertex in arrow"));
            }
            let Some(&v) = index.get(text) else {
                return Err(Error::UnknownVertex(text.to_string()));
            };
            ids.push(v);
        }
        for w in ids.windows(2) {
            arrows.push((w[0], w[1]));
        }
    }
    Ok(arrows)
}

/// Underlying undirected multigraph as sorted `(min, max)` pairs with
/// multiplicities.
pub fn underlying_edges(q: &Quiver) -> Vec<((usize, usize), usize)> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for &(s, t) in q.arrows() {
        *counts.entry((s.min(t), s.max(t))).or_default() += 1;
    }
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort();
    v
}

/// `x = 0` check that accepts rationals as well.
pub fn is_zero_q(x: &[Q]) -> bool {
    x.iter().all(Zero::is_zero)
}
