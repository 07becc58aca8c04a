//! Unit forms presented by a bigraph: two vertex sides, solid edges between
//! the sides and dotted edges within a side.
//!
//! Edge multiplicities record the cross coefficient `c` of `x_b x_b'` in the
//! form (`q(e_b + e_b') = 2 + c`): `-c` solid edges when `c < 0`, `c` dotted
//! edges when `c > 0`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::UnitForm;
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigraphForm {
    pub labels: Vec<String>,
    pub sides: Vec<Side>,
    /// `(u, v, multiplicity)` with `u < v`, sides differ.
    pub solid: Vec<(usize, usize, u32)>,
    /// `(u, v, multiplicity)` with `u < v`, same side.
    pub dotted: Vec<(usize, usize, u32)>,
}

impl BigraphForm {
    pub fn new(labels: Vec<String>, sides: Vec<Side>) -> Self {
        assert_eq!(labels.len(), sides.len());
        BigraphForm {
            labels,
            sides,
            solid: Vec::new(),
            dotted: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn add_solid(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        if self.sides[u] == self.sides[v] {
            return Err(Error::Precondition(format!(
                "solid edge inside one side: {} -- {}",
                self.labels[u], self.labels[v]
            )));
        }
        if m > 0 {
            self.solid.push((u.min(v), u.max(v), m));
        }
        Ok(())
    }

    pub fn add_dotted(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        if u == v || self.sides[u] != self.sides[v] {
            return Err(Error::Precondition(format!(
                "dotted edge must join distinct vertices of one side: {} -- {}",
                self.labels[u], self.labels[v]
            )));
        }
        if m > 0 {
            self.dotted.push((u.min(v), u.max(v), m));
        }
        Ok(())
    }

    /// Upper triangular unit form with the cross coefficients read off the
    /// edges.
    pub fn to_form(&self) -> UnitForm {
        let n = self.n();
        let mut m = IntMatrix::identity(n);
        for &(u, v, k) in &self.solid {
            m[(u, v)] -= i64::from(k);
        }
        for &(u, v, k) in &self.dotted {
            m[(u, v)] += i64::from(k);
        }
        UnitForm::new(m).expect("unit diagonal by construction")
    }

    /// Inverse of [`to_form`](Self::to_form) for a given bipartition.
    pub fn from_form(f: &UnitForm, labels: Vec<String>, sides: Vec<Side>) -> Result<Self> {
        if labels.len() != f.n() {
            return Err(Error::DimensionMismatch {
                expected: f.n(),
                got: labels.len(),
            });
        }
        let mut b = BigraphForm::new(labels, sides);
        let n = f.n();
        for u in 0..n {
            for v in u + 1..n {
                let c = f.cross(u, v);
                if c < 0 {
                    b.add_solid(u, v, c.unsigned_abs() as u32)?;
                } else if c > 0 {
                    b.add_dotted(u, v, c as u32)?;
                }
            }
        }
        Ok(b)
    }

    /// Vertices met by at least one edge.
    pub fn non_isolated(&self) -> Vec<usize> {
        let mut used = vec![false; self.n()];
        for &(u, v, _) in self.solid.iter().chain(&self.dotted) {
            used[u] = true;
            used[v] = true;
        }
        (0..self.n()).filter(|&i| used[i]).collect()
    }

    pub fn solid_count(&self) -> u32 {
        self.solid.iter().map(|e| e.2).sum()
    }

    pub fn dotted_count(&self) -> u32 {
        self.dotted.iter().map(|e| e.2).sum()
    }

    /// DOT text; isolated vertices are left out, multiple edges are drawn
    /// individually, dotted edges use `style=dashed`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph {} {{", dot_id(name));
        for &i in &self.non_isolated() {
            let shape = match self.sides[i] {
                Side::A => "box",
                Side::B => "ellipse",
            };
            let _ = writeln!(
                s,
                "  {} [label={}, shape={shape}];",
                dot_id(&format!("v{i}")),
                dot_id(&self.labels[i])
            );
        }
        for &(u, v, k) in &self.solid {
            for _ in 0..k {
                let _ = writeln!(s, "  v{u} -- v{v};");
            }
        }
        for &(u, v, k) in &self.dotted {
            for _ in 0..k {
                let _ = writeln!(s, "  v{u} -- v{v} [style=dashed];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Quotes an identifier for DOT when needed.
pub fn dot_id(s: &str) -> String {
    if !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit())
    {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_graph_gives_identity() {
        let b = BigraphForm::new(vec!["a".into(), "b".into()], vec![Side::A, Side::B]);
        assert_eq!(b.to_form(), UnitForm::identity(2));
        assert!(b.non_isolated().is_empty());
    }

    #[test]
    fn edge_conventions() {
        let mut b = BigraphForm::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![Side::A, Side::B, Side::B],
        );
        b.add_solid(0, 1, 1).unwrap();
        b.add_dotted(1, 2, 1).unwrap();
        let f = b.to_form();
        assert_eq!(f.value(&[1, 1, 0]), 1);
        assert_eq!(f.value(&[0, 1, 1]), 3);
        assert!(b.add_solid(1, 2, 1).is_err());
        assert!(b.add_dotted(0, 1, 1).is_err());
    }

    fn arb_bigraph() -> impl Strategy<Value = BigraphForm> {
        (1usize..7)
            .prop_flat_map(|n| {
                (
                    proptest::collection::vec(any::<bool>(), n),
                    proptest::collection::vec(0u32..3, n * n),
                )
            })
            .prop_map(|(sides, mult)| {
                let n = sides.len();
                let sides: Vec<Side> = sides.into_iter().map(|b| if b { Side::A } else { Side::B }).collect();
                let labels = (0..n).map(|i| format!("v{i}")).collect();
                let mut b = BigraphForm::new(labels, sides.clone());
                for u in 0..n {
                    for v in u + 1..n {
                        let m = mult[u * n + v];
                        if sides[u] == sides[v] {
                            b.add_dotted(u, v, m).unwrap();
                        } else {
                            b.add_solid(u, v, m).unwrap();
                        }
                    }
                }
                b
            })
    }

    proptest! {
        #[test]
        fn round_trip(b in arb_bigraph()) {
            let f = b.to_form();
            let back = BigraphForm::from_form(&f, b.labels.clone(), b.sides.clone()).unwrap();
            prop_assert_eq!(&back, &b);
            prop_assert_eq!(back.to_form(), f);
        }
    }
}
