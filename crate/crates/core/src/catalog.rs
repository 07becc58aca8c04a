//! Indexed lists of indecomposables with their Hom and Ext tables.
//!
//! For a Dynkin quiver the catalog is complete: one entry per positive root,
//! in knitting order. For other quivers it holds the preprojectives and
//! preinjectives up to a depth plus any supplied regular bricks.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::artheory::{is_dynkin, knit_preprojective, ARComponent};
use crate::error::{Error, Result};
use crate::linrep::{build_preinjective, build_root_rep, end_dim, hom_dim, trace, Representation};
use crate::matrix::QMatrix;
use crate::par::{self, Mode};
use crate::quiver::{CoxeterMatrix, EulerMatrix, Quiver};
use crate::vector::{fmt_vec, unit, DimVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// `τ^{-power} P(orbit)`
    Preprojective { orbit: usize, power: usize },
    /// `τ^{power} I(orbit)`
    Preinjective { orbit: usize, power: usize },
    Regular,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub label: String,
    pub rep: Representation,
    pub kind: Kind,
    /// Node in the knitted preprojective component.
    pub node: Option<usize>,
}

impl Entry {
    pub fn dim(&self) -> &DimVector {
        self.rep.dim()
    }
}

#[derive(Debug)]
pub struct Catalog {
    quiver: Arc<Quiver>,
    euler: EulerMatrix,
    phi: CoxeterMatrix,
    entries: Vec<Entry>,
    component: ARComponent,
    complete: bool,
    hom: Vec<usize>,
    traces: Vec<OnceLock<Vec<QMatrix>>>,
    by_dim: HashMap<DimVector, usize>,
}

impl Catalog {
    /// The complete catalog of a Dynkin quiver.
    pub fn dynkin(q: Arc<Quiver>, mode: Mode) -> Result<Self> {
        if is_dynkin(&q).is_none() {
            return Err(Error::NotDynkin);
        }
        let c = knit_preprojective(&q, 2 * q.n() + 2)?;
        if !c.complete {
            return Err(Error::Internal("Dynkin component did not close".into()));
        }
        let reps: Vec<Representation> = par::map(mode, &c.nodes, |n| {
            if n.is_projective() {
                Ok(Representation::projective(q.clone(), n.orbit))
            } else {
                build_root_rep(&q, &n.dim)
            }
        })
        .into_iter()
        .collect::<Result<_>>()?;
        let last_power = orbit_ends(&c);
        let entries = reps
            .into_iter()
            .enumerate()
            .map(|(id, rep)| {
                let n = &c.nodes[id];
                let (end, w) = last_power[n.orbit];
                let s = end - n.power;
                let (kind, label) = if n.power == 0 || n.power < s {
                    (
                        Kind::Preprojective {
                            orbit: n.orbit,
                            power: n.power,
                        },
                        tau_label(-(n.power as i64), 'P', q.label(n.orbit)),
                    )
                } else {
                    (Kind::Preinjective { orbit: w, power: s }, tau_label(s as i64, 'I', q.label(w)))
                };
                Entry {
                    label,
                    rep,
                    kind,
                    node: Some(id),
                }
            })
            .collect();
        Self::assemble(q, c, true, entries, mode)
    }

    /// Preprojectives `τ^{-r}P(v)` and preinjectives `τ^r I(v)` for
    /// `r <= depth`, followed by the given regular modules.
    pub fn truncated(q: Arc<Quiver>, depth: usize, regular: Vec<Representation>, mode: Mode) -> Result<Self> {
        let c = knit_preprojective(&q, depth)?;
        if c.complete {
            return Self::dynkin(q, mode);
        }
        let op = q.opposite();
        let ci = knit_preprojective(&op, depth)?;
        let mut entries = Vec::new();
        for (id, n) in c.nodes.iter().enumerate() {
            let rep = if n.is_projective() {
                Representation::projective(q.clone(), n.orbit)
            } else {
                build_root_rep(&q, &n.dim)?
            };
            entries.push(Entry {
                label: tau_label(-(n.power as i64), 'P', q.label(n.orbit)),
                rep,
                kind: Kind::Preprojective {
                    orbit: n.orbit,
                    power: n.power,
                },
                node: Some(id),
            });
        }
        for n in &ci.nodes {
            let rep = if n.is_projective() {
                Representation::injective(q.clone(), n.orbit)
            } else {
                build_preinjective(&q, &n.dim)?
            };
            entries.push(Entry {
                label: tau_label(n.power as i64, 'I', q.label(n.orbit)),
                rep,
                kind: Kind::Preinjective {
                    orbit: n.orbit,
                    power: n.power,
                },
                node: None,
            });
        }
        for (k, rep) in regular.into_iter().enumerate() {
            if end_dim(&rep) != 1 {
                return Err(Error::NonBrick(rep.dim().clone()));
            }
            entries.push(Entry {
                label: format!("R{}{}", k + 1, fmt_vec(rep.dim())),
                rep: rep.rebase(q.clone()),
                kind: Kind::Regular,
                node: None,
            });
        }
        Self::assemble(q, c, false, entries, mode)
    }

    fn assemble(q: Arc<Quiver>, component: ARComponent, complete: bool, entries: Vec<Entry>, mode: Mode) -> Result<Self> {
        let euler = q.euler_matrix();
        let phi = euler.coxeter()?;
        let n = entries.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let hom = par::map(mode, &pairs, |&(i, j)| hom_dim(&entries[i].rep, &entries[j].rep));
        let mut by_dim = HashMap::new();
        for (i, e) in entries.iter().enumerate() {
            by_dim.entry(e.dim().clone()).or_insert(i);
        }
        Ok(Catalog {
            quiver: q,
            euler,
            phi,
            traces: (0..n * n).map(|_| OnceLock::new()).collect(),
            entries,
            component,
            complete,
            hom,
            by_dim,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn euler(&self) -> &EulerMatrix {
        &self.euler
    }

    pub fn coxeter(&self) -> &CoxeterMatrix {
        &self.phi
    }

    pub fn component(&self) -> &ARComponent {
        &self.component
    }

    /// Whether every indecomposable is listed.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Entry {
        &self.entries[i]
    }

    pub fn reps(&self) -> Vec<Representation> {
        self.entries.iter().map(|e| e.rep.clone()).collect()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.entries[i].label
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i * self.len() + j]
    }

    /// `dim Ext^1(entry i, entry j)` from the Hom table and the Euler form.
    pub fn ext(&self, i: usize, j: usize) -> usize {
        let v = self.hom(i, j) as i64 - self.euler.bilinear(self.entries[i].dim(), self.entries[j].dim());
        debug_assert!(v >= 0);
        v as usize
    }

    /// Basis of the trace of entry `i` in entry `j`, computed once.
    pub fn trace(&self, i: usize, j: usize) -> &[QMatrix] {
        self.traces[i * self.len() + j].get_or_init(|| trace(&self.entries[i].rep, &self.entries[j].rep))
    }

    pub fn find_dim(&self, dim: &[i64]) -> Option<usize> {
        self.by_dim.get(dim).copied()
    }

    pub fn is_preprojective(&self, i: usize) -> bool {
        self.complete || matches!(self.entries[i].kind, Kind::Preprojective { .. })
    }

    pub fn is_preinjective(&self, i: usize) -> bool {
        self.complete || matches!(self.entries[i].kind, Kind::Preinjective { .. })
    }

    /// Resolves a module name. Accepted forms: `P1`, `P(1)`, `I3'`, `S2`,
    /// `τI(3)`, `tI3`, `τ^-1P(1)`, `t-1P1`, `t^2I3`, and `#k` for the k-th
    /// entry. The name is turned into a dimension vector through the
    /// Coxeter matrix and looked up.
    pub fn resolve(&self, name: &str) -> Result<usize> {
        let unknown = || Error::UnknownLabel(name.to_string());
        let s = name.trim();
        if let Some(k) = s.strip_prefix('#') {
            let k: usize = k.parse().map_err(|_| unknown())?;
            return if k < self.len() { Ok(k) } else { Err(unknown()) };
        }
        let (power, rest) = parse_tau_prefix(s).ok_or_else(unknown)?;
        let mut chars = rest.chars();
        let letter = chars.next().ok_or_else(unknown)?;
        let mut vertex = chars.as_str();
        if let Some(inner) = vertex.strip_prefix('(').and_then(|v| v.strip_suffix(')')) {
            vertex = inner;
        }
        let v = self.quiver.index_of(vertex).ok_or_else(unknown)?;
        let paths = self.quiver.path_counts();
        let n = self.quiver.n();
        let base: DimVector = match letter {
            'P' => paths.row(v).to_vec(),
            'I' => (0..n).map(|j| paths[(j, v)]).collect(),
            'S' => unit(n, v),
            _ => return Err(unknown()),
        };
        let dim = self.phi.power(power, &base);
        self.find_dim(&dim).ok_or_else(unknown)
    }

    /// Resolves a comma-separated list of names.
    pub fn resolve_list(&self, spec: &str) -> Result<Vec<usize>> {
        spec.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| self.resolve(s))
            .collect()
    }
}

/// `(end power, injective vertex)` of each τ-orbit in a complete component.
fn orbit_ends(c: &ARComponent) -> Vec<(usize, usize)> {
    let orbits = c.nodes.iter().map(|n| n.orbit).max().map_or(0, |m| m + 1);
    let mut out = vec![(0, 0); orbits];
    for n in &c.nodes {
        if let Some(w) = n.injective {
            out[n.orbit] = (n.power, w);
        }
    }
    out
}

/// `τ^k X(v)` in display form.
pub fn tau_label(k: i64, letter: char, vertex: &str) -> String {
    match k {
        0 => format!("{letter}({vertex})"),
        1 => format!("τ{letter}({vertex})"),
        k => format!("τ^{k}{letter}({vertex})"),
    }
}

/// Splits an optional `τ`/`t` prefix with exponent off a module name.
fn parse_tau_prefix(s: &str) -> Option<(i64, &str)> {
    let rest = s.strip_prefix('τ').or_else(|| s.strip_prefix('t'));
    let Some(rest) = rest else {
        return Some((0, s));
    };
    let rest = rest.strip_prefix('^').unwrap_or(rest);
    let digits_end = rest
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
        .map_or(rest.len(), |(i, _)| i);
    let (num, tail) = rest.split_at(digits_end);
    let k = match num {
        "" => 1,
        "-" => -1,
        _ => num.parse().ok()?,
    };
    Some((k, tail))
}
