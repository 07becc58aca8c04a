//! Preprojective components by knitting, Dynkin classification, and
//! predecessor closures.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::bigraph::dot_id;
use crate::error::{Error, Result};
use crate::linrep::Representation;
use crate::quiver::{underlying_edges, CoxeterMatrix, Quiver};
use crate::vector::{add, fmt_vec, is_nonnegative, is_zero, sub, DimVector};

/// `τ^{-power} P(orbit)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub orbit: usize,
    pub power: usize,
    pub dim: DimVector,
    pub injective: Option<usize>,
}

impl Node {
    pub fn is_projective(&self) -> bool {
        self.power == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ARComponent {
    pub nodes: Vec<Node>,
    /// Irreducible maps `(from, to)`, repeated by multiplicity.
    pub arrows: Vec<(usize, usize)>,
    /// `true` when every τ-orbit ended in an injective (the whole component
    /// was knitted, as for Dynkin quivers).
    pub complete: bool,
    index: HashMap<(usize, usize), usize>,
    /// Node counts per τ^{-r} slice.
    pub depth: usize,
}

impl ARComponent {
    pub fn node(&self, orbit: usize, power: usize) -> Option<usize> {
        self.index.get(&(orbit, power)).copied()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `τ` of a node, absent for projectives.
    pub fn tau(&self, id: usize) -> Option<usize> {
        let n = &self.nodes[id];
        n.power.checked_sub(1).and_then(|p| self.node(n.orbit, p))
    }

    pub fn tau_inv(&self, id: usize) -> Option<usize> {
        let n = &self.nodes[id];
        self.node(n.orbit, n.power + 1)
    }

    pub fn successors(&self, id: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.0 == id).map(|a| a.1).collect()
    }

    pub fn predecessors(&self, id: usize) -> Vec<usize> {
        self.arrows.iter().filter(|a| a.1 == id).map(|a| a.0).collect()
    }

    pub fn find_dim(&self, dim: &[i64]) -> Option<usize> {
        self.nodes.iter().position(|n| n.dim == dim)
    }

    /// Violations of mesh additivity: for each node with a `τ^{-1}`,
    /// `dim M + dim τ^{-1} M` must equal the sum over the middle terms.
    pub fn mesh_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&id| {
                let Some(next) = self.tau_inv(id) else {
                    return false;
                };
                let n = self.nodes[id].dim.len();
                let middle = self
                    .successors(id)
                    .into_iter()
                    .fold(vec![0; n], |acc, s| add(&acc, &self.nodes[s].dim));
                add(&self.nodes[id].dim, &self.nodes[next].dim) != middle
            })
            .collect()
    }

    /// Nodes where `Φ · dim M != dim τ M` (non-projectives) or
    /// `Φ^{-1} · dim M != dim τ^{-1} M` (nodes with a successor in the orbit).
    pub fn coxeter_violations(&self, phi: &CoxeterMatrix) -> Vec<usize> {
        (0..self.len())
            .filter(|&id| {
                let d = &self.nodes[id].dim;
                let bad_tau = self.tau(id).is_some_and(|t| phi.apply(d) != self.nodes[t].dim);
                let bad_inv = self.tau_inv(id).is_some_and(|t| phi.apply_inv(d) != self.nodes[t].dim);
                bad_tau || bad_inv
            })
            .collect()
    }

    /// DOT text: nodes labelled by dimension vectors, irreducible maps as
    /// arrows, τ-orbits as dashed lines from `τ^{-1}M` back to `M`.
    pub fn to_dot(&self, q: &Quiver, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", dot_id(name));
        s.push_str("  rankdir=LR;\n");
        for (id, n) in self.nodes.iter().enumerate() {
            let label = format!("{} {}", node_label(q, self, id), fmt_vec(&n.dim));
            let _ = writeln!(s, "  n{id} [label={}];", dot_id(&label));
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        for id in 0..self.len() {
            if let Some(t) = self.tau_inv(id) {
                let _ = writeln!(s, "  n{t} -> n{id} [style=dashed, arrowhead=none, constraint=false];");
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Short display name of a component node: `P(v)`, `I(v)`, or `τ^{-r}P(v)`.
pub fn node_label(q: &Quiver, c: &ARComponent, id: usize) -> String {
    let n = &c.nodes[id];
    if let Some(w) = n.injective {
        return format!("I({})", q.label(w));
    }
    match n.power {
        0 => format!("P({})", q.label(n.orbit)),
        1 => format!("τ^-1P({})", q.label(n.orbit)),
        r => format!("τ^-{r}P({})", q.label(n.orbit)),
    }
}

/// Knits the preprojective component up to `τ^{-depth}`. For an arrow
/// `i -> j` of `Q` there are irreducible maps `τ^{-r}P(j) -> τ^{-r}P(i)` and
/// `τ^{-r}P(i) -> τ^{-(r+1)}P(j)`; the mesh at `τ^{-r}P(j)` gives
/// `dim τ^{-(r+1)}P(j) = Σ_{i->j} dim τ^{-r}P(i) + Σ_{j->k} dim τ^{-(r+1)}P(k) - dim τ^{-r}P(j)`.
/// An orbit stops at a node whose dimension vector is that of an injective.
pub fn knit_preprojective(q: &Quiver, depth: usize) -> Result<ARComponent> {
    let n = q.n();
    let phi = q.euler_matrix().coxeter()?;
    let paths = q.path_counts();
    let proj: Vec<DimVector> = (0..n).map(|i| paths.row(i).to_vec()).collect();
    let inj: Vec<DimVector> = (0..n).map(|i| (0..n).map(|j| paths[(j, i)]).collect()).collect();
    let injective_of = |d: &DimVector| inj.iter().position(|x| x == d);

    let mut nodes = Vec::new();
    let mut index = HashMap::new();
    let mut arrows = Vec::new();
    let order = q.sink_admissible_order();

    // slice 0: projectives; P(j) -> P(i) for each arrow i -> j
    for (v, p) in proj.iter().enumerate() {
        index.insert((v, 0), nodes.len());
        nodes.push(Node {
            orbit: v,
            power: 0,
            dim: p.clone(),
            injective: injective_of(p),
        });
    }
    let mut r = 0;
    let mut complete = false;
    loop {
        for &(i, j) in q.arrows() {
            if let (Some(&a), Some(&b)) = (index.get(&(j, r)), index.get(&(i, r))) {
                arrows.push((a, b));
            }
        }
        let alive: Vec<usize> = (0..n)
            .filter(|&v| {
                index
                    .get(&(v, r))
                    .is_some_and(|&id| nodes[id].injective.is_none())
            })
            .collect();
        if alive.is_empty() {
            complete = true;
            break;
        }
        if r == depth {
            break;
        }
        // targets before sources, so that τ^{-(r+1)}P(k) exists when needed
        for &j in &order {
            let Some(&cur) = index.get(&(j, r)) else {
                continue;
            };
            if nodes[cur].injective.is_some() {
                continue;
            }
            let mut d: DimVector = vec![0; n];
            for &(i, t) in q.arrows() {
                if t == j {
                    if let Some(&m) = index.get(&(i, r)) {
                        d = add(&d, &nodes[m].dim);
                    }
                }
            }
            for &(s, k) in q.arrows() {
                if s == j {
                    if let Some(&m) = index.get(&(k, r + 1)) {
                        d = add(&d, &nodes[m].dim);
                    }
                }
            }
            d = sub(&d, &nodes[cur].dim);
            if !is_nonnegative(&d) || is_zero(&d) {
                return Err(Error::Internal(format!(
                    "knitting produced {} after a non-injective node",
                    fmt_vec(&d)
                )));
            }
            if phi.apply_inv(&nodes[cur].dim) != d {
                return Err(Error::Internal(format!(
                    "mesh gives {} but Coxeter inverse gives {}",
                    fmt_vec(&d),
                    fmt_vec(&phi.apply_inv(&nodes[cur].dim))
                )));
            }
            let id = nodes.len();
            index.insert((j, r + 1), id);
            let injective = injective_of(&d);
            nodes.push(Node {
                orbit: j,
                power: r + 1,
                dim: d,
                injective,
            });
        }
        // τ^{-r}P(i) -> τ^{-(r+1)}P(j) for each arrow i -> j
        for &(i, j) in q.arrows() {
            if let (Some(&a), Some(&b)) = (index.get(&(i, r)), index.get(&(j, r + 1))) {
                arrows.push((a, b));
            }
        }
        r += 1;
    }
    arrows.sort_unstable();
    Ok(ARComponent {
        nodes,
        arrows,
        complete,
        index,
        depth: r,
    })
}

/// Predecessors of `seeds` inside the component, the seeds included.
pub fn predecessor_closure(c: &ARComponent, seeds: &[usize]) -> Result<BTreeSet<usize>> {
    if let Some(&s) = seeds.iter().find(|&&s| s >= c.len()) {
        return Err(Error::Precondition(format!("node {s} is not in the component")));
    }
    let mut seen: BTreeSet<usize> = seeds.iter().copied().collect();
    let mut stack: Vec<usize> = seeds.to_vec();
    while let Some(v) = stack.pop() {
        for p in c.predecessors(v) {
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
    Ok(seen)
}

/// Builds the representation of every node of a knitted component.
pub fn component_modules(q: &std::sync::Arc<Quiver>, c: &ARComponent) -> Result<Vec<Representation>> {
    c.nodes
        .iter()
        .map(|n| {
            if n.power == 0 {
                Ok(Representation::projective(q.clone(), n.orbit))
            } else {
                crate::linrep::build_root_rep(q, &n.dim)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// ADE type of the underlying graph, if any.
pub fn is_dynkin(q: &Quiver) -> Option<DynkinType> {
    let n = q.n();
    if n == 0 || !q.is_connected() {
        return None;
    }
    let edges = underlying_edges(q);
    if edges.iter().any(|&(_, m)| m > 1) || edges.len() != n - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); n];
    for &((a, b), _) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(DynkinType::A(n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Some(DynkinType::D(n)),
                [1, 2, 2] => Some(DynkinType::E(6)),
                [1, 2, 3] => Some(DynkinType::E(7)),
                [1, 2, 4] => Some(DynkinType::E(8)),
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::UnitForm;
    use crate::quiver::parse_quiver;

    const T33: &str = "vertices: 1 2 2' 3 3'\narrows: 2->1 2'->1 3->2 3'->2'";

    #[test]
    fn a2_component() {
        let q = Quiver::numbered(2, &[(1, 0)]).unwrap();
        let c = knit_preprojective(&q, 10).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.complete);
        let dims: Vec<_> = c.nodes.iter().map(|n| n.dim.clone()).collect();
        assert_eq!(dims, vec![vec![1, 0], vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn t33_component_matches_roots() {
        let q = parse_quiver(T33).unwrap();
        let c = knit_preprojective(&q, 20).unwrap();
        assert_eq!(c.len(), 15);
        let f = UnitForm::new(q.euler_matrix().0).unwrap();
        let mut dims: Vec<_> = c.nodes.iter().map(|n| n.dim.clone()).collect();
        dims.sort();
        assert_eq!(dims, f.positive_roots(6).unwrap().roots());
        assert!(c.mesh_violations().is_empty());
        let phi = q.euler_matrix().coxeter().unwrap();
        assert!(c.coxeter_violations(&phi).is_empty());
    }

    #[test]
    fn kronecker_depth_four() {
        let q = Quiver::numbered(2, &[(1, 0), (1, 0)]).unwrap();
        let c = knit_preprojective(&q, 4).unwrap();
        assert!(!c.complete);
        let phi = q.euler_matrix().coxeter().unwrap();
        // oracle: iterate Φ^{-1} from the projectives
        for v in 0..2 {
            let mut d = c.nodes[c.node(v, 0).unwrap()].dim.clone();
            for r in 1..=4 {
                d = phi.apply_inv(&d);
                assert_eq!(c.nodes[c.node(v, r).unwrap()].dim, d);
            }
        }
        assert_eq!(c.nodes[c.node(0, 1).unwrap()].dim, vec![3, 2]);
    }

    #[test]
    fn dynkin_types() {
        assert_eq!(is_dynkin(&parse_quiver(T33).unwrap()), Some(DynkinType::A(5)));
        assert_eq!(is_dynkin(&Quiver::numbered(2, &[(1, 0), (1, 0)]).unwrap()), None);
        assert_eq!(
            is_dynkin(&Quiver::numbered(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()),
            Some(DynkinType::A(4))
        );
        assert_eq!(
            is_dynkin(&Quiver::numbered(4, &[(1, 0), (2, 0), (3, 0)]).unwrap()),
            Some(DynkinType::D(4))
        );
        assert_eq!(
            is_dynkin(&Quiver::numbered(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (5, 2)]).unwrap()),
            Some(DynkinType::E(6))
        );
        assert_eq!(is_dynkin(&Quiver::numbered(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()), None);
    }

    #[test]
    fn closure_properties() {
        let q = parse_quiver(T33).unwrap();
        let c = knit_preprojective(&q, 20).unwrap();
        assert!(predecessor_closure(&c, &[]).unwrap().is_empty());
        let seed = c.len() - 1;
        let once = predecessor_closure(&c, &[seed]).unwrap();
        let seeds: Vec<usize> = once.iter().copied().collect();
        assert_eq!(predecessor_closure(&c, &seeds).unwrap(), once);
        assert!(predecessor_closure(&c, &[999]).is_err());
    }
}
