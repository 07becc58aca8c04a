//! Representations of quivers over the rationals.
//!
//! A representation carries one vector space `k^{dim v}` per vertex and one
//! matrix per arrow; for `a: i -> j` the matrix is `dim j x dim i`. All
//! homological quantities in the crate are computed from these matrices.

mod decompose;
mod ext;
mod hom;
mod reflect;
mod torsion;

use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{QMatrix, Q};
use crate::quiver::Quiver;
use crate::vector::DimVector;

pub use decompose::{bricks_isomorphic, decompose, is_isomorphic, Decomposition};
pub use ext::{build_extension, class_of_submodule, ext1_dim, ext_class, ExtClass, ExtSpace};
pub use hom::{end_dim, hom_basis, hom_dim, Morphism};
pub use reflect::{build_preinjective, build_root_rep};
pub use torsion::{split_by_submodule, sum_of_subspaces, torsion_submodule, trace, Split};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    dim: DimVector,
    maps: Vec<QMatrix>,
}

impl Representation {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, maps: Vec<QMatrix>) -> Result<Self> {
        if dim.len() != quiver.n() {
            return Err(Error::DimensionMismatch {
                expected: quiver.n(),
                got: dim.len(),
            });
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: quiver.arrows().len(),
                got: maps.len(),
            });
        }
        if dim.iter().any(|&d| d < 0) {
            return Err(Error::Precondition("negative dimension".into()));
        }
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            let want = (dim[t] as usize, dim[s] as usize);
            if maps[a].shape() != want {
                return Err(Error::Precondition(format!(
                    "arrow {a} has shape {:?}, expected {want:?}",
                    maps[a].shape()
                )));
            }
        }
        Ok(Representation { quiver, dim, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let n = quiver.n();
        let maps = vec![QMatrix::zeros(0, 0); quiver.arrows().len()];
        Representation {
            quiver,
            dim: vec![0; n],
            maps,
        }
    }

    pub fn simple(quiver: Arc<Quiver>, i: usize) -> Self {
        let dim = crate::vector::unit(quiver.n(), i);
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| QMatrix::zeros(dim[t] as usize, dim[s] as usize))
            .collect();
        Representation { quiver, dim, maps }
    }

    /// `P(i)`: at `j` the span of the paths from `i` to `j`; an arrow
    /// appends itself to a path.
    pub fn projective(quiver: Arc<Quiver>, i: usize) -> Self {
        let paths = quiver.paths_from(i);
        let dim: DimVector = paths.iter().map(|p| p.len() as i64).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = QMatrix::zeros(paths[t].len(), paths[s].len());
                for (c, p) in paths[s].iter().enumerate() {
                    let mut longer = p.clone();
                    longer.push(a);
                    let r = paths[t]
                        .iter()
                        .position(|x| *x == longer)
                        .expect("extended path is a path");
                    m[(r, c)] = Q::one();
                }
                m
            })
            .collect();
        Representation { quiver, dim, maps }
    }

    /// `I(i)`: at `j` the span of the paths from `j` to `i`; an arrow
    /// `a: j -> k` strips a leading `a` and kills paths not starting with it.
    pub fn injective(quiver: Arc<Quiver>, i: usize) -> Self {
        let n = quiver.n();
        let into: Vec<Vec<Vec<usize>>> = (0..n).map(|j| quiver.paths_from(j)[i].clone()).collect();
        let dim: DimVector = into.iter().map(|p| p.len() as i64).collect();
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = QMatrix::zeros(into[t].len(), into[s].len());
                for (c, p) in into[s].iter().enumerate() {
                    if p.first() == Some(&a) {
                        let rest = &p[1..];
                        let r = into[t]
                            .iter()
                            .position(|x| x.as_slice() == rest)
                            .expect("suffix of a path is a path");
                        m[(r, c)] = Q::one();
                    }
                }
                m
            })
            .collect();
        Representation { quiver, dim, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    pub fn map(&self, a: usize) -> &QMatrix {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> i64 {
        self.dim.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim.iter().all(|&d| d == 0)
    }

    pub fn d(&self, v: usize) -> usize {
        self.dim[v] as usize
    }

    /// Same data over a quiver that is equal by value.
    pub fn rebase(self, quiver: Arc<Quiver>) -> Self {
        assert_eq!(self.quiver.arrows(), quiver.arrows(), "different quiver");
        Representation { quiver, ..self }
    }

    /// `D M` as a representation of the opposite quiver.
    pub fn dual(&self) -> Representation {
        Representation {
            quiver: Arc::new(self.quiver.opposite()),
            dim: self.dim.clone(),
            maps: self.maps.iter().map(QMatrix::transpose).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(self.quiver, other.quiver, "different quivers");
        let dim = crate::vector::add(&self.dim, &other.dim);
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = QMatrix::zeros(dim[t] as usize, dim[s] as usize);
                let (r0, c0) = (self.d(t), self.d(s));
                for i in 0..r0 {
                    for j in 0..c0 {
                        m[(i, j)] = self.maps[a][(i, j)];
                    }
                }
                for i in 0..other.d(t) {
                    for j in 0..other.d(s) {
                        m[(r0 + i, c0 + j)] = other.maps[a][(i, j)];
                    }
                }
                m
            })
            .collect();
        Representation {
            quiver: self.quiver.clone(),
            dim,
            maps,
        }
    }

    /// Conjugates by invertible per-vertex matrices `P_v`: the new arrow
    /// matrices are `P_t^{-1} M_a P_s`.
    pub fn change_basis(&self, p: &[QMatrix]) -> Result<Representation> {
        let inv: Vec<QMatrix> = p
            .iter()
            .map(|m| {
                m.inverse()
                    .ok_or_else(|| Error::Precondition("singular base change".into()))
            })
            .collect::<Result<_>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| &(&inv[t] * &self.maps[a]) * &p[s])
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            dim: self.dim.clone(),
            maps,
        })
    }

    /// Debug text: a `dim` line, then per arrow a header `arrow <a> <r>x<c>`
    /// followed by `r` rows of space separated fractions.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let dims: Vec<String> = self.dim.iter().map(i64::to_string).collect();
        let _ = writeln!(s, "dim {}", dims.join(" "));
        for (a, m) in self.maps.iter().enumerate() {
            let _ = writeln!(s, "arrow {a} {}x{}", m.rows(), m.cols());
            for i in 0..m.rows() {
                let row: Vec<String> = m.row(i).iter().map(Q::to_string).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
        s
    }

    pub fn from_text(quiver: Arc<Quiver>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let bad = |line: usize, msg: &str| Error::Syntax {
            line,
            column: 1,
            message: msg.to_string(),
        };
        let (ln, head) = lines.next().ok_or_else(|| bad(1, "empty representation"))?;
        let dim: DimVector = head
            .strip_prefix("dim")
            .ok_or_else(|| bad(ln, "expected `dim`"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad(ln, "bad dimension")))
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        while let Some((ln, h)) = lines.next() {
            let parts: Vec<&str> = h.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "arrow" || parts[1] != maps.len().to_string() {
                return Err(bad(ln, "expected `arrow <index> <rows>x<cols>`"));
            }
            let (r, c) = parts[2]
                .split_once('x')
                .ok_or_else(|| bad(ln, "bad shape"))?;
            let r: usize = r.parse().map_err(|_| bad(ln, "bad shape"))?;
            let c: usize = c.parse().map_err(|_| bad(ln, "bad shape"))?;
            let mut m = QMatrix::zeros(r, c);
            for i in 0..r {
                let (ln, row) = lines.next().ok_or_else(|| bad(ln, "missing matrix row"))?;
                let vals: Vec<Q> = row
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad(ln, "bad entry")))
                    .collect::<Result<_>>()?;
                if vals.len() != c {
                    return Err(bad(ln, "wrong row length"));
                }
                for (j, v) in vals.into_iter().enumerate() {
                    m[(i, j)] = v;
                }
            }
            maps.push(m);
        }
        Representation::new(quiver, dim, maps)
    }

    /// Whether `M_a U_s` lies in the span of `U_t` for every arrow, i.e. the
    /// column spaces of `basis` form a subrepresentation.
    pub fn is_invariant(&self, basis: &[QMatrix]) -> bool {
        self.quiver.arrows().iter().enumerate().all(|(a, &(s, t))| {
            let img = &self.maps[a] * &basis[s];
            basis[t].solve(&img).is_some()
        })
    }

    /// The subrepresentation on the column spaces of `basis` (assumed
    /// independent and invariant), in the given bases.
    pub fn subrepresentation(&self, basis: &[QMatrix]) -> Result<Representation> {
        let dim: DimVector = basis.iter().map(|b| b.cols() as i64).collect();
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let img = &self.maps[a] * &basis[s];
                basis[t]
                    .solve(&img)
                    .ok_or_else(|| Error::Internal("subspace is not a subrepresentation".into()))
            })
            .collect::<Result<_>>()?;
        Representation::new(self.quiver.clone(), dim, maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    pub(crate) fn t33() -> Arc<Quiver> {
        Arc::new(parse_quiver("vertices: 1 2 2' 3 3'\narrows: 2->1 2'->1 3->2 3'->2'").unwrap())
    }

    #[test]
    fn projective_and_injective_dims() {
        let q = t33();
        let p3 = Representation::projective(q.clone(), 3);
        assert_eq!(p3.dim(), &vec![1, 1, 0, 1, 0]);
        assert_eq!(p3.total_dim(), 3);
        assert_eq!(Representation::projective(q.clone(), 0).total_dim(), 1);
        assert_eq!(Representation::injective(q.clone(), 0).dim(), &vec![1, 1, 1, 1, 1]);
        assert_eq!(Representation::injective(q.clone(), 3).dim(), &vec![0, 0, 0, 1, 0]);
    }

    #[test]
    fn simple_has_empty_maps() {
        let q = t33();
        let s = Representation::simple(q.clone(), 1);
        for m in s.maps() {
            assert!(m.rows() == 0 || m.cols() == 0);
        }
    }

    #[test]
    fn text_round_trip() {
        let q = t33();
        let m = Representation::injective(q.clone(), 0).direct_sum(&Representation::projective(q.clone(), 3));
        let back = Representation::from_text(q.clone(), &m.to_text()).unwrap();
        assert_eq!(back, m);
        assert!(Representation::from_text(q, "dim 1 0 0 0 0\narrow 0 2x2\n1 0\n").is_err());
    }

    #[test]
    fn dual_of_projective_is_injective_of_opposite() {
        let q = t33();
        let p = Representation::projective(q.clone(), 4);
        let d = p.dual();
        let iop = Representation::injective(Arc::new(q.opposite()), 4);
        assert_eq!(d, iop);
    }
}
