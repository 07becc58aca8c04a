use num_traits::Zero;

use super::hom::{hom_dim, intertwining_system};
use super::torsion::split_by_submodule;
use super::{torsion_submodule, Representation};
use crate::error::{Error, Result};
use crate::matrix::{QMatrix, Q};

/// `dim Ext^1(X, Y) = dim Hom(X, Y) - <dim X, dim Y>`.
pub fn ext1_dim(x: &Representation, y: &Representation) -> usize {
    let e = x.quiver().euler_matrix();
    let v = hom_dim(x, y) as i64 - e.bilinear(x.dim(), y.dim());
    assert!(v >= 0, "negative Ext dimension: Hom and Euler form disagree");
    v as usize
}

/// `Ext^1(X, Y)` as the cokernel of the intertwining map
/// `δ: ⊕_v Hom(X_v, Y_v) -> ⊕_a Hom(X_s, Y_t)`. The basis is the set of
/// unit vectors of the target that are not pivots of `im δ`, so coordinates
/// are reproducible.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    x: Representation,
    y: Representation,
    /// `[im δ | complement]`, invertible.
    frame: QMatrix,
    frame_inv: QMatrix,
    image_rank: usize,
    /// Start of each arrow block in the flattened target.
    offsets: Vec<usize>,
}

impl ExtSpace {
    pub fn new(x: &Representation, y: &Representation) -> Self {
        let delta = intertwining_system(x, y);
        let image = delta.column_space();
        let complement = image.complement();
        let frame = image.hstack(&complement);
        let frame_inv = frame.inverse().expect("frame spans the target");
        let mut offsets = Vec::new();
        let mut acc = 0;
        for &(s, t) in x.quiver().arrows() {
            offsets.push(acc);
            acc += y.d(t) * x.d(s);
        }
        offsets.push(acc);
        ExtSpace {
            x: x.clone(),
            y: y.clone(),
            image_rank: image.cols(),
            frame,
            frame_inv,
            offsets,
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.cols() - self.image_rank
    }

    pub fn source(&self) -> &Representation {
        &self.x
    }

    pub fn target(&self) -> &Representation {
        &self.y
    }

    fn flatten(&self, eps: &[QMatrix]) -> Result<Vec<Q>> {
        let q = self.x.quiver();
        if eps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch {
                expected: q.arrows().len(),
                got: eps.len(),
            });
        }
        let mut v = vec![Q::zero(); *self.offsets.last().unwrap_or(&0)];
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let (r, c) = (self.y.d(t), self.x.d(s));
            if eps[a].shape() != (r, c) {
                return Err(Error::DimensionMismatch {
                    expected: r * c,
                    got: eps[a].rows() * eps[a].cols(),
                });
            }
            for i in 0..r {
                for j in 0..c {
                    v[self.offsets[a] + i * c + j] = eps[a][(i, j)];
                }
            }
        }
        Ok(v)
    }

    fn unflatten(&self, v: &[Q]) -> Vec<QMatrix> {
        let q = self.x.quiver();
        q.arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let (r, c) = (self.y.d(t), self.x.d(s));
                let mut m = QMatrix::zeros(r, c);
                for i in 0..r {
                    for j in 0..c {
                        m[(i, j)] = v[self.offsets[a] + i * c + j];
                    }
                }
                m
            })
            .collect()
    }

    /// Coordinates of the class of the cocycle `eps` (one `Y_t x X_s` block
    /// per arrow).
    pub fn coordinates(&self, eps: &[QMatrix]) -> Result<Vec<Q>> {
        let v = self.flatten(eps)?;
        let c = self.frame_inv.mul_vec(&v);
        Ok(c[self.image_rank..].to_vec())
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn cocycle(&self, coords: &[Q]) -> Result<Vec<QMatrix>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: coords.len(),
            });
        }
        let mut full = vec![Q::zero(); self.image_rank];
        full.extend_from_slice(coords);
        Ok(self.unflatten(&self.frame.mul_vec(&full)))
    }

    /// Unit coordinate vectors, one per basis element.
    pub fn basis(&self) -> Vec<Vec<Q>> {
        (0..self.dim())
            .map(|k| {
                let mut c = vec![Q::zero(); self.dim()];
                c[k] = Q::from_int(1);
                c
            })
            .collect()
    }
}

/// The class of `0 -> tM -> M -> M/tM -> 0` for the torsion submodule
/// defined by `t`.
#[derive(Clone, Debug)]
pub struct ExtClass {
    /// `M/tM`
    pub source: Representation,
    /// `tM`
    pub target: Representation,
    pub coords: Vec<Q>,
}

impl ExtClass {
    pub fn is_split(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

pub fn ext_class(t: &[Representation], m: &Representation) -> Result<ExtClass> {
    let split = torsion_submodule(t, m)?;
    let space = ExtSpace::new(&split.quotient, &split.sub);
    let coords = space.coordinates(&split.cocycle)?;
    Ok(ExtClass {
        source: split.quotient,
        target: split.sub,
        coords,
    })
}

/// Middle term of the extension of `X` by `Y` with class `coords`: vertex
/// spaces `Y_v ⊕ X_v` and arrow blocks `[[Y_a, ε_a], [0, X_a]]`.
pub fn build_extension(x: &Representation, y: &Representation, coords: &[Q]) -> Result<Representation> {
    let space = ExtSpace::new(x, y);
    let eps = space.cocycle(coords)?;
    Ok(extension_from_cocycle(x, y, &eps))
}

pub(crate) fn extension_from_cocycle(x: &Representation, y: &Representation, eps: &[QMatrix]) -> Representation {
    let q = x.quiver();
    let dim = crate::vector::add(y.dim(), x.dim());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let top = y.map(a).hstack(&eps[a]);
            let bottom = QMatrix::zeros(x.d(t), y.d(s)).hstack(x.map(a));
            top.vstack(&bottom)
        })
        .collect();
    Representation::new(q.clone(), dim, maps).expect("block shapes are consistent")
}

/// Splits `m` along an arbitrary subrepresentation and reads off the class;
/// exposed for callers that already know the submodule.
pub fn class_of_submodule(m: &Representation, basis: Vec<QMatrix>) -> Result<ExtClass> {
    let split = split_by_submodule(m, basis)?;
    let space = ExtSpace::new(&split.quotient, &split.sub);
    let coords = space.coordinates(&split.cocycle)?;
    Ok(ExtClass {
        source: split.quotient,
        target: split.sub,
        coords,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::tests::t33;
    use crate::linrep::{decompose, end_dim};
    use std::sync::Arc;

    #[test]
    fn ext_from_projective_vanishes() {
        let q = t33();
        for i in 0..q.n() {
            let p = Representation::projective(q.clone(), i);
            for j in 0..q.n() {
                assert_eq!(ext1_dim(&p, &Representation::simple(q.clone(), j)), 0);
                assert_eq!(ExtSpace::new(&p, &Representation::simple(q.clone(), j)).dim(), 0);
            }
        }
    }

    #[test]
    fn cokernel_dimension_matches_euler_route() {
        let q = t33();
        let reps: Vec<Representation> = (0..q.n())
            .flat_map(|i| {
                [
                    Representation::simple(q.clone(), i),
                    Representation::projective(q.clone(), i),
                    Representation::injective(q.clone(), i),
                ]
            })
            .collect();
        for x in &reps {
            for y in &reps {
                assert_eq!(ExtSpace::new(x, y).dim(), ext1_dim(x, y));
            }
        }
    }

    #[test]
    fn split_and_nonsplit_extensions_of_simples() {
        let q = Arc::new(crate::quiver::Quiver::numbered(2, &[(1, 0)]).unwrap());
        let s1 = Representation::simple(q.clone(), 0);
        let s2 = Representation::simple(q.clone(), 1);
        // Ext^1(S2, S1) = k: the nonsplit middle term is P(2)
        assert_eq!(ext1_dim(&s2, &s1), 1);
        let mid = build_extension(&s2, &s1, &[Q::from_int(1)]).unwrap();
        assert_eq!(end_dim(&mid), 1);
        assert_eq!(mid.dim(), &vec![1, 1]);
        let split = build_extension(&s2, &s1, &[Q::zero()]).unwrap();
        assert_eq!(end_dim(&split), 2);
        let d = decompose(&split, &[s1.clone(), s2.clone()]).unwrap();
        assert_eq!(d.multiplicities(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn class_round_trip() {
        let q = Arc::new(crate::quiver::Quiver::numbered(2, &[(1, 0)]).unwrap());
        let p2 = Representation::projective(q.clone(), 1);
        let s1 = Representation::simple(q.clone(), 0);
        let class = ext_class(std::slice::from_ref(&s1), &p2).unwrap();
        assert_eq!(class.target.dim(), &vec![1, 0]);
        assert_eq!(class.source.dim(), &vec![0, 1]);
        assert!(!class.is_split());
        let back = build_extension(&class.source, &class.target, &class.coords).unwrap();
        assert_eq!(end_dim(&back), 1);
        assert_eq!(back.dim(), p2.dim());
    }
}
