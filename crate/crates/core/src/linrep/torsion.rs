use super::hom::hom_basis;
use super::Representation;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// `M` written as an extension `0 -> U -> M -> M/U -> 0` in adapted bases.
#[derive(Clone, Debug)]
pub struct Split {
    pub sub: Representation,
    pub quotient: Representation,
    /// Per vertex, columns spanning `U_v` inside `M_v`.
    pub inclusion: Vec<QMatrix>,
    /// Per vertex, complement columns; `[inclusion | section]` is a basis.
    pub section: Vec<QMatrix>,
    /// Per vertex, `M_v -> (M/U)_v`.
    pub projection: Vec<QMatrix>,
    /// Per arrow, the off-diagonal block of `M_a` in the adapted bases.
    pub cocycle: Vec<QMatrix>,
}

/// Per vertex, a basis of the trace of `x` in `m`: the sum of the images of
/// all morphisms `x -> m`.
pub fn trace(x: &Representation, m: &Representation) -> Vec<QMatrix> {
    let basis = hom_basis(x, m);
    let n = m.quiver().n();
    (0..n)
        .map(|v| {
            let mut cols = QMatrix::zeros(m.d(v), 0);
            for f in &basis {
                cols = cols.hstack(&f.maps[v]);
            }
            cols.column_space()
        })
        .collect()
}

/// Per vertex, a basis of the sum of the given subspaces.
pub fn sum_of_subspaces(dims: &[i64], parts: &[&[QMatrix]]) -> Vec<QMatrix> {
    (0..dims.len())
        .map(|v| {
            let mut cols = QMatrix::zeros(dims[v] as usize, 0);
            for p in parts {
                cols = cols.hstack(&p[v]);
            }
            cols.column_space()
        })
        .collect()
}

/// `tM`, the trace of `T = ⊕ t` in `m`, together with `M/tM`.
pub fn torsion_submodule(t: &[Representation], m: &Representation) -> Result<Split> {
    let traces: Vec<Vec<QMatrix>> = t.iter().map(|x| trace(x, m)).collect();
    let refs: Vec<&[QMatrix]> = traces.iter().map(Vec::as_slice).collect();
    split_by_submodule(m, sum_of_subspaces(m.dim(), &refs))
}

/// Splits `m` along the subrepresentation spanned by `basis` (independent
/// columns per vertex). Fails if the subspace is not invariant.
pub fn split_by_submodule(m: &Representation, basis: Vec<QMatrix>) -> Result<Split> {
    let q = m.quiver().clone();
    let n = q.n();
    let mut section = Vec::with_capacity(n);
    let mut projection = Vec::with_capacity(n);
    let mut frames_inv = Vec::with_capacity(n);
    for u in basis.iter() {
        let c = u.complement();
        let frame = u.hstack(&c);
        let inv = frame
            .inverse()
            .ok_or_else(|| Error::Internal("subspace basis is not independent".into()))?;
        projection.push(inv.block(u.cols(), inv.rows(), 0, inv.cols()));
        section.push(c);
        frames_inv.push(inv);
    }
    let sub_dim: Vec<i64> = basis.iter().map(|u| u.cols() as i64).collect();
    let quo_dim: Vec<i64> = section.iter().map(|c| c.cols() as i64).collect();
    let mut sub_maps = Vec::new();
    let mut quo_maps = Vec::new();
    let mut cocycle = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let frame_s = basis[s].hstack(&section[s]);
        let b = &(&frames_inv[t] * m.map(a)) * &frame_s;
        let (us, ut) = (basis[s].cols(), basis[t].cols());
        if !b.block(ut, b.rows(), 0, us).is_zero() {
            return Err(Error::Internal("subspace is not a subrepresentation".into()));
        }
        sub_maps.push(b.block(0, ut, 0, us));
        cocycle.push(b.block(0, ut, us, b.cols()));
        quo_maps.push(b.block(ut, b.rows(), us, b.cols()));
    }
    Ok(Split {
        sub: Representation::new(q.clone(), sub_dim, sub_maps)?,
        quotient: Representation::new(q, quo_dim, quo_maps)?,
        inclusion: basis,
        section,
        projection,
        cocycle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linrep::tests::t33;
    use crate::linrep::{hom_dim, Morphism};

    #[test]
    fn torsion_of_torsion_module_is_everything() {
        let q = t33();
        let t: Vec<Representation> = (0..q.n()).map(|i| Representation::projective(q.clone(), i)).collect();
        let m = Representation::injective(q.clone(), 0);
        let s = torsion_submodule(&t, &m).unwrap();
        assert_eq!(s.sub.dim(), m.dim());
        assert!(s.quotient.is_zero());
    }

    #[test]
    fn torsion_free_module_has_zero_trace() {
        let q = t33();
        let t = vec![Representation::projective(q.clone(), 0)];
        let m = Representation::simple(q.clone(), 3);
        assert_eq!(hom_dim(&t[0], &m), 0);
        let s = torsion_submodule(&t, &m).unwrap();
        assert!(s.sub.is_zero());
        assert_eq!(s.quotient.dim(), m.dim());
    }

    #[test]
    fn inclusion_and_projection_are_morphisms() {
        let q = t33();
        let t = vec![Representation::projective(q.clone(), 1)];
        let m = Representation::injective(q.clone(), 0);
        let s = torsion_submodule(&t, &m).unwrap();
        let inc = Morphism {
            maps: s.inclusion.clone(),
        };
        let proj = Morphism {
            maps: s.projection.clone(),
        };
        assert!(inc.is_morphism(&s.sub, &m));
        assert!(proj.is_morphism(&m, &s.quotient));
        assert!(inc.then(&proj).is_zero());
    }
}
