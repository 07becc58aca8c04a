use num_traits::Zero;

use super::hom::{end_dim, hom_basis};
use super::Representation;
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::vector::le;

/// Summands of a representation as indices into the brick list that was
/// used to peel them, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub summands: Vec<usize>,
}

impl Decomposition {
    /// `(brick index, multiplicity)` in increasing index order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in &self.summands {
            match out.last_mut() {
                Some((i, m)) if *i == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// Number of summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }
}

/// Krull-Remak-Schmidt decomposition by peeling bricks.
///
/// A brick `X` is a summand of `R` iff `g ∘ f = c · id` with `c != 0` for
/// some basis morphisms `f: X -> R`, `g: R -> X`; then `R = im f ⊕ ker g`
/// and the search continues on `ker g`. Only correct when every summand of
/// `R` is isomorphic to one of `bricks`; otherwise an error is returned.
pub fn decompose(r: &Representation, bricks: &[Representation]) -> Result<Decomposition> {
    let mut rem = r.clone();
    let mut out = Vec::new();
    let mut verified = vec![false; bricks.len()];
    'outer: while !rem.is_zero() {
        for (idx, x) in bricks.iter().enumerate() {
            if x.is_zero() || !le(x.dim(), rem.dim()) {
                continue;
            }
            let fs = hom_basis(x, &rem);
            if fs.is_empty() {
                continue;
            }
            let gs = hom_basis(&rem, x);
            for f in &fs {
                for g in &gs {
                    let Some(c) = f.then(g).as_scalar() else {
                        return Err(Error::NonBrick(x.dim().clone()));
                    };
                    if c.is_zero() {
                        continue;
                    }
                    if !verified[idx] {
                        if end_dim(x) != 1 {
                            return Err(Error::NonBrick(x.dim().clone()));
                        }
                        verified[idx] = true;
                    }
                    let kernel: Vec<QMatrix> = g
                        .maps
                        .iter()
                        .enumerate()
                        .map(|(v, gv)| QMatrix::from_columns(rem.d(v), &gv.null_space()))
                        .collect();
                    rem = rem.subrepresentation(&kernel)?;
                    out.push(idx);
                    continue 'outer;
                }
            }
        }
        return Err(Error::NonBrick(rem.dim().clone()));
    }
    out.sort_unstable();
    Ok(Decomposition { summands: out })
}

/// Isomorphism of representations whose summands are all among `bricks`.
pub fn is_isomorphic(a: &Representation, b: &Representation, bricks: &[Representation]) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(decompose(a, bricks)? == decompose(b, bricks)?)
}

/// Isomorphism of two bricks: a nonzero composite `Y -> X -> Y` of basis
/// morphisms between modules of equal dimension is invertible.
pub fn bricks_isomorphic(x: &Representation, y: &Representation) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    let fs = hom_basis(x, y);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(y, x);
    fs.iter()
        .any(|f| gs.iter().any(|g| !f.then(g).is_zero()))
}
