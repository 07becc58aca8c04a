use num_traits::Zero;

use super::Representation;
use crate::matrix::{QMatrix, Q};

/// A morphism of representations: one matrix `f_v: dim X_v -> dim Y_v` per
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub maps: Vec<QMatrix>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(QMatrix::is_zero)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(f, g)| g * f)
                .collect(),
        }
    }

    /// `c` if the morphism is `c · id`, otherwise `None`.
    pub fn as_scalar(&self) -> Option<Q> {
        let mut c = None;
        for m in &self.maps {
            if m.rows() != m.cols() {
                return None;
            }
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let v = m[(i, j)];
                    if i != j {
                        if !v.is_zero() {
                            return None;
                        }
                    } else {
                        match c {
                            None => c = Some(v),
                            Some(w) if w != v => return None,
                            _ => {}
                        }
                    }
                }
            }
        }
        Some(c.unwrap_or_else(Q::zero))
    }

    pub fn is_morphism(&self, x: &Representation, y: &Representation) -> bool {
        x.quiver().arrows().iter().enumerate().all(|(a, &(s, t))| {
            &self.maps[t] * x.map(a) == y.map(a) * &self.maps[s]
        })
    }
}

/// Column offsets of the unknowns `f_v[r][c]` in the intertwining system.
pub(super) fn hom_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let n = x.quiver().n();
    let mut off = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for v in 0..n {
        off.push(acc);
        acc += x.d(v) * y.d(v);
    }
    off.push(acc);
    off
}

/// The linear map `f -> (f_t X_a - Y_a f_s)_a` from `⊕_v Hom(X_v, Y_v)` to
/// `⊕_a Hom(X_s, Y_t)`. Its kernel is `Hom(X, Y)` and, the algebra being
/// hereditary, its cokernel is `Ext^1(X, Y)`. Row blocks follow arrow order,
/// entries within a block are row major.
pub(super) fn intertwining_system(x: &Representation, y: &Representation) -> QMatrix {
    assert_eq!(x.quiver(), y.quiver(), "representations of different quivers");
    let q = x.quiver();
    let off = hom_offsets(x, y);
    let rows: usize = q.arrows().iter().map(|&(s, t)| y.d(t) * x.d(s)).sum();
    let mut m = QMatrix::zeros(rows, off[q.n()]);
    let mut row0 = 0;
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (xs, xt, ys, yt) = (x.d(s), x.d(t), y.d(s), y.d(t));
        let xa = x.map(a);
        let ya = y.map(a);
        for r in 0..yt {
            for c in 0..xs {
                let row = row0 + r * xs + c;
                // (f_t X_a)[r][c] = sum_k f_t[r][k] X_a[k][c]
                for k in 0..xt {
                    let v = xa[(k, c)];
                    if !v.is_zero() {
                        let col = off[t] + r * xt + k;
                        m[(row, col)] += v;
                    }
                }
                // (Y_a f_s)[r][c] = sum_k Y_a[r][k] f_s[k][c]
                for k in 0..ys {
                    let v = ya[(r, k)];
                    if !v.is_zero() {
                        let col = off[s] + k * xs + c;
                        m[(row, col)] -= v;
                    }
                }
            }
        }
        row0 += yt * xs;
    }
    m
}

pub fn hom_basis(x: &Representation, y: &Representation) -> Vec<Morphism> {
    let sys = intertwining_system(x, y);
    let off = hom_offsets(x, y);
    let n = x.quiver().n();
    sys.null_space()
        .into_iter()
        .map(|v| Morphism {
            maps: (0..n)
                .map(|w| {
                    let (r, c) = (y.d(w), x.d(w));
                    let mut f = QMatrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            f[(i, j)] = v[off[w] + i * c + j];
                        }
                    }
                    f
                })
                .collect(),
        })
        .collect()
}

pub fn hom_dim(x: &Representation, y: &Representation) -> usize {
    let sys = intertwining_system(x, y);
    sys.cols() - sys.rank()
}

pub fn end_dim(x: &Representation) -> usize {
    hom_dim(x, x)
}
