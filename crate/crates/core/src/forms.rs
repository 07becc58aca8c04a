//! Integral unit forms, their roots, and the abs map.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{leading_minors, IntMatrix, QMatrix, Q};
use crate::quiver::bilinear;
use crate::vector::{abs_vector, neg, DimVector};

/// Coordinate cap used by the root search unless told otherwise.
pub const DEFAULT_ROOT_CAP: i64 = 6;

/// `q(x) = x^T M x` with `M[i][i] = 1`. `M` need not be symmetric.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitForm {
    m: IntMatrix,
}

impl UnitForm {
    pub fn new(m: IntMatrix) -> Result<Self> {
        assert_eq!(m.rows(), m.cols(), "form matrix must be square");
        if let Some(i) = (0..m.rows()).find(|&i| m[(i, i)] != 1) {
            return Err(Error::NonUnitDiagonal(i));
        }
        Ok(UnitForm { m })
    }

    pub fn identity(n: usize) -> Self {
        UnitForm {
            m: IntMatrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        bilinear(&self.m, x, x)
    }

    pub fn bilinear(&self, x: &[i64], y: &[i64]) -> i64 {
        bilinear(&self.m, x, y)
    }

    /// Coefficient of `x_i x_j` in `q` (for `i != j`): `M[i][j] + M[j][i]`.
    pub fn cross(&self, i: usize, j: usize) -> i64 {
        self.m[(i, j)] + self.m[(j, i)]
    }

    /// The symmetric rational matrix `(M + M^T) / 2`.
    pub fn symmetric(&self) -> QMatrix {
        let n = self.n();
        let mut s = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                s[(i, j)] = Q::new(self.m[(i, j)] + self.m[(j, i)], 2);
            }
        }
        s
    }

    /// Upper triangular matrix of the same quadratic form.
    pub fn upper_triangular(&self) -> UnitForm {
        let n = self.n();
        let mut u = IntMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                u[(i, j)] = self.cross(i, j);
            }
        }
        UnitForm { m: u }
    }

    /// Same quadratic form (the symmetrizations agree).
    pub fn equivalent(&self, other: &UnitForm) -> bool {
        self.upper_triangular() == other.upper_triangular()
    }

    /// Sylvester's criterion on the symmetrized matrix.
    pub fn is_positive_definite(&self) -> bool {
        leading_minors(&self.symmetric())
            .iter()
            .all(Q::is_positive)
    }

    /// For a positive semidefinite form, a basis of the radical as primitive
    /// integer vectors; `None` if the form is not semidefinite.
    pub fn semidefinite_radical(&self) -> Option<Vec<DimVector>> {
        let s = self.symmetric();
        if !is_positive_semidefinite(&s) {
            return None;
        }
        Some(s.null_space().into_iter().map(|v| primitive(&v)).collect())
    }

    /// Whether the symmetrized form is positive semidefinite with a
    /// one-dimensional radical, as for extended Dynkin quivers. Returns the
    /// positive generator of the radical.
    pub fn tame_radical(&self) -> Option<DimVector> {
        let mut rad = self.semidefinite_radical()?;
        if rad.len() != 1 {
            return None;
        }
        let mut d = rad.pop()?;
        if d.iter().all(|&x| x <= 0) {
            d = neg(&d);
        }
        d.iter().all(|&x| x > 0).then_some(d)
    }

    /// Positive roots by breadth-first search in height: start at the unit
    /// vectors and add `e_i` while the value stays 1. For a weakly positive
    /// form every positive root arises this way. Coordinates never exceed
    /// `cap`; if a root with a coordinate above `cap` is reachable the search
    /// fails instead of truncating. A nonzero `x + e_i >= 0` with
    /// `q(x + e_i) <= 0` met on the way is a witness that the form is not
    /// weakly positive, and the search stops with it.
    pub fn positive_roots(&self, cap: i64) -> Result<RootSet> {
        let n = self.n();
        let mut all: BTreeSet<DimVector> = BTreeSet::new();
        let mut layer: BTreeSet<DimVector> = (0..n).map(|i| crate::vector::unit(n, i)).collect();
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next = BTreeSet::new();
            for x in &layer {
                for i in 0..n {
                    // q(x + e_i) = q(x) + 1 + (M x)_i + (M^T x)_i
                    let delta: i64 = (0..n).map(|j| (self.m[(i, j)] + self.m[(j, i)]) * x[j]).sum();
                    if delta < -1 {
                        let mut w = x.clone();
                        w[i] += 1;
                        return Err(Error::NotWeaklyPositive(w));
                    }
                    if delta != -1 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] += 1;
                    if y[i] > cap {
                        return Err(Error::Frontier { cap });
                    }
                    if !all.contains(&y) {
                        next.insert(y);
                    }
                }
            }
            layer = next;
        }
        Ok(RootSet::new(all.into_iter().collect()))
    }

    /// Every root (of any sign) of a positive definite form. Uses the exact
    /// bound `x_i^2 <= (S^{-1})_{ii}` where `S` is the symmetrized matrix.
    pub fn all_roots(&self) -> Result<RootSet> {
        if !self.is_positive_definite() {
            return Err(Error::Precondition("form is not positive definite".into()));
        }
        let n = self.n();
        let inv = self
            .symmetric()
            .inverse()
            .ok_or_else(|| Error::Internal("definite form with singular matrix".into()))?;
        let bounds: Vec<i64> = (0..n).map(|i| isqrt_floor(&inv[(i, i)])).collect();
        let mut roots = Vec::new();
        let mut x = vec![0i64; n];
        self.box_search(0, &bounds, &mut x, &mut roots);
        Ok(RootSet::new(roots))
    }

    fn box_search(&self, k: usize, bounds: &[i64], x: &mut Vec<i64>, out: &mut Vec<DimVector>) {
        if k == x.len() {
            if self.value(x) == 1 {
                out.push(x.clone());
            }
            return;
        }
        for v in -bounds[k]..=bounds[k] {
            x[k] = v;
            self.box_search(k + 1, bounds, x, out);
        }
        x[k] = 0;
    }

    /// The form `y -> q(P y)` for an integer matrix `P`; its matrix is
    /// `P^T M P`.
    pub fn pullback(&self, p: &IntMatrix) -> IntMatrix {
        &(&p.transpose() * &self.m) * p
    }
}

fn is_positive_semidefinite(s: &QMatrix) -> bool {
    // LDL^T with symmetric pivoting; a zero pivot must have a zero row.
    let n = s.rows();
    let mut a = s.clone();
    let mut done = vec![false; n];
    for _ in 0..n {
        let Some(k) = (0..n).filter(|&k| !done[k]).find(|&k| !a[(k, k)].is_zero()) else {
            // remaining block has zero diagonal; semidefinite iff it is zero
            return (0..n)
                .filter(|&i| !done[i])
                .all(|i| (0..n).filter(|&j| !done[j]).all(|j| a[(i, j)].is_zero()));
        };
        let p = a[(k, k)];
        if p.is_negative() {
            return false;
        }
        for i in 0..n {
            if done[i] || i == k {
                continue;
            }
            let f = a[(i, k)] / p;
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                if done[j] {
                    continue;
                }
                a[(i, j)] = a[(i, j)] - f * a[(k, j)];
            }
        }
        done[k] = true;
    }
    true
}

fn isqrt_floor(x: &Q) -> i64 {
    assert!(!x.is_negative());
    let mut r = 0i64;
    while Q::from_int((r + 1) * (r + 1)) <= *x {
        r += 1;
    }
    r
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive(v: &[Q]) -> DimVector {
    let lcm = v
        .iter()
        .fold(1i64, |acc, x| num_integer::lcm(acc, x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| x.numer() * (lcm / x.denom())).collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|x| x / g).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    Mixed,
}

pub fn sign_of(x: &[i64]) -> Sign {
    if x.iter().all(|&v| v >= 0) {
        Sign::Positive
    } else if x.iter().all(|&v| v <= 0) {
        Sign::Negative
    } else {
        Sign::Mixed
    }
}

/// A list of vectors (roots of some form) with their sign pattern, kept
/// sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSet {
    roots: Vec<DimVector>,
    signs: Vec<Sign>,
}

impl RootSet {
    pub fn new(mut roots: Vec<DimVector>) -> Self {
        roots.sort();
        roots.dedup();
        let signs = roots.iter().map(|r| sign_of(r)).collect();
        RootSet { roots, signs }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[DimVector] {
        &self.roots
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, Sign)> {
        self.roots.iter().zip(self.signs.iter().copied())
    }

    pub fn count(&self, s: Sign) -> usize {
        self.signs.iter().filter(|&&t| t == s).count()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.roots.binary_search_by(|r| r.as_slice().cmp(x)).is_ok()
    }

    pub fn is_closed_under_negation(&self) -> bool {
        self.roots.iter().all(|r| self.contains(&neg(r)))
    }

    /// Roots that are not unit vectors.
    pub fn non_simple(&self) -> Vec<&DimVector> {
        self.roots
            .iter()
            .filter(|r| !(r.iter().sum::<i64>() == 1 && r.iter().all(|&v| v == 0 || v == 1)))
            .collect()
    }

    /// `{x, -x : x in self}`
    pub fn with_negatives(&self) -> RootSet {
        let mut v = self.roots.clone();
        v.extend(self.roots.iter().map(|r| neg(r)));
        RootSet::new(v)
    }
}

/// The image of a root set under an integer matrix.
pub fn apply_linear(g: &IntMatrix, roots: &RootSet) -> Result<RootSet> {
    if let Some(r) = roots.roots().first() {
        if r.len() != g.cols() {
            return Err(Error::DimensionMismatch {
                expected: g.cols(),
                got: r.len(),
            });
        }
    }
    Ok(RootSet::new(roots.roots().iter().map(|r| g.mul_vec(r)).collect()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub roots_checked: usize,
    pub fibers: usize,
    /// Pairs of roots with the same abs that are not `x = ±x'`.
    pub counterexamples: Vec<(DimVector, DimVector)>,
}

impl FiberReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks that two roots of `f` with the same abs agree up to sign, over a
/// complete root set of a positive definite form.
pub fn abs_fiber_check(f: &UnitForm, roots: &RootSet) -> Result<FiberReport> {
    if !f.is_positive_definite() {
        return Err(Error::Precondition("form is not positive definite".into()));
    }
    if !roots.is_closed_under_negation() {
        return Err(Error::IncompleteRoots);
    }
    let mut fibers: BTreeMap<DimVector, Vec<&DimVector>> = BTreeMap::new();
    for r in roots.roots() {
        if f.value(r) != 1 {
            return Err(Error::Precondition(format!("{r:?} is not a root")));
        }
        fibers.entry(abs_vector(r)).or_default().push(r);
    }
    let mut counterexamples = Vec::new();
    for members in fibers.values() {
        let x = members[0];
        let minus_x = neg(x);
        for &y in &members[1..] {
            if *y != *x && *y != minus_x {
                counterexamples.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(FiberReport {
        roots_checked: roots.len(),
        fibers: fibers.len(),
        counterexamples,
    })
}
