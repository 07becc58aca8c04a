//! Tilting modules over a catalog, the torsion classes they define, and the
//! base change `g` to the Grothendieck group of `B = End(T)`.

use std::fmt;

use serde::Serialize;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::forms::UnitForm;
use crate::matrix::{IntMatrix, QMatrix};
use crate::vector::DimVector;

/// Summands as catalog indices. The order fixes the basis of `K_0(B)`:
/// the i-th summand gives the i-th vertex of `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TiltingModule {
    pub summands: Vec<usize>,
}

impl TiltingModule {
    pub fn new(summands: Vec<usize>) -> Self {
        TiltingModule { summands }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The same module with summands in increasing catalog order.
    pub fn canonical(&self) -> TiltingModule {
        let mut s = self.summands.clone();
        s.sort_unstable();
        TiltingModule { summands: s }
    }

    pub fn labels(&self, cat: &Catalog) -> Vec<String> {
        self.summands.iter().map(|&i| cat.label(i).to_string()).collect()
    }

    pub fn display<'a>(&'a self, cat: &'a Catalog) -> impl fmt::Display + 'a {
        DisplayT(self, cat)
    }
}

struct DisplayT<'a>(&'a TiltingModule, &'a Catalog);

impl fmt::Display for DisplayT<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.labels(self.1).join(" ⊕ "))
    }
}

/// Why a list of summands fails to be tilting, if it does.
pub fn tilting_defect(cat: &Catalog, summands: &[usize]) -> Option<String> {
    let n = cat.quiver().n();
    if summands.len() != n {
        return Some(format!("{} summands, expected {n}", summands.len()));
    }
    for (a, &i) in summands.iter().enumerate() {
        for &j in &summands[a + 1..] {
            if i == j {
                return Some(format!("{} is repeated", cat.label(i)));
            }
        }
        for &j in summands {
            if cat.ext(i, j) != 0 {
                return Some(format!("Ext^1({}, {}) != 0", cat.label(i), cat.label(j)));
            }
        }
    }
    let cols: Vec<Vec<crate::matrix::Q>> = summands
        .iter()
        .map(|&i| cat.entry(i).dim().iter().map(|&x| x.into()).collect())
        .collect();
    if QMatrix::from_columns(n, &cols).rank() != n {
        return Some("dimension vectors are not a basis".into());
    }
    None
}

pub fn is_tilting(cat: &Catalog, summands: &[usize]) -> bool {
    tilting_defect(cat, summands).is_none()
}

/// Checks the summands and wraps them.
pub fn tilting_module(cat: &Catalog, summands: Vec<usize>) -> Result<TiltingModule> {
    match tilting_defect(cat, &summands) {
        None => Ok(TiltingModule::new(summands)),
        Some(why) => Err(Error::NotTilting(why)),
    }
}

/// Every tilting module of a Dynkin quiver, summands in increasing catalog
/// order, the list sorted lexicographically.
pub fn enumerate_tilting(cat: &Catalog) -> Result<Vec<TiltingModule>> {
    if !cat.is_complete() {
        return Err(Error::NotDynkin);
    }
    Ok(tilting_among(cat))
}

/// Tilting modules all of whose summands are catalog entries. Complete only
/// when the catalog is.
pub fn tilting_among(cat: &Catalog) -> Vec<TiltingModule> {
    let m = cat.len();
    let compatible: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| cat.ext(i, j) == 0 && cat.ext(j, i) == 0).collect())
        .collect();
    let candidates: Vec<usize> = (0..m).filter(|&i| compatible[i][i]).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    clique(cat, &compatible, &candidates, 0, &mut stack, &mut out);
    out
}

fn clique(
    cat: &Catalog,
    compatible: &[Vec<bool>],
    candidates: &[usize],
    from: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<TiltingModule>,
) {
    if stack.len() == cat.quiver().n() {
        if is_tilting(cat, stack) {
            out.push(TiltingModule::new(stack.clone()));
        }
        return;
    }
    for (k, &c) in candidates.iter().enumerate().skip(from) {
        if stack.iter().all(|&s| compatible[s][c]) {
            stack.push(c);
            clique(cat, compatible, candidates, k + 1, stack, out);
            stack.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tag {
    /// `Hom(T, M) = 0`
    F,
    /// `Ext^1(T, M) = 0`
    G,
    /// Both nonzero.
    Mixed,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::F => "F",
            Tag::G => "G",
            Tag::Mixed => "M",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub entry: usize,
    pub tag: Tag,
    pub hom: usize,
    pub ext: usize,
    /// Positions `i` in `T` with `Hom(T_i, M) != 0`.
    pub supp_g: Vec<usize>,
    /// Positions `i` in `T` with `Ext^1(T_i, M) != 0`.
    pub supp_f: Vec<usize>,
}

/// Tags every catalog entry.
pub fn classify(cat: &Catalog, t: &TiltingModule) -> Result<Vec<Classified>> {
    (0..cat.len())
        .map(|m| {
            let supp_g: Vec<usize> = (0..t.len()).filter(|&i| cat.hom(t.summands[i], m) > 0).collect();
            let supp_f: Vec<usize> = (0..t.len()).filter(|&i| cat.ext(t.summands[i], m) > 0).collect();
            let hom: usize = t.summands.iter().map(|&i| cat.hom(i, m)).sum();
            let ext: usize = t.summands.iter().map(|&i| cat.ext(i, m)).sum();
            let tag = match (hom, ext) {
                (0, 0) => {
                    return Err(Error::Internal(format!(
                        "{} is annihilated by Hom and Ext of T",
                        cat.label(m)
                    )))
                }
                (0, _) => Tag::F,
                (_, 0) => Tag::G,
                _ => Tag::Mixed,
            };
            Ok(Classified {
                entry: m,
                tag,
                hom,
                ext,
                supp_g,
                supp_f,
            })
        })
        .collect()
}

/// `g(x) = (<dim T_i, x>)_i` and its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GMap {
    pub matrix: IntMatrix,
    pub inverse: IntMatrix,
}

impl GMap {
    pub fn new(cat: &Catalog, t: &TiltingModule) -> Result<Self> {
        let e = cat.euler().matrix();
        let rows: Vec<Vec<i64>> = t
            .summands
            .iter()
            .map(|&i| e.transpose().mul_vec(cat.entry(i).dim()))
            .collect();
        let matrix = IntMatrix::from_rows(&rows);
        let inverse = matrix
            .inverse()
            .ok_or_else(|| Error::NotTilting("g is not invertible over the integers".into()))?;
        Ok(GMap { matrix, inverse })
    }

    pub fn apply(&self, x: &[i64]) -> DimVector {
        self.matrix.mul_vec(x)
    }

    pub fn apply_inv(&self, y: &[i64]) -> DimVector {
        self.inverse.mul_vec(y)
    }
}

/// The form `q_B(y) = q_A(g^{-1} y)` as the matrix `g^{-T} E g^{-1}`.
pub fn pushforward_form(cat: &Catalog, g: &GMap) -> Result<UnitForm> {
    let e = cat.euler().matrix();
    let m = &(&g.inverse.transpose() * e) * &g.inverse;
    UnitForm::new(m)
}

/// Every summand preprojective. Automatic for Dynkin quivers; for other
/// quivers, membership in the knitted component.
pub fn is_preprojective(cat: &Catalog, t: &TiltingModule) -> bool {
    t.summands.iter().all(|&i| cat.is_preprojective(i))
}

pub fn is_preinjective(cat: &Catalog, t: &TiltingModule) -> bool {
    t.summands.iter().all(|&i| cat.is_preinjective(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::par::Mode;
    use crate::quiver::{parse_quiver, Quiver};
    use crate::vector::{unit, DimVector};
    use std::sync::Arc;

    fn cat(q: Quiver) -> Catalog {
        Catalog::dynkin(Arc::new(q), Mode::Sequential).unwrap()
    }

    fn t33() -> Catalog {
        cat(parse_quiver("vertices: 1 2 2' 3 3'\narrows: 2->1 2'->1 3->2 3'->2'").unwrap())
    }

    /// Oracle: all n-subsets, each checked by the invariants.
    fn brute_force_count(c: &Catalog) -> usize {
        let m = c.len();
        let n = c.quiver().n();
        (0u32..1 << m)
            .filter(|s| s.count_ones() as usize == n)
            .filter(|s| {
                let idx: Vec<usize> = (0..m).filter(|i| s >> i & 1 == 1).collect();
                idx.iter().all(|&i| idx.iter().all(|&j| c.ext(i, j) == 0))
            })
            .count()
    }

    #[test]
    fn counts_on_small_quivers() {
        let a2 = cat(Quiver::numbered(2, &[(1, 0)]).unwrap());
        assert_eq!(enumerate_tilting(&a2).unwrap().len(), 2);
        assert_eq!(brute_force_count(&a2), 2);
        let a4 = cat(Quiver::numbered(4, &[(0, 1), (2, 1), (2, 3)]).unwrap());
        assert_eq!(enumerate_tilting(&a4).unwrap().len(), 14);
        assert_eq!(brute_force_count(&a4), 14);
        let c = t33();
        assert_eq!(enumerate_tilting(&c).unwrap().len(), 42);
        assert_eq!(brute_force_count(&c), 42);
    }

    #[test]
    fn distinguished_module_and_projectives() {
        let c = t33();
        assert!(!is_tilting(&c, &[0; 5]));
        let proj = c.resolve_list("P1,P2,P2',P3,P3'").unwrap();
        assert!(is_tilting(&c, &proj));
        let t = c.resolve_list("P1,P3,P3',I3,I3'").unwrap();
        assert!(is_tilting(&c, &t));
        // swap I(3) for an entry that has an extension with one of the others
        let y = (0..c.len())
            .find(|&y| !t.contains(&y) && [0, 1, 2, 4].iter().any(|&k| c.ext(t[k], y) + c.ext(y, t[k]) > 0))
            .unwrap();
        let mut bad = t.clone();
        bad[3] = y;
        assert!(!is_tilting(&c, &bad));
    }

    #[test]
    fn classification_of_distinguished_module() {
        let c = t33();
        let t = tilting_module(&c, c.resolve_list("P1,P3,P3',I3,I3'").unwrap()).unwrap();
        let cl = classify(&c, &t).unwrap();
        let of = |tag| cl.iter().filter(|x| x.tag == tag).map(|x| c.label(x.entry)).collect::<Vec<_>>();
        let mut f = of(Tag::F);
        f.sort();
        let mut want = vec!["τI(3)", "τI(3')"];
        want.sort();
        assert_eq!(f, want);
        assert_eq!(of(Tag::Mixed).len(), 5);
        assert_eq!(of(Tag::G).len(), 8);
    }

    #[test]
    fn projective_tilting_module() {
        let c = t33();
        let t = tilting_module(&c, c.resolve_list("P1,P2,P2',P3,P3'").unwrap()).unwrap();
        let cl = classify(&c, &t).unwrap();
        assert!(cl.iter().all(|x| x.tag == Tag::G));
        let g = GMap::new(&c, &t).unwrap();
        // rows <P(i), -> give the dimension vector coordinates
        for x in c.entries() {
            assert_eq!(&g.apply(x.dim()), x.dim());
        }
        assert_eq!(pushforward_form(&c, &g).unwrap().matrix(), c.euler().matrix());
    }

    #[test]
    fn g_is_an_isometry_and_sends_summands_to_projective_dims() {
        let c = t33();
        let t = tilting_module(&c, c.resolve_list("P1,P3,P3',I3,I3'").unwrap()).unwrap();
        let g = GMap::new(&c, &t).unwrap();
        let qb = pushforward_form(&c, &g).unwrap();
        for e in c.entries() {
            assert_eq!(qb.value(&g.apply(e.dim())), c.euler().quadratic(e.dim()));
            assert_eq!(g.apply_inv(&g.apply(e.dim())), *e.dim());
        }
        for (j, &tj) in t.summands.iter().enumerate() {
            let col: DimVector = t.summands.iter().map(|&ti| c.hom(ti, tj) as i64).collect();
            assert_eq!(g.apply(c.entry(tj).dim()), col);
            assert_eq!(qb.value(&unit(5, j)), 1);
        }
        let ti3 = c.resolve("tI3").unwrap();
        assert!(g.apply(c.entry(ti3).dim()).iter().all(|&v| v <= 0));
    }

    #[test]
    fn non_dynkin_enumeration_is_refused() {
        let q = Arc::new(Quiver::numbered(2, &[(1, 0), (1, 0)]).unwrap());
        let c = Catalog::truncated(q, 2, vec![], Mode::Sequential).unwrap();
        assert_eq!(enumerate_tilting(&c), Err(Error::NotDynkin));
    }
}
