//! Cluster dimension vectors `abs g(x)` and checks of the identities that
//! relate them to torsion decompositions over the hereditary algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::artheory::predecessor_closure;
use crate::bigraph::{BigraphForm, Side};
use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::forms::{abs_fiber_check, RootSet, UnitForm, DEFAULT_ROOT_CAP};
use crate::linrep::{
    build_extension, decompose, end_dim, ext1_dim, hom_dim, split_by_submodule, sum_of_subspaces, Decomposition,
    Representation,
};
use crate::matrix::{QMatrix, Q};
use crate::par::{self, Mode};
use crate::quiver::Quiver;
use crate::tilting::{classify, is_preinjective, is_preprojective, tilting_defect, Classified, GMap, Tag, TiltingModule};
use crate::tilting::{enumerate_tilting, pushforward_form};
use crate::vector::{abs_vector, fmt_vec, is_zero, sub, unit, DimVector};

/// Failures kept per report; the count is always exact.
const KEPT_FAILURES: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub context: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub property: String,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(property: impl Into<String>) -> Self {
        Report {
            property: property.into(),
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// Counts one check, recording a failure when `ok` is false.
    pub fn check(&mut self, ok: bool, context: &str, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(context, detail());
        }
    }

    pub fn fail(&mut self, context: &str, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure {
                context: context.to_string(),
                detail,
            });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}

/// One row of the cluster dimension-vector table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterRecord {
    pub entry: usize,
    pub x: DimVector,
    pub gx: DimVector,
    pub abs: DimVector,
    /// `g(dim tM) - g(dim M/tM)` from the explicit torsion submodule.
    pub route2: DimVector,
    pub tag: Tag,
    pub qb: i64,
    pub torsion_dim: DimVector,
}

/// Torsion data of a module in `M(T)`.
#[derive(Clone, Debug)]
pub struct MixedData {
    pub entry: usize,
    pub sub: Representation,
    pub quotient: Representation,
    /// Summands of `tM` as catalog indices.
    pub sub_parts: Decomposition,
    /// Summands of `M/tM` as catalog indices.
    pub quo_parts: Decomposition,
}

/// Everything computed once per tilting module.
pub struct Analysis<'a> {
    pub cat: &'a Catalog,
    pub t: TiltingModule,
    pub classes: Vec<Classified>,
    pub g: GMap,
    pub qb: UnitForm,
    pub records: Vec<ClusterRecord>,
    pub mixed: Vec<MixedData>,
    /// Nodes of the predecessor closure of the `τ T_i`; absent unless every
    /// summand lies in the knitted preprojective component.
    pub d: Option<BTreeSet<usize>>,
    context: String,
}

impl<'a> Analysis<'a> {
    pub fn new(cat: &'a Catalog, t: TiltingModule) -> Result<Self> {
        if let Some(why) = tilting_defect(cat, &t.summands) {
            return Err(Error::NotTilting(why));
        }
        let classes = classify(cat, &t)?;
        let g = GMap::new(cat, &t)?;
        let qb = pushforward_form(cat, &g)?;
        let context = format!("{} | T = {}", quiver_name(cat.quiver()), t.display(cat));
        let bricks = cat.reps();
        let mut records = Vec::with_capacity(classes.len());
        let mut mixed = Vec::new();
        for c in &classes {
            let m = c.entry;
            let rep = &cat.entry(m).rep;
            let x = rep.dim().clone();
            let parts: Vec<&[QMatrix]> = t.summands.iter().map(|&i| cat.trace(i, m)).collect();
            let split = split_by_submodule(rep, sum_of_subspaces(&x, &parts))?;
            let gx = g.apply(&x);
            let abs = abs_vector(&gx);
            let route2 = sub(&g.apply(split.sub.dim()), &g.apply(split.quotient.dim()));
            records.push(ClusterRecord {
                entry: m,
                qb: qb.value(&abs),
                x,
                gx,
                abs,
                route2,
                tag: c.tag,
                torsion_dim: split.sub.dim().clone(),
            });
            if c.tag == Tag::Mixed {
                mixed.push(MixedData {
                    entry: m,
                    sub_parts: decompose(&split.sub, &bricks)?,
                    quo_parts: decompose(&split.quotient, &bricks)?,
                    sub: split.sub,
                    quotient: split.quotient,
                });
            }
        }
        let d = if is_preprojective(cat, &t) {
            let comp = cat.component();
            let nodes: Option<Vec<usize>> = t.summands.iter().map(|&i| cat.entry(i).node).collect();
            nodes
                .map(|nodes| {
                    let seeds: Vec<usize> = nodes.iter().filter_map(|&v| comp.tau(v)).collect();
                    predecessor_closure(comp, &seeds)
                })
                .transpose()?
        } else {
            None
        };
        Ok(Analysis {
            cat,
            t,
            classes,
            g,
            qb,
            records,
            mixed,
            d,
            context,
        })
    }

    pub fn context(&self) -> &str {
        &self.context
    }

    pub fn label(&self, entry: usize) -> &str {
        self.cat.label(entry)
    }

    pub fn tag(&self, entry: usize) -> Tag {
        self.classes[entry].tag
    }

    /// Whether a catalog entry lies in the predecessor closure `D`.
    pub fn in_d(&self, entry: usize) -> bool {
        match (&self.d, self.cat.entry(entry).node) {
            (Some(d), Some(v)) => d.contains(&v),
            _ => false,
        }
    }

    fn require_preprojective(&self) -> Result<&BTreeSet<usize>> {
        self.d
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("T = {} is not preprojective", self.t.display(self.cat))))
    }

    fn parts_label(&self, d: &Decomposition) -> String {
        if d.is_empty() {
            return "0".into();
        }
        d.summands.iter().map(|&i| self.label(i)).collect::<Vec<_>>().join(" ⊕ ")
    }

    /// `M/tM over tM` in one line.
    pub fn torsion_triple(&self, m: &MixedData) -> String {
        format!("({}) / ({})", self.parts_label(&m.quo_parts), self.parts_label(&m.sub_parts))
    }
}

pub fn quiver_name(q: &Quiver) -> String {
    match q.name() {
        Some(n) => n.to_string(),
        None => q.to_text().replace('\n', "; "),
    }
}

/// The table, after checking that both routes agree on every row.
pub fn cluster_dimvecs<'b>(an: &'b Analysis<'_>) -> Result<&'b [ClusterRecord]> {
    for r in &an.records {
        if r.abs != r.route2 {
            return Err(Error::Internal(format!(
                "{}: abs g{} = {} but the torsion route gives {}",
                an.context,
                fmt_vec(&r.x),
                fmt_vec(&r.abs),
                fmt_vec(&r.route2)
            )));
        }
    }
    Ok(&an.records)
}

/// Both routes agree, and the tags agree with the torsion submodule:
/// `tM = M` exactly for `G`, `tM = 0` exactly for `F`.
pub fn verify_routes(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("two-route");
    for r in &an.records {
        rep.check(r.abs == r.route2, &an.context, || {
            format!(
                "{}: abs g = {}, torsion route = {}",
                an.label(r.entry),
                fmt_vec(&r.abs),
                fmt_vec(&r.route2)
            )
        });
        let expected = match r.tag {
            Tag::G => r.torsion_dim == r.x,
            Tag::F => is_zero(&r.torsion_dim),
            Tag::Mixed => !is_zero(&r.torsion_dim) && r.torsion_dim != r.x,
        };
        rep.check(expected, &an.context, || {
            format!(
                "{} tagged {} has dim tM = {}",
                an.label(r.entry),
                r.tag,
                fmt_vec(&r.torsion_dim)
            )
        });
    }
    rep
}

pub fn verify_separation(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("separation");
    for c in &an.classes {
        let meet: Vec<usize> = c.supp_g.iter().filter(|i| c.supp_f.contains(i)).copied().collect();
        rep.check(meet.is_empty(), &an.context, || {
            format!("{}: supports meet in {:?}", an.label(c.entry), meet)
        });
    }
    rep
}

pub fn verify_lemmas234(an: &Analysis<'_>) -> Result<Report> {
    an.require_preprojective()?;
    let mut rep = Report::new("lemmas234");
    for c in an.classes.iter().filter(|c| c.tag == Tag::F) {
        rep.check(an.in_d(c.entry), &an.context, || {
            format!("{} is in F but not a predecessor of τT", an.label(c.entry))
        });
    }
    for m in &an.mixed {
        let name = an.label(m.entry);
        let all: Vec<usize> = std::iter::once(m.entry)
            .chain(m.sub_parts.summands.iter().copied())
            .chain(m.quo_parts.summands.iter().copied())
            .collect();
        for s in all {
            rep.check(an.in_d(s), &an.context, || format!("{name}: summand {} outside D", an.label(s)));
        }
        let h = hom_dim(&m.quotient, &m.sub);
        rep.check(h == 0, &an.context, || format!("{name}: dim Hom(M/tM, tM) = {h}"));
        let e1 = ext1_dim(&m.sub, &m.sub);
        rep.check(e1 == 0, &an.context, || format!("{name}: dim Ext(tM, tM) = {e1}"));
        let e2 = ext1_dim(&m.quotient, &m.quotient);
        rep.check(e2 == 0, &an.context, || format!("{name}: dim Ext(M/tM, M/tM) = {e2}"));
    }
    Ok(rep)
}

pub fn verify_prop5(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("prop5");
    for m in &an.mixed {
        let r = &an.records[m.entry];
        let (es, eq) = (end_dim(&m.sub) as i64, end_dim(&m.quotient) as i64);
        let expected = 2 * (es + eq) - 1;
        let name = an.label(m.entry);
        rep.check(r.qb == expected, &an.context, || {
            format!("{name}: q_B = {} but End dims {es}, {eq} give {expected}", r.qb)
        });
        rep.check(r.qb >= 3 && r.qb % 2 == 1, &an.context, || format!("{name}: q_B = {}", r.qb));
        let both = m.sub_parts.is_indecomposable() && m.quo_parts.is_indecomposable();
        rep.check((r.qb == 3) == both, &an.context, || {
            format!("{name}: q_B = {} with torsion triple {}", r.qb, an.torsion_triple(m))
        });
    }
    rep
}

/// `x -> abs g(x)` is injective on the catalog.
pub fn verify_theorem1_for(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("thm1");
    let mut seen: BTreeMap<&DimVector, usize> = BTreeMap::new();
    for r in &an.records {
        let prev = seen.insert(&r.abs, r.entry);
        rep.check(prev.is_none(), &an.context, || {
            format!(
                "{} and {} both give {}",
                an.label(prev.unwrap_or(0)),
                an.label(r.entry),
                fmt_vec(&r.abs)
            )
        });
    }
    rep
}

/// Every tilting module of a Dynkin quiver.
pub fn verify_theorem1(cat: &Catalog, mode: Mode) -> Result<Report> {
    let ts = enumerate_tilting(cat)?;
    let reports: Vec<Result<Report>> = par::map(mode, &ts, |t| Ok(verify_theorem1_for(&Analysis::new(cat, t.clone())?)));
    let mut rep = Report::new("thm1");
    for r in reports {
        rep.merge(r?);
    }
    Ok(rep)
}

pub fn verify_theorem2b(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("thm2b");
    for r in &an.records {
        let ok = match r.tag {
            Tag::F | Tag::G => r.qb == 1,
            Tag::Mixed => r.qb >= 3 && r.qb % 2 == 1,
        };
        rep.check(ok, &an.context, || {
            format!("{} tagged {} has q_B = {}", an.label(r.entry), r.tag, r.qb)
        });
    }
    rep
}

/// Mixed modules are bricks, with no maps from the torsionfree part to the
/// torsion part and disjoint supports.
pub fn verify_theorem2c_proxy(an: &Analysis<'_>) -> Result<Report> {
    an.require_preprojective()?;
    let mut rep = Report::new("thm2c-proxy");
    for m in &an.mixed {
        let name = an.label(m.entry);
        let e = end_dim(&an.cat.entry(m.entry).rep);
        rep.check(e == 1, &an.context, || format!("{name}: dim End = {e}"));
        let h = hom_dim(&m.quotient, &m.sub);
        rep.check(h == 0, &an.context, || format!("{name}: dim Hom(M/tM, tM) = {h}"));
        let c = &an.classes[m.entry];
        rep.check(c.supp_g.iter().all(|i| !c.supp_f.contains(i)), &an.context, || {
            format!("{name}: supports meet")
        });
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedPair {
    /// In `F`.
    pub x: usize,
    /// In `G`.
    pub y: usize,
    pub ext: usize,
}

pub fn mixed_pairs(an: &Analysis<'_>) -> Vec<MixedPair> {
    let tagged = |tag| an.classes.iter().filter(move |c| c.tag == tag).map(|c| c.entry);
    let mut out = Vec::new();
    for x in tagged(Tag::F) {
        for y in tagged(Tag::G) {
            let ext = an.cat.ext(x, y);
            if ext > 0 {
                out.push(MixedPair { x, y, ext });
            }
        }
    }
    out
}

pub fn verify_prop6(an: &Analysis<'_>) -> Report {
    let mut rep = Report::new("prop6");
    let cat = an.cat;
    for p in mixed_pairs(an) {
        let name = format!("({}, {})", an.label(p.x), an.label(p.y));
        let (x, y) = (&cat.entry(p.x).rep, &cat.entry(p.y).rep);
        rep.check(p.ext == 1, &an.context, || format!("{name}: dim Ext = {}", p.ext));
        let checks = [
            ("End X", end_dim(x), 1),
            ("End Y", end_dim(y), 1),
            ("Ext(X, X)", ext1_dim(x, x), 0),
            ("Ext(Y, Y)", ext1_dim(y, y), 0),
            ("Hom(X, Y)", hom_dim(x, y), 0),
            ("Hom(Y, X)", hom_dim(y, x), 0),
            ("Ext(Y, X)", ext1_dim(y, x), 0),
        ];
        for (what, got, want) in checks {
            rep.check(got == want, &an.context, || format!("{name}: dim {what} = {got}"));
        }
        let mut coords = vec![Q::from_int(0); p.ext];
        coords[0] = Q::from_int(1);
        match build_extension(x, y, &coords) {
            Ok(m) => {
                let checks = [
                    ("End M", end_dim(&m), 1),
                    ("Ext(X, M)", ext1_dim(x, &m), 0),
                    ("Ext(M, Y)", ext1_dim(&m, y), 0),
                ];
                for (what, got, want) in checks {
                    rep.check(got == want, &an.context, || format!("{name}: dim {what} = {got}"));
                }
            }
            Err(e) => rep.fail(&an.context, format!("{name}: {e}")),
        }
    }
    rep
}

/// The bigraph of `r_E` for `E = Ext^1(F, G ∩ D)`, with its vertices as
/// catalog entries: the F side first, then the `G ∩ D` side.
#[derive(Clone, Debug)]
pub struct REForm {
    pub graph: BigraphForm,
    pub vertices: Vec<usize>,
    pub f_count: usize,
}

impl REForm {
    pub fn form(&self) -> UnitForm {
        self.graph.to_form()
    }

    fn position(&self, entry: usize) -> Option<usize> {
        self.vertices.iter().position(|&v| v == entry)
    }
}

pub fn build_re(an: &Analysis<'_>) -> Result<REForm> {
    an.require_preprojective()?;
    let f: Vec<usize> = an.classes.iter().filter(|c| c.tag == Tag::F).map(|c| c.entry).collect();
    let gd: Vec<usize> = an
        .classes
        .iter()
        .filter(|c| c.tag == Tag::G && an.in_d(c.entry))
        .map(|c| c.entry)
        .collect();
    let vertices: Vec<usize> = f.iter().chain(&gd).copied().collect();
    let labels = vertices.iter().map(|&v| an.label(v).to_string()).collect();
    let sides = f.iter().map(|_| Side::A).chain(gd.iter().map(|_| Side::B)).collect();
    let mut graph = BigraphForm::new(labels, sides);
    let cat = an.cat;
    for (a, &x) in f.iter().enumerate() {
        for (b, &y) in gd.iter().enumerate() {
            let e = cat.ext(x, y);
            if e > 0 {
                graph.add_solid(a, f.len() + b, e as u32)?;
            }
        }
    }
    for (offset, side) in [(0, &f), (f.len(), &gd)] {
        for a in 0..side.len() {
            for b in a + 1..side.len() {
                let h = cat.hom(side[a], side[b]) + cat.hom(side[b], side[a]);
                if h > 0 {
                    graph.add_dotted(offset + a, offset + b, h as u32)?;
                }
            }
        }
    }
    Ok(REForm {
        graph,
        vertices,
        f_count: f.len(),
    })
}

/// Positive roots with the default cap, retried once at twice the cap.
pub fn roots_with_retry(f: &UnitForm, cap: i64) -> Result<RootSet> {
    match f.positive_roots(cap) {
        Err(Error::Frontier { .. }) => f.positive_roots(2 * cap),
        other => other,
    }
}

/// Coordinate vector of a mixed module over the `r_E` vertices: the
/// summands of `M/tM` on the F side and of `tM` on the other.
pub fn coordinate_vector(re: &REForm, m: &MixedData) -> std::result::Result<DimVector, String> {
    let mut v = vec![0; re.vertices.len()];
    for (parts, range) in [(&m.quo_parts, 0..re.f_count), (&m.sub_parts, re.f_count..re.vertices.len())] {
        for &s in &parts.summands {
            match re.position(s).filter(|p| range.contains(p)) {
                Some(p) => v[p] += 1,
                None => return Err(format!("summand #{s} is not a vertex on its side")),
            }
        }
    }
    Ok(v)
}

pub fn verify_prop4(an: &Analysis<'_>, cap: i64) -> Result<Report> {
    let re = build_re(an)?;
    let mut rep = Report::new("prop4");
    let roots = match roots_with_retry(&re.form(), cap) {
        Ok(r) => r,
        Err(Error::NotWeaklyPositive(w)) => {
            rep.fail(&an.context, format!("r_E is not weakly positive: witness {}", fmt_vec(&w)));
            return Ok(rep);
        }
        Err(e) => return Err(e),
    };
    let non_simple: BTreeSet<DimVector> = roots.non_simple().into_iter().cloned().collect();
    rep.check(non_simple.len() == an.mixed.len(), &an.context, || {
        format!("{} non-simple roots of r_E, {} mixed modules", non_simple.len(), an.mixed.len())
    });
    let form = re.form();
    let mut decoded = BTreeSet::new();
    for m in &an.mixed {
        let name = an.label(m.entry);
        match coordinate_vector(&re, m) {
            Ok(v) => {
                rep.check(form.value(&v) == 1 && non_simple.contains(&v), &an.context, || {
                    format!("{name}: coordinate vector {} is not a non-simple root", fmt_vec(&v))
                });
                rep.check(decoded.insert(v.clone()), &an.context, || {
                    format!("{name}: coordinate vector {} repeats", fmt_vec(&v))
                });
            }
            Err(e) => rep.fail(&an.context, format!("{name}: {e}")),
        }
    }
    Ok(rep)
}

/// Fibers of `abs` on the roots of `q_A` and of `q_B`.
pub fn verify_prop7(an: &Analysis<'_>) -> Result<Report> {
    let mut rep = Report::new("prop7");
    let qa = UnitForm::new(an.cat.euler().matrix().clone())?;
    for (name, f) in [("q_A", &qa), ("q_B", &an.qb)] {
        if !f.is_positive_definite() {
            return Err(Error::Precondition(format!("{name} is not positive definite")));
        }
        let fibers = abs_fiber_check(f, &f.all_roots()?)?;
        rep.checked += fibers.roots_checked;
        for (a, b) in fibers.counterexamples {
            rep.fail(&an.context, format!("{name}: abs {} = abs {}", fmt_vec(&a), fmt_vec(&b)));
        }
    }
    Ok(rep)
}

/// Runs every per-module check that applies to a preprojective `T`.
pub fn verify_all(an: &Analysis<'_>, cap: i64) -> Result<Vec<Report>> {
    Ok(vec![
        verify_routes(an),
        verify_theorem1_for(an),
        verify_separation(an),
        verify_lemmas234(an)?,
        verify_prop5(an),
        verify_theorem2b(an),
        verify_theorem2c_proxy(an)?,
        verify_prop6(an),
        verify_prop4(an, cap)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularWitness {
    pub dim: DimVector,
    pub hom: usize,
    pub ext: usize,
    /// The module in the representation text format.
    pub module: String,
    pub attempts: usize,
}

/// Outcome of the bounded search; `None` means inconclusive.
#[derive(Clone, Debug, Serialize)]
pub struct RegularSearch {
    pub witness: Option<RegularWitness>,
    pub candidates: usize,
}

/// Random representations tried per dimension vector.
const ATTEMPTS_PER_DIM: usize = 24;

/// Searches for a regular brick `M` with `Hom(T, M) != 0 != Ext^1(T, M)`
/// among representations with defect zero and coordinates at most `bound`.
/// Bricks of defect zero over a tame quiver are regular. Representations are
/// drawn at random from `seed`, with sparse entries in `{-1, 0, 1}`.
pub fn find_regular_mixed(cat: &Catalog, t: &TiltingModule, bound: i64, seed: u64) -> Result<RegularSearch> {
    let q = cat.quiver().clone();
    let qa = UnitForm::new(cat.euler().matrix().clone())?;
    let delta = qa
        .tame_radical()
        .ok_or_else(|| Error::Precondition("quiver is not of extended Dynkin type".into()))?;
    if let Some(why) = tilting_defect(cat, &t.summands) {
        return Err(Error::NotTilting(why));
    }
    if is_preprojective(cat, t) || is_preinjective(cat, t) {
        return Err(Error::Precondition(
            "T is preprojective or preinjective; M(T) has no regular modules".into(),
        ));
    }
    let e = cat.euler();
    let mut dims = Vec::new();
    let n = q.n();
    let mut x = vec![0i64; n];
    box_vectors(0, bound, &mut x, &mut dims);
    dims.retain(|x| !is_zero(x) && e.bilinear(&delta, x) == 0 && e.quadratic(x) <= 1);
    dims.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
    let summands: Vec<&Representation> = t.summands.iter().map(|&i| &cat.entry(i).rep).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = 0;
    for x in &dims {
        for attempt in 0..ATTEMPTS_PER_DIM {
            let m = random_rep(&q, x, &mut rng);
            if end_dim(&m) != 1 {
                continue;
            }
            candidates += 1;
            let hom: usize = summands.iter().map(|s| hom_dim(s, &m)).sum();
            let ext: usize = summands.iter().map(|s| ext1_dim(s, &m)).sum();
            if hom > 0 && ext > 0 {
                return Ok(RegularSearch {
                    witness: Some(RegularWitness {
                        dim: x.clone(),
                        hom,
                        ext,
                        module: m.to_text(),
                        attempts: attempt + 1,
                    }),
                    candidates,
                });
            }
        }
    }
    Ok(RegularSearch {
        witness: None,
        candidates,
    })
}

fn box_vectors(k: usize, bound: i64, x: &mut Vec<i64>, out: &mut Vec<DimVector>) {
    if k == x.len() {
        out.push(x.clone());
        return;
    }
    for v in 0..=bound {
        x[k] = v;
        box_vectors(k + 1, bound, x, out);
    }
    x[k] = 0;
}

/// A representation with sparse random entries in `{-1, 0, 1}`.
pub fn random_rep(q: &Arc<Quiver>, dim: &[i64], rng: &mut ChaCha8Rng) -> Representation {
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            let (r, c) = (dim[t] as usize, dim[s] as usize);
            let entries: Vec<i64> = (0..r * c)
                .map(|_| match rng.gen_range(0..4) {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                })
                .collect();
            QMatrix::from_i64(r, c, &entries)
        })
        .collect();
    Representation::new(q.clone(), dim.to_vec(), maps).expect("shapes follow the dimension vector")
}

/// Rigid bricks of defect zero found by random search, one per dimension
/// vector with coordinates at most `bound`.
pub fn rigid_regular_bricks(cat: &Catalog, bound: i64, seed: u64) -> Result<Vec<Representation>> {
    let q = cat.quiver().clone();
    let qa = UnitForm::new(cat.euler().matrix().clone())?;
    let delta = qa
        .tame_radical()
        .ok_or_else(|| Error::Precondition("quiver is not of extended Dynkin type".into()))?;
    let e = cat.euler();
    let mut dims = Vec::new();
    let mut x = vec![0i64; q.n()];
    box_vectors(0, bound, &mut x, &mut dims);
    dims.retain(|x| !is_zero(x) && e.bilinear(&delta, x) == 0 && e.quadratic(x) == 1);
    dims.sort_by_key(|x| (x.iter().sum::<i64>(), x.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for x in dims {
        for _ in 0..ATTEMPTS_PER_DIM {
            let m = random_rep(&q, &x, &mut rng);
            if end_dim(&m) == 1 && ext1_dim(&m, &m) == 0 {
                out.push(m);
                break;
            }
        }
    }
    Ok(out)
}

/// A value pattern of a pushed-forward form on a set of cluster dimension
/// vectors: the set itself and the vectors where the form takes value 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuePattern {
    pub vectors: BTreeSet<DimVector>,
    pub threes: BTreeSet<DimVector>,
}

/// The two patterns for the ten cluster dimension vectors of a cluster-tilted
/// algebra of type A4 whose quiver is the oriented triangle
/// `top -> bottom -> middle -> top` with an arrow `right -> middle`; vertices
/// ordered top, bottom, middle, right. The three-dimensional modules are the
/// uniserial `right -> middle -> top` and `bottom, right -> middle`.
pub fn a4_patterns() -> [ValuePattern; 2] {
    let vectors: BTreeSet<DimVector> = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
        [1, 0, 1, 1],
        [0, 1, 1, 1],
    ]
    .iter()
    .map(|v| v.to_vec())
    .collect();
    let set = |vs: &[[i64; 4]]| vs.iter().map(|v| v.to_vec()).collect::<BTreeSet<_>>();
    [
        ValuePattern {
            vectors: vectors.clone(),
            threes: set(&[[1, 1, 0, 0]]),
        },
        ValuePattern {
            vectors,
            threes: set(&[[0, 1, 1, 0], [0, 1, 1, 1]]),
        },
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct PatternHit {
    pub quiver: Quiver,
    /// Summand labels in the order that gives the pattern's basis.
    pub summands: Vec<String>,
    pub qb: Vec<Vec<i64>>,
}

/// All (orientation, tilting module, ordering of its summands) triples whose
/// cluster dimension vectors and `q_B` values match `pattern`.
pub fn pattern_search(quivers: &[Quiver], pattern: &ValuePattern, mode: Mode) -> Result<Vec<PatternHit>> {
    let per_quiver: Vec<Result<Vec<PatternHit>>> = par::map(mode, quivers, |q| {
        let cat = Catalog::dynkin(Arc::new(q.clone()), Mode::Sequential)?;
        let mut hits = Vec::new();
        for t in enumerate_tilting(&cat)? {
            for perm in permutations(t.len()) {
                let ordered = TiltingModule::new(perm.iter().map(|&i| t.summands[i]).collect());
                let g = GMap::new(&cat, &ordered)?;
                let qb = pushforward_form(&cat, &g)?;
                let vectors: BTreeSet<DimVector> = cat.entries().iter().map(|e| abs_vector(&g.apply(e.dim()))).collect();
                if vectors != pattern.vectors {
                    continue;
                }
                let threes: BTreeSet<DimVector> = vectors.iter().filter(|v| qb.value(v) == 3).cloned().collect();
                let rest_ok = vectors.iter().all(|v| threes.contains(v) || qb.value(v) == 1);
                if threes == pattern.threes && rest_ok {
                    hits.push(PatternHit {
                        quiver: q.clone(),
                        summands: ordered.labels(&cat),
                        qb: qb.matrix().to_rows(),
                    });
                }
            }
        }
        Ok(hits)
    });
    let mut out = Vec::new();
    for h in per_quiver {
        out.extend(h?);
    }
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Every orientation of a tree given by its edges, named `{base}#{k}` with
/// bit `i` of `k` reversing edge `i`.
pub fn orientations(base: &str, n: usize, edges: &[(usize, usize)]) -> Vec<Quiver> {
    (0..1usize << edges.len())
        .map(|mask| {
            let arrows: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            Quiver::numbered(n, &arrows)
                .expect("orientations of a tree are acyclic")
                .with_name(format!("{base}#{mask}"))
        })
        .collect()
}

pub fn type_a(n: usize) -> Vec<Quiver> {
    let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    orientations(&format!("A{n}"), n, &edges)
}

pub fn type_d(n: usize) -> Vec<Quiver> {
    let mut edges: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
    edges.push((n - 3, n - 1));
    orientations(&format!("D{n}"), n, &edges)
}

/// All orientations of A2 through A6, D4 and D5.
pub fn suite_quivers() -> Vec<Quiver> {
    let mut out: Vec<Quiver> = (2..=6).flat_map(type_a).collect();
    out.extend(type_d(4));
    out.extend(type_d(5));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub quivers: usize,
    pub tilting_modules: usize,
    pub mixed_modules: usize,
    /// Reports keyed by property name.
    pub reports: BTreeMap<String, Report>,
}

impl SuiteReport {
    pub fn report(&self, property: &str) -> Option<&Report> {
        self.reports.get(property)
    }
}

/// Builds the catalogs of `quivers`, then runs every check on every tilting
/// module, in parallel over `(quiver, T)` pairs when `mode` allows.
pub fn run_suite(quivers: &[Quiver], mode: Mode) -> Result<SuiteReport> {
    let cats: Vec<Catalog> = par::map(mode, quivers, |q| Catalog::dynkin(Arc::new(q.clone()), Mode::Sequential))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut reports: BTreeMap<String, Report> = BTreeMap::new();
    let mut add = |r: Report| match reports.get_mut(&r.property) {
        Some(acc) => acc.merge(r),
        None => {
            reports.insert(r.property.clone(), r);
        }
    };
    let mut jobs = Vec::new();
    for (ci, cat) in cats.iter().enumerate() {
        let name = quiver_name(cat.quiver());
        let comp = cat.component();
        let mut mesh = Report::new("mesh");
        for id in comp.mesh_violations() {
            mesh.fail(&name, format!("mesh fails at node {id}"));
        }
        mesh.checked += comp.len();
        add(mesh);
        let mut cox = Report::new("coxeter");
        for id in comp.coxeter_violations(cat.coxeter()) {
            cox.fail(&name, format!("Φ fails at node {id}"));
        }
        cox.checked += comp.len();
        add(cox);
        let mut gabriel = Report::new("gabriel");
        let roots = UnitForm::new(cat.euler().matrix().clone())?.positive_roots(DEFAULT_ROOT_CAP)?;
        let dims: BTreeSet<&DimVector> = cat.entries().iter().map(|e| e.dim()).collect();
        gabriel.check(
            dims.len() == cat.len() && cat.len() == roots.len() && roots.roots().iter().all(|r| dims.contains(r)),
            &name,
            || format!("{} indecomposables, {} positive roots", cat.len(), roots.len()),
        );
        add(gabriel);
        for t in enumerate_tilting(cat)? {
            jobs.push((ci, t));
        }
    }
    let results: Vec<Result<(usize, Vec<Report>)>> = par::map(mode, &jobs, |(ci, t)| {
        let an = Analysis::new(&cats[*ci], t.clone())?;
        Ok((an.mixed.len(), verify_all(&an, DEFAULT_ROOT_CAP)?))
    });
    let mut mixed_modules = 0;
    for r in results {
        let (m, rs) = r?;
        mixed_modules += m;
        rs.into_iter().for_each(&mut add);
    }
    Ok(SuiteReport {
        quivers: quivers.len(),
        tilting_modules: jobs.len(),
        mixed_modules,
        reports,
    })
}

/// `g` for the tilting module of all projectives is the identity; used by
/// tests as a sanity anchor.
pub fn projective_tilting(cat: &Catalog) -> Result<TiltingModule> {
    let n = cat.quiver().n();
    let summands = (0..n)
        .map(|v| cat.find_dim(cat.quiver().path_counts().row(v)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("projective missing from catalog".into()))?;
    Ok(TiltingModule::new(summands))
}

/// Basis vector check used by callers that print `r_E` roots.
pub fn is_basis_vector(v: &[i64]) -> bool {
    (0..v.len()).any(|i| v == unit(v.len(), i).as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_quiver;

    fn t33() -> Catalog {
        let q = parse_quiver("vertices: 1 2 2' 3 3'\narrows: 2->1 2'->1 3->2 3'->2'").unwrap();
        Catalog::dynkin(Arc::new(q), Mode::Sequential).unwrap()
    }

    #[test]
    fn permutations_are_complete() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        assert_eq!(p.iter().collect::<BTreeSet<_>>().len(), 24);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn suite_shape() {
        let qs = suite_quivers();
        assert_eq!(qs.len(), 2 + 4 + 8 + 16 + 32 + 8 + 16);
        assert!(qs.iter().all(|q| crate::artheory::is_dynkin(q).is_some()));
    }

    #[test]
    fn projective_tilting_module_gives_identity_table() {
        let c = t33();
        let an = Analysis::new(&c, projective_tilting(&c).unwrap()).unwrap();
        for r in cluster_dimvecs(&an).unwrap() {
            assert_eq!(r.abs, r.x);
            assert_eq!(r.qb, 1);
        }
        assert!(an.mixed.is_empty());
        let re = build_re(&an).unwrap();
        assert_eq!(re.f_count, 0);
        assert!(verify_prop4(&an, 6).unwrap().passed());
    }

    #[test]
    fn distinguished_module_checks() {
        let c = t33();
        let t = TiltingModule::new(c.resolve_list("P1,P3,P3',I3,I3'").unwrap());
        let an = Analysis::new(&c, t).unwrap();
        for r in verify_all(&an, 6).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
        assert_eq!(mixed_pairs(&an).len(), 4);
        let mut values: Vec<i64> = an.mixed.iter().map(|m| an.records[m.entry].qb).collect();
        values.sort();
        assert_eq!(values, vec![3, 3, 3, 3, 5]);
    }

    #[test]
    fn report_keeps_exact_count() {
        let mut r = Report::new("x");
        for i in 0..40 {
            r.check(i % 2 == 0, "c", || "bad".into());
        }
        assert_eq!((r.checked, r.failure_count, r.failures.len()), (40, 20, 20));
        assert!(!r.passed());
    }
}
