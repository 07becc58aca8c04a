use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use qcw::artheory::is_dynkin;
use qcw::catalog::Catalog;
use qcw::cluster::{
    a4_patterns, build_re, cluster_dimvecs, find_regular_mixed, pattern_search, quiver_name, rigid_regular_bricks,
    verify_lemmas234, verify_prop4, verify_prop5, verify_prop6, verify_prop7, verify_separation,
    verify_theorem1_for, verify_theorem2b, verify_theorem2c_proxy, Analysis, Report,
};
use qcw::forms::UnitForm;
use qcw::par::{self, Mode};
use qcw::quiver::underlying_edges;
use qcw::tilting::{classify, is_preinjective, is_preprojective, tilting_among, tilting_module, TiltingModule};
use qcw::{parse_quiver, Quiver};

use crate::output::{render_all, Cell, Table};
use crate::{Cli, Command, Format, GraphKind, Options, Property};

/// Any input problem; maps to exit status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub struct Output {
    pub text: String,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<Output, InputError> {
    let o = &cli.opts;
    let json = o.format == Format::Json;
    let tables = |tables: Vec<Table>| Output {
        text: render_all(&tables, json),
        passed: true,
    };
    match &cli.command {
        Command::Roots { quiver } => Ok(tables(vec![roots(&load_quiver(quiver)?, o)?])),
        Command::Tilt { quiver, spec } => {
            let cat = load_catalog(quiver, o)?;
            Ok(tables(vec![match spec {
                Some(s) => classification(&cat, &spec_module(&cat, s)?)?,
                None => enumeration(&cat)?,
            }]))
        }
        Command::Cluster {
            quiver,
            spec,
            seed_search,
        } => {
            if *seed_search {
                return Ok(tables(seed_search_tables(&load_quiver(quiver)?, o)?));
            }
            let cat = load_catalog(quiver, o)?;
            let s = spec.as_deref().ok_or(InputError("cluster needs a tilting spec or --seed-search".into()))?;
            Ok(tables(vec![cluster_table(&cat, &spec_module(&cat, s)?)?]))
        }
        Command::Verify {
            quiver,
            spec,
            all,
            property,
        } => {
            let cat = load_catalog(quiver, o)?;
            let modules = match (spec, all) {
                (Some(_), true) => return Err(InputError("give either a spec or --all, not both".into())),
                (Some(s), false) => vec![spec_module(&cat, s)?],
                (None, _) => tilting_among(&cat),
            };
            let props: Vec<Property> = if property.is_empty() {
                default_properties(&cat)
            } else {
                let mut p = property.clone();
                p.sort();
                p.dedup();
                p
            };
            let reports = verify(&cat, &modules, &props, o)?;
            let passed = reports.iter().all(Report::passed);
            let mut out = tables(report_tables(&reports));
            out.passed = passed;
            Ok(out)
        }
        Command::Graph { quiver, spec, kind } => {
            let cat = load_catalog(quiver, o)?;
            let name = quiver_name(cat.quiver());
            let text = match kind {
                GraphKind::Ar => cat.component().to_dot(cat.quiver(), &name),
                GraphKind::Re => {
                    let s = spec.as_deref().ok_or(InputError("graph --kind re needs a tilting spec".into()))?;
                    let an = Analysis::new(&cat, spec_module(&cat, s)?)?;
                    build_re(&an)?.graph.to_dot(&name)
                }
            };
            Ok(Output { text, passed: true })
        }
    }
}

fn mode(o: &Options) -> Mode {
    if o.sequential {
        Mode::Sequential
    } else {
        Mode::Parallel
    }
}

fn load_quiver(path: &std::path::Path) -> Result<Quiver, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let q = parse_quiver(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    if !q.is_connected() {
        eprintln!("warning: quiver is not connected");
    }
    Ok(q)
}

/// Dynkin quivers get the full catalog; otherwise a truncated one, with the
/// rigid regular bricks added when the quiver is tame.
fn load_catalog(path: &std::path::Path, o: &Options) -> Result<Catalog, InputError> {
    let q = Arc::new(load_quiver(path)?);
    if is_dynkin(&q).is_some() {
        return Ok(Catalog::dynkin(q, mode(o))?);
    }
    let plain = Catalog::truncated(q.clone(), o.depth, vec![], mode(o))?;
    let tame = UnitForm::new(plain.euler().matrix().clone())?.tame_radical().is_some();
    if !tame {
        return Ok(plain);
    }
    let bricks = rigid_regular_bricks(&plain, o.bound, o.seed)?;
    Ok(Catalog::truncated(q, o.depth, bricks, mode(o))?)
}

fn spec_module(cat: &Catalog, spec: &str) -> Result<TiltingModule, InputError> {
    Ok(tilting_module(cat, cat.resolve_list(spec)?)?)
}

fn roots(q: &Quiver, o: &Options) -> Result<Table, InputError> {
    let f = UnitForm::new(q.euler_matrix().matrix().clone())?;
    let mut rs = f.positive_roots(o.root_cap)?.roots().to_vec();
    rs.sort();
    let mut t = Table::new(format!("positive roots of {}", quiver_name(q)), &["root", "q"]);
    for r in rs {
        let v = f.value(&r);
        t.push(vec![Cell::Vector(r), Cell::Int(v)]);
    }
    Ok(t)
}

fn enumeration(cat: &Catalog) -> Result<Table, InputError> {
    let all = qcw::tilting::enumerate_tilting(cat)?;
    let mut t = Table::new(
        format!("tilting modules of {}", quiver_name(cat.quiver())),
        &["index", "summands", "dimensions"],
    );
    for (k, m) in all.iter().enumerate() {
        let dims = m.summands.iter().map(|&i| cat.entry(i).dim().clone()).collect();
        t.push(vec![Cell::Int(k as i64), Cell::List(m.labels(cat)), Cell::Vectors(dims)]);
    }
    Ok(t)
}

fn classification(cat: &Catalog, tm: &TiltingModule) -> Result<Table, InputError> {
    let labels = tm.labels(cat);
    let mut t = Table::new(
        format!("classification for T = {}", labels.join(",")),
        &["module", "dim", "tag", "hom", "ext", "supp_hom", "supp_ext"],
    );
    let names = |s: &[usize]| s.iter().map(|&i| labels[i].clone()).collect();
    for c in classify(cat, tm)? {
        t.push(vec![
            Cell::text(cat.label(c.entry)),
            Cell::Vector(cat.entry(c.entry).dim().clone()),
            Cell::text(c.tag.to_string()),
            Cell::Int(c.hom as i64),
            Cell::Int(c.ext as i64),
            Cell::List(names(&c.supp_g)),
            Cell::List(names(&c.supp_f)),
        ]);
    }
    Ok(t)
}

fn cluster_table(cat: &Catalog, tm: &TiltingModule) -> Result<Table, InputError> {
    let an = Analysis::new(cat, tm.clone())?;
    let mut t = Table::new(
        format!("cluster dimension vectors for T = {}", tm.labels(cat).join(",")),
        &["module", "x", "g(x)", "abs", "tag", "q_B", "torsion"],
    );
    let triples: BTreeMap<usize, String> = an.mixed.iter().map(|m| (m.entry, an.torsion_triple(m))).collect();
    for r in cluster_dimvecs(&an)? {
        t.push(vec![
            Cell::text(cat.label(r.entry)),
            Cell::Vector(r.x.clone()),
            Cell::Vector(r.gx.clone()),
            Cell::Vector(r.abs.clone()),
            Cell::text(r.tag.to_string()),
            Cell::Int(r.qb),
            Cell::text(triples.get(&r.entry).cloned().unwrap_or_else(|| "-".into())),
        ]);
    }
    Ok(t)
}

/// Every orientation of the underlying graph of `q`, keeping its labels.
fn orientations(q: &Quiver) -> Result<Vec<Quiver>, InputError> {
    let edges = underlying_edges(q);
    if edges.iter().any(|&(_, k)| k != 1) || edges.len() > 16 {
        return Err(InputError("orientation search needs a graph with simple edges".into()));
    }
    let base = q.name().unwrap_or("Q").to_string();
    (0u32..1 << edges.len())
        .map(|mask| {
            let arrows = edges
                .iter()
                .enumerate()
                .map(|(k, &((a, b), _))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            Ok(Quiver::new(q.labels().to_vec(), arrows)?.with_name(format!("{base}#{mask}")))
        })
        .collect()
}

fn seed_search_tables(q: &Quiver, o: &Options) -> Result<Vec<Table>, InputError> {
    if q.n() != 4 || is_dynkin(q).map(|d| d.to_string()) != Some("A4".into()) {
        return Err(InputError("--seed-search expects a quiver of type A4".into()));
    }
    let quivers = orientations(q)?;
    let mut out = Vec::new();
    for (k, p) in a4_patterns().iter().enumerate() {
        let start = Instant::now();
        let hits = pattern_search(&quivers, p, mode(o))?;
        let threes: Vec<Vec<i64>> = p.threes.iter().cloned().collect();
        let mut t = Table::new(
            format!(
                "pattern {}: q_B = 3 exactly at {} ({} hits, {:.1?})",
                k + 1,
                threes.iter().map(|v| qcw::vector::fmt_vec(v)).collect::<Vec<_>>().join(","),
                hits.len(),
                start.elapsed()
            ),
            &["quiver", "arrows", "summands"],
        );
        for h in hits {
            let arrows = h.quiver.arrows().iter().map(|&(a, b)| format!("{}->{}", h.quiver.label(a), h.quiver.label(b)));
            t.push(vec![
                Cell::text(quiver_name(&h.quiver)),
                Cell::List(arrows.collect()),
                Cell::List(h.summands),
            ]);
        }
        out.push(t);
    }
    Ok(out)
}

fn default_properties(cat: &Catalog) -> Vec<Property> {
    if cat.is_complete() {
        vec![
            Property::Separation,
            Property::Lemmas234,
            Property::Prop4,
            Property::Prop5,
            Property::Prop6,
            Property::Thm1,
            Property::Thm2b,
            Property::Thm2cProxy,
            Property::Prop7,
        ]
    } else {
        vec![Property::RegularWitness]
    }
}

fn verify(cat: &Catalog, modules: &[TiltingModule], props: &[Property], o: &Options) -> Result<Vec<Report>, InputError> {
    let mut merged: BTreeMap<Property, Report> = BTreeMap::new();
    let per_module = props.iter().any(|&p| p != Property::RegularWitness);
    if per_module {
        let results = par::map(mode(o), modules, |t| -> Result<Vec<(Property, Report)>, InputError> {
            let an = Analysis::new(cat, t.clone())?;
            let mut out = Vec::new();
            for &p in props {
                let r = match p {
                    Property::Separation => verify_separation(&an),
                    Property::Lemmas234 => verify_lemmas234(&an)?,
                    Property::Prop4 => verify_prop4(&an, o.root_cap)?,
                    Property::Prop5 => verify_prop5(&an),
                    Property::Prop6 => verify_prop6(&an),
                    Property::Thm1 => verify_theorem1_for(&an),
                    Property::Thm2b => verify_theorem2b(&an),
                    Property::Thm2cProxy => verify_theorem2c_proxy(&an)?,
                    Property::Prop7 => verify_prop7(&an)?,
                    Property::RegularWitness => continue,
                };
                out.push((p, r));
            }
            Ok(out)
        });
        for r in results {
            for (p, rep) in r? {
                match merged.get_mut(&p) {
                    Some(acc) => acc.merge(rep),
                    None => {
                        merged.insert(p, rep);
                    }
                }
            }
        }
    }
    if props.contains(&Property::RegularWitness) {
        merged.insert(Property::RegularWitness, regular_witness(cat, modules, o)?);
    }
    Ok(merged.into_values().collect())
}

/// Passes when some module in `modules` that is neither preprojective nor
/// preinjective has a regular `M` with both `Hom(T, M)` and `Ext^1(T, M)`
/// nonzero.
fn regular_witness(cat: &Catalog, modules: &[TiltingModule], o: &Options) -> Result<Report, InputError> {
    let mut rep = Report::new("regular-witness");
    let name = quiver_name(cat.quiver());
    let candidates: Vec<&TiltingModule> = modules
        .iter()
        .filter(|t| !is_preprojective(cat, t) && !is_preinjective(cat, t))
        .collect();
    if modules.len() == 1 && candidates.is_empty() {
        return Err(InputError("T is preprojective or preinjective".into()));
    }
    for t in &candidates {
        rep.checked += 1;
        if find_regular_mixed(cat, t, o.bound, o.seed)?.witness.is_some() {
            return Ok(rep);
        }
    }
    rep.checked = rep.checked.max(1);
    rep.fail(
        &name,
        format!(
            "no regular witness among {} tilting modules that are neither preprojective nor preinjective \
             (coordinates up to {})",
            candidates.len(),
            o.bound
        ),
    );
    Ok(rep)
}

fn report_tables(reports: &[Report]) -> Vec<Table> {
    let mut summary = Table::new("verification", &["property", "checked", "failures", "status"]);
    let mut failures = Table::new("failures", &["property", "context", "detail"]);
    for r in reports {
        summary.push(vec![
            Cell::text(&r.property),
            Cell::Int(r.checked as i64),
            Cell::Int(r.failure_count as i64),
            Cell::text(if r.passed() { "PASS" } else { "FAIL" }),
        ]);
        for f in &r.failures {
            failures.push(vec![
                Cell::text(&r.property),
                Cell::text(collapse(&f.context)),
                Cell::text(collapse(&f.detail)),
            ]);
        }
    }
    if failures.rows.is_empty() {
        vec![summary]
    } else {
        vec![summary, failures]
    }
}

/// Keeps cells free of runs of spaces and newlines.
fn collapse(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
