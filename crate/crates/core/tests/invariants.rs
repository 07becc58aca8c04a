//! Randomized invariants over small Dynkin quivers with random orientations.

use std::sync::Arc;

use proptest::prelude::*;
use qcw::artheory::predecessor_closure;
use qcw::catalog::Catalog;
use qcw::cluster::Analysis;
use qcw::forms::UnitForm;
use qcw::linrep::{ext1_dim, hom_dim, torsion_submodule};
use qcw::par::Mode;
use qcw::tilting::{classify, enumerate_tilting, pushforward_form, GMap, Tag};
use qcw::Quiver;

/// Tree edges of `A_n` (a path) or `D_n`, oriented by the bits of `mask`.
fn oriented(n: usize, is_d: bool, mask: u32) -> Quiver {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    if is_d {
        edges[n - 2] = (n - 3, n - 1);
    }
    let arrows: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .map(|(k, &(a, b))| if mask >> k & 1 == 1 { (b, a) } else { (a, b) })
        .collect();
    Quiver::numbered(n, &arrows).unwrap()
}

fn quiver() -> impl Strategy<Value = Quiver> {
    prop_oneof![
        (2usize..=5, any::<u32>()).prop_map(|(n, m)| oriented(n, false, m)),
        (4usize..=5, any::<u32>()).prop_map(|(n, m)| oriented(n, true, m)),
    ]
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-4i64..=4, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coxeter_reverses_euler_form(
        (q, x, y) in quiver().prop_flat_map(|q| {
            let n = q.n();
            (Just(q), vector(n), vector(n))
        })
    ) {
        let e = q.euler_matrix();
        let phi = e.coxeter().unwrap();
        prop_assert_eq!(e.bilinear(&x, &y), -e.bilinear(&y, &phi.apply(&x)));
        prop_assert_eq!(phi.apply_inv(&phi.apply(&x)), x);
    }

    #[test]
    fn knitted_component_matches_roots(q in quiver()) {
        let q = Arc::new(q);
        let cat = Catalog::dynkin(q.clone(), Mode::Sequential).unwrap();
        let roots = UnitForm::new(cat.euler().matrix().clone()).unwrap().positive_roots(6).unwrap();
        prop_assert_eq!(cat.len(), roots.len());
        prop_assert!(cat.component().mesh_violations().is_empty());
        prop_assert!(cat.component().coxeter_violations(cat.coxeter()).is_empty());
        for i in 0..cat.len() {
            prop_assert!(roots.contains(cat.entry(i).dim()));
        }
    }

    #[test]
    fn predecessor_closure_is_downward_closed(q in quiver(), pick in any::<prop::sample::Index>()) {
        let q = Arc::new(q);
        let cat = Catalog::dynkin(q, Mode::Sequential).unwrap();
        let c = cat.component();
        let seed = pick.index(c.len());
        let d = predecessor_closure(c, &[seed]).unwrap();
        prop_assert!(d.contains(&seed));
        for &v in &d {
            for p in c.predecessors(v) {
                prop_assert!(d.contains(&p));
            }
        }
    }

    #[test]
    fn tilting_invariants(q in quiver(), pick in any::<prop::sample::Index>()) {
        let q = Arc::new(q);
        let cat = Catalog::dynkin(q, Mode::Sequential).unwrap();
        let all = enumerate_tilting(&cat).unwrap();
        let t = all[pick.index(all.len())].clone();
        let reps: Vec<_> = t.summands.iter().map(|&i| cat.entry(i).rep.clone()).collect();

        for a in &reps {
            for b in &reps {
                prop_assert_eq!(ext1_dim(a, b), 0);
            }
        }

        let g = GMap::new(&cat, &t).unwrap();
        let qb = pushforward_form(&cat, &g).unwrap();
        for i in 0..qb.n() {
            let mut e = vec![0; qb.n()];
            e[i] = 1;
            prop_assert_eq!(qb.value(&e), 1);
        }
        for (j, tj) in reps.iter().enumerate() {
            let col = g.apply(tj.dim());
            for (i, ti) in reps.iter().enumerate() {
                prop_assert_eq!(col[i], hom_dim(ti, tj) as i64, "g(t_{})_{}", j, i);
            }
        }

        for c in classify(&cat, &t).unwrap() {
            let m = &cat.entry(c.entry).rep;
            let x = m.dim();
            prop_assert_eq!(qb.value(&g.apply(x)), cat.euler().quadratic(x));
            let hom: usize = reps.iter().map(|r| hom_dim(r, m)).sum();
            let ext: usize = reps.iter().map(|r| ext1_dim(r, m)).sum();
            let split = torsion_submodule(&reps, m).unwrap();
            let sub_full = split.sub.dim() == x;
            let sub_zero = split.sub.dim().iter().all(|&v| v == 0);
            match c.tag {
                Tag::F => prop_assert!(hom == 0 && ext > 0 && sub_zero),
                Tag::G => prop_assert!(ext == 0 && hom > 0 && sub_full),
                Tag::Mixed => prop_assert!(hom > 0 && ext > 0 && !sub_zero && !sub_full),
            }
        }
    }

    #[test]
    fn two_routes_agree(q in quiver(), pick in any::<prop::sample::Index>()) {
        let q = Arc::new(q);
        let cat = Catalog::dynkin(q, Mode::Sequential).unwrap();
        let all = enumerate_tilting(&cat).unwrap();
        let t = all[pick.index(all.len())].clone();
        let an = Analysis::new(&cat, t).unwrap();
        for r in &an.records {
            prop_assert_eq!(&r.abs, &r.route2);
            let abs: Vec<i64> = r.gx.iter().map(|v| v.abs()).collect();
            prop_assert_eq!(&r.abs, &abs);
            prop_assert_eq!(r.qb == 1, r.tag != Tag::Mixed);
        }
    }
}
