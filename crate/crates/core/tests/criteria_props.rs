use polysect_core::body::{make_ellipsoid, wrap_polytope};
use polysect_core::criteria::{
    drift_from_polytope, epsilon_certificate, klee_projection_test, klee_section_test, no_extreme_in_cone, FlatFamily,
    SampleConfig, SectionFamily,
};
use polysect_core::geometry::Vector;
use polysect_core::polytope::{convex_hull, Polytope};
use proptest::prelude::*;

fn polytope(d: usize, max: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::collection::vec(-10i64..=10, d), d + 2..=max).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Vector> = pts.iter().map(|p| Vector::from_ints(p)).collect();
        convex_hull(&pts).ok().filter(|p| p.is_full_dim())
    })
}

fn cfg(samples: usize, seed: u64) -> SampleConfig {
    SampleConfig { samples, points: 48, tau: 1e-9, seed }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exact_bodies_never_rejected(p3 in polytope(3, 20), p4 in polytope(4, 12), seed in any::<u64>()) {
        for p in [&p3, &p4] {
            let body = wrap_polytope(p).unwrap();
            let r = klee_section_test(&body, &SectionFamily::central(2), &cfg(5, seed)).unwrap();
            prop_assert!(r.verdict.is_consistent());
            let r = klee_projection_test(&body, 2, &cfg(5, seed)).unwrap();
            prop_assert!(r.verdict.is_consistent());
        }
    }

    #[test]
    fn certificates_exclude_other_vertices(p in polytope(3, 10)) {
        let v = p.vertices();
        for a in v {
            for b in v {
                if a == b {
                    continue;
                }
                let cert = epsilon_certificate(&p, a, b, &FlatFamily::default()).unwrap();
                prop_assert!(cert.epsilon > 0.0);
                prop_assert!(no_extreme_in_cone(&p, a, b, cert.epsilon));
            }
        }
    }

    #[test]
    fn realized_drift_holds(p in polytope(3, 14), pick in any::<u64>(), lambda in 0.05f64..0.95) {
        let n = p.vertices().len();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in p.edges() {
            nbrs[a].push(b);
            nbrs[b].push(a);
        }
        let v = (pick as usize) % n;
        let e = &nbrs[v];
        prop_assume!(e.len() >= 3);
        let k = (pick >> 16) as usize;
        let (i, j, l) = (e[k % e.len()], e[(k + 1) % e.len()], e[(k + 2) % e.len()]);
        if let Some(r) = drift_from_polytope(&p, v, i, j, l, lambda).unwrap() {
            prop_assert!(r.realized);
            prop_assert!(r.chain_holds, "{:?}", r);
            prop_assert!(r.holds, "{:?}", r);
            prop_assert!(r.identity_error < 1e-9, "{:?}", r);
        }
    }

    #[test]
    fn rejection_is_monotone_in_budget(a in 1.2f64..3.0, b in 0.5f64..1.0, seed in any::<u64>(), extra in 0usize..5) {
        let body = make_ellipsoid(vec![0.0; 3], vec![a, b, 1.0]).unwrap();
        let small = klee_section_test(&body, &SectionFamily::central(2), &cfg(2, seed)).unwrap();
        if let Some(w) = small.verdict.witness() {
            let big = klee_section_test(&body, &SectionFamily::central(2), &cfg(2 + extra, seed)).unwrap();
            prop_assert_eq!(big.verdict.witness().map(|x| x.index()), Some(w.index()));
        }
    }
}
