use polysect_core::geometry::{Scalar, Vector};
use polysect_core::polytope::{convex_hull, is_extreme, project, Polytope};
use polysect_core::silhouette::{shadow_chart, shadow_walk};
use proptest::prelude::*;

fn polytope() -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::collection::vec(-10i64..=10, 3), 5..=20).prop_filter_map("degenerate", |pts| {
        let pts: Vec<Vector> = pts.iter().map(|p| Vector::from_ints(p)).collect();
        convex_hull(&pts).ok().filter(|p| p.is_full_dim())
    })
}

fn direction() -> impl Strategy<Value = Vector> {
    prop::collection::vec(-4i64..=4, 3).prop_filter_map("zero", |v| {
        let v = Vector::from_ints(&v);
        (!v.is_zero()).then_some(v)
    })
}

fn turn(o: &Vector, a: &Vector, b: &Vector) -> Scalar {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn walk_matches_hull_of_projection(p in polytope(), xi in direction()) {
        let walk = shadow_walk(&p, &xi, None).unwrap();
        let chart = shadow_chart(&xi).unwrap();
        let shadow = project(&p, &chart).unwrap();
        prop_assert!(walk.vertices.len() <= p.vertices().len());
        let mut got = walk.vertices.clone();
        got.sort();
        prop_assert_eq!(&got[..], shadow.vertices());
        let n = walk.vertices.len();
        for i in 0..n {
            let (a, b) = (&walk.vertices[i], &walk.vertices[(i + 1) % n]);
            // Consecutive vertices turn left about the pole and every other
            // vertex is on the left of the edge: counterclockwise hull order.
            prop_assert!(turn(&walk.pole, a, b).is_positive());
            for c in &walk.vertices {
                prop_assert!(!turn(a, b, c).is_negative());
            }
            prop_assert!(is_extreme(a, &shadow).unwrap());
        }
        prop_assert!(walk.angles.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(walk.angles[n - 1] - walk.angles[0] < std::f64::consts::TAU);
    }
}
