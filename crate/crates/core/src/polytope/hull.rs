//! Beneath–beyond convex hull for full-dimensional point sets in 2 to 4
//! dimensions, exact over integers.
//!
//! Input points are scaled by the lcm of their denominators so every
//! orientation test is a plain integer dot product. The boundary is kept as
//! a simplicial complex; a point is added when it lies strictly beyond at
//! least one facet, and the horizon ridges (those shared by exactly one
//! visible facet) are coned to it. Coplanar simplices are merged at the end
//! and points that ended up inside a merged facet are dropped.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::geometry::{int_dot, int_gcd_all, int_hyperplane_normal, int_rank, lcm_of_denominators, Scalar, Vector};

struct Facet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

/// Facet-defining halfspace `normal · x ≤ offset` with a primitive integer
/// normal, in the coordinates of the input points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct RawFacet {
    pub normal: Vec<BigInt>,
    pub offset: Scalar,
}

pub(crate) struct RawHull {
    /// Indices of the input points that are vertices.
    pub vertices: Vec<usize>,
    pub facets: Vec<RawFacet>,
}

/// Hull of distinct points whose affine span is the whole space.
pub(crate) fn full_dim_hull(points: &[Vector]) -> RawHull {
    let d = points[0].dim();
    debug_assert!(d >= 2);
    let scale = lcm_of_denominators(points.iter().flat_map(|p| p.coords()));
    let ints: Vec<Vec<BigInt>> = points.iter().map(|p| p.scaled_integers(&scale)).collect();

    let simplex = initial_simplex(&ints, d).expect("caller guarantees full dimension");
    let mut interior = alloc::vec![BigInt::zero(); d];
    for &i in &simplex {
        for (acc, v) in interior.iter_mut().zip(&ints[i]) {
            *acc += v;
        }
    }
    let weight = BigInt::from(d as u64 + 1);

    let make_facet = |verts: Vec<usize>| -> Facet {
        let pts: Vec<&[BigInt]> = verts.iter().map(|&i| ints[i].as_slice()).collect();
        let mut normal = int_hyperplane_normal(&pts);
        let mut offset = int_dot(&normal, &ints[verts[0]]);
        if int_dot(&normal, &interior) >= &offset * &weight {
            for v in &mut normal {
                *v = -&*v;
            }
            offset = -offset;
        }
        debug_assert!(int_dot(&normal, &interior) < &offset * &weight);
        Facet { verts, normal, offset }
    };

    let mut facets: Vec<Facet> = (0..=d)
        .map(|skip| {
            let mut verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, &i)| i)
                .collect();
            verts.sort_unstable();
            make_facet(verts)
        })
        .collect();

    for (p, point) in ints.iter().enumerate() {
        if simplex.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| int_dot(&f.normal, point) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut ridges: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for f in facets.iter().zip(&visible).filter(|(_, &v)| v).map(|(f, _)| f) {
            for skip in 0..f.verts.len() {
                let ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut keep = visible.iter();
        facets.retain(|_| !*keep.next().expect("one flag per facet"));
        for (ridge, count) in ridges {
            if count == 1 {
                let mut verts = ridge;
                verts.push(p);
                verts.sort_unstable();
                facets.push(make_facet(verts));
            }
        }
    }

    // Merge coplanar simplices into facets.
    let mut planes: BTreeMap<(Vec<BigInt>, BigInt), ()> = BTreeMap::new();
    let mut used: Vec<usize> = Vec::new();
    for f in &facets {
        let g = int_gcd_all(&f.normal);
        // gcd with the offset too, so the key is canonical over the integers.
        let g = num_integer::Integer::gcd(&g, &f.offset);
        let normal: Vec<BigInt> = f.normal.iter().map(|v| v / &g).collect();
        planes.insert((normal, &f.offset / &g), ());
        used.extend(f.verts.iter().copied());
    }
    used.sort_unstable();
    used.dedup();

    let planes: Vec<(Vec<BigInt>, BigInt)> = planes.into_keys().collect();
    let vertices: Vec<usize> = used
        .into_iter()
        .filter(|&i| {
            let tight: Vec<Vec<BigInt>> = planes
                .iter()
                .filter(|(n, off)| &int_dot(n, &ints[i]) == off)
                .map(|(n, _)| n.clone())
                .collect();
            int_rank(&tight) == d
        })
        .collect();

    let mut raw: Vec<RawFacet> = planes
        .into_iter()
        .map(|(normal, offset)| {
            let g = int_gcd_all(&normal);
            let normal: Vec<BigInt> = normal.iter().map(|v| v / &g).collect();
            let offset = Scalar::new(offset, &g * &scale).expect("positive scale");
            RawFacet { normal, offset }
        })
        .collect();
    raw.sort();
    raw.dedup();
    RawHull { vertices, facets: raw }
}

fn initial_simplex(ints: &[Vec<BigInt>], d: usize) -> Option<Vec<usize>> {
    let mut chosen = alloc::vec![0usize];
    let mut diffs: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in ints.iter().enumerate().skip(1) {
        let diff: Vec<BigInt> = p.iter().zip(&ints[0]).map(|(a, b)| a - b).collect();
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        diffs.push(diff);
        if int_rank(&diffs) == diffs.len() {
            chosen.push(i);
            if chosen.len() == d + 1 {
                return Some(chosen);
            }
        } else {
            diffs.pop();
        }
    }
    None
}
