use alloc::vec::Vec;

use super::CriteriaError;
use crate::body::SectionSample;

/// Fewest sample points the detector accepts.
pub const MIN_POINTS: usize = 8;

/// Three consecutive samples bending by more than the collinearity threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvedWitness {
    pub indices: [usize; 3],
    pub points: [[f64; 2]; 3],
    pub area: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Polygonality {
    /// Every point sits on a fitted edge. `runs` lists each edge as the
    /// (first, last) sample index it covers, cyclically.
    Polygon { edges: usize, runs: Vec<(usize, usize)> },
    Curved(CurvedWitness),
}

impl Polygonality {
    pub fn is_polygon(&self) -> bool {
        matches!(self, Polygonality::Polygon { .. })
    }
}

fn triangle_area(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    0.5 * libm::fabs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
}

/// Decides whether a cyclically ordered boundary sample looks like a polygon.
///
/// A consecutive triple is flat when its triangle area is at most
/// `tau · diameter²`. Maximal cyclic runs of flat triples are the fitted
/// edges; a run of flat triples centred at `i..=j` covers samples
/// `i − 1..=j + 1`. The sample is a polygon when every point is covered and
/// there are fewer than `n / 3` edges.
pub fn polygonality_detect(sample: &SectionSample, tau: f64) -> Result<Polygonality, CriteriaError> {
    let n = sample.len();
    if n < MIN_POINTS {
        return Err(CriteriaError::TooFewPoints { min: MIN_POINTS, found: n });
    }
    let pts = &sample.points;
    let diam = sample.diameter();
    let threshold = tau * diam * diam;
    let area = |i: usize| triangle_area(pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
    let flat: Vec<bool> = (0..n).map(|i| area(i) <= threshold).collect();

    let mut runs = Vec::new();
    let mut covered = alloc::vec![false; n];
    if flat.iter().all(|&f| f) {
        runs.push((0, n - 1));
        covered.iter_mut().for_each(|c| *c = true);
    } else {
        // Start scanning just after a bent triple so runs do not wrap.
        let start = (0..n).find(|&i| !flat[i]).expect("some triple bends");
        let mut k = 1;
        while k <= n {
            let i = (start + k) % n;
            if !flat[i] {
                k += 1;
                continue;
            }
            let mut len = 0;
            while k + len <= n && flat[(start + k + len) % n] {
                len += 1;
            }
            let first = (i + n - 1) % n;
            let last = (start + k + len) % n;
            for m in 0..len + 2 {
                covered[(first + m) % n] = true;
            }
            runs.push((first, last));
            k += len;
        }
    }

    let witness_at = |i: usize| {
        let idx = [(i + n - 1) % n, i, (i + 1) % n];
        CurvedWitness {
            indices: idx,
            points: [pts[idx[0]], pts[idx[1]], pts[idx[2]]],
            area: area(i),
            threshold,
        }
    };
    if let Some(i) = (0..n).find(|&i| !covered[i]) {
        return Ok(Polygonality::Curved(witness_at(i)));
    }
    if 3 * runs.len() >= n {
        let i = (0..n)
            .filter(|&i| !flat[i])
            .max_by(|&a, &b| area(a).total_cmp(&area(b)))
            .expect("many runs imply bent triples");
        return Ok(Polygonality::Curved(witness_at(i)));
    }
    Ok(Polygonality::Polygon {
        edges: runs.len(),
        runs,
    })
}

/// Polar points `u / (h(u) − u·c)` of a support-function sample around the
/// chart point `c`; a polygonal shadow has a polygonal polar.
pub fn polar_sample(angles: &[f64], support: &[f64], center: [f64; 2]) -> Vec<[f64; 2]> {
    angles
        .iter()
        .zip(support)
        .map(|(&th, &h)| {
            let (s, c) = libm::sincos(th);
            let r = 1.0 / (h - (c * center[0] + s * center[1]));
            [r * c, r * s]
        })
        .collect()
}
