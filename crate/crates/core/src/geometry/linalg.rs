//! Exact linear algebra: fraction-free elimination, determinants,
//! null spaces and unnormalised Gram–Schmidt.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{lcm_of_denominators, Scalar};
use super::vector::{Point, Vector};
use super::GeometryError;

/// Outcome of [`solve_linear`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Scalar>),
    NoSolution,
    Underdetermined,
}

impl Solution {
    pub fn unique(self) -> Option<Vec<Scalar>> {
        match self {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

/// Scales a rational row to integers by the lcm of its denominators.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = lcm_of_denominators(row);
    row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
}

/// In-place Bareiss elimination to row echelon form. Pivots are searched in
/// the first `pivot_cols` columns. Returns the `(row, column)` pivot list and
/// whether an odd number of row swaps happened.
fn bareiss(mat: &mut [Vec<BigInt>], pivot_cols: usize) -> (Vec<(usize, usize)>, bool) {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut row = 0;
    let mut odd = false;
    let mut pivots = Vec::new();
    for col in 0..pivot_cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        if p != row {
            mat.swap(p, row);
            odd = !odd;
        }
        let (top, bottom) = mat.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = &pivot_row[col];
        for r in bottom.iter_mut() {
            let lead = core::mem::take(&mut r[col]);
            for j in col + 1..cols {
                let v = &r[j] * pivot - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                r[j] = v / &prev;
            }
        }
        prev = mat[row][col].clone();
        pivots.push((row, col));
        row += 1;
    }
    (pivots, odd)
}

/// Solves `matrix · x = rhs` exactly.
pub fn solve_linear(matrix: &[Vec<Scalar>], rhs: &[Scalar]) -> Result<Solution, GeometryError> {
    let n = matrix.first().map_or(0, Vec::len);
    if let Some(bad) = matrix.iter().find(|r| r.len() != n) {
        return Err(GeometryError::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    if rhs.len() != matrix.len() {
        return Err(GeometryError::DimensionMismatch {
            expected: matrix.len(),
            found: rhs.len(),
        });
    }
    let mut aug: Vec<Vec<BigInt>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut full = row.clone();
            full.push(b.clone());
            integer_row(&full)
        })
        .collect();
    let (pivots, _) = bareiss(&mut aug, n);
    let rank = pivots.len();
    if aug[rank..].iter().any(|r| !r[n].is_zero()) {
        return Ok(Solution::NoSolution);
    }
    if rank < n {
        return Ok(Solution::Underdetermined);
    }
    let mut x = alloc::vec![Scalar::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Scalar::from_bigint(aug[i][n].clone());
        for j in i + 1..n {
            if !aug[i][j].is_zero() {
                acc -= Scalar::from_bigint(aug[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / Scalar::from_bigint(aug[i][i].clone());
    }
    Ok(Solution::Unique(x))
}

/// Determinant of a square rational matrix.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut scale = BigInt::one();
    let mut mat: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "determinant of a non-square matrix");
            let lcm = lcm_of_denominators(r);
            scale *= &lcm;
            r.iter().map(|c| c.numer() * (&lcm / c.denom())).collect()
        })
        .collect();
    let (pivots, odd) = bareiss(&mut mat, n);
    if pivots.len() < n {
        return Scalar::zero();
    }
    let det = mat[n - 1][n - 1].clone();
    let det = if odd { -det } else { det };
    Scalar::new(det, scale).expect("positive scale")
}

/// Determinant of a small integer matrix by cofactor expansion.
pub(crate) fn int_determinant(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        3 => {
            &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
                - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
                + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
        }
        n => {
            let mut mat = m.to_vec();
            let (pivots, odd) = bareiss(&mut mat, n);
            if pivots.len() < n {
                return BigInt::zero();
            }
            let d = mat[n - 1][n - 1].clone();
            if odd {
                -d
            } else {
                d
            }
        }
    }
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let cols = vectors[0].dim();
    let mut mat: Vec<Vec<BigInt>> = vectors.iter().map(|v| integer_row(v.coords())).collect();
    bareiss(&mut mat, cols).0.len()
}

/// Orientation of `d + 1` points in `d` dimensions: the sign of
/// `det[p₁ − p₀, …, p_d − p₀]`.
pub fn orientation(points: &[Point]) -> Result<Ordering, GeometryError> {
    let d = points.first().map_or(0, Vector::dim);
    if points.len() != d + 1 {
        return Err(GeometryError::DimensionMismatch {
            expected: d + 1,
            found: points.len(),
        });
    }
    let rows: Vec<Vec<Scalar>> = points[1..]
        .iter()
        .map(|p| p.try_sub(&points[0]).map(Vector::into_coords))
        .collect::<Result<_, _>>()?;
    Ok(determinant(&rows).sign())
}

/// Gram–Schmidt without normalisation. Dependent vectors are dropped, so the
/// output is a pairwise-orthogonal basis of the input span.
pub fn orthogonalize(vectors: &[Vector]) -> Vec<Vector> {
    let mut basis: Vec<(Vector, Scalar)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (u, uu) in &basis {
            let c = w.dot(u) / uu;
            if !c.is_zero() {
                w = w.add_scaled(&-c, u);
            }
        }
        if !w.is_zero() {
            let ww = w.norm_sq();
            basis.push((w, ww));
        }
    }
    basis.into_iter().map(|(v, _)| v).collect()
}

/// Basis of `{x : row · x = 0 for every row}` from reduced row echelon form.
pub fn nullspace(rows: &[Vector], dim: usize) -> Vec<Vector> {
    let mut mat: Vec<Vec<Scalar>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip().expect("nonzero pivot");
        for j in c..dim {
            mat[r][j] = &mat[r][j] * &inv;
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..dim {
                    let delta = &f * &mat[r][j];
                    mat[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..dim).filter(|c| !pivot_cols.contains(c)) {
        let mut v = alloc::vec![Scalar::zero(); dim];
        v[free] = Scalar::one();
        for (i, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&mat[i][free];
        }
        out.push(Vector::new(v));
    }
    out
}

/// Orthogonal basis of the orthogonal complement of `span(vectors)` in `dim`
/// dimensions, each vector scaled to primitive integers.
pub fn orthogonal_complement(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    orthogonalize(&nullspace(vectors, dim))
        .iter()
        .map(Vector::primitive)
        .collect()
}

/// Integer normal of the hyperplane through `d` integer points in `d`
/// dimensions (generalised cross product of the edge vectors).
pub(crate) fn int_hyperplane_normal(points: &[&[BigInt]]) -> Vec<BigInt> {
    let d = points[0].len();
    let edges: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    (0..d)
        .map(|skip| {
            let minor: Vec<Vec<BigInt>> = edges
                .iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != skip)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let det = int_determinant(&minor);
            if skip % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

pub(crate) fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn int_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut mat = rows.to_vec();
    bareiss(&mut mat, cols).0.len()
}

pub(crate) fn int_gcd_all(values: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pt;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
            .collect()
    }

    fn s(values: &[i64]) -> Vec<Scalar> {
        values.iter().map(|&v| Scalar::from_int(v)).collect()
    }

    #[test]
    fn identity_solve() {
        let a = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(solve_linear(&a, &s(&[1, 2, 3])).unwrap(), Solution::Unique(s(&[1, 2, 3])));
    }

    #[test]
    fn diagonal_solve() {
        let a = m(&[&[2, 0], &[0, 4]]);
        let x = solve_linear(&a, &s(&[1, 2])).unwrap();
        assert_eq!(x, Solution::Unique(alloc::vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)]));
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&a, &s(&[1, 3])).unwrap(), Solution::NoSolution);
        assert_eq!(solve_linear(&a, &s(&[1, 2])).unwrap(), Solution::Underdetermined);
    }

    #[test]
    fn ragged_matrix_rejected() {
        let a = alloc::vec![s(&[1, 2]), s(&[1])];
        assert!(matches!(
            solve_linear(&a, &s(&[0, 0])),
            Err(GeometryError::DimensionMismatch { .. })
        ));
        assert!(solve_linear(&m(&[&[1]]), &s(&[1, 2])).is_err());
    }

    #[test]
    fn overdetermined_consistent_system() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(solve_linear(&a, &s(&[2, 3, 5])).unwrap(), Solution::Unique(s(&[2, 3])));
        assert_eq!(solve_linear(&a, &s(&[2, 3, 6])).unwrap(), Solution::NoSolution);
    }

    #[test]
    fn solve_with_pivoting_and_fractions() {
        let a = alloc::vec![
            alloc::vec![Scalar::zero(), Scalar::ratio(1, 3), Scalar::one()],
            alloc::vec![Scalar::ratio(1, 2), Scalar::zero(), Scalar::from_int(2)],
            alloc::vec![Scalar::one(), Scalar::one(), Scalar::zero()],
        ];
        let x = solve_linear(&a, &s(&[1, 2, 3])).unwrap().unique().unwrap();
        for (row, b) in a.iter().zip(s(&[1, 2, 3])) {
            let lhs: Scalar = row.iter().zip(&x).map(|(p, q)| p * q).sum();
            assert_eq!(lhs, b);
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[2, 0], &[0, 3]])), Scalar::from_int(6));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), Scalar::from_int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), Scalar::zero());
        let half = alloc::vec![
            alloc::vec![Scalar::ratio(1, 2), Scalar::zero()],
            alloc::vec![Scalar::zero(), Scalar::ratio(1, 3)],
        ];
        assert_eq!(determinant(&half), Scalar::ratio(1, 6));
        let big = m(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[2, 0, 1, 1], &[1, 1, 1, 1]]);
        let ints: Vec<Vec<BigInt>> = big.iter().map(|r| integer_row(r)).collect();
        assert_eq!(Scalar::from_bigint(int_determinant(&ints)), determinant(&big));
    }

    #[test]
    fn orientation_sign() {
        let ccw = [pt![0, 0], pt![1, 0], pt![0, 1]];
        assert_eq!(orientation(&ccw).unwrap(), Ordering::Greater);
        let cw = [pt![0, 0], pt![0, 1], pt![1, 0]];
        assert_eq!(orientation(&cw).unwrap(), Ordering::Less);
        let flat = [pt![0, 0, 0], pt![1, 0, 0], pt![0, 1, 0], pt![1, 1, 0]];
        assert_eq!(orientation(&flat).unwrap(), Ordering::Equal);
    }

    #[test]
    fn orthogonalize_examples() {
        assert_eq!(
            orthogonalize(&[pt![1, 0, 0], pt![1, 1, 0]]),
            alloc::vec![pt![1, 0, 0], pt![0, 1, 0]]
        );
        assert_eq!(orthogonalize(&[pt![1, 1], pt![2, 2]]), alloc::vec![pt![1, 1]]);
        // Hand Gram–Schmidt: (1,0,1) − ½(1,1,0) = (½, −½, 1).
        let expected = Vector::new(alloc::vec![Scalar::ratio(1, 2), Scalar::ratio(-1, 2), Scalar::one()]);
        assert_eq!(
            orthogonalize(&[pt![1, 1, 0], pt![1, 0, 1]]),
            alloc::vec![pt![1, 1, 0], expected]
        );
        assert!(orthogonalize(&[]).is_empty());
    }

    #[test]
    fn nullspace_and_complement() {
        let ns = nullspace(&[pt![1, 1, 1]], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.dot(&pt![1, 1, 1]).is_zero());
        }
        let comp = orthogonal_complement(&[pt![0, 0, 1]], 3);
        assert_eq!(comp.len(), 2);
        assert!(comp[0].dot(&comp[1]).is_zero());
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn hyperplane_normal_through_points() {
        let a = [BigInt::from(1), BigInt::from(0), BigInt::from(0)];
        let b = [BigInt::from(0), BigInt::from(1), BigInt::from(0)];
        let c = [BigInt::from(0), BigInt::from(0), BigInt::from(1)];
        let n = int_hyperplane_normal(&[&a, &b, &c]);
        assert_eq!(int_dot(&n, &a), int_dot(&n, &b));
        assert_eq!(int_dot(&n, &a), int_dot(&n, &c));
        assert!(!n.iter().all(Zero::is_zero));
    }

    proptest::proptest! {
        #[test]
        fn orthogonalize_preserves_span(
            raw in proptest::collection::vec(proptest::collection::vec(-5i64..5, 4), 1..5)
        ) {
            let vs: Vec<Vector> = raw.iter().map(|r| Vector::from_ints(r)).collect();
            let out = orthogonalize(&vs);
            for i in 0..out.len() {
                for j in 0..i {
                    proptest::prop_assert!(out[i].dot(&out[j]).is_zero());
                }
            }
            // Same rank, and every input lies in the output span and vice versa.
            proptest::prop_assert_eq!(out.len(), rank(&vs));
            let mut joined = vs.clone();
            joined.extend(out.iter().cloned());
            proptest::prop_assert_eq!(rank(&joined), out.len());
        }
    }
}
