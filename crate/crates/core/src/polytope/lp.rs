//! Exact low-dimensional linear programming (Seidel's randomized
//! incremental algorithm) over rationals.
//!
//! Every variable is boxed by `|x_j| ≤ bound`, which keeps each subproblem
//! bounded; callers pick a bound that cannot cut off the optimum they care
//! about, or detect unboundedness by checking whether the box is tight.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{lcm_of_denominators, Scalar};

/// `normal · x ≤ offset`
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Constraint {
    pub fn new(normal: Vec<Scalar>, offset: Scalar) -> Self {
        Constraint { normal, offset }
    }

    fn satisfied_by(&self, x: &[Scalar]) -> bool {
        dot(&self.normal, x) <= self.offset
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (p, q) in a.iter().zip(b) {
        if !p.is_zero() && !q.is_zero() {
            acc += p * q;
        }
    }
    acc
}

/// Maximises `objective · x` subject to `constraints` and the box. Returns
/// `None` when the constraints are infeasible.
pub(crate) fn maximize(constraints: &[Constraint], objective: &[Scalar], bound: &Scalar) -> Option<Vec<Scalar>> {
    let n = objective.len();
    let mut order: Vec<Constraint> = constraints.to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1de1);
    order.shuffle(&mut rng);
    solve(n, &order, objective, bound)
}

fn box_constraints(n: usize, bound: &Scalar) -> Vec<Constraint> {
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let mut up = alloc::vec![Scalar::zero(); n];
        up[j] = Scalar::one();
        let mut down = alloc::vec![Scalar::zero(); n];
        down[j] = -Scalar::one();
        out.push(Constraint::new(up, bound.clone()));
        out.push(Constraint::new(down, bound.clone()));
    }
    out
}

fn solve(n: usize, cons: &[Constraint], c: &[Scalar], bound: &Scalar) -> Option<Vec<Scalar>> {
    if n == 1 {
        return solve_1d(cons, &c[0], bound);
    }
    let mut x: Vec<Scalar> = c
        .iter()
        .map(|cj| if cj.is_negative() { -bound } else { bound.clone() })
        .collect();
    let boxed = box_constraints(n, bound);
    for i in 0..cons.len() {
        if cons[i].satisfied_by(&x) {
            continue;
        }
        let h = &cons[i];
        // Pivot on the largest coefficient; any nonzero one would do.
        let Some(j) = (0..n)
            .filter(|&j| !h.normal[j].is_zero())
            .max_by(|&a, &b| h.normal[a].abs().cmp(&h.normal[b].abs()))
        else {
            return None;
        };
        let aj = &h.normal[j];
        let reduce = |v: &[Scalar], rhs: &Scalar| -> (Vec<Scalar>, Scalar) {
            let f = &v[j] / aj;
            let row = (0..n)
                .filter(|&l| l != j)
                .map(|l| &v[l] - &f * &h.normal[l])
                .collect();
            (row, rhs - &f * &h.offset)
        };
        let sub: Vec<Constraint> = boxed
            .iter()
            .chain(&cons[..i])
            .map(|g| {
                let (normal, offset) = reduce(&g.normal, &g.offset);
                Constraint::new(normal, offset)
            })
            .collect();
        let (sub_c, _) = reduce(c, &Scalar::zero());
        let y = solve(n - 1, &sub, &sub_c, bound)?;
        // Lift: x_j = (offset − Σ_{l≠j} a_l y_l) / a_j.
        let mut lifted = Vec::with_capacity(n);
        let mut rest = h.offset.clone();
        let mut it = y.iter();
        for l in 0..n {
            if l == j {
                lifted.push(Scalar::zero());
            } else {
                let v = it.next().expect("sub-solution length").clone();
                rest -= &h.normal[l] * &v;
                lifted.push(v);
            }
        }
        lifted[j] = rest / aj;
        x = lifted;
    }
    Some(x)
}

fn solve_1d(cons: &[Constraint], c: &Scalar, bound: &Scalar) -> Option<Vec<Scalar>> {
    let mut lo = -bound;
    let mut hi = bound.clone();
    for h in cons {
        let a = &h.normal[0];
        if a.is_zero() {
            if h.offset.is_negative() {
                return None;
            }
        } else {
            let t = &h.offset / a;
            if a.is_positive() {
                if t < hi {
                    hi = t;
                }
            } else if t > lo {
                lo = t;
            }
        }
    }
    if lo > hi {
        return None;
    }
    Some(alloc::vec![if c.is_negative() { lo } else { hi }])
}

/// A bound no vertex of `{x : constraints}` can exceed in any coordinate:
/// rows are scaled to integers and Cramer's rule plus Hadamard's inequality
/// bound every basic solution.
pub(crate) fn vertex_bound(constraints: &[Constraint], dim: usize) -> Scalar {
    let mut norms: Vec<BigInt> = constraints
        .iter()
        .map(|h| {
            let mut all = h.normal.clone();
            all.push(h.offset.clone());
            let lcm = lcm_of_denominators(&all);
            all.iter()
                .map(|v| (v.numer() * (&lcm / v.denom())).abs())
                .sum::<BigInt>()
                .max(BigInt::one())
        })
        .collect();
    norms.sort_unstable_by(|a, b| b.cmp(a));
    let prod = norms.iter().take(dim).fold(BigInt::one(), |acc, v| acc * v);
    Scalar::from_bigint(prod * 2 + 1)
}
