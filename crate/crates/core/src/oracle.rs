//! Independent brute-force verifiers. These ground the expected values of the
//! main algorithms on small instances and deliberately share no code with the
//! paths they check: membership is searched over the raw spec generators, the
//! dual is enumerated over an integer box, and span membership is decided by
//! Gram-Schmidt orthonormalization rather than the SVD route.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::subgroup::{RatVec, SubgroupSpec};

/// Search limits for the brute-force oracles. The defaults keep every search
/// below a few milliseconds on the intended instance sizes.
#[derive(Clone, Debug)]
pub struct BruteForceBudget {
    /// Integer coefficients and box coordinates range over `[-bound, bound]`.
    pub coefficient_bound: i64,
    /// Continuous coefficients range over `j / grid_denominator`.
    pub grid_denominator: i64,
    pub max_dimension: usize,
    pub max_window: usize,
}

impl Default for BruteForceBudget {
    fn default() -> Self {
        BruteForceBudget {
            coefficient_bound: 6,
            grid_denominator: 12,
            max_dimension: 3,
            max_window: 12,
        }
    }
}

fn sub_scaled(acc: &mut [BigRational], gen: &[BigRational], coeff: &BigRational) {
    for (a, g) in acc.iter_mut().zip(gen) {
        let term = g * coeff;
        *a -= term;
    }
}

/// True iff the residual is an integer vector inside the budget box.
fn residual_in_box(v: &[BigRational], bound: i64) -> bool {
    let b = BigInt::from(bound);
    v.iter().all(|e| e.is_integer() && e.to_integer().abs() <= b)
}

/// Budget-complete membership search: looks for
/// `x = sum c_g g + sum t_v v + z` with integer `c_g`, gridded rational
/// `t_v`, and `z` an integer vector in the box. Sound (a hit proves
/// membership) but only complete within the budget.
pub fn brute_membership(spec: &SubgroupSpec, x: &[BigRational], budget: &BruteForceBudget) -> bool {
    assert_eq!(x.len(), spec.d, "point dimension mismatch");
    assert!(spec.d <= budget.max_dimension, "dimension exceeds the search budget");
    let b = budget.coefficient_bound;
    let den = budget.grid_denominator;

    // depth-first over discrete then continuous coefficients
    fn search(
        spec: &SubgroupSpec,
        acc: &[BigRational],
        gen_idx: usize,
        b: i64,
        den: i64,
    ) -> bool {
        let nd = spec.discrete_generators.len();
        let nc = spec.continuous_directions.len();
        if gen_idx == nd + nc {
            return residual_in_box(acc, b);
        }
        if gen_idx < nd {
            let g = &spec.discrete_generators[gen_idx];
            for c in -b..=b {
                let mut next = acc.to_vec();
                sub_scaled(&mut next, g, &BigRational::from_integer(BigInt::from(c)));
                if search(spec, &next, gen_idx + 1, b, den) {
                    return true;
                }
            }
        } else {
            let v = &spec.continuous_directions[gen_idx - nd];
            for j in -(b * den)..=(b * den) {
                let t = BigRational::new(BigInt::from(j), BigInt::from(den));
                let mut next = acc.to_vec();
                sub_scaled(&mut next, v, &t);
                if search(spec, &next, gen_idx + 1, b, den) {
                    return true;
                }
            }
        }
        false
    }

    search(spec, x, 0, b, den)
}

/// Every integer vector in the budget box that pairs integrally with all
/// discrete generators and is orthogonal to all continuous directions.
/// Returned in lexicographic order.
pub fn brute_dual(spec: &SubgroupSpec, budget: &BruteForceBudget) -> Vec<Vec<i64>> {
    let d = spec.d;
    assert!(d <= budget.max_dimension, "dimension exceeds the search budget");
    let b = budget.coefficient_bound;
    let mut out = Vec::new();
    let mut point = vec![-b; d];
    loop {
        let x: RatVec = point.iter().map(|&e| BigRational::from_integer(BigInt::from(e))).collect();
        let pair_ok = spec.discrete_generators.iter().all(|g| {
            let dot: BigRational = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            dot.is_integer()
        });
        let ann_ok = spec.continuous_directions.iter().all(|v| {
            let dot: BigRational = v.iter().zip(&x).map(|(a, b)| a * b).sum();
            dot.is_zero()
        });
        if pair_ok && ann_ok {
            out.push(point.clone());
        }
        // odometer increment
        let mut axis = d;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if point[axis] < b {
                point[axis] += 1;
                for p in point.iter_mut().skip(axis + 1) {
                    *p = -b;
                }
                break;
            }
        }
    }
}

/// Euclidean distance from `vector` to the span of `spanning` via modified
/// Gram-Schmidt. `tol` decides when a candidate basis vector is numerically
/// zero (relative to the largest input norm).
pub fn brute_span_membership(vector: &[Complex64], spanning: &[Vec<Complex64>], tol: f64) -> f64 {
    let norm = |v: &[Complex64]| v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
    };
    let max_norm = spanning
        .iter()
        .map(|v| norm(v))
        .fold(norm(vector), f64::max);
    let threshold = tol * max_norm;

    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for candidate in spanning {
        let mut v = candidate.clone();
        for e in &basis {
            let coeff = dot(&v, e);
            for (vi, ei) in v.iter_mut().zip(e) {
                *vi -= coeff * ei;
            }
        }
        let n = norm(&v);
        if n > threshold {
            for vi in v.iter_mut() {
                *vi /= n;
            }
            basis.push(v);
        }
    }

    let mut residual = vector.to_vec();
    for e in &basis {
        let coeff = dot(&residual, e);
        for (ri, ei) in residual.iter_mut().zip(e) {
            *ri -= coeff * ei;
        }
    }
    norm(&residual)
}
