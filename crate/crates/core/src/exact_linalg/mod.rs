//! Exact integer and rational matrix algebra: Smith and Hermite normal forms,
//! unimodular bases, dual bases, and integral constraint lattices. No floating
//! point anywhere in this module.

mod int_matrix;
mod rat_matrix;
mod snf;

pub use int_matrix::{is_unimodular, IntMatrix};
pub use rat_matrix::{common_denominator, dual_basis, rational_inverse, rational_rank, RatMatrix};
pub use snf::{hnf_columns, integer_kernel, snf, LatticeSNF};

use num_traits::Signed;

use crate::error::{Error, Result};

/// Basis (as columns, in column-style Hermite normal form) of the lattice
///
/// ```text
/// { x in Z^d : pairings * x in Z^rows  and  annihilated * x = 0 }
/// ```
///
/// Rows of the two inputs are constraint vectors; either may be empty. The
/// returned basis is saturated: no integer vector outside the spanned lattice
/// satisfies all constraints.
pub fn constraint_lattice(pairings: &RatMatrix, annihilated: &RatMatrix) -> Result<IntMatrix> {
    let d = pairings.cols();
    if annihilated.cols() != d {
        return Err(Error::DimensionMismatch { expected: d, got: annihilated.cols() });
    }

    // Annihilator part: scale each row integral, then take the saturated
    // integer kernel.
    let ann_int = {
        let mut rows: Vec<Vec<num_bigint::BigInt>> = Vec::new();
        for i in 0..annihilated.rows() {
            let row = annihilated.row(i);
            let mut lcm = num_bigint::BigInt::from(1);
            for e in &row {
                lcm = num_integer::lcm(lcm, e.denom().abs());
            }
            rows.push(
                row.iter()
                    .map(|e| (e * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
                    .collect(),
            );
        }
        let mut m = IntMatrix::zero(annihilated.rows(), d);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..d {
                m[(i, j)] = row[j].clone();
            }
        }
        m
    };
    let kernel = integer_kernel(&ann_int);

    if pairings.rows() == 0 {
        return Ok(hnf_columns(&kernel));
    }

    // Pairing part: with m the common denominator, x satisfies
    // pairings * x in Z^p iff N * x = 0 (mod m) where N = m * pairings.
    // Substituting x = kernel * z reduces to a congruence in z, solved as the
    // projection of an integer kernel with slack columns m * I.
    let m = common_denominator(pairings);
    let p = pairings.rows();
    let r = kernel.cols();
    let n_int = {
        let mut n = IntMatrix::zero(p, d);
        for i in 0..p {
            for j in 0..d {
                n[(i, j)] =
                    (&pairings[(i, j)] * num_rational::BigRational::from_integer(m.clone()))
                        .to_integer();
            }
        }
        n
    };
    let c = n_int.mul(&kernel); // p x r
    let mut extended = IntMatrix::zero(p, r + p);
    for i in 0..p {
        for j in 0..r {
            extended[(i, j)] = c[(i, j)].clone();
        }
        extended[(i, r + i)] = m.clone();
    }
    let ker_ext = integer_kernel(&extended); // (r+p) x s
    let mut z_gens = IntMatrix::zero(r, ker_ext.cols());
    for i in 0..r {
        for j in 0..ker_ext.cols() {
            z_gens[(i, j)] = ker_ext[(i, j)].clone();
        }
    }
    let z_basis = hnf_columns(&z_gens);
    Ok(hnf_columns(&kernel.mul(&z_basis)))
}
