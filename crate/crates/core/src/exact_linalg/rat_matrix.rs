use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::int_matrix::{is_unimodular, IntMatrix};

/// Dense matrix of exact rationals, row-major. `BigRational` keeps entries in
/// lowest terms with positive denominators by construction.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RatMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[Vec<BigRational>]) -> Self {
        let mut m = RatMatrix::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length must equal cols");
            for j in 0..cols {
                m[(i, j)] = row[j].clone();
            }
        }
        m
    }

    pub fn from_int(a: &IntMatrix) -> Self {
        let mut m = RatMatrix::zero(a.rows(), a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m[(i, j)] = BigRational::from_integer(a[(i, j)].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigRational> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    let cur = out[(i, j)].clone();
                    out[(i, j)] = cur + prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "vector length must equal cols");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// True iff every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Converts to an integer matrix; fails if any entry has a denominator.
    pub fn to_int(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::Parse("matrix entries are not all integers".into()));
        }
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].to_integer();
            }
        }
        Ok(m)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl std::fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact inverse by Gauss-Jordan elimination. Errors on singular input.
pub fn rational_inverse(a: &RatMatrix) -> Result<RatMatrix> {
    if a.rows != a.cols {
        return Err(Error::NotSquare { rows: a.rows, cols: a.cols });
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut inv = RatMatrix::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&i| !m[(i, col)].is_zero()).ok_or(Error::Singular)?;
        if pivot != col {
            for j in 0..n {
                let tmp = m[(pivot, j)].clone();
                m[(pivot, j)] = m[(col, j)].clone();
                m[(col, j)] = tmp;
                let tmp = inv[(pivot, j)].clone();
                inv[(pivot, j)] = inv[(col, j)].clone();
                inv[(col, j)] = tmp;
            }
        }
        let p = m[(col, col)].clone();
        for j in 0..n {
            m[(col, j)] = &m[(col, j)] / &p;
            inv[(col, j)] = &inv[(col, j)] / &p;
        }
        for i in 0..n {
            if i == col || m[(i, col)].is_zero() {
                continue;
            }
            let factor = m[(i, col)].clone();
            for j in 0..n {
                let sub = &factor * &m[(col, j)];
                let cur = m[(i, j)].clone();
                m[(i, j)] = cur - sub;
                let sub = &factor * &inv[(col, j)];
                let cur = inv[(i, j)].clone();
                inv[(i, j)] = cur - sub;
            }
        }
    }
    Ok(inv)
}

/// Exact rank over the rationals by Gaussian elimination.
pub fn rational_rank(a: &RatMatrix) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                let tmp = m[(pivot, j)].clone();
                m[(pivot, j)] = m[(rank, j)].clone();
                m[(rank, j)] = tmp;
            }
        }
        for i in rank + 1..rows {
            if m[(i, col)].is_zero() {
                continue;
            }
            let factor = &m[(i, col)] / &m[(rank, col)];
            for j in col..cols {
                let sub = &factor * &m[(rank, j)];
                let cur = m[(i, j)].clone();
                m[(i, j)] = cur - sub;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dual basis of a unimodular column basis of the integer lattice: the matrix
/// `W = (V^T)^{-1}` whose columns pair with the columns of `V` as
/// `<v_i, w_j> = delta_ij`. Unimodularity of `V` forces `W` to be integral.
pub fn dual_basis(v: &IntMatrix) -> Result<IntMatrix> {
    if !v.is_square() {
        return Err(Error::NotSquare { rows: v.rows(), cols: v.cols() });
    }
    if !is_unimodular(v)? {
        return Err(Error::NotUnimodular);
    }
    let w = rational_inverse(&RatMatrix::from_int(&v.transpose()))?;
    w.to_int()
}

/// Least common multiple of the denominators of every entry.
pub fn common_denominator(a: &RatMatrix) -> BigInt {
    let mut lcm = BigInt::one();
    for e in &a.entries {
        let den = e.denom().abs();
        lcm = num_integer::lcm(lcm, den);
    }
    lcm
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_identity() {
        let i = RatMatrix::identity(4);
        assert_eq!(rational_inverse(&i).unwrap(), i);
    }

    #[test]
    fn inverse_times_original_is_identity() {
        // transpose of the 3x3 basis matrix with columns (1,1,0), (3,2,0), (0,0,1)
        let a = RatMatrix::from_int(&IntMatrix::from_i64(3, 3, &[1, 1, 0, 3, 2, 0, 0, 0, 1]));
        let inv = rational_inverse(&a).unwrap();
        let expected = IntMatrix::from_i64(3, 3, &[-2, 1, 0, 3, -1, 0, 0, 0, 1]);
        assert_eq!(inv.to_int().unwrap(), expected);
        assert_eq!(a.mul(&inv), RatMatrix::identity(3));
    }

    #[test]
    fn singular_matrix_rejected() {
        let a = RatMatrix::from_int(&IntMatrix::from_i64(2, 2, &[1, 1, 1, 1]));
        assert_eq!(rational_inverse(&a), Err(Error::Singular));
    }

    #[test]
    fn inverse_with_fractions() {
        let a = RatMatrix::new(2, 2, vec![rat(1, 2), rat(0, 1), rat(0, 1), rat(1, 3)]);
        let inv = rational_inverse(&a).unwrap();
        assert_eq!(inv[(0, 0)], rat(2, 1));
        assert_eq!(inv[(1, 1)], rat(3, 1));
        assert_eq!(a.mul(&inv), RatMatrix::identity(2));
    }

    #[test]
    fn dual_basis_identity() {
        assert_eq!(dual_basis(&IntMatrix::identity(3)).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn dual_basis_of_skew_plane_basis() {
        // columns v1=(1,0), v2=(-1,1); duals w1=(1,1), w2=(0,1)
        let v = IntMatrix::from_i64(2, 2, &[1, -1, 0, 1]);
        let w = dual_basis(&v).unwrap();
        assert_eq!(w, IntMatrix::from_i64(2, 2, &[1, 0, 1, 1]));
    }

    #[test]
    fn dual_basis_3d_example() {
        // columns v1=(1,1,0), v2=(3,2,0), v3=(0,0,1)
        let v = IntMatrix::from_i64(3, 3, &[1, 3, 0, 1, 2, 0, 0, 0, 1]);
        let w = dual_basis(&v).unwrap();
        // columns w1=(-2,3,0), w2=(1,-1,0), w3=(0,0,1)
        assert_eq!(w, IntMatrix::from_i64(3, 3, &[-2, 1, 0, 3, -1, 0, 0, 0, 1]));
        // pairing products <v_i, w_j> = delta_ij
        assert_eq!(v.transpose().mul(&w), IntMatrix::identity(3));
    }

    #[test]
    fn dual_basis_rejects_non_unimodular() {
        let v = IntMatrix::from_i64(2, 2, &[2, 0, 0, 1]);
        assert_eq!(dual_basis(&v), Err(Error::NotUnimodular));
    }

    #[test]
    fn dual_basis_is_an_involution() {
        let v = IntMatrix::from_i64(3, 3, &[1, 3, 0, 1, 2, 0, 0, 0, 1]);
        let w = dual_basis(&v).unwrap();
        assert_eq!(dual_basis(&w).unwrap(), v);
    }
}
