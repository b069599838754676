use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::int_matrix::IntMatrix;

/// Smith decomposition `U * A * V = D` of an integer matrix.
///
/// `U` and `V` are unimodular, `D` is diagonal with nonnegative entries whose
/// nonzero prefix forms a divisibility chain `d_1 | d_2 | ...`. The diagonal
/// lists the invariant factors of the lattice spanned by the columns of `A`.
#[derive(Clone, Debug)]
pub struct LatticeSNF {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl LatticeSNF {
    /// Diagonal of `D` truncated to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|e| !e.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Work {
    m: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.m.cols() {
            let tmp = self.m[(a, j)].clone();
            self.m[(a, j)] = self.m[(b, j)].clone();
            self.m[(b, j)] = tmp;
        }
        for j in 0..self.u.cols() {
            let tmp = self.u[(a, j)].clone();
            self.u[(a, j)] = self.u[(b, j)].clone();
            self.u[(b, j)] = tmp;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.m.rows() {
            let tmp = self.m[(i, a)].clone();
            self.m[(i, a)] = self.m[(i, b)].clone();
            self.m[(i, b)] = tmp;
        }
        for i in 0..self.v.rows() {
            let tmp = self.v[(i, a)].clone();
            self.v[(i, a)] = self.v[(i, b)].clone();
            self.v[(i, b)] = tmp;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.m.cols() {
            let e = -self.m[(r, j)].clone();
            self.m[(r, j)] = e;
        }
        for j in 0..self.u.cols() {
            let e = -self.u[(r, j)].clone();
            self.u[(r, j)] = e;
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.m.cols() {
            let add = q * &self.m[(src, j)];
            self.m[(dst, j)] += add;
        }
        for j in 0..self.u.cols() {
            let add = q * &self.u[(src, j)];
            self.u[(dst, j)] += add;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.m.rows() {
            let add = q * &self.m[(i, src)];
            self.m[(i, dst)] += add;
        }
        for i in 0..self.v.rows() {
            let add = q * &self.v[(i, src)];
            self.v[(i, dst)] += add;
        }
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivots are chosen as the smallest nonzero magnitude of the trailing block,
/// which keeps intermediate entries from ballooning on typical inputs.
pub fn snf(a: &IntMatrix) -> LatticeSNF {
    let rows = a.rows();
    let cols = a.cols();
    let mut w = Work {
        m: a.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };

    let mut t = 0;
    'outer: while t < rows.min(cols) {
        // locate the smallest-magnitude nonzero entry of the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if w.m[(i, j)].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if w.m[(pi, pj)].abs() <= w.m[(i, j)].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing block is zero; done
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            if w.m[(t, t)].is_negative() {
                w.negate_row(t);
            }
            // clear the pivot column; a nonzero remainder becomes the new,
            // strictly smaller pivot
            let mut dirty = false;
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = w.m[(i, t)].div_floor(&w.m[(t, t)]);
                w.add_row_multiple(i, t, &(-q));
                if !w.m[(i, t)].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // clear the pivot row
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = w.m[(t, j)].div_floor(&w.m[(t, t)]);
                w.add_col_multiple(j, t, &(-q));
                if !w.m[(t, j)].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block for the
            // divisibility chain; fold offending rows into the pivot row
            let mut merged = false;
            'divcheck: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.m[(i, j)].mod_floor(&w.m[(t, t)]).is_zero() {
                        w.add_row_multiple(t, i, &BigInt::from(1));
                        merged = true;
                        break 'divcheck;
                    }
                }
            }
            if !merged {
                t += 1;
                continue 'outer;
            }
        }
    }

    LatticeSNF { u: w.u, d: w.m, v: w.v }
}

/// Canonical column-style Hermite normal form of the lattice spanned by the
/// columns of `a`: zero columns dropped, pivot rows strictly increasing,
/// pivots positive, entries left of a pivot reduced to `[0, pivot)`.
///
/// The result depends only on the column lattice, which makes it suitable as
/// a golden-test representation of lattice bases.
pub fn hnf_columns(a: &IntMatrix) -> IntMatrix {
    let mut m = a.transpose();
    let rows = m.rows();
    let cols = m.cols();
    let swap = |m: &mut IntMatrix, a: usize, b: usize| {
        if a != b {
            for j in 0..cols {
                let tmp = m[(a, j)].clone();
                m[(a, j)] = m[(b, j)].clone();
                m[(b, j)] = tmp;
            }
        }
    };
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if m[(b, c)].abs() <= m[(i, c)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else {
                break;
            };
            swap(&mut m, r, b);
            if m[(r, c)].is_negative() {
                for j in 0..cols {
                    let e = -m[(r, j)].clone();
                    m[(r, j)] = e;
                }
            }
            let mut cleared = true;
            for i in r + 1..rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let q = m[(i, c)].div_floor(&m[(r, c)]);
                for j in 0..cols {
                    let sub = &q * &m[(r, j)];
                    m[(i, j)] -= sub;
                }
                if !m[(i, c)].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                // reduce entries above the pivot into [0, pivot)
                for i in 0..r {
                    let q = m[(i, c)].div_floor(&m[(r, c)]);
                    if q.is_zero() {
                        continue;
                    }
                    for j in 0..cols {
                        let sub = &q * &m[(r, j)];
                        m[(i, j)] -= sub;
                    }
                }
                r += 1;
                break;
            }
        }
    }
    // rows 0..r hold the echelon basis; transpose back to columns
    let mut out = IntMatrix::zero(cols, r);
    for i in 0..r {
        for j in 0..cols {
            out[(j, i)] = m[(i, j)].clone();
        }
    }
    out
}

/// Basis (as columns) of the saturated integer kernel `{x : a * x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let cols = a.cols();
    if a.rows() == 0 {
        return IntMatrix::identity(cols);
    }
    let dec = snf(a);
    let rank = dec.rank();
    let kernel_cols: Vec<Vec<BigInt>> = (rank..cols).map(|j| dec.v.column(j)).collect();
    IntMatrix::from_columns(cols, &kernel_cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::int_matrix::is_unimodular;

    fn check(a: &IntMatrix) -> LatticeSNF {
        let dec = snf(a);
        assert!(is_unimodular(&dec.u).unwrap(), "U not unimodular");
        assert!(is_unimodular(&dec.v).unwrap(), "V not unimodular");
        assert_eq!(dec.u.mul(a).mul(&dec.v), dec.d, "UAV != D");
        let diag = dec.diagonal();
        for (i, e) in diag.iter().enumerate() {
            assert!(!e.is_negative(), "negative diagonal");
            if i + 1 < diag.len() && !e.is_zero() && !diag[i + 1].is_zero() {
                assert!(diag[i + 1].mod_floor(e).is_zero(), "divisibility chain broken");
            }
            if e.is_zero() && i + 1 < diag.len() {
                assert!(diag[i + 1].is_zero(), "zero before nonzero factor");
            }
        }
        // off-diagonal must vanish
        for i in 0..dec.d.rows() {
            for j in 0..dec.d.cols() {
                if i != j {
                    assert!(dec.d[(i, j)].is_zero());
                }
            }
        }
        dec
    }

    #[test]
    fn snf_of_diag_2_3_is_diag_1_6() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let dec = check(&a);
        assert_eq!(dec.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_of_identity() {
        let a = IntMatrix::identity(3);
        let dec = check(&a);
        assert_eq!(dec.d, IntMatrix::identity(3));
    }

    #[test]
    fn snf_rank_deficient() {
        let a = IntMatrix::from_i64(2, 2, &[1, 0, 0, 0]);
        let dec = check(&a);
        assert_eq!(dec.diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
    }

    #[test]
    fn snf_of_tall_column() {
        let a = IntMatrix::from_i64(2, 1, &[3, 3]);
        let dec = check(&a);
        assert_eq!(dec.diagonal(), vec![BigInt::from(3)]);
    }

    #[test]
    fn snf_dual_lattice_2_3_0() {
        // columns (2,0,0) and (0,3,0)
        let a = IntMatrix::from_i64(3, 2, &[2, 0, 0, 3, 0, 0]);
        let dec = check(&a);
        assert_eq!(dec.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn hnf_of_identity() {
        assert_eq!(hnf_columns(&IntMatrix::identity(3)), IntMatrix::identity(3));
    }

    #[test]
    fn hnf_drops_zero_columns_and_orders_pivots() {
        // columns (0,3,0), (2,0,0), (0,0,0) of Z^3
        let a = IntMatrix::from_i64(3, 3, &[0, 2, 0, 3, 0, 0, 0, 0, 0]);
        let h = hnf_columns(&a);
        assert_eq!(h, IntMatrix::from_i64(3, 2, &[2, 0, 0, 3, 0, 0]));
    }

    #[test]
    fn hnf_is_basis_invariant() {
        // two generating sets of the same lattice
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 0, 2]);
        let b = IntMatrix::from_i64(2, 3, &[6, 2, 4, 2, 0, 2]);
        assert_eq!(hnf_columns(&a), hnf_columns(&b));
    }

    #[test]
    fn kernel_of_row_vector() {
        // kernel of (-1 1) in Z^2 is spanned by (1,1)
        let a = IntMatrix::from_i64(1, 2, &[-1, 1]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 1);
        let x = k.column(0);
        assert_eq!(x[0], x[1]);
        assert!(!x[0].is_zero());
    }

    #[test]
    fn kernel_of_empty_constraint_is_identity() {
        let a = IntMatrix::zero(0, 3);
        assert_eq!(integer_kernel(&a), IntMatrix::identity(3));
    }
}
