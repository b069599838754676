use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::fibered::generator::GeneratorSet;

/// Per-cell Hermitian Gramian of a generator set, with singular values cached
/// for rank queries at arbitrary tolerances.
#[derive(Clone, Debug)]
pub struct GramianField {
    ell: usize,
    grid: Vec<usize>,
    cells: Vec<GramianCell>,
}

#[derive(Clone, Debug)]
pub struct GramianCell {
    pub matrix: DMatrix<Complex64>,
    /// Singular values in decreasing order.
    pub singular_values: Vec<f64>,
}

impl GramianField {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn cells(&self) -> &[GramianCell] {
        &self.cells
    }

    /// Numerical rank of every cell at the given relative tolerance.
    pub fn ranks(&self, tol_rel: f64) -> Vec<usize> {
        self.cells
            .iter()
            .map(|c| rank_from_singular_values(&c.singular_values, tol_rel))
            .collect()
    }
}

/// Count of singular values above `tol_rel` times the largest one; a zero
/// matrix has rank 0.
pub fn rank_from_singular_values(singular_values: &[f64], tol_rel: f64) -> usize {
    let largest = singular_values.first().copied().unwrap_or(0.0);
    if largest <= 0.0 {
        return 0;
    }
    singular_values.iter().filter(|&&s| s > tol_rel * largest).count()
}

/// Numerical rank of a Hermitian matrix: singular values above
/// `tol_rel * sigma_max`.
pub fn numerical_rank(h: &DMatrix<Complex64>, tol_rel: f64) -> usize {
    rank_from_singular_values(&singular_values(h), tol_rel)
}

pub(crate) fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut svals: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    svals.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    svals
}

/// Gramian of the generators over an explicit tile set: entry `(i, j)` is
/// `sum_k value_i(k, cell) * conj(value_j(k, cell))` with `k` running over
/// `tiles` in order.
pub(crate) fn gramian_over_tiles(set: &GeneratorSet, tiles: &[Vec<i64>]) -> GramianField {
    let ell = set.len();
    let cells = set.cell_count();
    let computed: Vec<GramianCell> = (0..cells)
        .into_par_iter()
        .map(|cell| {
            let fibers: Vec<Vec<Complex64>> = set
                .generators()
                .iter()
                .map(|g| tiles.iter().map(|k| g.value(k, cell)).collect())
                .collect();
            let mut m = DMatrix::<Complex64>::zeros(ell, ell);
            for i in 0..ell {
                for j in i..ell {
                    let entry: Complex64 =
                        fibers[i].iter().zip(&fibers[j]).map(|(a, b)| a * b.conj()).sum();
                    m[(i, j)] = entry;
                    if i != j {
                        m[(j, i)] = entry.conj();
                    }
                }
            }
            let singular_values = singular_values(&m);
            GramianCell { matrix: m, singular_values }
        })
        .collect();
    GramianField { ell, grid: set.grid().to_vec(), cells: computed }
}

/// The Gramian field of a generator set over its full window.
pub fn gramian(set: &GeneratorSet) -> Result<GramianField> {
    let window = set.window();
    Ok(gramian_over_tiles(set, &window))
}

/// The dimension function: per-cell numerical rank of the Gramian.
pub fn dimension_function(set: &GeneratorSet, tol_rel: f64) -> Result<Vec<usize>> {
    Ok(gramian(set)?.ranks(tol_rel))
}

/// Absolute Euclidean distance from `target` to the span of `basis`, via a
/// rank-revealing SVD projection.
pub(crate) fn span_residual(
    basis: &[DVector<Complex64>],
    target: &DVector<Complex64>,
    tol_rel: f64,
) -> f64 {
    if basis.is_empty() || target.is_empty() {
        return target.norm();
    }
    let rows = target.len();
    let mut m = DMatrix::<Complex64>::zeros(rows, basis.len());
    for (j, b) in basis.iter().enumerate() {
        m.set_column(j, b);
    }
    let svd = m.svd(true, false);
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let svals = &svd.singular_values;
    let largest = svals.iter().fold(0.0f64, |a, &b| a.max(b));
    if largest <= 0.0 {
        return target.norm();
    }
    let mut residual = target.clone();
    for (j, &s) in svals.iter().enumerate() {
        if s > tol_rel * largest {
            let col = u.column(j);
            let coeff: Complex64 = col.iter().zip(target.iter()).map(|(e, t)| e.conj() * t).sum();
            residual -= DVector::from_iterator(rows, col.iter().map(|e| e * coeff));
        }
    }
    residual.norm()
}
