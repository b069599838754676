use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fibered::generator::{FiberedGenerator, GeneratorSet};
use crate::fibered::gramian::gramian;
use crate::subgroup::ClosedSubgroup;

/// The windowed indicator of the residue class of the origin: value 1 on every
/// cell of every window tile whose residue is 0, zero elsewhere. The principal
/// space it generates is exactly M-invariant once the window is large enough
/// to separate M from its proper supergroups.
pub fn exact_invariant_generator(
    group: &ClosedSubgroup,
    window: &[Vec<i64>],
    grid: &[usize],
) -> Result<FiberedGenerator> {
    let d = group.d();
    if grid.len() != d {
        return Err(Error::DimensionMismatch { expected: d, got: grid.len() });
    }
    let zero_sigma = vec![0i64; d];
    let classes = group.partition_tiles(window);
    let Some(zero_class) = classes.iter().find(|c| c.sigma == zero_sigma) else {
        return Err(Error::EmptyZeroClass);
    };
    let cells: usize = grid.iter().product();
    let mut out = FiberedGenerator::zero(d, grid.to_vec())?;
    for k in &zero_class.members {
        out.insert_tile(k.clone(), vec![Complex64::new(1.0, 0.0); cells]);
    }
    Ok(out)
}

/// Support accounting for the windowed analogue of the dimension-function
/// bound: per-generator support measure on a section of `R^d / M*`, level-set
/// measures of the dimension function, and their rank-weighted sum.
#[derive(Clone, Debug)]
pub struct SupportReport {
    pub ell: usize,
    pub tol_rel: f64,
    /// Windowed measure of `{ y in section : phi_h(y) != 0 }` per generator:
    /// cells are counted once per residue class holding a nonzero tile value.
    pub generator_support: Vec<f64>,
    /// `|E_j|` for `j = 0..=ell`, where `E_j` collects the cells with
    /// dimension function exactly `j`.
    pub level_set_measures: Vec<f64>,
    /// `sum_j j * |E_j|`.
    pub rank_weighted_sum: f64,
    /// True iff the chain `support <= sum_j j |E_j| <= ell` fails for some
    /// generator at grid resolution.
    pub bound_violated: bool,
    /// Integer counterparts (counts of (class, cell) pairs and rank totals)
    /// for exact comparisons.
    pub generator_support_cells: Vec<usize>,
    pub rank_cell_sum: usize,
    pub cell_count: usize,
}

/// Measures supports and dimension level sets, flagging violations of the
/// support bound. The bound is a theorem for M-invariant spaces; for
/// non-invariant input the flag is still computed and simply reports the
/// windowed quantities.
pub fn support_report(
    set: &GeneratorSet,
    group: &ClosedSubgroup,
    tol_rel: f64,
) -> Result<SupportReport> {
    if set.d() != group.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: set.d() });
    }
    let ell = set.len();
    let cells = set.cell_count();
    let vol = set.cell_volume();
    let window = set.window();
    let classes = group.partition_tiles(&window);

    // (a) per generator: count (class, cell) pairs carrying a nonzero value
    let generator_support_cells: Vec<usize> = set
        .generators()
        .iter()
        .map(|g| {
            let threshold = tol_rel * g.max_abs();
            let mut count = 0usize;
            for class in &classes {
                for cell in 0..cells {
                    let hot = class.members.iter().any(|k| g.value(k, cell).norm() > threshold);
                    if hot {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect();

    // (b) level sets of the dimension function
    let ranks = gramian(set)?.ranks(tol_rel);
    let mut level_counts = vec![0usize; ell + 1];
    for &r in &ranks {
        level_counts[r.min(ell)] += 1;
    }
    let rank_cell_sum: usize = ranks.iter().sum();

    let generator_support: Vec<f64> =
        generator_support_cells.iter().map(|&c| c as f64 * vol).collect();
    let level_set_measures: Vec<f64> = level_counts.iter().map(|&c| c as f64 * vol).collect();
    let rank_weighted_sum = rank_cell_sum as f64 * vol;

    let bound_violated = generator_support_cells.iter().any(|&c| c > rank_cell_sum)
        || rank_cell_sum > ell * cells;

    Ok(SupportReport {
        ell,
        tol_rel,
        generator_support,
        level_set_measures,
        rank_weighted_sum,
        bound_violated,
        generator_support_cells,
        rank_cell_sum,
        cell_count: cells,
    })
}

/// True iff the generator set is identically zero.
pub fn is_zero_set(set: &GeneratorSet) -> bool {
    set.generators().iter().all(|g| {
        g.tiles().values().all(|vals| vals.iter().all(|v| v.is_zero()))
    })
}
