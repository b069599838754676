use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fibered::generator::{cell_midpoint, cell_multi_index, modulation_phase, GeneratorSet};
use crate::fibered::gramian::{gramian_over_tiles, rank_from_singular_values, span_residual};
use crate::subgroup::{ClosedSubgroup, TileClass};

/// Which characterization of invariance was run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Gramian rank additivity over residue classes.
    Rank,
    /// Cutoff fibers must lie in the fiber span.
    Fiber,
    /// Modulated fibers of explicit subgroup members must lie in the span.
    Modulation,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Rank => "rank",
            Method::Fiber => "fiber",
            Method::Modulation => "modulation",
        }
    }
}

/// Per-cell ledger entry. Rank fields are populated by the rank method,
/// residuals by the two membership methods.
#[derive(Clone, Debug)]
pub struct CellLedger {
    pub index: Vec<usize>,
    pub rank_total: Option<usize>,
    pub ranks_by_class: Option<Vec<usize>>,
    pub defect: Option<i64>,
    pub residual: Option<f64>,
}

/// Outcome of an invariance test.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub method: Method,
    pub verdict: bool,
    pub tol_rel: f64,
    /// Residue-class representatives examined, in lexicographic order.
    pub classes: Vec<Vec<i64>>,
    pub cells: Vec<CellLedger>,
    pub worst_residual: Option<f64>,
}

fn check_dimensions(set: &GeneratorSet, group: &ClosedSubgroup) -> Result<()> {
    if set.d() != group.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: set.d() });
    }
    Ok(())
}

/// Decides M-invariance by Gramian rank additivity: at every cell the rank of
/// the full Gramian must equal the sum of the cutoff Gramian ranks over the
/// window's residue classes.
pub fn test_invariance_rank(
    set: &GeneratorSet,
    group: &ClosedSubgroup,
    tol_rel: f64,
) -> Result<InvarianceReport> {
    check_dimensions(set, group)?;
    let window = set.window();
    let classes = group.partition_tiles(&window);
    let total = gramian_over_tiles(set, &window);
    let per_class: Vec<_> =
        classes.iter().map(|c| gramian_over_tiles(set, &c.members)).collect();

    let cells: Vec<CellLedger> = (0..set.cell_count())
        .map(|cell| {
            let rank_total =
                rank_from_singular_values(&total.cells()[cell].singular_values, tol_rel);
            let ranks: Vec<usize> = per_class
                .iter()
                .map(|f| rank_from_singular_values(&f.cells()[cell].singular_values, tol_rel))
                .collect();
            let sum: usize = ranks.iter().sum();
            CellLedger {
                index: cell_multi_index(set.grid(), cell),
                rank_total: Some(rank_total),
                ranks_by_class: Some(ranks),
                defect: Some(sum as i64 - rank_total as i64),
                residual: None,
            }
        })
        .collect();

    let verdict = cells.iter().all(|c| c.defect == Some(0));
    Ok(InvarianceReport {
        method: Method::Rank,
        verdict,
        tol_rel,
        classes: classes.into_iter().map(|c| c.sigma).collect(),
        cells,
        worst_residual: None,
    })
}

fn fiber_basis(set: &GeneratorSet, window: &[Vec<i64>], cell: usize) -> Vec<DVector<Complex64>> {
    set.generators()
        .iter()
        .map(|g| DVector::from_iterator(window.len(), window.iter().map(|k| g.value(k, cell))))
        .collect()
}

fn membership_report(
    set: &GeneratorSet,
    classes: Vec<TileClass>,
    method: Method,
    tol_rel: f64,
    residuals: Vec<f64>,
) -> InvarianceReport {
    let cells: Vec<CellLedger> = residuals
        .iter()
        .enumerate()
        .map(|(cell, &r)| CellLedger {
            index: cell_multi_index(set.grid(), cell),
            rank_total: None,
            ranks_by_class: None,
            defect: None,
            residual: Some(r),
        })
        .collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    InvarianceReport {
        method,
        verdict: worst <= tol_rel,
        tol_rel,
        classes: classes.into_iter().map(|c| c.sigma).collect(),
        cells,
        worst_residual: Some(worst),
    }
}

/// Decides M-invariance through fibers: every cutoff fiber of every generator
/// must lie in the span of the generator fibers, cell by cell. Residuals are
/// relative to the cutoff fiber norm.
pub fn test_invariance_fiber(
    set: &GeneratorSet,
    group: &ClosedSubgroup,
    tol_rel: f64,
) -> Result<InvarianceReport> {
    check_dimensions(set, group)?;
    let window = set.window();
    let classes = group.partition_tiles(&window);
    let residuals: Vec<f64> = (0..set.cell_count())
        .into_par_iter()
        .map(|cell| {
            let basis = fiber_basis(set, &window, cell);
            let mut worst = 0.0f64;
            for g in set.generators() {
                for class in &classes {
                    let cutoff = DVector::from_iterator(
                        window.len(),
                        window.iter().map(|k| {
                            if class.members.contains(k) {
                                g.value(k, cell)
                            } else {
                                Complex64::ZERO
                            }
                        }),
                    );
                    let norm = cutoff.norm();
                    if norm == 0.0 {
                        continue;
                    }
                    let rel = span_residual(&basis, &cutoff, tol_rel) / norm;
                    worst = worst.max(rel);
                }
            }
            worst
        })
        .collect();
    Ok(membership_report(set, classes, Method::Fiber, tol_rel, residuals))
}

/// Brute-force definition of invariance on explicit members of `M`: for each
/// sample translation the modulated fibers must stay in the fiber span. This
/// is the independent oracle for the other two tests; samples not in `M` are
/// rejected.
pub fn test_invariance_modulation(
    set: &GeneratorSet,
    group: &ClosedSubgroup,
    samples: &[Vec<BigRational>],
    tol_rel: f64,
) -> Result<InvarianceReport> {
    check_dimensions(set, group)?;
    for m in samples {
        if m.len() != group.d() {
            return Err(Error::DimensionMismatch { expected: group.d(), got: m.len() });
        }
        if !group.contains(m) {
            let shown: Vec<String> = m.iter().map(|e| e.to_string()).collect();
            return Err(Error::SampleNotInSubgroup(format!("({})", shown.join(", "))));
        }
    }
    let window = set.window();
    let classes = group.partition_tiles(&window);
    let residuals: Vec<f64> = (0..set.cell_count())
        .into_par_iter()
        .map(|cell| {
            let basis = fiber_basis(set, &window, cell);
            let omega = cell_midpoint(group, set.grid(), cell);
            let mut worst = 0.0f64;
            for m in samples {
                for g in set.generators() {
                    let modulated = DVector::from_iterator(
                        window.len(),
                        window.iter().map(|k| modulation_phase(&omega, k, m) * g.value(k, cell)),
                    );
                    let norm = modulated.norm();
                    if norm == 0.0 {
                        continue;
                    }
                    let rel = span_residual(&basis, &modulated, tol_rel) / norm;
                    worst = worst.max(rel);
                }
            }
            worst
        })
        .collect();
    Ok(membership_report(set, classes, Method::Modulation, tol_rel, residuals))
}

/// True iff the partition of the window under `refined` strictly refines the
/// partition under `coarse`. When it does not, the window cannot tell the two
/// subgroups apart and invariance verdicts for them necessarily coincide.
pub fn window_distinguishes(
    coarse: &ClosedSubgroup,
    refined: &ClosedSubgroup,
    window: &[Vec<i64>],
) -> bool {
    coarse.partition_tiles(window).len() != refined.partition_tiles(window).len()
}

/// Result of sweeping the rank test over a family of candidate subgroups.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub reports: Vec<InvarianceReport>,
    pub verdicts: Vec<bool>,
    /// Pairs `(i, j)` with candidate `i` contained in candidate `j`, verdict
    /// pass for `j` but fail for `i`. Monotonicity makes this impossible, so
    /// any entry flags an internal error.
    pub consistency_violations: Vec<(usize, usize)>,
    /// Pairs `(i, j)` with candidate `i` strictly contained in candidate `j`
    /// whose partitions agree on the window: too small a window to tell them
    /// apart.
    pub indistinguishable_pairs: Vec<(usize, usize)>,
}

/// Runs the rank test for every candidate subgroup and cross-checks verdict
/// monotonicity along the inclusion order of the candidates.
pub fn find_extra_invariance(
    set: &GeneratorSet,
    candidates: &[ClosedSubgroup],
    tol_rel: f64,
) -> Result<SweepOutcome> {
    let reports: Vec<InvarianceReport> = candidates
        .iter()
        .map(|m| test_invariance_rank(set, m, tol_rel))
        .collect::<Result<_>>()?;
    let verdicts: Vec<bool> = reports.iter().map(|r| r.verdict).collect();
    let window = set.window();
    let mut consistency_violations = Vec::new();
    let mut indistinguishable_pairs = Vec::new();
    for i in 0..candidates.len() {
        for j in 0..candidates.len() {
            if i == j || !candidates[i].is_subgroup_of(&candidates[j]) {
                continue;
            }
            if verdicts[j] && !verdicts[i] {
                consistency_violations.push((i, j));
            }
            if !candidates[j].is_subgroup_of(&candidates[i])
                && !window_distinguishes(&candidates[i], &candidates[j], &window)
            {
                indistinguishable_pairs.push((i, j));
            }
        }
    }
    Ok(SweepOutcome { reports, verdicts, consistency_violations, indistinguishable_pairs })
}
