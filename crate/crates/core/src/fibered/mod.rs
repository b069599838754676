//! Windowed Fourier-domain model of finitely generated shift-invariant
//! spaces: Gramian fields and numerical ranks, the three equivalent
//! M-invariance tests, brackets and principal-space projections, the
//! exactly-invariant construction, and support accounting.
//!
//! The data model represents exactly the space generated by functions whose
//! transform is supported on the window tiles and piecewise constant on the
//! grid cells; verdicts are exact for such spaces rather than approximations
//! of unbounded-support ones. Per-cell computations are independent and run
//! in parallel; reductions use a fixed per-cell summation order, so reports
//! are deterministic regardless of thread count.

mod bracket;
mod generator;
mod gramian;
mod invariance;
mod json;
mod support;

pub use bracket::{bracket, project_principal, BracketField};
pub use generator::{
    cell_midpoint, cell_multi_index, modulate, modulation_phase, FiberedGenerator, GeneratorSet,
};
pub use gramian::{
    dimension_function, gramian, numerical_rank, rank_from_singular_values, GramianCell,
    GramianField,
};
pub use invariance::{
    find_extra_invariance, test_invariance_fiber, test_invariance_modulation,
    test_invariance_rank, window_distinguishes, CellLedger, InvarianceReport, Method,
    SweepOutcome,
};
pub use json::{generator_from_json, generator_to_json, report_to_json};
pub use support::{exact_invariant_generator, is_zero_set, support_report, SupportReport};
