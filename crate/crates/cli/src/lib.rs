//! Library surface of the `shiftinv` CLI: JSON pipelines around the core
//! operations, SVG partition rendering, and the seeded instance sampler used
//! by the randomized equivalence checks.

pub mod commands;
pub mod instances;
pub mod io;
pub mod render;
