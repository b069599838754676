//! Command implementations. Each returns the document to emit plus the exit
//! code; the binary stays a thin argument-parsing shell around these.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde_json::json;

use shiftinv::error::{Error, Result};
use shiftinv::fibered::{
    exact_invariant_generator, find_extra_invariance, generator_from_json, generator_to_json,
    project_principal, report_to_json, support_report, test_invariance_fiber,
    test_invariance_modulation, test_invariance_rank, GeneratorSet, InvarianceReport,
};
use shiftinv::oracle::{brute_dual, brute_membership, brute_span_membership, BruteForceBudget};
use shiftinv::subgroup::{canonical_to_json, canonicalize, spec_from_json, ClosedSubgroup};

use crate::instances::InstanceSampler;
use crate::io::{parse_grid, parse_point, parse_samples, parse_window, read_input};
use crate::render::render_partition;

pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, exit_code: 0, warnings: Vec::new() }
    }
}

fn load_group(path: &Path) -> Result<ClosedSubgroup> {
    canonicalize(&spec_from_json(&read_input(path)?)?)
}

/// A generators document is either a single generator object or an array of
/// them.
fn load_set(path: &Path) -> Result<GeneratorSet> {
    let text = read_input(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("generators: {e}")))?;
    let generators = if let Some(items) = value.as_array() {
        items
            .iter()
            .map(|v| generator_from_json(&v.to_string()))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![generator_from_json(&text)?]
    };
    GeneratorSet::new(generators)
}

pub fn cmd_canon(subgroup: &Path) -> Result<Outcome> {
    let spec = spec_from_json(&read_input(subgroup)?)?;
    let group = canonicalize(&spec)?;
    Ok(Outcome::ok(canonical_to_json(&spec, &group)?))
}

pub fn cmd_dual(subgroup: &Path) -> Result<Outcome> {
    let group = load_group(subgroup)?;
    let dual = group.dual();
    let columns: Vec<Vec<i64>> = (0..dual.cols())
        .map(|j| {
            dual.column(j)
                .iter()
                .map(|e| i64::try_from(e).map_err(|_| Error::Parse("dual entry exceeds i64".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    let doc = json!({ "d": group.d(), "q": group.q(), "dual": columns });
    Ok(Outcome::ok(serde_json::to_string_pretty(&doc).expect("serializable")))
}

pub fn cmd_contains(subgroup: &Path, point: &str) -> Result<Outcome> {
    let group = load_group(subgroup)?;
    let x = parse_point(point)?;
    if x.len() != group.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: x.len() });
    }
    let member = group.contains(&x);
    let doc = json!({ "contains": member });
    Ok(Outcome {
        output: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code: if member { 0 } else { 1 },
        warnings: Vec::new(),
    })
}

pub enum TestMethod {
    Rank,
    Fiber,
    Modulation,
}

pub fn cmd_test(
    generators: &Path,
    subgroup: &Path,
    method: TestMethod,
    samples: Option<&Path>,
    tol: f64,
) -> Result<Outcome> {
    let set = load_set(generators)?;
    let group = load_group(subgroup)?;
    let report: InvarianceReport = match method {
        TestMethod::Rank => test_invariance_rank(&set, &group, tol)?,
        TestMethod::Fiber => test_invariance_fiber(&set, &group, tol)?,
        TestMethod::Modulation => {
            let samples = match samples {
                Some(path) => parse_samples(&read_input(path)?)?,
                None => group.default_modulation_samples(),
            };
            test_invariance_modulation(&set, &group, &samples, tol)?
        }
    };
    Ok(Outcome {
        output: report_to_json(&report)?,
        exit_code: if report.verdict { 0 } else { 1 },
        warnings: Vec::new(),
    })
}

pub fn cmd_construct(subgroup: &Path, window: &str, grid: &str) -> Result<Outcome> {
    let group = load_group(subgroup)?;
    let window = parse_window(window)?;
    let grid = parse_grid(grid)?;
    let phi = exact_invariant_generator(&group, &window, &grid)?;
    let mut warnings = Vec::new();
    if phi.window().len() < 2 {
        warnings.push(
            "the zero class meets the window in fewer than two tiles; the construction \
             cannot be distinguished from coarser subgroups on this window"
                .to_string(),
        );
    }
    Ok(Outcome { output: generator_to_json(&phi)?, exit_code: 0, warnings })
}

pub fn cmd_support(generators: &Path, subgroup: &Path, tol: f64) -> Result<Outcome> {
    let set = load_set(generators)?;
    let group = load_group(subgroup)?;
    let report = support_report(&set, &group, tol)?;
    let doc = json!({
        "ell": report.ell,
        "tol": report.tol_rel,
        "generator_support": report.generator_support,
        "level_set_measures": report.level_set_measures,
        "rank_weighted_sum": report.rank_weighted_sum,
        "bound_violated": report.bound_violated,
        "generator_support_cells": report.generator_support_cells,
        "rank_cell_sum": report.rank_cell_sum,
        "cell_count": report.cell_count,
    });
    Ok(Outcome {
        output: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code: if report.bound_violated { 1 } else { 0 },
        warnings: Vec::new(),
    })
}

pub fn cmd_project(f: &Path, g: &Path, subgroup: &Path, tol: f64) -> Result<Outcome> {
    let f = generator_from_json(&read_input(f)?)?;
    let g = generator_from_json(&read_input(g)?)?;
    let group = load_group(subgroup)?;
    let projected = project_principal(&f, &g, &group, tol)?;
    Ok(Outcome::ok(generator_to_json(&projected)?))
}

pub fn cmd_sweep(generators: &Path, candidates: &[PathBuf], tol: f64) -> Result<Outcome> {
    let set = load_set(generators)?;
    let groups: Vec<ClosedSubgroup> =
        candidates.iter().map(|p| load_group(p)).collect::<Result<_>>()?;
    let outcome = find_extra_invariance(&set, &groups, tol)?;
    let mut warnings = Vec::new();
    for &(i, j) in &outcome.indistinguishable_pairs {
        warnings.push(format!(
            "window too small to distinguish candidate {} from candidate {}; their verdicts \
             necessarily coincide",
            candidates[i].display(),
            candidates[j].display()
        ));
    }
    let doc = json!({
        "tol": tol,
        "candidates": candidates.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "verdicts": outcome.verdicts,
        "consistency_violations": outcome.consistency_violations,
        "indistinguishable_pairs": outcome.indistinguishable_pairs,
    });
    Ok(Outcome {
        output: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code: if outcome.consistency_violations.is_empty() { 0 } else { 1 },
        warnings,
    })
}

pub fn cmd_render(subgroup: &Path, window: &str, size: u32) -> Result<Outcome> {
    let group = load_group(subgroup)?;
    let window = parse_window(window)?;
    for k in &window {
        if k.len() != group.d() {
            return Err(Error::DimensionMismatch { expected: group.d(), got: k.len() });
        }
    }
    Ok(Outcome::ok(render_partition(&group, &window, size)?))
}

pub fn cmd_oracle_membership(
    subgroup: &Path,
    point: &str,
    bound: i64,
    denominator: i64,
) -> Result<Outcome> {
    let spec = spec_from_json(&read_input(subgroup)?)?;
    let x = parse_point(point)?;
    let budget = BruteForceBudget {
        coefficient_bound: bound,
        grid_denominator: denominator,
        ..Default::default()
    };
    let member = brute_membership(&spec, &x, &budget);
    let doc = json!({ "member": member, "bound": bound, "denominator": denominator });
    Ok(Outcome {
        output: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code: if member { 0 } else { 1 },
        warnings: Vec::new(),
    })
}

pub fn cmd_oracle_dual(subgroup: &Path, bound: i64) -> Result<Outcome> {
    let spec = spec_from_json(&read_input(subgroup)?)?;
    let budget = BruteForceBudget { coefficient_bound: bound, ..Default::default() };
    let points = brute_dual(&spec, &budget);
    let doc = json!({ "bound": bound, "points": points });
    Ok(Outcome::ok(serde_json::to_string_pretty(&doc).expect("serializable")))
}

pub fn cmd_oracle_span(vector: &Path, span: &Path, tol: f64) -> Result<Outcome> {
    #[derive(serde::Deserialize)]
    struct VecDoc {
        re: Vec<f64>,
        im: Vec<f64>,
    }
    let parse_vec = |text: &str| -> Result<Vec<Complex64>> {
        let doc: VecDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("vector: {e}")))?;
        if doc.re.len() != doc.im.len() {
            return Err(Error::Parse("re and im lengths differ".into()));
        }
        Ok(doc.re.iter().zip(&doc.im).map(|(&re, &im)| Complex64::new(re, im)).collect())
    };
    let target = parse_vec(&read_input(vector)?)?;
    let span_doc: Vec<serde_json::Value> = serde_json::from_str(&read_input(span)?)
        .map_err(|e| Error::Parse(format!("span: {e}")))?;
    let spanning: Vec<Vec<Complex64>> = span_doc
        .iter()
        .map(|v| parse_vec(&v.to_string()))
        .collect::<Result<_>>()?;
    let residual = brute_span_membership(&target, &spanning, tol);
    let doc = json!({ "residual": residual });
    Ok(Outcome::ok(serde_json::to_string_pretty(&doc).expect("serializable")))
}

/// Randomized cross-check that the three invariance tests agree; reproduces
/// the published equivalence experiments for a given seed.
pub fn cmd_oracle_equivalence(instances: usize, seed: u64, tol: f64) -> Result<Outcome> {
    let mut sampler = InstanceSampler::new(seed);
    let mut passes = 0usize;
    let mut disagreements = Vec::new();
    for i in 0..instances {
        let instance = sampler.next_instance();
        let rank = test_invariance_rank(&instance.set, &instance.group, tol)?;
        let fiber = test_invariance_fiber(&instance.set, &instance.group, tol)?;
        let samples = instance.group.default_modulation_samples();
        let modulation =
            test_invariance_modulation(&instance.set, &instance.group, &samples, tol)?;
        if rank.verdict != fiber.verdict || rank.verdict != modulation.verdict {
            disagreements.push(json!({
                "instance": i,
                "rank": rank.verdict,
                "fiber": fiber.verdict,
                "modulation": modulation.verdict,
            }));
        }
        if rank.verdict {
            passes += 1;
        }
    }
    let ok = disagreements.is_empty();
    let doc = json!({
        "instances": instances,
        "seed": seed,
        "tol": tol,
        "invariant_count": passes,
        "disagreements": disagreements,
    });
    Ok(Outcome {
        output: serde_json::to_string_pretty(&doc).expect("serializable"),
        exit_code: if ok { 0 } else { 1 },
        warnings: Vec::new(),
    })
}
