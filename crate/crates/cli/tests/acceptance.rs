//! Acceptance suite. Each criterion runs as its own test, prints one
//! PASS/FAIL line (visible with `--nocapture`), and enforces its time budget.
//!
//!     cargo test -p shiftinv-cli --test acceptance -- --nocapture

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftinv::exact_linalg::{hnf_columns, is_unimodular, snf, IntMatrix};
use shiftinv::fibered::{
    bracket, exact_invariant_generator, modulate, project_principal, support_report,
    test_invariance_fiber, test_invariance_modulation, test_invariance_rank,
    window_distinguishes, FiberedGenerator, GeneratorSet,
};
use shiftinv::oracle::{brute_dual, brute_membership, BruteForceBudget};
use shiftinv::subgroup::{canonicalize, ClosedSubgroup, RatVec, SubgroupSpec};
use shiftinv::DEFAULT_TOL_REL;
use shiftinv_cli::instances::InstanceSampler;
use shiftinv_cli::io::parse_window;
use shiftinv_cli::render::render_partition;

fn criterion<F>(number: u32, label: &str, budget_secs: f64, body: F)
where
    F: FnOnce(),
{
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed().as_secs_f64();
    match outcome {
        Ok(()) => {
            println!("[acceptance] criterion {number} ({label}): PASS ({elapsed:.2}s)");
            assert!(
                elapsed <= budget_secs,
                "criterion {number} exceeded its {budget_secs}s budget: {elapsed:.2}s"
            );
        }
        Err(cause) => {
            println!("[acceptance] criterion {number} ({label}): FAIL ({elapsed:.2}s)");
            resume_unwind(cause);
        }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn group_of(d: usize, discrete: &[&[(i64, i64)]], continuous: &[&[(i64, i64)]]) -> ClosedSubgroup {
    let to_vec = |rows: &[&[(i64, i64)]]| -> Vec<RatVec> {
        rows.iter()
            .map(|row| row.iter().map(|&(n, den)| rat(n, den)).collect())
            .collect()
    };
    canonicalize(&SubgroupSpec::new(d, to_vec(discrete), to_vec(continuous)).unwrap()).unwrap()
}

fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> IntMatrix {
    IntMatrix::from_i64(rows, cols, entries)
}

// -------------------------------------------------------------------------
// 1. Canonicalization goldens
// -------------------------------------------------------------------------

#[test]
fn criterion_1_canonicalization_goldens() {
    criterion(1, "canonicalization goldens", 1.0, || {
        // half x third x real: invariant factors (1, 6), q = 2
        let ex = group_of(3, &[&[(1, 2), (0, 1), (0, 1)], &[(0, 1), (1, 3), (0, 1)]], &[&[(0, 1), (0, 1), (1, 1)]]);
        assert_eq!(ex.q(), 2);
        assert_eq!(ex.factors(), &[BigInt::from(1), BigInt::from(6)]);

        // (1/n)Z on the line: dual lattice nZ
        for n in 2..=4i64 {
            let g = group_of(1, &[&[(1, n)]], &[]);
            assert_eq!(hnf_columns(&g.dual()), int_matrix(1, 1, &[n]));
        }

        // (1/2)Z x R: dual lattice 2Z x {0}
        let half_real = group_of(2, &[&[(1, 2), (0, 1)]], &[&[(0, 1), (1, 1)]]);
        assert_eq!(hnf_columns(&half_real.dual()), int_matrix(2, 1, &[2, 0]));

        // skew line: dual generated by (3, 3)
        let skew = group_of(2, &[&[(1, 3), (0, 1)]], &[&[(-1, 1), (1, 1)]]);
        assert_eq!(hnf_columns(&skew.dual()), int_matrix(2, 1, &[3, 3]));
        assert_eq!(skew.q(), 1);
        assert_eq!(skew.factors(), &[BigInt::from(3)]);
    });
}

// -------------------------------------------------------------------------
// 2. Smith normal form property suite
// -------------------------------------------------------------------------

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..8 {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let c: i64 = rng.random_range(-2..=2);
        if a == b {
            continue;
        }
        for j in 0..n {
            let add = BigInt::from(c) * &m[(b, j)];
            m[(a, j)] += add;
        }
    }
    m
}

#[test]
fn criterion_2_snf_property_suite() {
    criterion(2, "Smith normal form properties, 500 matrices", 10.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);
        for _ in 0..500 {
            let rows = rng.random_range(1..=4usize);
            let cols = rng.random_range(1..=4usize);
            let entries: Vec<i64> =
                (0..rows * cols).map(|_| rng.random_range(-5..=5)).collect();
            let a = int_matrix(rows, cols, &entries);
            let dec = snf(&a);
            assert!(is_unimodular(&dec.u).unwrap());
            assert!(is_unimodular(&dec.v).unwrap());
            assert_eq!(dec.u.mul(&a).mul(&dec.v), dec.d);
            let diag = dec.diagonal();
            for (i, e) in diag.iter().enumerate() {
                assert!(!e.is_negative());
                if i + 1 < diag.len() {
                    let next = &diag[i + 1];
                    if e.is_zero() {
                        assert!(next.is_zero());
                    } else if !next.is_zero() {
                        assert!((next % e).is_zero(), "divisibility chain broken");
                    }
                }
            }
            // the diagonal is a lattice invariant
            let l = random_unimodular(&mut rng, rows);
            let r = random_unimodular(&mut rng, cols);
            let twisted = snf(&l.mul(&a).mul(&r));
            assert_eq!(dec.diagonal(), twisted.diagonal());
        }
    });
}

// -------------------------------------------------------------------------
// 3. Dual-oracle agreement
// -------------------------------------------------------------------------

fn in_dual_lattice(group: &ClosedSubgroup, x: &[i64]) -> bool {
    // x in M* iff its W-basis coordinates V^T x are divisible by the factors
    // in the discrete directions and vanish in the continuous ones
    let xb: Vec<BigInt> = x.iter().map(|&e| BigInt::from(e)).collect();
    let coords = group.basis().transpose().mul_vec(&xb);
    for (i, c) in coords.iter().enumerate() {
        if i < group.q() {
            if !(c % &group.factors()[i]).is_zero() {
                return false;
            }
        } else if !c.is_zero() {
            return false;
        }
    }
    true
}

#[test]
fn criterion_3_dual_oracle_agreement() {
    criterion(3, "oracle agreement on duals and membership", 30.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0003);
        let dual_budget = BruteForceBudget { coefficient_bound: 3, ..Default::default() };
        let member_budget = BruteForceBudget {
            coefficient_bound: 2,
            grid_denominator: 4,
            ..Default::default()
        };
        for _ in 0..100 {
            let d = rng.random_range(1..=3usize);
            let n_disc = rng.random_range(0..=2usize);
            let discrete: Vec<RatVec> = (0..n_disc)
                .map(|_| {
                    (0..d)
                        .map(|_| rat(rng.random_range(-1..=1), rng.random_range(1..=3)))
                        .collect()
                })
                .collect();
            let continuous: Vec<RatVec> = if d > 1 && rng.random_bool(0.4) {
                let v: RatVec = (0..d).map(|_| rat(rng.random_range(-1..=1), 1)).collect();
                if v.iter().any(|e| !e.is_zero()) {
                    vec![v]
                } else {
                    vec![]
                }
            } else {
                vec![]
            };
            let spec = SubgroupSpec::new(d, discrete, continuous).unwrap();
            let group = canonicalize(&spec).unwrap();

            // dual agreement inside the box
            let enumerated = brute_dual(&spec, &dual_budget);
            let b = dual_budget.coefficient_bound;
            let mut expected = Vec::new();
            let mut point = vec![-b; d];
            'sweep: loop {
                if in_dual_lattice(&group, &point) {
                    expected.push(point.clone());
                }
                let mut axis = d;
                loop {
                    if axis == 0 {
                        break 'sweep;
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
            assert_eq!(enumerated, expected, "dual disagreement");

            // membership agreement on 50 points
            for _ in 0..50 {
                if rng.random_bool(0.5) {
                    // a member representable within the oracle budget
                    let mut x = vec![BigRational::zero(); d];
                    for g in &spec.discrete_generators {
                        let c = rng.random_range(-2..=2i64);
                        for (xi, gi) in x.iter_mut().zip(g) {
                            *xi += gi * rat(c, 1);
                        }
                    }
                    for v in &spec.continuous_directions {
                        let t = rat(rng.random_range(-4..=4), 2);
                        for (xi, vi) in x.iter_mut().zip(v) {
                            *xi += vi * &t;
                        }
                    }
                    for xi in x.iter_mut() {
                        *xi += rat(rng.random_range(-1..=1), 1);
                    }
                    assert!(group.contains(&x));
                    assert!(brute_membership(&spec, &x, &member_budget));
                } else {
                    // a point `contains` rejects; the oracle must agree
                    for _ in 0..20 {
                        let x: RatVec = (0..d)
                            .map(|_| rat(rng.random_range(-2..=2), rng.random_range(1..=5)))
                            .collect();
                        if !group.contains(&x) {
                            assert!(!brute_membership(&spec, &x, &member_budget));
                            break;
                        }
                    }
                }
            }
        }
    });
}

// -------------------------------------------------------------------------
// 4. Exactly invariant constructions
// -------------------------------------------------------------------------

struct Fixture {
    name: &'static str,
    group: ClosedSubgroup,
    /// A strict subgroup of `group` (between `Z^d` and `group`).
    intermediate: ClosedSubgroup,
    /// A strict refinement of `group`.
    supergroup: ClosedSubgroup,
    window: Vec<Vec<i64>>,
    grid: Vec<usize>,
}

fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "quarter line",
            group: group_of(1, &[&[(1, 4)]], &[]),
            intermediate: group_of(1, &[&[(1, 2)]], &[]),
            supergroup: group_of(1, &[&[(1, 8)]], &[]),
            window: parse_window("0..7").unwrap(),
            grid: vec![2],
        },
        Fixture {
            name: "half x real plane",
            group: group_of(2, &[&[(1, 2), (0, 1)]], &[&[(0, 1), (1, 1)]]),
            intermediate: group_of(2, &[], &[&[(0, 1), (1, 1)]]),
            supergroup: group_of(2, &[&[(1, 4), (0, 1)]], &[&[(0, 1), (1, 1)]]),
            window: parse_window("0..3,-1..1").unwrap(),
            grid: vec![2, 2],
        },
        Fixture {
            name: "skew line",
            group: group_of(2, &[&[(1, 3), (0, 1)]], &[&[(-1, 1), (1, 1)]]),
            intermediate: group_of(2, &[], &[&[(-1, 1), (1, 1)]]),
            supergroup: group_of(2, &[&[(1, 6), (0, 1)]], &[&[(-1, 1), (1, 1)]]),
            window: parse_window("0..3,0..3").unwrap(),
            grid: vec![2, 2],
        },
        Fixture {
            name: "half x third x real",
            group: group_of(
                3,
                &[&[(1, 2), (0, 1), (0, 1)], &[(0, 1), (1, 3), (0, 1)]],
                &[&[(0, 1), (0, 1), (1, 1)]],
            ),
            intermediate: group_of(
                3,
                &[&[(1, 2), (0, 1), (0, 1)]],
                &[&[(0, 1), (0, 1), (1, 1)]],
            ),
            supergroup: group_of(
                3,
                &[&[(1, 4), (0, 1), (0, 1)], &[(0, 1), (1, 3), (0, 1)]],
                &[&[(0, 1), (0, 1), (1, 1)]],
            ),
            window: parse_window("0..2,0..3,0..0").unwrap(),
            grid: vec![1, 1, 1],
        },
    ]
}

fn all_three_verdicts(set: &GeneratorSet, group: &ClosedSubgroup) -> bool {
    let rank = test_invariance_rank(set, group, DEFAULT_TOL_REL).unwrap();
    let fiber = test_invariance_fiber(set, group, DEFAULT_TOL_REL).unwrap();
    let samples = group.default_modulation_samples();
    let modulation = test_invariance_modulation(set, group, &samples, DEFAULT_TOL_REL).unwrap();
    assert_eq!(rank.verdict, fiber.verdict, "rank and fiber verdicts must agree");
    assert_eq!(rank.verdict, modulation.verdict, "rank and modulation verdicts must agree");
    rank.verdict
}

#[test]
fn criterion_4_exact_invariance_constructions() {
    criterion(4, "exactly invariant constructions", 10.0, || {
        let all = fixtures();
        for fixture in &all {
            let phi =
                exact_invariant_generator(&fixture.group, &fixture.window, &fixture.grid).unwrap();
            let set = GeneratorSet::single(phi);
            // the window must be able to separate the pair at all
            assert!(
                window_distinguishes(&fixture.group, &fixture.supergroup, &set.window()),
                "{}: inadequate window",
                fixture.name
            );
            // pass for the subgroup itself and for every subgroup of it:
            // the integer lattice and the intermediate fixture
            assert!(all_three_verdicts(&set, &fixture.group), "{} must pass", fixture.name);
            let z = canonicalize(&SubgroupSpec::integer_lattice(fixture.group.d())).unwrap();
            assert!(all_three_verdicts(&set, &z), "{}: Z^d must pass", fixture.name);
            assert!(fixture.intermediate.is_subgroup_of(&fixture.group));
            assert!(
                all_three_verdicts(&set, &fixture.intermediate),
                "{}: intermediate subgroup must pass",
                fixture.name
            );
            // pass for every family member that is a subgroup of this one
            for other in &all {
                if other.group.d() == fixture.group.d()
                    && other.group.is_subgroup_of(&fixture.group)
                {
                    assert!(
                        all_three_verdicts(&set, &other.group),
                        "{}: family subgroup {} must pass",
                        fixture.name,
                        other.name
                    );
                }
            }
            // fail for the strict supergroup, with all three methods agreeing
            assert!(
                !all_three_verdicts(&set, &fixture.supergroup),
                "{} must fail its refinement",
                fixture.name
            );
        }
    });
}

// -------------------------------------------------------------------------
// 5. Cross-test equivalence sweep
// -------------------------------------------------------------------------

#[test]
fn criterion_5_test_equivalence_sweep() {
    criterion(5, "three-test equivalence on 200 random instances", 60.0, || {
        let mut sampler = InstanceSampler::new(0xACCE_0005);
        let mut passes = 0usize;
        for _ in 0..200 {
            let instance = sampler.next_instance();
            for group in [&instance.group, &instance.supergroup] {
                let rank = test_invariance_rank(&instance.set, group, DEFAULT_TOL_REL).unwrap();
                for cell in &rank.cells {
                    assert!(cell.defect.unwrap() >= 0, "defect must be nonnegative");
                }
                let fiber = test_invariance_fiber(&instance.set, group, DEFAULT_TOL_REL).unwrap();
                let samples = group.default_modulation_samples();
                let modulation =
                    test_invariance_modulation(&instance.set, group, &samples, DEFAULT_TOL_REL)
                        .unwrap();
                assert_eq!(rank.verdict, fiber.verdict);
                assert_eq!(rank.verdict, modulation.verdict);
            }
            // monotonicity along the inclusion
            let small = test_invariance_rank(&instance.set, &instance.group, DEFAULT_TOL_REL)
                .unwrap()
                .verdict;
            let large =
                test_invariance_rank(&instance.set, &instance.supergroup, DEFAULT_TOL_REL)
                    .unwrap()
                    .verdict;
            if large {
                assert!(small, "invariance under the larger group implies the smaller");
            }
            if small {
                passes += 1;
            }
        }
        assert!(passes >= 40, "sweep needs invariant instances too, got {passes}");
        assert!(passes <= 160, "sweep needs non-invariant instances too, got {passes}");
    });
}

// -------------------------------------------------------------------------
// 6. Tiling and bracket identities
// -------------------------------------------------------------------------

#[test]
fn criterion_6_tiling_and_bracket_identities() {
    criterion(6, "Parseval tiling and Cauchy-Schwarz", 5.0, || {
        let mut sampler = InstanceSampler::new(0xACCE_0006);
        for _ in 0..100 {
            let (group, mut gens) = sampler.next_bracket_set(2);
            let g = gens.pop().unwrap();
            let f = gens.pop().unwrap();
            // tiling: cutoff norms add up to the total norm
            let classes = group.partition_tiles(&f.window());
            let total: f64 =
                classes.iter().map(|c| f.cutoff(&c.members).norm_sq()).sum();
            let expected = f.norm_sq();
            if expected > 0.0 {
                assert!((total - expected).abs() <= 1e-12 * expected, "Parseval violated");
            } else {
                assert_eq!(total, 0.0);
            }
            // pointwise Cauchy-Schwarz with the stated slack
            let bfg = bracket(&f, &g, &group).unwrap();
            let bff = bracket(&f, &f, &group).unwrap();
            let bgg = bracket(&g, &g, &group).unwrap();
            let read = |field: &shiftinv::fibered::BracketField, sigma: &[i64], cell: usize| {
                field.values(sigma).map_or(Complex64::ZERO, |vals| vals[cell])
            };
            for sigma in bfg.classes() {
                let fg = bfg.values(&sigma).unwrap();
                for (cell, value) in fg.iter().enumerate() {
                    let lhs = value.norm_sqr();
                    let rhs = read(&bff, &sigma, cell).re * read(&bgg, &sigma, cell).re;
                    assert!(rhs - lhs >= -1e-12, "Cauchy-Schwarz slack violated");
                }
            }
        }
    });
}

// -------------------------------------------------------------------------
// 7. Projection laws
// -------------------------------------------------------------------------

fn max_tile_diff(a: &FiberedGenerator, b: &FiberedGenerator) -> f64 {
    let mut keys = a.window();
    keys.extend(b.window());
    keys.sort();
    keys.dedup();
    let mut worst = 0.0f64;
    for k in keys {
        for cell in 0..a.cell_count() {
            worst = worst.max((a.value(&k, cell) - b.value(&k, cell)).norm());
        }
    }
    worst
}

#[test]
fn criterion_7_projection_laws() {
    criterion(7, "principal projection laws", 5.0, || {
        let mut sampler = InstanceSampler::new(0xACCE_0007);
        let mut lattice_checked = 0usize;
        let mut continuous_checked = 0usize;
        for _ in 0..60 {
            let (group, mut gens) = sampler.next_bracket_set(3);
            let h = gens.pop().unwrap();
            let g = gens.pop().unwrap();
            let f = gens.pop().unwrap();
            if f.norm_sq() == 0.0 {
                continue;
            }
            let pg = project_principal(&f, &g, &group, DEFAULT_TOL_REL).unwrap();
            let scale_g = g.norm_sq().sqrt().max(1e-30);

            // idempotence at 1e-9 relative
            let ppg = project_principal(&f, &pg, &group, DEFAULT_TOL_REL).unwrap();
            assert!(max_tile_diff(&ppg, &pg) <= 1e-9 * scale_g);

            // self-adjointness at 1e-9 relative
            let ph = project_principal(&f, &h, &group, DEFAULT_TOL_REL).unwrap();
            let lhs = pg.inner(&h);
            let rhs = g.inner(&ph);
            let bound = 1e-9 * (scale_g * h.norm_sq().sqrt()).max(1e-30);
            assert!((lhs - rhs).norm() <= bound, "self-adjointness violated");

            // bracket(f, g - Pg) vanishes on E_f
            let bff = bracket(&f, &f, &group).unwrap();
            let bgf = bracket(&g, &f, &group).unwrap();
            let bpgf = bracket(&pg, &f, &group).unwrap();
            let threshold = DEFAULT_TOL_REL * bff.max_abs();
            for sigma in bff.classes() {
                let ff = bff.values(&sigma).unwrap();
                let gf = bgf.values(&sigma).unwrap();
                let pgf = bpgf.values(&sigma).unwrap();
                for cell in 0..ff.len() {
                    if ff[cell].re > threshold {
                        assert!(
                            (gf[cell] - pgf[cell]).norm() <= 1e-9 * (1.0 + gf[cell].norm()),
                            "residual not bracket-orthogonal on E_f"
                        );
                    }
                }
            }

            // Pg reproduces translates of f: lattice members at roundoff
            // scale, continuous members at 1e-9
            let gens = group.generating_spec();
            if let Some(m) = gens.discrete_generators.first() {
                let translate = modulate(&f, m, &group).unwrap();
                let p = project_principal(&f, &translate, &group, DEFAULT_TOL_REL).unwrap();
                let scale_f = f.norm_sq().sqrt();
                assert!(
                    max_tile_diff(&p, &translate) <= 1e-12 * scale_f,
                    "lattice translate must project to itself at roundoff scale"
                );
                lattice_checked += 1;
            }
            if let Some(dir) = gens.continuous_directions.first() {
                let m: RatVec = dir.iter().map(|e| e * rat(1, 3)).collect();
                let translate = modulate(&f, &m, &group).unwrap();
                let p = project_principal(&f, &translate, &group, DEFAULT_TOL_REL).unwrap();
                assert!(max_tile_diff(&p, &translate) <= 1e-9 * f.norm_sq().sqrt());
                continuous_checked += 1;
            }
        }
        assert!(lattice_checked > 10 && continuous_checked > 5, "projection fixtures too thin");
    });
}

// -------------------------------------------------------------------------
// 8. Support bound
// -------------------------------------------------------------------------

#[test]
fn criterion_8_support_bound() {
    criterion(8, "windowed support bound", 5.0, || {
        // the exactly invariant principal fixtures achieve equality at 1
        for fixture in fixtures() {
            let phi =
                exact_invariant_generator(&fixture.group, &fixture.window, &fixture.grid).unwrap();
            let set = GeneratorSet::single(phi);
            let report = support_report(&set, &fixture.group, DEFAULT_TOL_REL).unwrap();
            assert!(!report.bound_violated, "{}: bound flagged", fixture.name);
            assert_eq!(report.generator_support, vec![1.0], "{}", fixture.name);
            assert_eq!(report.rank_weighted_sum, 1.0, "{}", fixture.name);
            assert_eq!(report.ell, 1);
        }
        // every passing random instance satisfies the chain exactly at grid
        // resolution
        let mut sampler = InstanceSampler::new(0xACCE_0008);
        let mut checked = 0usize;
        for _ in 0..120 {
            let instance = sampler.next_instance();
            let rank = test_invariance_rank(&instance.set, &instance.group, DEFAULT_TOL_REL)
                .unwrap();
            if !rank.verdict {
                continue;
            }
            let report =
                support_report(&instance.set, &instance.group, DEFAULT_TOL_REL).unwrap();
            for &cells in &report.generator_support_cells {
                assert!(cells <= report.rank_cell_sum, "support exceeds rank sum");
            }
            assert!(report.rank_cell_sum <= report.ell * report.cell_count);
            assert!(!report.bound_violated);
            checked += 1;
        }
        assert!(checked > 20, "need passing instances, got {checked}");
    });
}

// -------------------------------------------------------------------------
// 9. Partition render goldens
// -------------------------------------------------------------------------

struct RenderConfig {
    golden: &'static str,
    group: ClosedSubgroup,
    window: &'static str,
}

fn render_configs() -> Vec<RenderConfig> {
    vec![
        RenderConfig {
            golden: "partition_quarter_line.svg",
            group: group_of(1, &[&[(1, 4)]], &[]),
            window: "-7..8",
        },
        RenderConfig {
            golden: "partition_half_times_real.svg",
            group: group_of(2, &[&[(1, 2), (0, 1)]], &[&[(0, 1), (1, 1)]]),
            window: "-7..6,-2..2",
        },
        RenderConfig {
            golden: "partition_skew_line.svg",
            group: group_of(2, &[&[(1, 3), (0, 1)]], &[&[(-1, 1), (1, 1)]]),
            window: "-6..5,-3..5",
        },
    ]
}

/// Extracts `(data-k, fill)` pairs from the renderer's tile elements.
fn tile_fills(svg: &str) -> Vec<(Vec<i64>, String)> {
    let mut out = Vec::new();
    for line in svg.lines() {
        let Some(kpos) = line.find("data-k=\"") else { continue };
        let key: String =
            line[kpos + 8..].chars().take_while(|&c| c != '"').collect();
        let fpos = line.find("fill=\"").expect("tile elements carry a fill");
        let fill: String = line[fpos + 6..].chars().take_while(|&c| c != '"').collect();
        let k: Vec<i64> = key.split(',').map(|p| p.parse().unwrap()).collect();
        out.push((k, fill));
    }
    out
}

#[test]
fn criterion_9_render_goldens() {
    criterion(9, "partition render goldens, byte for byte", 1.0, || {
        for config in render_configs() {
            let window = parse_window(config.window).unwrap();
            let svg = render_partition(&config.group, &window, 640).unwrap();
            let golden_path =
                format!("{}/tests/goldens/{}", env!("CARGO_MANIFEST_DIR"), config.golden);
            let golden = std::fs::read_to_string(&golden_path).expect("golden committed");
            assert_eq!(svg, golden, "{} drifted from its golden bytes", config.golden);

            // independent coloring check: two tiles share a fill exactly when
            // reduce_tile sends them to the same representative
            let fills = tile_fills(&svg);
            assert_eq!(fills.len(), window.len());
            for (ka, fa) in &fills {
                for (kb, fb) in &fills {
                    let same_class =
                        config.group.reduce_tile(ka).sigma == config.group.reduce_tile(kb).sigma;
                    assert_eq!(
                        same_class,
                        fa == fb,
                        "coloring of {ka:?} vs {kb:?} disagrees with tile reduction"
                    );
                }
            }
            // every section representative is marked with a dot
            for class in config.group.partition_tiles(&window) {
                let key: Vec<String> = class.sigma.iter().map(|e| e.to_string()).collect();
                assert!(
                    svg.contains(&format!("data-sigma=\"{}\"", key.join(","))),
                    "missing dot for representative {:?}",
                    class.sigma
                );
            }
        }
    });
}
