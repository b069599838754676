//! Seeded random instances for the cross-test equivalence sweep: a subgroup,
//! a strict refinement of it, and a windowed generator set, all within the
//! small budgets (`d <= 2`, `l <= 3`, window of at most 12 tiles) where the
//! brute-force modulation oracle is fast.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftinv::fibered::{FiberedGenerator, GeneratorSet};
use shiftinv::subgroup::{canonicalize, ClosedSubgroup, RatVec, SubgroupSpec};

pub struct Instance {
    pub group: ClosedSubgroup,
    pub supergroup: ClosedSubgroup,
    pub set: GeneratorSet,
}

pub struct InstanceSampler {
    rng: ChaCha8Rng,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl InstanceSampler {
    pub fn new(seed: u64) -> Self {
        InstanceSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn group_pair(&mut self, d: usize) -> (ClosedSubgroup, ClosedSubgroup) {
        let make = |discrete: Vec<RatVec>, continuous: Vec<RatVec>| {
            canonicalize(&SubgroupSpec::new(d, discrete, continuous).unwrap()).unwrap()
        };
        if d == 1 {
            let a = self.rng.random_range(1..=4i64);
            (make(vec![vec![rat(1, a)]], vec![]), make(vec![vec![rat(1, 2 * a)]], vec![]))
        } else {
            match self.rng.random_range(0..4u8) {
                0 => (make(vec![], vec![]), make(vec![vec![rat(1, 2), rat(0, 1)]], vec![])),
                1 => {
                    let a = self.rng.random_range(1..=3i64);
                    let b = self.rng.random_range(1..=3i64);
                    (
                        make(
                            vec![vec![rat(1, a), rat(0, 1)], vec![rat(0, 1), rat(1, b)]],
                            vec![],
                        ),
                        make(
                            vec![vec![rat(1, 2 * a), rat(0, 1)], vec![rat(0, 1), rat(1, b)]],
                            vec![],
                        ),
                    )
                }
                2 => {
                    let a = self.rng.random_range(1..=3i64);
                    (
                        make(
                            vec![vec![rat(1, a), rat(0, 1)]],
                            vec![vec![rat(0, 1), rat(1, 1)]],
                        ),
                        make(
                            vec![vec![rat(1, 2 * a), rat(0, 1)]],
                            vec![vec![rat(0, 1), rat(1, 1)]],
                        ),
                    )
                }
                _ => (
                    make(
                        vec![vec![rat(1, 3), rat(0, 1)]],
                        vec![vec![rat(-1, 1), rat(1, 1)]],
                    ),
                    make(
                        vec![vec![rat(1, 6), rat(0, 1)]],
                        vec![vec![rat(-1, 1), rat(1, 1)]],
                    ),
                ),
            }
        }
    }

    fn window(&mut self, d: usize) -> Vec<Vec<i64>> {
        if d == 1 {
            let lo = self.rng.random_range(-2..=0i64);
            let len = self.rng.random_range(4..=8i64);
            (lo..lo + len).map(|k| vec![k]).collect()
        } else {
            let w = self.rng.random_range(2..=4i64);
            let h = self.rng.random_range(2..=3i64);
            let lo0 = self.rng.random_range(-1..=0i64);
            let lo1 = self.rng.random_range(-1..=0i64);
            let mut out = Vec::new();
            for i in lo0..lo0 + w {
                for j in lo1..lo1 + h {
                    out.push(vec![i, j]);
                }
            }
            out
        }
    }

    fn unit(&mut self) -> Complex64 {
        match self.rng.random_range(0..4u8) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(-1.0, 0.0),
            2 => Complex64::new(0.0, 1.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// A random subgroup together with `count` generators on a shared window
    /// and grid, for bracket and projection experiments.
    pub fn next_bracket_set(
        &mut self,
        count: usize,
    ) -> (ClosedSubgroup, Vec<FiberedGenerator>) {
        let d = self.rng.random_range(1..=2usize);
        let (group, _) = self.group_pair(d);
        let grid: Vec<usize> = (0..d).map(|_| self.rng.random_range(1..=3usize)).collect();
        let cells: usize = grid.iter().product();
        let window = self.window(d);
        let generators = (0..count)
            .map(|_| {
                let mut g = FiberedGenerator::zero(d, grid.clone()).unwrap();
                for k in &window {
                    if self.rng.random_bool(0.45) {
                        continue;
                    }
                    let values: Vec<Complex64> = (0..cells)
                        .map(|_| {
                            if self.rng.random_bool(0.2) {
                                Complex64::ZERO
                            } else {
                                self.unit()
                            }
                        })
                        .collect();
                    g.insert_tile(k.clone(), values);
                }
                g
            })
            .collect();
        (group, generators)
    }

    pub fn next_instance(&mut self) -> Instance {
        let d = self.rng.random_range(1..=2usize);
        let (group, supergroup) = self.group_pair(d);
        let grid: Vec<usize> = (0..d).map(|_| self.rng.random_range(1..=3usize)).collect();
        let cells: usize = grid.iter().product();
        let window = self.window(d);
        let ell = self.rng.random_range(1..=3usize);
        let invariant_mode = self.rng.random_bool(0.5);
        let classes = group.partition_tiles(&window);

        let generators: Vec<FiberedGenerator> = (0..ell)
            .map(|_| {
                let mut g = FiberedGenerator::zero(d, grid.clone()).unwrap();
                if invariant_mode {
                    // supported inside a single residue class: invariant by
                    // construction
                    let class = &classes[self.rng.random_range(0..classes.len())];
                    for k in &class.members {
                        let values: Vec<Complex64> = (0..cells).map(|_| self.unit()).collect();
                        g.insert_tile(k.clone(), values);
                    }
                } else {
                    for k in &window {
                        if self.rng.random_bool(0.55) {
                            continue;
                        }
                        let values: Vec<Complex64> = (0..cells)
                            .map(|_| {
                                if self.rng.random_bool(0.2) {
                                    Complex64::ZERO
                                } else {
                                    self.unit()
                                }
                            })
                            .collect();
                        g.insert_tile(k.clone(), values);
                    }
                }
                g
            })
            .collect();
        Instance { group, supergroup, set: GeneratorSet::new(generators).unwrap() }
    }
}
