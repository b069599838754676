use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::subgroup::ClosedSubgroup;

/// Windowed, piecewise-constant model of a generator's Fourier transform:
/// finitely many integer tiles, each holding a complex grid over the
/// fundamental domain in `W`-coordinates (row-major cell order). Tiles absent
/// from the map are identically zero.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedGenerator {
    d: usize,
    grid: Vec<usize>,
    tiles: BTreeMap<Vec<i64>, Vec<Complex64>>,
}

impl FiberedGenerator {
    pub fn new(
        d: usize,
        grid: Vec<usize>,
        tiles: BTreeMap<Vec<i64>, Vec<Complex64>>,
    ) -> Result<Self> {
        if grid.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: grid.len() });
        }
        if grid.contains(&0) {
            return Err(Error::Parse("grid subdivisions must be positive".into()));
        }
        let cells: usize = grid.iter().product();
        for (k, values) in &tiles {
            if k.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: k.len() });
            }
            if values.len() != cells {
                return Err(Error::Parse(format!(
                    "tile {k:?} has {} cell values, expected {cells}",
                    values.len()
                )));
            }
            if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(Error::Parse(format!("tile {k:?} contains non-finite values")));
            }
        }
        Ok(FiberedGenerator { d, grid, tiles })
    }

    pub fn zero(d: usize, grid: Vec<usize>) -> Result<Self> {
        FiberedGenerator::new(d, grid, BTreeMap::new())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn cell_count(&self) -> usize {
        self.grid.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        1.0 / self.cell_count() as f64
    }

    /// Tile keys in lexicographic order.
    pub fn window(&self) -> Vec<Vec<i64>> {
        self.tiles.keys().cloned().collect()
    }

    pub fn tiles(&self) -> &BTreeMap<Vec<i64>, Vec<Complex64>> {
        &self.tiles
    }

    /// Value at a tile/cell pair; absent tiles read as zero.
    pub fn value(&self, k: &[i64], cell: usize) -> Complex64 {
        self.tiles.get(k).map_or(Complex64::ZERO, |vals| vals[cell])
    }

    pub fn insert_tile(&mut self, k: Vec<i64>, values: Vec<Complex64>) {
        assert_eq!(k.len(), self.d);
        assert_eq!(values.len(), self.cell_count());
        self.tiles.insert(k, values);
    }

    /// Windowed squared norm: `sum |values|^2 * cellvol`.
    pub fn norm_sq(&self) -> f64 {
        let vol = self.cell_volume();
        self.tiles
            .values()
            .map(|vals| vals.iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            * vol
    }

    /// Windowed inner product; grids must agree.
    pub fn inner(&self, other: &FiberedGenerator) -> Complex64 {
        assert_eq!(self.grid, other.grid, "grids must agree");
        let vol = self.cell_volume();
        let mut acc = Complex64::ZERO;
        for (k, vals) in &self.tiles {
            if let Some(ovals) = other.tiles.get(k) {
                for (a, b) in vals.iter().zip(ovals) {
                    acc += a * b.conj();
                }
            }
        }
        acc * vol
    }

    pub fn max_abs(&self) -> f64 {
        self.tiles
            .values()
            .flat_map(|vals| vals.iter().map(|v| v.norm()))
            .fold(0.0, f64::max)
    }

    /// Keeps the tiles listed in `class`, zeroing all others.
    pub fn cutoff(&self, class_members: &[Vec<i64>]) -> FiberedGenerator {
        let tiles = self
            .tiles
            .iter()
            .filter(|(k, _)| class_members.contains(k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        FiberedGenerator { d: self.d, grid: self.grid.clone(), tiles }
    }
}

/// Converts a flat cell index to its multi-index `(j_1, ..., j_d)`.
pub fn cell_multi_index(grid: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0usize; grid.len()];
    for axis in (0..grid.len()).rev() {
        idx[axis] = flat % grid[axis];
        flat /= grid[axis];
    }
    idx
}

/// Midpoint of a cell in ambient coordinates: `W * ((j + 1/2) / n)`.
pub fn cell_midpoint(group: &ClosedSubgroup, grid: &[usize], cell: usize) -> Vec<f64> {
    let multi = cell_multi_index(grid, cell);
    let w = group.dual_basis_matrix();
    let d = grid.len();
    let local: Vec<f64> =
        multi.iter().zip(grid).map(|(&j, &n)| (j as f64 + 0.5) / n as f64).collect();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| w[(i, j)].to_f64().expect("basis entry convertible") * local[j])
                .sum()
        })
        .collect()
}

/// The fiber phase factor `exp(-2 pi i <omega + k, m>)` evaluated exactly in
/// the rational part: `<k, m>` is reduced modulo 1 before conversion.
pub fn modulation_phase(omega: &[f64], k: &[i64], m: &[BigRational]) -> Complex64 {
    let omega_dot: f64 =
        omega.iter().zip(m).map(|(o, mi)| o * mi.to_f64().expect("finite rational")).sum();
    let k_dot: BigRational = k
        .iter()
        .zip(m)
        .map(|(&ki, mi)| BigRational::from_integer(BigInt::from(ki)) * mi)
        .sum();
    let k_frac = (&k_dot - k_dot.floor()).to_f64().expect("finite fraction");
    let angle = -2.0 * std::f64::consts::PI * (omega_dot + k_frac);
    Complex64::from_polar(1.0, angle)
}

/// The translate of `phi` by `m` in the windowed model: every cell value is
/// multiplied by `exp(-2 pi i <omega_mid + k, m>)` at the cell midpoint.
pub fn modulate(
    phi: &FiberedGenerator,
    m: &[BigRational],
    group: &ClosedSubgroup,
) -> Result<FiberedGenerator> {
    if m.len() != phi.d() {
        return Err(Error::DimensionMismatch { expected: phi.d(), got: m.len() });
    }
    let cells = phi.cell_count();
    let mut tiles = BTreeMap::new();
    for (k, vals) in phi.tiles() {
        let out = (0..cells)
            .map(|cell| {
                let omega = cell_midpoint(group, phi.grid(), cell);
                modulation_phase(&omega, k, m) * vals[cell]
            })
            .collect();
        tiles.insert(k.clone(), out);
    }
    FiberedGenerator::new(phi.d(), phi.grid().to_vec(), tiles)
}

/// An ordered set of generators sharing dimension, grid, and (by union) a
/// common finite window.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    generators: Vec<FiberedGenerator>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<FiberedGenerator>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::IncompatibleGenerators("set must be nonempty".into()));
        };
        let (d, grid) = (first.d(), first.grid().to_vec());
        for g in &generators[1..] {
            if g.d() != d || g.grid() != grid.as_slice() {
                return Err(Error::IncompatibleGenerators(
                    "all generators must share dimension and grid".into(),
                ));
            }
        }
        Ok(GeneratorSet { generators })
    }

    pub fn single(generator: FiberedGenerator) -> Self {
        GeneratorSet { generators: vec![generator] }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn d(&self) -> usize {
        self.generators[0].d()
    }

    pub fn grid(&self) -> &[usize] {
        self.generators[0].grid()
    }

    pub fn cell_count(&self) -> usize {
        self.generators[0].cell_count()
    }

    pub fn cell_volume(&self) -> f64 {
        self.generators[0].cell_volume()
    }

    pub fn generators(&self) -> &[FiberedGenerator] {
        &self.generators
    }

    /// Union of the generators' windows, in lexicographic order.
    pub fn window(&self) -> Vec<Vec<i64>> {
        let mut keys: Vec<Vec<i64>> = self
            .generators
            .iter()
            .flat_map(|g| g.tiles().keys().cloned())
            .collect();
        keys.sort();
        keys.dedup();
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn multi_index_round_trip() {
        let grid = [2usize, 3, 4];
        for flat in 0..24 {
            let idx = cell_multi_index(&grid, flat);
            let back = (idx[0] * 3 + idx[1]) * 4 + idx[2];
            assert_eq!(back, flat);
        }
    }

    #[test]
    fn zero_tile_reads_as_zero() {
        let g = FiberedGenerator::zero(1, vec![2]).unwrap();
        assert_eq!(g.value(&[5], 1), Complex64::ZERO);
        assert_eq!(g.norm_sq(), 0.0);
    }

    #[test]
    fn norm_accounts_for_cell_volume() {
        let mut g = FiberedGenerator::zero(1, vec![4]).unwrap();
        g.insert_tile(vec![0], vec![c(1.0, 0.0); 4]);
        assert!((g.norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn incompatible_generators_rejected() {
        let a = FiberedGenerator::zero(1, vec![2]).unwrap();
        let b = FiberedGenerator::zero(1, vec![3]).unwrap();
        assert!(GeneratorSet::new(vec![a, b]).is_err());
    }

    #[test]
    fn tile_value_length_validated() {
        let mut tiles = BTreeMap::new();
        tiles.insert(vec![0i64], vec![c(1.0, 0.0); 3]);
        assert!(FiberedGenerator::new(1, vec![2], tiles).is_err());
    }

    #[test]
    fn cutoff_with_whole_window_is_identity() {
        let mut g = FiberedGenerator::zero(1, vec![2]).unwrap();
        g.insert_tile(vec![0], vec![c(1.0, 0.0), c(0.0, 1.0)]);
        g.insert_tile(vec![3], vec![c(-1.0, 0.0), c(2.0, 0.0)]);
        assert_eq!(g.cutoff(&g.window()), g);
    }

    #[test]
    fn cutoff_disjoint_from_support_is_zero() {
        let mut g = FiberedGenerator::zero(1, vec![1]).unwrap();
        g.insert_tile(vec![0], vec![c(1.0, 0.0)]);
        let cut = g.cutoff(&[vec![5], vec![7]]);
        assert_eq!(cut.norm_sq(), 0.0);
        assert!(cut.window().is_empty());
    }

    #[test]
    fn cutoff_keeps_even_tiles_for_parity_class() {
        let mut g = FiberedGenerator::zero(1, vec![1]).unwrap();
        for k in 0..4i64 {
            g.insert_tile(vec![k], vec![c(1.0, 0.0)]);
        }
        // the class of 0 under the half-integer lattice is {0, 2}
        let cut = g.cutoff(&[vec![0], vec![2]]);
        assert_eq!(cut.window(), vec![vec![0], vec![2]]);
    }
}
