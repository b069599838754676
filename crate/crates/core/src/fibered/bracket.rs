use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fibered::generator::FiberedGenerator;
use crate::subgroup::ClosedSubgroup;

/// The bracket `[f, g]` evaluated on the windowed section of `R^d / M*`:
/// one complex grid per residue class, each value being the class-restricted
/// fiber pairing at that cell.
#[derive(Clone, Debug)]
pub struct BracketField {
    grid: Vec<usize>,
    per_class: BTreeMap<Vec<i64>, Vec<Complex64>>,
}

impl BracketField {
    pub fn grid(&self) -> &[usize] {
        &self.grid
    }

    pub fn classes(&self) -> Vec<Vec<i64>> {
        self.per_class.keys().cloned().collect()
    }

    pub fn values(&self, sigma: &[i64]) -> Option<&Vec<Complex64>> {
        self.per_class.get(sigma)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Vec<Complex64>)> {
        self.per_class.iter()
    }

    /// Largest magnitude over all classes and cells.
    pub fn max_abs(&self) -> f64 {
        self.per_class
            .values()
            .flat_map(|vals| vals.iter().map(|v| v.norm()))
            .fold(0.0, f64::max)
    }
}

fn shared_window(f: &FiberedGenerator, g: &FiberedGenerator) -> Vec<Vec<i64>> {
    let mut keys: Vec<Vec<i64>> = f.window();
    keys.extend(g.window());
    keys.sort();
    keys.dedup();
    keys
}

/// The bracket `[f, g](sigma, cell) = sum_{k in class sigma} f(k, cell) *
/// conj(g(k, cell))`, the dual-lattice periodization restricted to the window.
pub fn bracket(
    f: &FiberedGenerator,
    g: &FiberedGenerator,
    group: &ClosedSubgroup,
) -> Result<BracketField> {
    if f.d() != g.d() || f.grid() != g.grid() {
        return Err(Error::IncompatibleGenerators(
            "bracket operands must share dimension and grid".into(),
        ));
    }
    if f.d() != group.d() {
        return Err(Error::DimensionMismatch { expected: group.d(), got: f.d() });
    }
    let window = shared_window(f, g);
    let classes = group.partition_tiles(&window);
    let cells = f.cell_count();
    let mut per_class = BTreeMap::new();
    for class in classes {
        let mut vals = vec![Complex64::ZERO; cells];
        for k in &class.members {
            for (cell, slot) in vals.iter_mut().enumerate() {
                *slot += f.value(k, cell) * g.value(k, cell).conj();
            }
        }
        per_class.insert(class.sigma, vals);
    }
    Ok(BracketField { grid: f.grid().to_vec(), per_class })
}

/// Orthogonal projection of `g` onto the principal M-invariant space of `f`:
/// `(Pg)(k, cell) = eta(class(k), cell) * f(k, cell)` with the symbol
/// `eta = [g, f] / [f, f]` where `[f, f]` exceeds `tol_rel` times its peak,
/// and zero elsewhere.
pub fn project_principal(
    f: &FiberedGenerator,
    g: &FiberedGenerator,
    group: &ClosedSubgroup,
    tol_rel: f64,
) -> Result<FiberedGenerator> {
    let bff = bracket(f, f, group)?;
    let bgf = bracket(g, f, group)?;
    let threshold = tol_rel * bff.max_abs();
    let cells = f.cell_count();

    let mut eta: BTreeMap<Vec<i64>, Vec<Complex64>> = BTreeMap::new();
    for (sigma, ff_vals) in bff.iter() {
        let gf_vals = bgf.values(sigma).expect("bracket fields share classes");
        let vals = (0..cells)
            .map(|cell| {
                let ff = ff_vals[cell].re; // [f,f] is real nonnegative
                if ff > threshold {
                    gf_vals[cell] / ff
                } else {
                    Complex64::ZERO
                }
            })
            .collect();
        eta.insert(sigma.clone(), vals);
    }

    let mut out = FiberedGenerator::zero(f.d(), f.grid().to_vec())?;
    for (k, vals) in f.tiles() {
        let sigma = group.reduce_tile(k).sigma;
        let eta_vals = &eta[&sigma];
        let scaled: Vec<Complex64> =
            vals.iter().zip(eta_vals).map(|(v, e)| e * v).collect();
        out.insert_tile(k.clone(), scaled);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibered::generator::modulate;
    use crate::subgroup::{canonicalize, SubgroupSpec};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn half_line() -> ClosedSubgroup {
        canonicalize(&SubgroupSpec::new(1, vec![vec![rat(1, 2)]], vec![]).unwrap()).unwrap()
    }

    #[test]
    fn bracket_of_single_tile() {
        let group = half_line();
        let mut f = FiberedGenerator::zero(1, vec![2]).unwrap();
        f.insert_tile(vec![0], vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let b = bracket(&f, &f, &group).unwrap();
        assert_eq!(b.classes(), vec![vec![0i64]]);
        assert_eq!(b.values(&[0]).unwrap(), &vec![c(1.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn bracket_parseval_identity() {
        let group = half_line();
        let mut f = FiberedGenerator::zero(1, vec![2]).unwrap();
        f.insert_tile(vec![0], vec![c(1.0, 2.0), c(0.5, 0.0)]);
        f.insert_tile(vec![1], vec![c(0.0, -1.0), c(3.0, 1.0)]);
        f.insert_tile(vec![2], vec![c(1.0, 0.0), c(0.0, 0.0)]);
        let b = bracket(&f, &f, &group).unwrap();
        let vol = f.cell_volume();
        let total: f64 =
            b.iter().flat_map(|(_, vals)| vals.iter().map(|v| v.re)).sum::<f64>() * vol;
        assert!((total - f.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn projecting_f_onto_itself_is_identity() {
        let group = half_line();
        let mut f = FiberedGenerator::zero(1, vec![2]).unwrap();
        f.insert_tile(vec![0], vec![c(1.0, 1.0), c(2.0, 0.0)]);
        f.insert_tile(vec![1], vec![c(0.0, 3.0), c(0.0, 0.0)]);
        let p = project_principal(&f, &f, &group, 1e-8).unwrap();
        for (k, vals) in f.tiles() {
            for (cell, v) in vals.iter().enumerate() {
                assert!((p.value(k, cell) - v).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_of_disjointly_supported_g_vanishes() {
        let group = half_line();
        let mut f = FiberedGenerator::zero(1, vec![1]).unwrap();
        f.insert_tile(vec![0], vec![c(1.0, 0.0)]);
        let mut g = FiberedGenerator::zero(1, vec![1]).unwrap();
        g.insert_tile(vec![1], vec![c(5.0, -2.0)]);
        let p = project_principal(&f, &g, &group, 1e-8).unwrap();
        assert!(p.norm_sq() < 1e-30);
    }

    #[test]
    fn projection_reproduces_member_translates() {
        let group = half_line();
        let mut f = FiberedGenerator::zero(1, vec![2]).unwrap();
        f.insert_tile(vec![0], vec![c(1.0, 0.5), c(2.0, 0.0)]);
        f.insert_tile(vec![2], vec![c(0.0, 1.0), c(1.0, 1.0)]);
        let m = vec![rat(1, 2)];
        let g = modulate(&f, &m, &group).unwrap();
        let p = project_principal(&f, &g, &group, 1e-8).unwrap();
        let mut diff = 0.0f64;
        for (k, vals) in g.tiles() {
            for (cell, v) in vals.iter().enumerate() {
                diff = diff.max((p.value(k, cell) - v).norm());
            }
        }
        assert!(diff < 1e-12, "projection drifted by {diff}");
    }
}
