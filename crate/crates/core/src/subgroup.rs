//! Canonical representation and algebra of closed subgroups `Z^d <= M <= R^d`:
//! duals, membership, quotient sections, and residue reduction of integer
//! tiles.
//!
//! A closed subgroup containing the integer lattice is stored as a basis `V`
//! of `Z^d` (columns `v_1..v_d`), its dual basis `W`, and the invariant
//! factors `a_1 | a_2 | ... | a_q` of its dual lattice, so that
//!
//! ```text
//! M  = { sum_{i<=q} (k_i/a_i) v_i + sum_{j>q} t_j v_j : k_i in Z, t_j in R }
//! M* = { sum_{i<=q} n_i a_i w_i : n_i in Z }
//! ```
//!
//! Only rational input data is accepted; irrational generators would require
//! computing topological closures and are rejected at parse time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    constraint_lattice, dual_basis, rational_inverse, rational_rank, snf, IntMatrix, RatMatrix,
};

/// Exact rational vector.
pub type RatVec = Vec<BigRational>;

/// User-facing description of `M`: the group generated by `Z^d`, the discrete
/// generators, and the real span of the continuous directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub d: usize,
    pub discrete_generators: Vec<RatVec>,
    pub continuous_directions: Vec<RatVec>,
}

impl SubgroupSpec {
    pub fn new(d: usize, discrete: Vec<RatVec>, continuous: Vec<RatVec>) -> Result<Self> {
        for v in discrete.iter().chain(continuous.iter()) {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: v.len() });
            }
        }
        Ok(SubgroupSpec { d, discrete_generators: discrete, continuous_directions: continuous })
    }

    /// The integer lattice itself.
    pub fn integer_lattice(d: usize) -> Self {
        SubgroupSpec { d, discrete_generators: Vec::new(), continuous_directions: Vec::new() }
    }
}

/// Canonical form of a closed subgroup `Z^d <= M <= R^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSubgroup {
    d: usize,
    /// Number of discrete directions; `d - q` is the dimension of the
    /// subspace part of `M`.
    q: usize,
    /// Invariant factors `a_1 | ... | a_q` of the dual lattice.
    factors: Vec<BigInt>,
    /// Columns `v_1..v_d` form a basis of `Z^d`.
    v: IntMatrix,
    /// Dual basis columns `w_1..w_d`, `V^T W = I`.
    w: IntMatrix,
}

/// Decomposition `k = sigma + mstar` of an integer tile: `sigma` lies in the
/// canonical section of `Z^d / M*` and `mstar` in the dual lattice `M*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileResidue {
    pub sigma: Vec<i64>,
    pub mstar: Vec<i64>,
}

/// A residue class of tiles: all members reduce to the same `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileClass {
    pub sigma: Vec<i64>,
    pub members: Vec<Vec<i64>>,
}

fn bigint_to_i64(b: &BigInt) -> i64 {
    i64::try_from(b).expect("tile coordinate exceeds i64 range")
}

fn int_mul_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.mul_vec(v)
}

impl ClosedSubgroup {
    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of discrete directions, `d - d(M)`.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Dimension of the subspace part of `M`.
    pub fn continuous_rank(&self) -> usize {
        self.d - self.q
    }

    /// Invariant factors `a_1 | ... | a_q`.
    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.v
    }

    pub fn dual_basis_matrix(&self) -> &IntMatrix {
        &self.w
    }

    /// Is `M` a lattice (no continuous part)?
    pub fn is_discrete(&self) -> bool {
        self.q == self.d
    }

    /// A `Z`-basis of the dual lattice `M*`, as columns `a_1 w_1, ..., a_q w_q`.
    pub fn dual(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = (0..self.q)
            .map(|i| {
                self.w
                    .column(i)
                    .into_iter()
                    .map(|e| e * &self.factors[i])
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(self.d, &cols)
    }

    /// Exact membership test: `x` lies in `M` iff its `V`-coordinates
    /// `u = W^T x` satisfy `u_i a_i` integral for every discrete direction.
    pub fn contains(&self, x: &[BigRational]) -> bool {
        assert_eq!(x.len(), self.d, "point dimension mismatch");
        let wt = RatMatrix::from_int(&self.w.transpose());
        let u = wt.mul_vec(x);
        u.iter()
            .take(self.q)
            .zip(&self.factors)
            .all(|(ui, ai)| (ui * BigRational::from_integer(ai.clone())).is_integer())
    }

    /// Splits an integer tile as `k = sigma + mstar` with `sigma` in the
    /// canonical section and `mstar` in `M*`.
    pub fn reduce_tile(&self, k: &[i64]) -> TileResidue {
        assert_eq!(k.len(), self.d, "tile dimension mismatch");
        let kb: Vec<BigInt> = k.iter().map(|&e| BigInt::from(e)).collect();
        let coords = int_mul_vec(&self.v.transpose(), &kb);
        let mut sigma_coords = Vec::with_capacity(self.d);
        let mut mstar_coords = Vec::with_capacity(self.d);
        for (i, c) in coords.iter().enumerate() {
            if i < self.q {
                let (t, r) = c.div_mod_floor(&self.factors[i]);
                sigma_coords.push(r);
                mstar_coords.push(t * &self.factors[i]);
            } else {
                sigma_coords.push(c.clone());
                mstar_coords.push(BigInt::zero());
            }
        }
        let sigma = int_mul_vec(&self.w, &sigma_coords);
        let mstar = int_mul_vec(&self.w, &mstar_coords);
        TileResidue {
            sigma: sigma.iter().map(bigint_to_i64).collect(),
            mstar: mstar.iter().map(bigint_to_i64).collect(),
        }
    }

    /// Groups a finite tile set by residue class. Classes and members are in
    /// lexicographic order, so the partition is deterministic.
    pub fn partition_tiles(&self, tiles: &[Vec<i64>]) -> Vec<TileClass> {
        let mut classes: std::collections::BTreeMap<Vec<i64>, Vec<Vec<i64>>> =
            std::collections::BTreeMap::new();
        for k in tiles {
            let residue = self.reduce_tile(k);
            let members = classes.entry(residue.sigma).or_default();
            if !members.contains(k) {
                members.push(k.clone());
            }
        }
        classes
            .into_iter()
            .map(|(sigma, mut members)| {
                members.sort();
                TileClass { sigma, members }
            })
            .collect()
    }

    /// Canonical generators of `M`: the vectors `(1/a_i) v_i` together with
    /// the continuous directions `v_j`, `j > q`.
    pub fn generating_spec(&self) -> SubgroupSpec {
        let discrete = (0..self.q)
            .map(|i| {
                self.v
                    .column(i)
                    .into_iter()
                    .map(|e| BigRational::new(e, self.factors[i].clone()))
                    .collect()
            })
            .collect();
        let continuous = (self.q..self.d)
            .map(|j| {
                self.v
                    .column(j)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect()
            })
            .collect();
        SubgroupSpec { d: self.d, discrete_generators: discrete, continuous_directions: continuous }
    }

    /// True iff `M <= other`. Discrete generators are checked through
    /// `contains`; continuous directions must lie in the subspace part of
    /// `other`, decided by exact rank.
    pub fn is_subgroup_of(&self, other: &ClosedSubgroup) -> bool {
        assert_eq!(self.d, other.d, "ambient dimensions differ");
        let spec = self.generating_spec();
        for g in &spec.discrete_generators {
            if !other.contains(g) {
                return false;
            }
        }
        if spec.continuous_directions.is_empty() {
            return true;
        }
        let other_cont: Vec<RatVec> = (other.q..other.d)
            .map(|j| {
                other
                    .v
                    .column(j)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect()
            })
            .collect();
        let base = RatMatrix::from_rows(self.d, &other_cont);
        let base_rank = rational_rank(&base);
        for dir in &spec.continuous_directions {
            let mut rows = other_cont.clone();
            rows.push(dir.clone());
            if rational_rank(&RatMatrix::from_rows(self.d, &rows)) != base_rank {
                return false;
            }
        }
        true
    }

    /// Default witness translations for the modulation test: the canonical
    /// discrete generators, plus several rational multiples of each
    /// continuous direction (denominators 2, 3, 11, 13; the two larger primes
    /// exceed any residue refinement a small window can hide, so a failing
    /// line is always caught).
    pub fn default_modulation_samples(&self) -> Vec<RatVec> {
        let spec = self.generating_spec();
        let mut samples = spec.discrete_generators;
        for dir in &spec.continuous_directions {
            for den in [2i64, 3, 11, 13] {
                samples.push(
                    dir.iter()
                        .map(|e| e / BigRational::from_integer(BigInt::from(den)))
                        .collect(),
                );
            }
        }
        samples
    }
}

/// Canonicalizes a rational subgroup description to the unique invariant
/// factors plus an adapted basis pair `(V, W)`.
///
/// The dual lattice is computed first, as the sublattice of `Z^d` pairing
/// integrally with all discrete generators and annihilating the continuous
/// directions; Smith reduction of any of its bases then yields the invariant
/// factors and the adapted `Z^d` basis.
pub fn canonicalize(spec: &SubgroupSpec) -> Result<ClosedSubgroup> {
    let d = spec.d;
    if d == 0 {
        return Err(Error::Parse("ambient dimension must be positive".into()));
    }
    for v in spec.discrete_generators.iter().chain(spec.continuous_directions.iter()) {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    let pairings = RatMatrix::from_rows(d, &spec.discrete_generators);
    let annihilated = RatMatrix::from_rows(d, &spec.continuous_directions);
    let dual_lattice = constraint_lattice(&pairings, &annihilated)?;
    let q = dual_lattice.cols();

    let group = if q == 0 {
        ClosedSubgroup {
            d,
            q: 0,
            factors: Vec::new(),
            v: IntMatrix::identity(d),
            w: IntMatrix::identity(d),
        }
    } else {
        let dec = snf(&dual_lattice);
        let factors = dec.invariant_factors();
        debug_assert_eq!(factors.len(), q, "dual lattice basis must have full column rank");
        let w = rational_inverse(&RatMatrix::from_int(&dec.u))?.to_int()?;
        let v = dual_basis(&w)?;
        ClosedSubgroup { d, q, factors, v, w }
    };

    debug_assert!(
        spec.discrete_generators.iter().all(|g| group.contains(g))
            && spec.continuous_directions.iter().all(|c| group.contains(c)),
        "canonicalization must keep every spec generator a member"
    );
    Ok(group)
}

// ---------------------------------------------------------------------------
// JSON document model
// ---------------------------------------------------------------------------

/// Wire form of a rational: `[numerator, denominator]`.
type RatPair = [i64; 2];

#[derive(Serialize, Deserialize)]
struct SubgroupDoc {
    d: usize,
    #[serde(default)]
    discrete: Vec<Vec<RatPair>>,
    #[serde(default)]
    continuous: Vec<Vec<RatPair>>,
}

/// Canonical output document: the input fields plus `q`, `factors`, and the
/// column-major basis matrices.
#[derive(Serialize, Deserialize)]
pub struct CanonicalDoc {
    pub d: usize,
    pub discrete: Vec<Vec<RatPair>>,
    pub continuous: Vec<Vec<RatPair>>,
    pub q: usize,
    pub factors: Vec<i64>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<i64>>,
    #[serde(rename = "W")]
    pub w: Vec<Vec<i64>>,
}

fn rat_from_pair(p: RatPair) -> Result<BigRational> {
    if p[1] == 0 {
        return Err(Error::Parse(format!("rational {}/{} has zero denominator", p[0], p[1])));
    }
    Ok(BigRational::new(BigInt::from(p[0]), BigInt::from(p[1])))
}

fn rat_to_pair(r: &BigRational) -> Result<RatPair> {
    let num = i64::try_from(r.numer())
        .map_err(|_| Error::Parse("rational numerator exceeds i64".into()))?;
    let den = i64::try_from(r.denom())
        .map_err(|_| Error::Parse("rational denominator exceeds i64".into()))?;
    Ok([num, den])
}

fn vectors_from_doc(d: usize, rows: &[Vec<RatPair>]) -> Result<Vec<RatVec>> {
    rows.iter()
        .map(|row| {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: row.len() });
            }
            row.iter().map(|&p| rat_from_pair(p)).collect()
        })
        .collect()
}

fn vectors_to_doc(rows: &[RatVec]) -> Result<Vec<Vec<RatPair>>> {
    rows.iter().map(|row| row.iter().map(rat_to_pair).collect()).collect()
}

fn columns_to_doc(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    (0..m.cols())
        .map(|j| {
            m.column(j)
                .iter()
                .map(|e| {
                    i64::try_from(e).map_err(|_| Error::Parse("basis entry exceeds i64".into()))
                })
                .collect()
        })
        .collect()
}

/// Parses a subgroup document. Extra fields (e.g. a previously emitted
/// canonical block) are ignored.
pub fn spec_from_json(text: &str) -> Result<SubgroupSpec> {
    let doc: SubgroupDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("subgroup document: {e}")))?;
    if doc.d == 0 {
        return Err(Error::Parse("ambient dimension must be positive".into()));
    }
    SubgroupSpec::new(doc.d, vectors_from_doc(doc.d, &doc.discrete)?, vectors_from_doc(doc.d, &doc.continuous)?)
}

/// Serializes a spec back to its document form.
pub fn spec_to_json(spec: &SubgroupSpec) -> Result<String> {
    let doc = SubgroupDoc {
        d: spec.d,
        discrete: vectors_to_doc(&spec.discrete_generators)?,
        continuous: vectors_to_doc(&spec.continuous_directions)?,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}

/// Canonical document for a spec/group pair.
pub fn canonical_to_json(spec: &SubgroupSpec, group: &ClosedSubgroup) -> Result<String> {
    let doc = CanonicalDoc {
        d: spec.d,
        discrete: vectors_to_doc(&spec.discrete_generators)?,
        continuous: vectors_to_doc(&spec.continuous_directions)?,
        q: group.q(),
        factors: group
            .factors()
            .iter()
            .map(|a| i64::try_from(a).map_err(|_| Error::Parse("invariant factor exceeds i64".into())))
            .collect::<Result<Vec<_>>>()?,
        v: columns_to_doc(group.basis())?,
        w: columns_to_doc(group.dual_basis_matrix())?,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))
}
