//! Sparse Walsh expansions and the transforms between them and truth tables.

use crate::error::{Error, Result};
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::table::TruthTable;
use crate::{DENSE_LIMIT, PRUNE_EPS};
use std::collections::BTreeMap;

/// In-place Walsh-Hadamard butterfly. The length must be a power of two.
///
/// Computes `out[s] = sum_x in[x] * (-1)^popcount(s & x)`, which is its own
/// inverse up to a factor of `len`.
pub fn wht_in_place<F: Scalar>(values: &mut [F]) {
    assert!(values.len().is_power_of_two());
    let mut h = 1;
    while h < values.len() {
        for chunk in values.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for i in 0..h {
                let a = lo[i];
                let b = hi[i];
                lo[i] = a + b;
                hi[i] = a - b;
            }
        }
        h *= 2;
    }
}

/// A function on `{-1, +1}^n` as a sparse map from subsets to coefficients.
///
/// Absent subsets have coefficient zero. Transforms and restriction drop
/// coefficients below [`PRUNE_EPS`] in magnitude.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierExpansion<F> {
    n: usize,
    coeffs: BTreeMap<CoordSet, F>,
}

impl<F: Scalar> FourierExpansion<F> {
    /// The zero function on `n` coordinates.
    pub fn zero(n: usize) -> Self {
        FourierExpansion {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: F) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != F::zero() {
            coeffs.insert(CoordSet::EMPTY, c);
        }
        FourierExpansion { n, coeffs }
    }

    /// Builds an expansion from explicit terms; duplicate subsets accumulate
    /// and exact zeros are dropped.
    pub fn from_coeffs<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (CoordSet, F)>,
    {
        if n > 64 {
            return Err(Error::Capacity {
                what: "expansion arity",
                value: n,
                limit: 64,
            });
        }
        let mut coeffs: BTreeMap<CoordSet, F> = BTreeMap::new();
        for (s, c) in terms {
            s.check_fits(n, "coefficient")?;
            *coeffs.entry(s).or_insert_with(F::zero) += c;
        }
        coeffs.retain(|_, c| *c != F::zero());
        Ok(FourierExpansion { n, coeffs })
    }

    pub(crate) fn from_map_pruned(n: usize, mut coeffs: BTreeMap<CoordSet, F>) -> Self {
        let eps = fl(PRUNE_EPS);
        coeffs.retain(|_, c| c.abs() >= eps);
        FourierExpansion { n, coeffs }
    }

    /// Forward transform of a dense table.
    pub fn from_truth_table(t: &TruthTable<F>) -> Self {
        let mut values = t.values().to_vec();
        wht_in_place(&mut values);
        let scale = F::one() / fl((1u64 << t.n()) as f64);
        let mut coeffs = BTreeMap::new();
        let eps = fl::<F>(PRUNE_EPS);
        for (idx, v) in values.into_iter().enumerate() {
            let c = v * scale;
            if c.abs() >= eps {
                coeffs.insert(CoordSet::new(idx as u64), c);
            }
        }
        FourierExpansion { n: t.n(), coeffs }
    }

    /// Inverse transform to a dense table. Fails above the dense limit.
    pub fn to_truth_table(&self) -> Result<TruthTable<F>> {
        if self.n > DENSE_LIMIT {
            return Err(Error::Capacity {
                what: "dense synthesis arity",
                value: self.n,
                limit: DENSE_LIMIT,
            });
        }
        let mut values = vec![F::zero(); 1 << self.n];
        for (&s, &c) in &self.coeffs {
            values[s.bits() as usize] = c;
        }
        wht_in_place(&mut values);
        TruthTable::new(self.n, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (CoordSet, F)> + '_ {
        self.coeffs.iter().map(|(&s, &c)| (s, c))
    }

    pub fn coefficient(&self, s: CoordSet) -> F {
        self.coeffs.get(&s).copied().unwrap_or_else(F::zero)
    }

    /// Pointwise evaluation: `sum_S c_S * chi_S(x)`.
    pub fn evaluate(&self, x: Point) -> F {
        let mut acc = F::zero();
        for (&s, &c) in &self.coeffs {
            if x.chi_negative(s) {
                acc -= c;
            } else {
                acc += c;
            }
        }
        acc
    }

    /// The empty-set coefficient, i.e. the mean over the cube.
    pub fn mean(&self) -> F {
        self.coefficient(CoordSet::EMPTY)
    }

    /// Sum of squared coefficients over nonempty subsets.
    pub fn variance(&self) -> F {
        self.coeffs
            .iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(_, &c)| c * c)
            .sum()
    }

    /// Sum of squared coefficients (equals the mean square of the function).
    pub fn total_weight(&self) -> F {
        self.coeffs.values().map(|&c| c * c).sum()
    }

    /// Influence of one coordinate: squared mass of subsets containing it.
    pub fn influence(&self, coord: usize) -> Result<F> {
        if coord >= self.n {
            return Err(Error::CoordOutOfRange { coord, n: self.n });
        }
        Ok(self
            .coeffs
            .iter()
            .filter(|(s, _)| s.contains(coord))
            .map(|(_, &c)| c * c)
            .sum())
    }

    /// All coordinate influences, indexed by coordinate.
    pub fn influences(&self) -> Vec<F> {
        let mut out = vec![F::zero(); self.n];
        for (&s, &c) in &self.coeffs {
            let sq = c * c;
            for i in s.iter() {
                out[i] += sq;
            }
        }
        out
    }

    /// Total influence: `sum_S |S| c_S^2`.
    pub fn total_influence(&self) -> F {
        self.coeffs
            .iter()
            .map(|(&s, &c)| fl::<F>(s.len() as f64) * c * c)
            .sum()
    }

    /// Squared mass strictly above level `k`.
    pub fn weight_above_level(&self, k: usize) -> F {
        self.coeffs
            .iter()
            .filter(|(s, _)| s.len() > k)
            .map(|(_, &c)| c * c)
            .sum()
    }

    /// Squared mass exactly at level `k`.
    pub fn level_weight(&self, k: usize) -> F {
        self.coeffs
            .iter()
            .filter(|(s, _)| s.len() == k)
            .map(|(_, &c)| c * c)
            .sum()
    }

    /// Largest subset size with a stored coefficient; 0 for the zero or
    /// constant function.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    /// The noise operator: scales each level-`|S|` coefficient by `rho^|S|`.
    pub fn noise_operator(&self, rho: F) -> Result<Self> {
        if rho.abs() > F::one() {
            return Err(Error::Domain(format!("noise rate {rho} outside [-1, 1]")));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&s, &c)| (s, c * rho.powi(s.len() as i32)))
            .collect();
        Ok(Self::from_map_pruned(self.n, coeffs))
    }
}
