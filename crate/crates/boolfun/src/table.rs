//! Dense truth tables: the brute-force side of every identity check.

use crate::error::{Error, Result};
use crate::mask::Point;
use crate::num::Scalar;
use crate::restriction::Restriction;
use crate::DENSE_LIMIT;

/// A function on `{-1, +1}^n` tabulated at all `2^n` points.
///
/// Index bit `i` set means coordinate `i` is -1 (see [`Point`]).
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable<F> {
    n: usize,
    values: Vec<F>,
}

impl<F: Scalar> TruthTable<F> {
    pub fn new(n: usize, values: Vec<F>) -> Result<Self> {
        if n > DENSE_LIMIT {
            return Err(Error::Capacity {
                what: "truth table arity",
                value: n,
                limit: DENSE_LIMIT,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::Domain(format!(
                "expected {} values for n = {n}, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(TruthTable { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(Point) -> F) -> Result<Self> {
        if n > DENSE_LIMIT {
            return Err(Error::Capacity {
                what: "truth table arity",
                value: n,
                limit: DENSE_LIMIT,
            });
        }
        let values = (0..1u64 << n).map(|i| f(Point::new(i))).collect();
        Ok(TruthTable { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    pub fn value(&self, x: Point) -> F {
        self.values[x.index()]
    }

    pub fn points(&self) -> impl Iterator<Item = Point> {
        (0..1u64 << self.n).map(Point::new)
    }

    /// True when every value lies in `[0, 1]` within `tol`.
    pub fn is_bounded_within(&self, tol: F) -> bool {
        self.values
            .iter()
            .all(|&v| v >= -tol && v <= F::one() + tol)
    }

    /// True when every value lies exactly in `[0, 1]`.
    pub fn is_bounded(&self) -> bool {
        self.is_bounded_within(F::zero())
    }

    pub fn mean(&self) -> F {
        let sum: F = self.values.iter().copied().sum();
        sum / crate::num::fl(self.values.len() as f64)
    }

    pub fn mean_square(&self) -> F {
        let sum: F = self.values.iter().map(|&v| v * v).sum();
        sum / crate::num::fl(self.values.len() as f64)
    }

    /// The restricted function on the alive coordinates, compacted so the
    /// i-th alive coordinate (ascending) becomes coordinate i of the result.
    pub fn restrict(&self, r: &Restriction) -> Result<TruthTable<F>> {
        r.check_fits(self.n)?;
        let alive: Vec<usize> = r.alive().iter().collect();
        let m = alive.len();
        let base = r.assignment().bits();
        let mut values = Vec::with_capacity(1 << m);
        for ridx in 0..1u64 << m {
            let mut idx = base;
            for (pos, &coord) in alive.iter().enumerate() {
                if ridx >> pos & 1 == 1 {
                    idx |= 1 << coord;
                }
            }
            values.push(self.values[idx as usize]);
        }
        TruthTable::new(m, values)
    }
}
