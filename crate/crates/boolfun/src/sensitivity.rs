//! Block sensitivity, junta projections, and sensitive-input fractions.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::table::TruthTable;
use rayon::prelude::*;

/// Arity cap for block-sensitivity scans; the pointwise pass walks all
/// nested submask pairs (3^n states) and the global scan multiplies that by
/// 2^n points.
pub const BLOCK_SENSITIVITY_LIMIT: usize = 14;

/// Ceiling on block sensitivity for functions bounded in [0, 1] of the
/// given degree: `6 * degree^2`.
pub fn block_sensitivity_bound(degree: usize) -> f64 {
    6.0 * (degree * degree) as f64
}

/// Value together with one family of disjoint blocks attaining it.
#[derive(Debug, Clone)]
pub struct BlockSensitivityResult<F> {
    pub value: F,
    pub witness_blocks: Vec<CoordSet>,
}

fn check_bs_arity(n: usize) -> Result<()> {
    if n > BLOCK_SENSITIVITY_LIMIT {
        return Err(Error::Capacity {
            what: "block sensitivity arity",
            value: n,
            limit: BLOCK_SENSITIVITY_LIMIT,
        });
    }
    Ok(())
}

/// Scratch for the subset dynamic program, reusable across points.
struct BsScratch<F> {
    best: Vec<F>,
    choice: Vec<u64>,
    diff: Vec<F>,
}

impl<F: Scalar> BsScratch<F> {
    fn new(n: usize) -> Self {
        let size = 1usize << n;
        BsScratch {
            best: vec![F::zero(); size],
            choice: vec![0; size],
            diff: vec![F::zero(); size],
        }
    }

    /// Fills `best[m]` with the largest total displacement achievable by
    /// pairwise-disjoint flipped blocks inside the coordinate set `m`,
    /// remembering each state's chosen block for witness reconstruction.
    /// Families of disjoint blocks reach the same supremum as full
    /// partitions because a block moving the value by zero adds nothing.
    fn run(&mut self, t: &TruthTable<F>, x: Point) -> F {
        let size = 1usize << t.n();
        let fx = t.value(x);
        for b in 0..size {
            self.diff[b] = (t.value(x.flip_set(CoordSet::new(b as u64))) - fx).abs();
        }
        self.best[0] = F::zero();
        for m in 1..size {
            let mut best_v = F::zero();
            let mut best_b = 0u64;
            let mut b = m;
            loop {
                let v = self.diff[b] + self.best[m & !b];
                if v > best_v {
                    best_v = v;
                    best_b = b as u64;
                }
                b = (b - 1) & m;
                if b == 0 {
                    break;
                }
            }
            self.best[m] = best_v;
            self.choice[m] = best_b;
        }
        self.best[size - 1]
    }

    /// Walks the recorded choices from the full mask down, keeping only the
    /// blocks that actually move the value.
    fn witness(&self, n: usize) -> Vec<CoordSet> {
        let mut blocks = Vec::new();
        let mut m = (1usize << n) - 1;
        while m != 0 {
            let b = self.choice[m] as usize;
            if b == 0 {
                break;
            }
            if self.diff[b] > F::zero() {
                blocks.push(CoordSet::new(b as u64));
            }
            m &= !b;
        }
        blocks
    }
}

/// Block sensitivity of `t` at `x`: the largest value of
/// `sum_j |f(x) - f(x with block B_j flipped)|` over families of pairwise
/// disjoint nonempty blocks.
pub fn block_sensitivity_at<F: Scalar>(
    t: &TruthTable<F>,
    x: Point,
) -> Result<BlockSensitivityResult<F>> {
    check_bs_arity(t.n())?;
    x.check_fits(t.n())?;
    let mut scratch = BsScratch::new(t.n());
    let value = scratch.run(t, x);
    let witness_blocks = scratch.witness(t.n());
    debug_assert!({
        let fx = t.value(x);
        let total: F = witness_blocks
            .iter()
            .map(|&b| (t.value(x.flip_set(b)) - fx).abs())
            .sum();
        (total - value).abs() < fl(1e-10)
    });
    Ok(BlockSensitivityResult {
        value,
        witness_blocks,
    })
}

/// Maximum block sensitivity over all inputs.
pub fn block_sensitivity<F: Scalar>(t: &TruthTable<F>) -> Result<F> {
    check_bs_arity(t.n())?;
    let n = t.n();
    let best = (0u64..1 << n)
        .into_par_iter()
        .map_init(
            || BsScratch::new(n),
            |scratch, idx| scratch.run(t, Point::new(idx)),
        )
        .reduce(F::zero, F::max);
    Ok(best)
}

impl<F: Scalar> FourierExpansion<F> {
    /// Squared distance to the closest function depending only on `coords`:
    /// the squared mass of subsets reaching outside `coords`.
    pub fn junta_distance(&self, coords: CoordSet) -> F {
        self.terms()
            .filter(|(s, _)| !s.is_subset_of(coords))
            .map(|(_, c)| c * c)
            .sum()
    }

    /// Conditional expectation onto functions of `coords`: keeps exactly the
    /// subsets inside `coords`. Closest such function in mean square.
    pub fn junta_project(&self, coords: CoordSet) -> Self {
        let kept = self
            .terms()
            .filter(|(s, _)| s.is_subset_of(coords))
            .collect::<Vec<_>>();
        FourierExpansion::from_coeffs(self.n(), kept).expect("projection keeps valid subsets")
    }

    /// Coordinates whose influence is at least `theta`. The result has at
    /// most `total_influence / theta` members.
    pub fn influential_set(&self, theta: F) -> Result<CoordSet> {
        if theta < F::zero() {
            return Err(Error::Domain(format!(
                "influence threshold {theta} must be nonnegative"
            )));
        }
        let mut out = CoordSet::EMPTY;
        for (i, inf) in self.influences().into_iter().enumerate() {
            if inf >= theta && inf > F::zero() {
                out = out.with(i);
            }
        }
        Ok(out)
    }
}

/// Fraction of inputs that have a neighbor within Hamming distance one whose
/// value differs by at least `eps`.
pub fn sensitive_fraction<F: Scalar>(t: &TruthTable<F>, eps: F) -> Result<F> {
    if eps < F::zero() {
        return Err(Error::Domain(format!(
            "sensitivity threshold {eps} must be nonnegative"
        )));
    }
    if eps == F::zero() {
        // x itself is within distance one of x.
        return Ok(F::one());
    }
    let mut hits = 0u64;
    for x in t.points() {
        let fx = t.value(x);
        let sensitive = (0..t.n()).any(|i| (t.value(x.flip(i)) - fx).abs() >= eps);
        hits += sensitive as u64;
    }
    Ok(fl::<F>(hits as f64) / fl((1u64 << t.n()) as f64))
}
