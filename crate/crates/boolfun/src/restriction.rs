//! Random restrictions and exact averages over them.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::Scalar;
use rand::Rng;
use std::collections::BTreeMap;

/// A partial assignment: coordinates outside `alive` are pinned to the
/// matching bit of `assignment` (bit set = -1), coordinates in `alive` stay
/// free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Restriction {
    alive: CoordSet,
    assignment: Point,
}

impl Restriction {
    /// `assignment` may only set bits outside `alive`.
    pub fn new(alive: CoordSet, assignment: Point) -> Result<Self> {
        if assignment.bits() & alive.bits() != 0 {
            return Err(Error::Restriction(format!(
                "assignment {assignment:?} overlaps alive set {alive}"
            )));
        }
        Ok(Restriction { alive, assignment })
    }

    /// Pins a single coordinate of an otherwise fully alive cube.
    pub fn fixing_one(n: usize, coord: usize, negative: bool) -> Result<Self> {
        if coord >= n {
            return Err(Error::CoordOutOfRange { coord, n });
        }
        let alive = CoordSet::full(n).without(coord);
        let assignment = if negative {
            Point::new(1 << coord)
        } else {
            Point::new(0)
        };
        Ok(Restriction { alive, assignment })
    }

    pub fn alive(&self) -> CoordSet {
        self.alive
    }

    pub fn assignment(&self) -> Point {
        self.assignment
    }

    /// Number of free coordinates.
    pub fn alive_count(&self) -> usize {
        self.alive.len()
    }

    pub fn check_fits(&self, n: usize) -> Result<()> {
        self.alive.check_fits(n, "alive set")?;
        CoordSet::new(self.assignment.bits()).check_fits(n, "assignment")
    }

    /// Completes the restriction with values for the free coordinates,
    /// yielding a full point of the ambient cube.
    pub fn complete(&self, free: Point) -> Point {
        Point::new(self.assignment.bits() | (free.bits() & self.alive.bits()))
    }
}

/// The product distribution where each coordinate outside `frozen` stays
/// alive independently with probability `survival`, and every pinned
/// coordinate gets a uniform sign.
#[derive(Debug, Clone)]
pub struct RestrictionDistribution {
    n: usize,
    survival: f64,
    frozen: CoordSet,
}

impl RestrictionDistribution {
    pub fn new(n: usize, survival: f64, frozen: CoordSet) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity {
                what: "restriction arity",
                value: n,
                limit: 64,
            });
        }
        if !(0.0..=1.0).contains(&survival) {
            return Err(Error::Domain(format!(
                "survival probability {survival} outside [0, 1]"
            )));
        }
        frozen.check_fits(n, "frozen set")?;
        Ok(RestrictionDistribution { n, survival, frozen })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn survival(&self) -> f64 {
        self.survival
    }

    pub fn frozen(&self) -> CoordSet {
        self.frozen
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Restriction {
        let mut alive = 0u64;
        let mut assignment = 0u64;
        for i in 0..self.n {
            if !self.frozen.contains(i) && rng.gen_bool(self.survival) {
                alive |= 1 << i;
            } else if rng.gen_bool(0.5) {
                assignment |= 1 << i;
            }
        }
        Restriction {
            alive: CoordSet::new(alive),
            assignment: Point::new(assignment),
        }
    }
}

impl<F: Scalar> FourierExpansion<F> {
    /// Applies a restriction. The result lives on the same ambient
    /// coordinates with support inside `rho.alive()`: every stored term `(V, c)`
    /// contributes `c * chi_{V \ alive}(assignment)` to the subset
    /// `V & alive`.
    pub fn restrict(&self, rho: &Restriction) -> Result<Self> {
        rho.check_fits(self.n())?;
        let alive = rho.alive();
        let y = rho.assignment();
        let mut coeffs: BTreeMap<CoordSet, F> = BTreeMap::new();
        for (v, c) in self.terms() {
            let t = v.intersect(alive);
            let signed = if y.chi_negative(v) { -c } else { c };
            *coeffs.entry(t).or_insert_with(F::zero) += signed;
        }
        Ok(Self::from_map_pruned(self.n(), coeffs))
    }
}

/// `Pr[Bin(m, p) > k]` computed by iterating the pmf with a running product.
pub fn binomial_tail_above(m: usize, p: f64, k: usize) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return if m > k { 1.0 } else { 0.0 };
    }
    if k >= m {
        return 0.0;
    }
    if p > 0.5 {
        // Count failures instead: more than k successes means fewer than
        // m - k failures.
        return 1.0 - binomial_tail_above(m, 1.0 - p, m - k - 1);
    }
    let q = 1.0 - p;
    // pmf(0), then pmf(j+1) = pmf(j) * (m-j)/(j+1) * p/q.
    let mut pmf = q.powi(m as i32);
    let mut head = pmf;
    for j in 0..k {
        pmf *= (m - j) as f64 / (j + 1) as f64 * (p / q);
        head += pmf;
    }
    (1.0 - head).max(0.0)
}

/// Exact mean, over restrictions with survival probability `p`, of the
/// squared mass of the restricted function strictly above level `k`. A term
/// survives to level `|V & alive|`, so it lands above `k` exactly when more
/// than `k` of its coordinates stay alive; cross terms average to zero over
/// the uniform assignment.
pub fn expected_tail_above<F: Scalar>(f: &FourierExpansion<F>, p: f64, k: usize) -> Result<f64> {
    check_probability(p)?;
    let mut acc = 0.0;
    for (v, c) in f.terms() {
        let c = c.to_f64().unwrap();
        acc += binomial_tail_above(v.len(), p, k) * c * c;
    }
    Ok(acc)
}

/// Exact mean of the restricted variance at survival probability `p`: a
/// nonempty term keeps its variance contribution unless every one of its
/// coordinates gets pinned. Always at least `p * variance(f)`.
pub fn expected_restricted_variance<F: Scalar>(f: &FourierExpansion<F>, p: f64) -> Result<f64> {
    check_probability(p)?;
    let mut acc = 0.0;
    for (v, c) in f.terms() {
        if v.is_empty() {
            continue;
        }
        let c = c.to_f64().unwrap();
        acc += (1.0 - (1.0 - p).powi(v.len() as i32)) * c * c;
    }
    Ok(acc)
}

/// Exact mean of the degree-one squared mass of the restricted function when
/// the coordinates of `j` are frozen and the rest survive with probability
/// `2^-k`. A term lands at level one exactly when one of its unfrozen
/// coordinates survives and the rest get pinned.
pub fn expected_level_one_mass<F: Scalar>(
    f: &FourierExpansion<F>,
    j: CoordSet,
    k: usize,
) -> Result<f64> {
    j.check_fits(f.n(), "frozen set")?;
    let p = 0.5f64.powi(k as i32);
    let mut acc = 0.0;
    for (v, c) in f.terms() {
        let m = v.minus(j).len();
        if m == 0 {
            continue;
        }
        let c = c.to_f64().unwrap();
        acc += m as f64 * p * (1.0 - p).powi(m as i32 - 1) * c * c;
    }
    Ok(acc)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "survival probability {p} outside [0, 1]"
        )));
    }
    Ok(())
}
