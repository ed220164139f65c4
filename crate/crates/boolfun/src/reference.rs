//! Slow, obviously-correct reference computations used as cross-checks for
//! the fast paths: pointwise influence, exhaustive block-sensitivity search,
//! full enumeration of restriction averages, exact Rademacher tails, dense
//! tree error, and a small linear-program solver for the minimax quality of
//! the interpolation nodes.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::restriction::Restriction;
use crate::table::TruthTable;
use crate::tree::DecisionTree;
use crate::DENSE_LIMIT;
use std::collections::BTreeMap;

/// Influence of one coordinate computed pointwise: E[((f(x) - f(x^i)) / 2)^2].
pub fn influence_pointwise<F: Scalar>(t: &TruthTable<F>, coord: usize) -> Result<F> {
    if coord >= t.n() {
        return Err(Error::CoordOutOfRange { coord, n: t.n() });
    }
    let half = fl::<F>(0.5);
    let sum: F = t
        .points()
        .map(|x| {
            let d = (t.value(x) - t.value(x.flip(coord))) * half;
            d * d
        })
        .sum();
    Ok(sum / fl((1u64 << t.n()) as f64))
}

/// Exhaustive block sensitivity at a point: maximizes the summed jump over
/// every family of disjoint nonempty blocks by branching on the lowest
/// still-available coordinate. Exponential; meant for small arities.
pub fn block_sensitivity_naive<F: Scalar>(t: &TruthTable<F>, x: Point) -> Result<F> {
    x.check_fits(t.n())?;
    Ok(bs_rec(t, x, t.value(x), CoordSet::full(t.n())))
}

fn bs_rec<F: Scalar>(t: &TruthTable<F>, x: Point, fx: F, avail: CoordSet) -> F {
    let Some(lowest) = avail.iter().next() else {
        return F::zero();
    };
    let rest = avail.without(lowest);
    let mut best = bs_rec(t, x, fx, rest);
    for sub in rest.submasks() {
        let block = sub.with(lowest);
        let jump = (t.value(x.flip_set(block)) - fx).abs();
        best = best.max(jump + bs_rec(t, x, fx, avail.minus(block)));
    }
    best
}

/// Average of a functional of the restricted function over the full
/// restriction distribution, by exhaustive enumeration: every alive set
/// `S` disjoint from `frozen` with weight p^|S| (1-p)^(free-|S|), and every
/// assignment of the dead coordinates with weight 2^-(n-|S|). The functional
/// sees the compacted restricted function.
pub fn restriction_average<G>(
    t: &TruthTable<f64>,
    survival: f64,
    frozen: CoordSet,
    mut g: G,
) -> Result<f64>
where
    G: FnMut(&FourierExpansion<f64>) -> f64,
{
    let n = t.n();
    frozen.check_fits(n, "frozen set")?;
    if !(0.0..=1.0).contains(&survival) {
        return Err(Error::Domain(format!(
            "survival probability {survival} outside [0, 1]"
        )));
    }
    let free = frozen.complement(n);
    let mut total = 0.0;
    for alive in free.submasks() {
        let weight = survival.powi(alive.len() as i32)
            * (1.0 - survival).powi((free.len() - alive.len()) as i32);
        if weight == 0.0 {
            continue;
        }
        let dead = alive.complement(n);
        let mut acc = 0.0;
        for bits in 0..1u64 << dead.len() {
            let y = Point::new(dead.scatter(bits));
            let rho = Restriction::new(alive, y).expect("assignment built off the alive set");
            let sub = t.restrict(&rho)?;
            acc += g(&FourierExpansion::from_truth_table(&sub));
        }
        total += weight * acc / (1u64 << dead.len()) as f64;
    }
    Ok(total)
}

/// Exact Pr[sum of +-weights >= threshold] over all sign patterns.
pub fn rademacher_tail(weights: &[f64], threshold: f64) -> Result<f64> {
    let n = weights.len();
    if n > DENSE_LIMIT {
        return Err(Error::Capacity {
            what: "sign enumeration arity",
            value: n,
            limit: DENSE_LIMIT,
        });
    }
    let mut hits = 0u64;
    for bits in 0..1u64 << n {
        let sum: f64 = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| if bits >> i & 1 == 1 { -w } else { w })
            .sum();
        if sum >= threshold {
            hits += 1;
        }
    }
    Ok(hits as f64 / (1u64 << n) as f64)
}

/// Squared distance to the conditional-expectation projection onto functions
/// of `coords`, computed densely: average f within each fiber, then the mean
/// squared residual.
pub fn junta_residual_dense<F: Scalar>(t: &TruthTable<F>, coords: CoordSet) -> Result<F> {
    coords.check_fits(t.n(), "junta coordinates")?;
    let mut fibers: BTreeMap<u64, (F, usize)> = BTreeMap::new();
    for x in t.points() {
        let e = fibers.entry(x.bits() & coords.bits()).or_insert((F::zero(), 0));
        e.0 += t.value(x);
        e.1 += 1;
    }
    let sum: F = t
        .points()
        .map(|x| {
            let (s, c) = fibers[&(x.bits() & coords.bits())];
            let d = t.value(x) - s / fl(c as f64);
            d * d
        })
        .sum();
    Ok(sum / fl((1u64 << t.n()) as f64))
}

/// Mean squared error between a function and a decision tree over all points.
pub fn tree_mse_dense<F: Scalar>(t: &TruthTable<F>, tree: &DecisionTree<F>) -> Result<F> {
    if tree.min_arity() > t.n() {
        return Err(Error::Domain(format!(
            "tree queries coordinate {} beyond arity {}",
            tree.min_arity() - 1,
            t.n()
        )));
    }
    let sum: F = t
        .points()
        .map(|x| {
            let d = t.value(x) - tree.evaluate(x);
            d * d
        })
        .sum();
    Ok(sum / fl((1u64 << t.n()) as f64))
}

/// A finite nonnegative bounded random variable given by outcome/probability
/// pairs; test utility for one-sided mean-to-tail bounds.
#[derive(Debug, Clone)]
pub struct DiscreteRv {
    values: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteRv {
    pub fn new(values: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() != probs.len() {
            return Err(Error::Domain(format!(
                "{} outcomes against {} probabilities",
                values.len(),
                probs.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Domain("outcomes must be finite and nonnegative".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain("probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Domain(format!("probabilities sum to {total}, not 1")));
        }
        Ok(DiscreteRv { values, probs })
    }

    pub fn mean(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.probs)
            .map(|(v, p)| v * p)
            .sum()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn prob_at_least(&self, threshold: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.probs)
            .filter(|(v, _)| **v >= threshold)
            .map(|(_, p)| p)
            .sum()
    }

    /// Pr[X >= mean/2] >= mean / (2 max) for any variable in [0, max].
    pub fn reverse_markov_holds(&self) -> bool {
        let m = self.max_value();
        if m <= 0.0 {
            return true;
        }
        let mu = self.mean();
        self.prob_at_least(mu / 2.0) + 1e-12 >= mu / (2.0 * m)
    }
}

/// Smallest possible max |p| over the given evaluation points, among
/// degree-`degree` polynomials with zero constant term and unit linear
/// coefficient. Solved exactly: the feasible region of (higher coefficients,
/// bound) is a pointed polyhedron, so the optimum sits at a vertex, and all
/// vertices are enumerated as square subsystems of tight constraints.
pub fn minimax_on_nodes(degree: usize, nodes: &[f64]) -> Result<f64> {
    if degree == 0 || nodes.len() != degree + 1 {
        return Err(Error::Domain(format!(
            "need degree >= 1 and exactly degree+1 points, got degree {degree} with {} points",
            nodes.len()
        )));
    }
    let dim = degree; // a_2..a_degree plus the bound variable
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::with_capacity(2 * nodes.len());
    for &x in nodes {
        for sign in [1.0, -1.0] {
            let mut row = vec![0.0; dim];
            for (slot, power) in (2..=degree).enumerate() {
                row[slot] = sign * x.powi(power as i32);
            }
            row[dim - 1] = -1.0;
            rows.push((row, -sign * x));
        }
    }
    let mut best = f64::INFINITY;
    for_each_combination(rows.len(), dim, |pick| {
        let a: Vec<Vec<f64>> = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let b: Vec<f64> = pick.iter().map(|&r| rows[r].1).collect();
        let Some(sol) = solve_square(a, b) else {
            return;
        };
        let feasible = rows.iter().all(|(row, rhs)| {
            let lhs: f64 = row.iter().zip(&sol).map(|(r, s)| r * s).sum();
            lhs <= rhs + 1e-9
        });
        if feasible {
            best = best.min(sol[dim - 1]);
        }
    });
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::Domain("no feasible vertex found".into()))
    }
}

fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Gaussian elimination with partial pivoting; None when near-singular.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).expect("finite entries")
        })?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor != 0.0 {
                for c in col..n {
                    a[row][c] -= factor * a[col][c];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for c in row + 1..n {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
