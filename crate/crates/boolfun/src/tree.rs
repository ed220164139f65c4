//! Greedy highest-influence decision trees and exact tree error.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::restriction::Restriction;
use std::fmt;

/// A binary query tree over cube coordinates. Branch order is the +1 side
/// first, then the -1 side.
#[derive(Debug, Clone, PartialEq)]
pub enum DecisionTree<F> {
    Leaf(F),
    Node {
        query: usize,
        on_plus: Box<DecisionTree<F>>,
        on_minus: Box<DecisionTree<F>>,
    },
}

impl<F: Scalar> DecisionTree<F> {
    pub fn depth(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node {
                on_plus, on_minus, ..
            } => 1 + on_plus.depth().max(on_minus.depth()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 1,
            DecisionTree::Node {
                on_plus, on_minus, ..
            } => on_plus.leaf_count() + on_minus.leaf_count(),
        }
    }

    /// Follows the queries down to a leaf value.
    pub fn evaluate(&self, x: Point) -> F {
        match self {
            DecisionTree::Leaf(v) => *v,
            DecisionTree::Node {
                query,
                on_plus,
                on_minus,
            } => {
                if x.is_negative(*query) {
                    on_minus.evaluate(x)
                } else {
                    on_plus.evaluate(x)
                }
            }
        }
    }

    /// Largest queried coordinate plus one; 0 for a bare leaf.
    pub fn min_arity(&self) -> usize {
        match self {
            DecisionTree::Leaf(_) => 0,
            DecisionTree::Node {
                query,
                on_plus,
                on_minus,
            } => (query + 1).max(on_plus.min_arity()).max(on_minus.min_arity()),
        }
    }
}

impl<F: Scalar> fmt::Display for DecisionTree<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionTree::Leaf(v) => write!(f, "leaf({v})"),
            DecisionTree::Node {
                query,
                on_plus,
                on_minus,
            } => write!(f, "(q={query} + {on_plus} - {on_minus})"),
        }
    }
}

impl<F: Scalar> FourierExpansion<F> {
    /// The coordinate with the largest influence and its value, ties to the
    /// lowest index.
    pub fn max_influence(&self) -> Result<(usize, F)> {
        if self.n() == 0 {
            return Err(Error::Domain(
                "no coordinates to take an influence maximum over".into(),
            ));
        }
        let mut best = (0, F::zero());
        for (i, inf) in self.influences().into_iter().enumerate() {
            if inf > best.1 {
                best = (i, inf);
            }
        }
        Ok(best)
    }
}

/// Builds a tree by repeatedly querying the most influential coordinate of
/// the current restriction, stopping at a leaf once the variance drops to
/// `var_threshold` or the depth budget runs out. Leaves hold the restricted
/// mean, clamped into [0, 1] when `clamp_to_unit` is set (only sensible for
/// functions already known to be bounded).
pub fn greedy_influence_tree<F: Scalar>(
    f: &FourierExpansion<F>,
    var_threshold: F,
    depth_budget: usize,
    clamp_to_unit: bool,
) -> Result<DecisionTree<F>> {
    if var_threshold < F::zero() {
        return Err(Error::Domain(format!(
            "variance threshold {var_threshold} must be nonnegative"
        )));
    }
    build_greedy(f, var_threshold, depth_budget, clamp_to_unit)
}

fn build_greedy<F: Scalar>(
    f: &FourierExpansion<F>,
    var_threshold: F,
    budget: usize,
    clamp: bool,
) -> Result<DecisionTree<F>> {
    if budget == 0 || f.variance() <= var_threshold {
        let mut v = f.mean();
        if clamp {
            v = v.max(F::zero()).min(F::one());
        }
        return Ok(DecisionTree::Leaf(v));
    }
    // Variance above the (nonnegative) threshold guarantees a coordinate
    // with positive influence, so a restricted-away coordinate can never
    // win the argmax and no path queries twice.
    let (query, _) = f.max_influence()?;
    let plus = f.restrict(&Restriction::fixing_one(f.n(), query, false)?)?;
    let minus = f.restrict(&Restriction::fixing_one(f.n(), query, true)?)?;
    Ok(DecisionTree::Node {
        query,
        on_plus: Box::new(build_greedy(&plus, var_threshold, budget - 1, clamp)?),
        on_minus: Box::new(build_greedy(&minus, var_threshold, budget - 1, clamp)?),
    })
}

/// Exact mean squared difference between `f` and the tree under a uniform
/// input, by recursion over the tree: at each leaf the contribution is the
/// restricted variance plus the squared offset of the leaf value from the
/// restricted mean.
pub fn tree_error<F: Scalar>(f: &FourierExpansion<F>, tree: &DecisionTree<F>) -> Result<F> {
    if tree.min_arity() > f.n() {
        return Err(Error::Domain(format!(
            "tree queries coordinate {} beyond arity {}",
            tree.min_arity() - 1,
            f.n()
        )));
    }
    check_read_once(tree, CoordSet::EMPTY)?;
    error_rec(f, tree)
}

/// The branch-averaging recursion is exact only when no root-to-leaf path
/// queries a coordinate twice, so that is enforced up front.
fn check_read_once<F: Scalar>(tree: &DecisionTree<F>, used: CoordSet) -> Result<()> {
    match tree {
        DecisionTree::Leaf(_) => Ok(()),
        DecisionTree::Node {
            query,
            on_plus,
            on_minus,
        } => {
            if used.contains(*query) {
                return Err(Error::Domain(format!(
                    "coordinate {query} queried twice on one path"
                )));
            }
            let used = used.with(*query);
            check_read_once(on_plus, used)?;
            check_read_once(on_minus, used)
        }
    }
}

fn error_rec<F: Scalar>(f: &FourierExpansion<F>, tree: &DecisionTree<F>) -> Result<F> {
    match tree {
        DecisionTree::Leaf(v) => {
            let off = f.mean() - *v;
            Ok(f.variance() + off * off)
        }
        DecisionTree::Node {
            query,
            on_plus,
            on_minus,
        } => {
            let plus = f.restrict(&Restriction::fixing_one(f.n(), *query, false)?)?;
            let minus = f.restrict(&Restriction::fixing_one(f.n(), *query, true)?)?;
            let e = error_rec(&plus, on_plus)? + error_rec(&minus, on_minus)?;
            Ok(e / fl(2.0))
        }
    }
}
