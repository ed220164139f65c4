//! Splitting weighted items into groups of comparable total weight.

use crate::error::{Error, Result};
use crate::num::{fl, Scalar};

/// Disjoint buckets of item indices covering the input, each bucket sorted
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedPartition {
    buckets: Vec<Vec<usize>>,
}

impl WeightedPartition {
    pub fn buckets(&self) -> &[Vec<usize>] {
        &self.buckets
    }

    /// Number of buckets.
    pub fn len(&self) -> usize {
        self.buckets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    pub fn bucket_weight<F: Scalar>(&self, index: usize, weights: &[F]) -> F {
        self.buckets[index].iter().map(|&i| weights[i]).sum()
    }

    pub fn into_buckets(self) -> Vec<Vec<usize>> {
        self.buckets
    }
}

/// Partitions item indices into `groups` buckets so that every bucket's
/// weight is at least `total / (2 * groups)`.
///
/// Requires every single weight to be at most `total / (2 * groups)`; under
/// that cap a descending round-robin pass already lands within one maximal
/// item of even, and the rebalancing loop below repairs any bucket that
/// still falls short by pulling the lightest item from the heaviest bucket.
pub fn balanced_partition<F: Scalar>(weights: &[F], groups: usize) -> Result<WeightedPartition> {
    if groups == 0 || groups > weights.len() {
        return Err(Error::PartitionInput(format!(
            "group count {groups} outside 1..={}",
            weights.len()
        )));
    }
    let mut total = F::zero();
    for (i, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < F::zero() {
            return Err(Error::PartitionInput(format!(
                "weight {w} at index {i} is not a finite nonnegative number"
            )));
        }
        total += w;
    }
    let threshold = total / fl((2 * groups) as f64);
    for (i, &w) in weights.iter().enumerate() {
        if w > threshold {
            return Err(Error::PartitionInput(format!(
                "weight {w} at index {i} exceeds half the average group weight {threshold}"
            )));
        }
    }

    // Heaviest first, ties by index, dealt round-robin.
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        weights[b]
            .partial_cmp(&weights[a])
            .expect("weights are finite")
            .then(a.cmp(&b))
    });
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); groups];
    for (pos, item) in order.into_iter().enumerate() {
        buckets[pos % groups].push(item);
    }

    let min_positive = weights
        .iter()
        .copied()
        .filter(|w| *w > F::zero())
        .fold(F::infinity(), F::min);
    let max_weight = weights.iter().copied().fold(F::zero(), F::max);
    // Every move raises a deficient bucket by at least the smallest positive
    // weight, so convergence needs far fewer steps than this.
    let step_cap = if min_positive.is_finite() && min_positive > F::zero() {
        let ratio = (max_weight / min_positive).to_f64().unwrap_or(1.0);
        (weights.len() * groups).saturating_mul(ratio.ceil() as usize) + 8
    } else {
        1
    };

    for _ in 0..step_cap {
        // Recompute from scratch so repeated moves cannot accumulate
        // rounding drift in incrementally tracked sums.
        let sums: Vec<F> = buckets
            .iter()
            .map(|b| b.iter().map(|&i| weights[i]).sum())
            .collect();
        let (needy, &needy_sum) = sums
            .iter()
            .enumerate()
            .min_by(|(ai, a), (bi, b)| a.partial_cmp(b).unwrap().then(ai.cmp(bi)))
            .unwrap();
        if needy_sum >= threshold {
            for b in &mut buckets {
                b.sort_unstable();
            }
            return Ok(WeightedPartition { buckets });
        }
        let (donor, &donor_sum) = sums
            .iter()
            .enumerate()
            .max_by(|(ai, a), (bi, b)| a.partial_cmp(b).unwrap().then(bi.cmp(ai)))
            .unwrap();
        // The heaviest bucket holds at least the average, so after giving
        // away an item capped at threshold it cannot itself go deficient.
        assert!(
            donor_sum >= total / fl(groups as f64) * fl(1.0 - 1e-9),
            "heaviest bucket below the average weight"
        );
        let give_pos = buckets[donor]
            .iter()
            .enumerate()
            .filter(|(_, &i)| weights[i] > F::zero())
            .min_by(|(_, &a), (_, &b)| weights[a].partial_cmp(&weights[b]).unwrap().then(a.cmp(&b)))
            .map(|(pos, _)| pos)
            .expect("donor bucket above average must hold a positive weight");
        let item = buckets[donor].remove(give_pos);
        buckets[needy].push(item);
    }
    unreachable!("balanced partition exceeded its step budget");
}
