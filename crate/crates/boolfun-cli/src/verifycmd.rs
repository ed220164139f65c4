use crate::args::Scope;
use boolfun::reference;
use boolfun::{
    balanced_partition, binomial_tail_above, derive_rng, expected_level_one_mass,
    expected_restricted_variance, expected_tail_above, CoordSet, Fourier64, InterpolationNodes,
    Point, Restriction, Table64,
};
use rand::Rng;

pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const ALL_SCOPES: [Scope; 6] = [
    Scope::Transform,
    Scope::Restrict,
    Scope::Identities,
    Scope::Numeric,
    Scope::Partition,
    Scope::Nodes,
];

pub fn run_suites(scopes: &[Scope], seed: u64, inject_fault: bool) -> Vec<Outcome> {
    let selected: Vec<Scope> = if scopes.is_empty() {
        ALL_SCOPES.to_vec()
    } else {
        ALL_SCOPES
            .iter()
            .copied()
            .filter(|s| scopes.contains(s))
            .collect()
    };
    selected
        .into_iter()
        .map(|scope| match scope {
            Scope::Transform => check_transform(seed, inject_fault),
            Scope::Restrict => check_restrict(seed),
            Scope::Identities => check_identities(seed),
            Scope::Numeric => check_numeric(seed),
            Scope::Partition => check_partition(seed),
            Scope::Nodes => check_nodes(seed),
        })
        .collect()
}

fn random_table<R: Rng>(rng: &mut R, n: usize) -> Table64 {
    Table64::from_fn(n, |_| rng.gen::<f64>()).expect("arity within the dense cap")
}

fn outcome(name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome {
        name,
        passed,
        detail,
    }
}

/// Transform round trip and norm preservation on random tables.
fn check_transform(seed: u64, inject_fault: bool) -> Outcome {
    let mut rng = derive_rng(seed, 1);
    let mut worst_round = 0.0f64;
    let mut worst_norm = 0.0f64;
    for case in 0..25 {
        let n = 1 + case % 10;
        let t = random_table(&mut rng, n);
        let f = Fourier64::from_truth_table(&t);
        let back = f.to_truth_table().expect("round trip stays dense");
        let bump = if inject_fault && case == 0 { 1e-6 } else { 0.0 };
        for (a, b) in t.values().iter().zip(back.values()) {
            worst_round = worst_round.max((a - b + bump).abs());
        }
        worst_norm = worst_norm.max((f.total_weight() - t.mean_square()).abs());
    }
    outcome(
        "transform",
        worst_round <= 1e-12 && worst_norm <= 1e-10,
        format!("round-trip error {worst_round:.2e}, norm error {worst_norm:.2e}"),
    )
}

/// Spectral restriction against the dense truth-table restriction.
fn check_restrict(seed: u64) -> Outcome {
    let mut rng = derive_rng(seed, 2);
    let mut worst = 0.0f64;
    for case in 0..100 {
        let n = 1 + case % 8;
        let t = random_table(&mut rng, n);
        let f = Fourier64::from_truth_table(&t);
        let alive = CoordSet::new(rng.gen::<u64>() & CoordSet::full(n).bits());
        let assignment =
            Point::new(rng.gen::<u64>() & CoordSet::full(n).bits() & !alive.bits());
        let rho = Restriction::new(alive, assignment).expect("assignment avoids alive");
        let spectral = f.restrict(&rho).expect("restriction in range");
        let dense = t.restrict(&rho).expect("restriction in range");
        for z in dense.points() {
            let ambient = Point::new(alive.scatter(z.bits()) | assignment.bits());
            worst = worst.max((spectral.evaluate(ambient) - dense.value(z)).abs());
        }
    }
    outcome(
        "restrict",
        worst <= 1e-12,
        format!("max pointwise gap {worst:.2e} over 100 pairs"),
    )
}

/// Closed-form restriction expectations against full enumeration.
fn check_identities(seed: u64) -> Outcome {
    let mut rng = derive_rng(seed, 3);
    let mut worst = 0.0f64;
    let mut floor_ok = true;
    for case in 0..10 {
        let n = 2 + case % 5;
        let t = random_table(&mut rng, n);
        let f = Fourier64::from_truth_table(&t);
        for &p in &[0.15, 0.4, 0.7] {
            for k in 0..=2usize {
                let closed = expected_tail_above(&f, p, k).expect("valid p");
                let brute = reference::restriction_average(&t, p, CoordSet::EMPTY, |g| {
                    g.weight_above_level(k)
                })
                .expect("valid p");
                worst = worst.max((closed - brute).abs());
            }
            let closed = expected_restricted_variance(&f, p).expect("valid p");
            let brute =
                reference::restriction_average(&t, p, CoordSet::EMPTY, |g| g.variance())
                    .expect("valid p");
            worst = worst.max((closed - brute).abs());
            floor_ok &= closed >= p * f.variance() - 1e-12;
        }
        for k in 1..=2usize {
            let frozen = CoordSet::new(rng.gen::<u64>() & CoordSet::full(n).bits());
            let closed = expected_level_one_mass(&f, frozen, k).expect("valid arguments");
            let brute = reference::restriction_average(&t, 0.5f64.powi(k as i32), frozen, |g| {
                g.level_weight(1)
            })
            .expect("valid arguments");
            worst = worst.max((closed - brute).abs());
        }
    }
    outcome(
        "identities",
        worst <= 1e-10 && floor_ok,
        format!("max enumeration gap {worst:.2e}, variance floor held: {floor_ok}"),
    )
}

/// Scalar survival-probability floor and the mean-to-tail bound.
fn check_numeric(seed: u64) -> Outcome {
    let mut min_value = f64::INFINITY;
    for k in 1..=12u32 {
        let p = 0.5f64.powi(k as i32);
        let lo = 1u64 << k;
        for m in lo..2 * lo {
            min_value = min_value.min(m as f64 * p * (1.0 - p).powi(m as i32 - 1));
        }
    }
    let mut markov_ok = true;
    let mut rng = derive_rng(seed, 4);
    for _ in 0..1000 {
        let len = rng.gen_range(1..=6);
        let values: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * 10.0).collect();
        let raw: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let rv = reference::DiscreteRv::new(values, probs).expect("normalized");
        markov_ok &= rv.reverse_markov_holds();
    }
    let tail_ok = binomial_tail_above(10, 0.5, 10) == 0.0;
    outcome(
        "numeric",
        min_value >= 0.05 && markov_ok && tail_ok,
        format!("survival floor {min_value:.4} (needs 0.05), mean-to-tail held: {markov_ok}"),
    )
}

/// Every bucket of a balanced partition reaches total/(2 groups).
fn check_partition(seed: u64) -> Outcome {
    let mut rng = derive_rng(seed, 5);
    let mut worst_slack = f64::INFINITY;
    let mut all_indices_ok = true;
    for _ in 0..300 {
        let groups = rng.gen_range(1..=4usize);
        let (weights, total) = loop {
            let len = 4 * groups + rng.gen_range(0..8usize);
            let w: Vec<f64> = (0..len).map(|_| rng.gen::<f64>()).collect();
            let total: f64 = w.iter().sum();
            if w.iter().all(|&x| x <= total / (2.0 * groups as f64)) {
                break (w, total);
            }
        };
        let part = balanced_partition(&weights, groups).expect("precondition satisfied");
        let floor = total / (2.0 * groups as f64);
        for b in 0..groups {
            worst_slack = worst_slack.min(part.bucket_weight(b, &weights) - floor);
        }
        let mut seen: Vec<usize> = part.buckets().iter().flatten().copied().collect();
        seen.sort_unstable();
        all_indices_ok &= seen == (0..weights.len()).collect::<Vec<_>>();
    }
    outcome(
        "partition",
        worst_slack >= -1e-12 && all_indices_ok,
        format!("worst floor slack {worst_slack:.2e}, indices intact: {all_indices_ok}"),
    )
}

/// Interpolation node quality: weight norm, exact linear extraction, and the
/// vertex-enumeration minimax floor.
fn check_nodes(seed: u64) -> Outcome {
    let mut rng = derive_rng(seed, 6);
    let mut worst_extract = 0.0f64;
    let mut norms_ok = true;
    let mut minimax_ok = true;
    for k in 1..=8usize {
        let nodes = InterpolationNodes::<f64>::new(k).expect("degree within cap");
        norms_ok &= nodes.weight_norm() <= 2.0 * (k as f64 + 1.0) + 1e-9;
        for _ in 0..20 {
            let coeffs: Vec<f64> = (0..=k).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
            let values: Vec<f64> = nodes
                .nodes()
                .iter()
                .map(|&x| {
                    coeffs
                        .iter()
                        .rev()
                        .fold(0.0, |acc, &c| acc * x + c)
                })
                .collect();
            let got = nodes.extract_linear(&values).expect("matching length");
            worst_extract = worst_extract.max((got - coeffs[1]).abs());
        }
        let optimum =
            reference::minimax_on_nodes(k, nodes.nodes()).expect("vertex search succeeds");
        minimax_ok &= optimum >= 1.0 / (2.0 * (k as f64 + 1.0)) - 1e-9;
    }
    outcome(
        "nodes",
        worst_extract <= 1e-9 && norms_ok && minimax_ok,
        format!(
            "extraction error {worst_extract:.2e}, norms held: {norms_ok}, minimax floor held: {minimax_ok}"
        ),
    )
}
