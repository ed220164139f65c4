//! Monte Carlo estimates checked against exact computations: sampled rates
//! and means must land within a few standard errors of enumeration or of the
//! closed-form spectral value.

use boolfun::reference::rademacher_tail;
use boolfun::{
    classify_small, derive_rng, exceedance_rate, mean_and_se, noise_lemma_sample, procedure_one,
    proportion_se, sample_noisy, CoordSet, Family, FamilySpec, Fourier64, Nodes64, Point,
    ProcedureOneConfig, RestrictionDistribution, Table64,
};
use rand::Rng;

fn random_bounded_table(seed: u64, n: usize) -> Table64 {
    let mut rng = derive_rng(seed, 0);
    Table64::from_fn(n, |_| rng.gen_range(-1.0..=1.0)).unwrap()
}

#[test]
fn rademacher_tail_matches_sampling() {
    let n = 18;
    let mut rng = derive_rng(0xace1, 0);
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.0)).collect();
    let sigma = weights.iter().map(|a| a * a).sum::<f64>().sqrt();
    let samples = 20_000u64;
    for t in [1.0, 2.0] {
        let cap = sigma / t;
        assert!(weights.iter().all(|a| a.abs() <= cap));
        let exact = rademacher_tail(&weights, t * sigma).unwrap();
        let mut hits = 0u64;
        for _ in 0..samples {
            let signs = rng.gen::<u64>();
            let ell: f64 = weights
                .iter()
                .enumerate()
                .map(|(i, a)| if signs >> i & 1 == 1 { -a } else { *a })
                .sum();
            if ell >= t * sigma {
                hits += 1;
            }
        }
        let rate = hits as f64 / samples as f64;
        assert!(rate > 0.0, "no mass at threshold {t} sigma");
        let se = proportion_se(exact, samples);
        assert!(
            (rate - exact).abs() <= 4.0 * se,
            "t={t}: sampled {rate} vs exact {exact} (se {se})"
        );
    }
}

#[test]
fn rate_zero_noise_rerandomizes_uniformly() {
    let n = 10;
    let x0 = Point::new(0b1011001110);
    let s = CoordSet::full(n);
    let mut rng = derive_rng(0xace1, 1);
    let samples = 100_000u64;
    let mut agree = vec![0u64; n];
    for _ in 0..samples {
        let z = sample_noisy(x0, 0.0f64, s, &mut rng);
        for (i, slot) in agree.iter_mut().enumerate() {
            if z.is_negative(i) == x0.is_negative(i) {
                *slot += 1;
            }
        }
    }
    let band = 3.0 * proportion_se(0.5, samples);
    for (i, &count) in agree.iter().enumerate() {
        let rate = count as f64 / samples as f64;
        assert!(
            (rate - 0.5).abs() <= band,
            "coordinate {i} agreement {rate} outside 0.5 +- {band}"
        );
    }
}

#[test]
fn noise_never_escapes_its_set() {
    let n = 12;
    let s = CoordSet::from_coords([0, 3, 4, 9, 11]);
    let off = s.complement(n);
    let mut rng = derive_rng(0xace1, 2);
    for _ in 0..100_000 {
        let x = Point::new(rng.gen::<u64>() & CoordSet::full(n).bits());
        let rho: f64 = rng.gen_range(-1.0..=1.0);
        let z = sample_noisy(x, rho, s, &mut rng);
        assert_eq!(z.bits() & off.bits(), x.bits() & off.bits());
    }
}

#[test]
fn noise_operator_matches_sampled_mean() {
    let table = random_bounded_table(0xace2, 8);
    let f = Fourier64::from_truth_table(&table);
    let full = CoordSet::full(8);
    let mut rng = derive_rng(0xace2, 1);
    let x0 = Point::new(rng.gen::<u64>() & full.bits());
    for rho in [0.3, -0.6] {
        let spectral = f.noise_operator(rho).unwrap().evaluate(x0);
        let samples: Vec<f64> = (0..100_000)
            .map(|_| table.value(sample_noisy(x0, rho, full, &mut rng)))
            .collect();
        let (mean, se) = mean_and_se(&samples).unwrap();
        assert!(
            (mean - spectral).abs() <= 4.0 * se,
            "rho={rho}: sampled {mean} vs spectral {spectral} (se {se})"
        );
    }
}

#[test]
fn partial_set_noise_damps_only_crossing_terms() {
    let table = random_bounded_table(0xace3, 8);
    let f = Fourier64::from_truth_table(&table);
    let s = CoordSet::from_coords([0, 2, 5]);
    let mut rng = derive_rng(0xace3, 1);
    let x0 = Point::new(rng.gen::<u64>() & CoordSet::full(8).bits());
    let rho = 0.4;
    let expected: f64 = f
        .terms()
        .map(|(v, c)| {
            let damp = rho_pow(rho, v.intersect(s).len());
            let sign = if x0.chi_negative(v) { -1.0 } else { 1.0 };
            damp * c * sign
        })
        .sum();
    let samples: Vec<f64> = (0..100_000)
        .map(|_| table.value(sample_noisy(x0, rho, s, &mut rng)))
        .collect();
    let (mean, se) = mean_and_se(&samples).unwrap();
    assert!(
        (mean - expected).abs() <= 4.0 * se,
        "sampled {mean} vs expected {expected} (se {se})"
    );
}

fn rho_pow(rho: f64, k: usize) -> f64 {
    rho.powi(k as i32)
}

#[test]
fn noise_lemma_mean_matches_node_average() {
    let table = random_bounded_table(0xace4, 6);
    let f = Fourier64::from_truth_table(&table);
    let nodes = Nodes64::new(4).unwrap();
    let full = CoordSet::full(6);
    let mut rng = derive_rng(0xace4, 1);
    let x0 = Point::new(rng.gen::<u64>() & full.bits());
    let f_x0 = f.evaluate(x0);
    let expected: f64 = nodes
        .nodes()
        .iter()
        .map(|&rho| f.noise_operator(rho).unwrap().evaluate(x0) - f_x0)
        .sum::<f64>()
        / nodes.nodes().len() as f64;
    let samples: Vec<f64> = (0..100_000)
        .map(|_| noise_lemma_sample(&f, full, x0, &nodes, &mut rng))
        .collect();
    let (mean, se) = mean_and_se(&samples).unwrap();
    assert!(
        (mean - expected).abs() <= 4.0 * se,
        "sampled {mean} vs node average {expected} (se {se})"
    );
}

#[test]
fn majority_flips_often_enough_under_node_noise() {
    let table = Table64::from_fn(3, |x| {
        if x.bits().count_ones() >= 2 {
            -1.0
        } else {
            1.0
        }
    })
    .unwrap();
    let f = Fourier64::from_truth_table(&table);
    let nodes = Nodes64::new(3).unwrap();
    let x0 = Point::new(0);
    let gamma: f64 = (0..3).map(|i| f.coefficient(CoordSet::single(i))).sum();
    assert!((gamma - 1.5).abs() < 1e-12);
    let bar = gamma / (2.0 * 4.0);

    // A sample exceeds the bar exactly when the majority flips, which takes
    // at least two of the three flips; average the binomial expression over
    // the node set.
    let exact: f64 = nodes
        .nodes()
        .iter()
        .map(|&rho| {
            let q = (1.0 - rho) / 2.0;
            3.0 * q * q * (1.0 - q) + q * q * q
        })
        .sum::<f64>()
        / nodes.nodes().len() as f64;

    let samples = 100_000u64;
    let mut rng = derive_rng(0xace5, 1);
    let mut hits = 0u64;
    for _ in 0..samples {
        let diff = noise_lemma_sample(&f, CoordSet::full(3), x0, &nodes, &mut rng);
        if diff.abs() >= bar {
            hits += 1;
        }
    }
    assert!(hits > 0);
    let rate = hits as f64 / samples as f64;
    let se = proportion_se(exact, samples);
    assert!(
        (rate - exact).abs() <= 4.0 * se,
        "sampled {rate} vs exact {exact} (se {se})"
    );
}

#[test]
fn small_coordinate_mass_stays_bounded() {
    let instances = [
        Family::Tribes { width: 2, tribes: 2 },
        Family::AndOrTree { depth: 2 },
        Family::RecursiveMaj3 { levels: 1 },
        Family::SmoothedRandom { n: 8, rho: 0.5 },
    ];
    for (idx, family) in instances.into_iter().enumerate() {
        let spec = FamilySpec { family, seed: 5 + idx as u64 };
        let (f, degree) = spec.generate::<f64>().unwrap();
        let influences = f.influences();
        let dist = RestrictionDistribution::new(f.n(), 0.3, CoordSet::EMPTY).unwrap();
        let mut rng = derive_rng(0xace6, idx as u64);
        for w in [4.0f64, 0.05] {
            let cap = (2.0 * w).powi(degree as i32);
            for _ in 0..20 {
                let restriction = dist.sample(&mut rng);
                let restricted = f.restrict(&restriction).unwrap();
                let small =
                    classify_small(&restricted, &influences, restriction.alive(), w, degree)
                        .unwrap();
                assert!(small.is_subset_of(restriction.alive()));
                let mass: f64 = small
                    .iter()
                    .map(|j| {
                        let c = restricted.coefficient(CoordSet::single(j));
                        c * c
                    })
                    .sum();
                assert!(
                    mass <= cap + 1e-12,
                    "{}: small mass {mass} above ({:.2})^{degree}",
                    spec.family.name(),
                    2.0 * w
                );
            }
        }
    }
}

#[test]
fn block_probe_respects_sensitivity_ceiling() {
    let spec = FamilySpec { family: Family::Tribes { width: 2, tribes: 2 }, seed: 0 };
    let (f, degree) = spec.generate::<f64>().unwrap();
    let blocks = vec![CoordSet::from_coords([0, 1]), CoordSet::from_coords([2, 3])];
    let ceiling = (2.0 * blocks.len() as f64).min(6.0 * (degree * degree) as f64);
    let cfg = ProcedureOneConfig::new(
        f,
        CoordSet::full(4),
        Point::new(0),
        blocks,
        Nodes64::new(degree).unwrap(),
        15.0 * (degree * degree) as f64,
    )
    .unwrap();
    for trial in 0..500 {
        let mut rng = derive_rng(0xace7, trial);
        let value = procedure_one(&cfg, &mut rng);
        assert!(value <= ceiling + 1e-9, "probe returned {value} above {ceiling}");
    }
    let report = exceedance_rate(&cfg, 10_000, 0xace7).unwrap();
    assert_eq!(report.estimate, 0.0);
    assert!(report.ci_radius > 0.0);
}
