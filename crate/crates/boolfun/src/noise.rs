//! Interpolation nodes for linear-coefficient extraction, correlated-noise
//! sampling, and the block-noise procedure with its exceedance statistics.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::restriction::Restriction;
use crate::stats::{wilson_interval, ExperimentReport};
use crate::stream::derive_rng;
use rand::Rng;
use rayon::prelude::*;

/// Largest supported extraction degree; the node systems stay well
/// conditioned up to here.
pub const NODE_LIMIT: usize = 12;

/// Default tuning constants for the classification and exceedance machinery.
/// They are free parameters of the procedures, so every report must echo the
/// values actually used.
pub const DEFAULT_B: f64 = 4.0;
pub const DEFAULT_K: f64 = 1.0;
pub const DEFAULT_W: f64 = 4.0;

/// Exceedance bar for the block-noise procedure at the given degree: 15 d^2.
pub fn exceedance_bar(degree: usize) -> f64 {
    15.0 * (degree * degree) as f64
}

/// Bar on the conditional mean above which an assignment counts as good:
/// `mu / (80 ln k)`. Needs `k >= 2`, where the log is positive.
pub fn good_threshold<F: Scalar>(mu: F, k: usize) -> Result<F> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "good threshold needs k >= 2, got {k} (log k vanishes)"
        )));
    }
    Ok(mu / (fl::<F>(80.0) * fl((k as f64).ln())))
}

/// Evaluation points in [-1/2, 1/2] together with weights that read off the
/// linear coefficient: `sum_j w_j p(rho_j) = p'(0)` for every polynomial of
/// degree at most `k`.
///
/// The points are cosines at k+1 evenly spaced angles over an odd divisor of
/// the half-circle, so none of them lands on zero and the weight mass stays
/// below `2(k+1)`.
#[derive(Debug, Clone)]
pub struct InterpolationNodes<F> {
    k: usize,
    nodes: Vec<F>,
    weights: Vec<F>,
}

impl<F: Scalar> InterpolationNodes<F> {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("extraction degree must be positive".into()));
        }
        if k > NODE_LIMIT {
            return Err(Error::Capacity {
                what: "extraction degree",
                value: k,
                limit: NODE_LIMIT,
            });
        }
        // k+1 angles j*pi/m with odd m avoid both duplicate cosines and a
        // node at zero (which would waste an evaluation point).
        let m = (k | 1) as f64;
        let nodes: Vec<f64> = (0..=k)
            .map(|j| (j as f64 * std::f64::consts::PI / m).cos() / 2.0)
            .collect();

        // w_j = l_j'(0) for the Lagrange basis l_j. Since no node is zero,
        // l_j'(0) = l_j(0) * sum_{i != j} 1/(0 - rho_i).
        let mut weights = vec![0.0f64; k + 1];
        for j in 0..=k {
            let mut l0 = 1.0;
            let mut inv_sum = 0.0;
            for i in 0..=k {
                if i == j {
                    continue;
                }
                l0 *= -nodes[i] / (nodes[j] - nodes[i]);
                inv_sum += -1.0 / nodes[i];
            }
            weights[j] = l0 * inv_sum;
        }

        // The weights must reproduce the linear coefficient of every
        // monomial up to degree k.
        for t in 0..=k {
            let moment: f64 = (0..=k).map(|j| weights[j] * nodes[j].powi(t as i32)).sum();
            let want = if t == 1 { 1.0 } else { 0.0 };
            assert!(
                (moment - want).abs() < 1e-9,
                "degree-{t} moment {moment} off target {want} at k = {k}"
            );
        }
        let norm: f64 = weights.iter().map(|w| w.abs()).sum();
        assert!(
            norm <= 2.0 * (k + 1) as f64 + 1e-9,
            "weight mass {norm} exceeds 2(k+1) at k = {k}"
        );

        Ok(InterpolationNodes {
            k,
            nodes: nodes.into_iter().map(fl).collect(),
            weights: weights.into_iter().map(fl).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[F] {
        &self.nodes
    }

    pub fn extraction_weights(&self) -> &[F] {
        &self.weights
    }

    /// Total absolute weight mass, at most `2(k+1)`.
    pub fn weight_norm(&self) -> F {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    /// Reads the linear coefficient from values at the nodes:
    /// `sum_j w_j values[j]`.
    pub fn extract_linear(&self, values: &[F]) -> Result<F> {
        if values.len() != self.k + 1 {
            return Err(Error::Domain(format!(
                "expected {} node values, got {}",
                self.k + 1,
                values.len()
            )));
        }
        Ok(self
            .weights
            .iter()
            .zip(values)
            .map(|(&w, &v)| w * v)
            .sum())
    }
}

/// One draw from the noise distribution that rerandomizes only `s`: each
/// coordinate in `s` independently keeps its value with probability
/// `(1 + rho) / 2`; coordinates outside `s` are copied unchanged.
pub fn sample_noisy<F: Scalar, R: Rng + ?Sized>(
    x: Point,
    rho: F,
    s: CoordSet,
    rng: &mut R,
) -> Point {
    let rho = rho.to_f64().expect("noise rate must be a real number");
    assert!((-1.0..=1.0).contains(&rho), "noise rate {rho} outside [-1, 1]");
    let keep = (1.0 + rho) / 2.0;
    let mut out = x;
    for i in s.iter() {
        if !rng.gen_bool(keep) {
            out = out.flip(i);
        }
    }
    out
}

/// One sample of `f(z) - f(x0)` where `z` rerandomizes `s` at a noise rate
/// drawn uniformly from the interpolation nodes.
pub fn noise_lemma_sample<F: Scalar, R: Rng + ?Sized>(
    f: &FourierExpansion<F>,
    s: CoordSet,
    x0: Point,
    nodes: &InterpolationNodes<F>,
    rng: &mut R,
) -> F {
    let rho = nodes.nodes()[rng.gen_range(0..nodes.nodes().len())];
    let z = sample_noisy(x0, rho, s, rng);
    f.evaluate(z) - f.evaluate(x0)
}

/// The alive coordinates whose restricted linear coefficient is small next
/// to their unrestricted influence: `g({j})^2 <= w^k * influences[j]`.
pub fn classify_small<F: Scalar>(
    restricted: &FourierExpansion<F>,
    influences: &[F],
    alive: CoordSet,
    w: F,
    k: usize,
) -> Result<CoordSet> {
    if w <= F::zero() {
        return Err(Error::Domain(format!("classification bound {w} must be positive")));
    }
    if influences.len() != restricted.n() {
        return Err(Error::Domain(format!(
            "got {} influences for arity {}",
            influences.len(),
            restricted.n()
        )));
    }
    alive.check_fits(restricted.n(), "alive set")?;
    let wk = w.powi(k as i32);
    let mut out = CoordSet::EMPTY;
    for j in alive.iter() {
        let c = restricted.coefficient(CoordSet::single(j));
        if c * c <= wk * influences[j] {
            out = out.with(j);
        }
    }
    Ok(out)
}

/// Everything the block-noise procedure needs: the function, the restriction
/// (alive set and pinned assignment), disjoint noise blocks inside the alive
/// set, the noise-rate nodes, and the exceedance bar.
#[derive(Debug, Clone)]
pub struct ProcedureOneConfig<F> {
    f: FourierExpansion<F>,
    restriction: Restriction,
    blocks: Vec<CoordSet>,
    nodes: InterpolationNodes<F>,
    threshold: f64,
}

impl<F: Scalar> ProcedureOneConfig<F> {
    pub fn new(
        f: FourierExpansion<F>,
        alive: CoordSet,
        assignment: Point,
        blocks: Vec<CoordSet>,
        nodes: InterpolationNodes<F>,
        threshold: f64,
    ) -> Result<Self> {
        alive.check_fits(f.n(), "alive set")?;
        let restriction = Restriction::new(alive, assignment)?;
        restriction.check_fits(f.n())?;
        let mut seen = CoordSet::EMPTY;
        for b in &blocks {
            if !b.is_subset_of(alive) {
                return Err(Error::Config(format!(
                    "block {b} reaches outside the alive set {alive}"
                )));
            }
            if !b.is_disjoint_from(seen) {
                return Err(Error::Config(format!("block {b} overlaps an earlier block")));
            }
            seen = seen.union(*b);
        }
        if !threshold.is_finite() || threshold < 0.0 {
            return Err(Error::Config(format!(
                "exceedance bar {threshold} must be finite and nonnegative"
            )));
        }
        Ok(ProcedureOneConfig {
            f,
            restriction,
            blocks,
            nodes,
            threshold,
        })
    }

    pub fn function(&self) -> &FourierExpansion<F> {
        &self.f
    }

    pub fn alive(&self) -> CoordSet {
        self.restriction.alive()
    }

    pub fn assignment(&self) -> Point {
        self.restriction.assignment()
    }

    pub fn blocks(&self) -> &[CoordSet] {
        &self.blocks
    }

    pub fn nodes(&self) -> &InterpolationNodes<F> {
        &self.nodes
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// One run of the block-noise probe: draw a noise rate uniformly from the
/// nodes and a uniform completion `z` of the alive set, then for each block
/// rerandomize `z` inside that block alone and add up the absolute value
/// changes.
pub fn procedure_one<F: Scalar, R: Rng + ?Sized>(
    cfg: &ProcedureOneConfig<F>,
    rng: &mut R,
) -> F {
    let node_values = cfg.nodes.nodes();
    let rho = node_values[rng.gen_range(0..node_values.len())];
    let alive = cfg.restriction.alive();
    let z = Point::new(rng.gen::<u64>() & alive.bits());
    let base = cfg.restriction.complete(z);
    let f_base = cfg.f.evaluate(base);
    let mut total = F::zero();
    for &block in &cfg.blocks {
        let z_noisy = sample_noisy(z, rho, block, rng);
        assert_eq!(
            z_noisy.bits() & !block.bits(),
            z.bits() & !block.bits(),
            "noise escaped its block"
        );
        let probe = cfg.restriction.complete(z_noisy);
        total += (cfg.f.evaluate(probe) - f_base).abs();
    }
    total
}

/// Runs the probe `trials` times on derived per-trial streams and reports
/// how often the sum exceeds the configured bar, with a Wilson 95% radius.
pub fn exceedance_rate<F: Scalar>(
    cfg: &ProcedureOneConfig<F>,
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::Domain("exceedance rate needs at least one trial".into()));
    }
    let bar = fl::<F>(cfg.threshold);
    let hits: u64 = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_rng(seed, t);
            u64::from(procedure_one(cfg, &mut rng) > bar)
        })
        .sum();
    let (_, ci_radius) = wilson_interval(hits, trials as u64)?;
    Ok(ExperimentReport {
        name: "procedure-exceedance".into(),
        estimate: hits as f64 / trials as f64,
        ci_radius,
        trials,
        seed,
    })
}
