//! Generators of bounded low-degree test functions with known degree bounds.
//!
//! Every construction here is boundedness-preserving by shape: indicator
//! functions, convex mixtures, and noise smoothing. None of them truncates a
//! spectrum, which would silently break pointwise bounds.

use crate::error::{Error, Result};
use crate::fourier::FourierExpansion;
use crate::mask::{CoordSet, Point};
use crate::num::{fl, Scalar};
use crate::table::TruthTable;
use crate::DENSE_LIMIT;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

/// A named generator with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// OR of `tribes` disjoint ANDs of `width` coordinates, {0,1}-valued.
    Tribes { width: usize, tribes: usize },
    /// Complete binary AND/OR tree of the given depth over 2^depth distinct
    /// coordinates, AND at the root, alternating by level.
    AndOrTree { depth: usize },
    /// Uniformly random read-once decision tree of the given depth.
    RandomDtree { n: usize, depth: usize },
    /// Random {0,1}-valued function smoothed by the noise operator at `rho`.
    SmoothedRandom { n: usize, rho: f64 },
    /// Majority of three composed with itself `levels` times.
    RecursiveMaj3 { levels: usize },
    /// First coordinate as a {0,1} function.
    Dictator { n: usize },
    /// Full parity rescaled to {0,1}.
    ParityScaled { n: usize },
    /// Random convex combination of `count` random depth-`depth` trees.
    ConvexMixture { n: usize, count: usize, depth: usize },
}

/// A family plus the seed that pins down its random choices.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub seed: u64,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tribes { .. } => "tribes",
            Family::AndOrTree { .. } => "and_or_tree",
            Family::RandomDtree { .. } => "random_dtree",
            Family::SmoothedRandom { .. } => "smoothed_random",
            Family::RecursiveMaj3 { .. } => "recursive_maj3",
            Family::Dictator { .. } => "dictator",
            Family::ParityScaled { .. } => "parity_scaled",
            Family::ConvexMixture { .. } => "convex_mixture",
        }
    }

    /// Coordinate count of the generated function.
    pub fn arity(&self) -> usize {
        match *self {
            Family::Tribes { width, tribes } => width * tribes,
            Family::AndOrTree { depth } => 1 << depth,
            Family::RandomDtree { n, .. } => n,
            Family::SmoothedRandom { n, .. } => n,
            Family::RecursiveMaj3 { levels } => 3usize.pow(levels as u32),
            Family::Dictator { n } => n,
            Family::ParityScaled { n } => n,
            Family::ConvexMixture { n, .. } => n,
        }
    }

    /// Declared degree bound, always at least the spectral degree.
    pub fn declared_degree(&self) -> usize {
        match *self {
            Family::Tribes { .. }
            | Family::AndOrTree { .. }
            | Family::SmoothedRandom { .. }
            | Family::RecursiveMaj3 { .. }
            | Family::ParityScaled { .. } => self.arity(),
            Family::RandomDtree { n, depth } => depth.min(n),
            Family::Dictator { .. } => 1,
            Family::ConvexMixture { n, depth, .. } => depth.min(n),
        }
    }

    fn validate(&self) -> Result<()> {
        let arity_ok = (1..=DENSE_LIMIT).contains(&self.arity());
        let params_ok = match *self {
            Family::Tribes { width, tribes } => width >= 1 && tribes >= 1,
            Family::AndOrTree { .. } => true,
            Family::RandomDtree { n, depth } => depth <= n,
            Family::SmoothedRandom { rho, .. } => (0.0..=1.0).contains(&rho),
            Family::RecursiveMaj3 { levels } => levels >= 1,
            Family::Dictator { .. } | Family::ParityScaled { .. } => true,
            Family::ConvexMixture { n, count, depth } => count >= 1 && depth <= n,
        };
        if arity_ok && params_ok {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "family parameters out of range: {self:?} (arity {} must stay in 1..={DENSE_LIMIT})",
                self.arity()
            )))
        }
    }
}

impl FamilySpec {
    pub fn new(family: Family, seed: u64) -> Self {
        FamilySpec { family, seed }
    }

    /// Builds the function and returns it with its declared degree bound.
    pub fn generate<F: Scalar>(&self) -> Result<(FourierExpansion<F>, usize)> {
        self.family.validate()?;
        let n = self.family.arity();
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let f = match self.family {
            Family::Tribes { width, tribes } => indicator(n, |x| {
                (0..tribes).any(|t| (0..width).all(|i| !x.is_negative(t * width + i)))
            })?,
            Family::AndOrTree { .. } => indicator(n, |x| and_or_eval(x, 0, n, true))?,
            Family::RandomDtree { n, depth } => {
                let tree = RandomTree::sample(&mut rng, CoordSet::full(n), depth);
                indicator(n, |x| tree.eval(x))?
            }
            Family::SmoothedRandom { n, rho } => {
                let table = TruthTable::from_fn(n, |_| {
                    if rng.gen_bool(0.5) {
                        F::one()
                    } else {
                        F::zero()
                    }
                })?;
                FourierExpansion::from_truth_table(&table).noise_operator(fl(rho))?
            }
            Family::RecursiveMaj3 { levels } => indicator(n, |x| maj3_eval(x, 0, levels))?,
            Family::Dictator { .. } => indicator(n, |x| !x.is_negative(0))?,
            Family::ParityScaled { n } => indicator(n, |x| x.bits().count_ones() % 2 == 0)?,
            Family::ConvexMixture { n, count, depth } => {
                let parts: Vec<FourierExpansion<F>> = (0..count)
                    .map(|_| {
                        let tree = RandomTree::sample(&mut rng, CoordSet::full(n), depth);
                        indicator(n, |x| tree.eval(x))
                    })
                    .collect::<Result<_>>()?;
                let raw: Vec<f64> = (0..count).map(|_| rng.gen_range(0.01..1.0)).collect();
                let total: f64 = raw.iter().sum();
                let weights: Vec<F> = raw.into_iter().map(|w| fl(w / total)).collect();
                convex_mixture(&parts, &weights)?
            }
        };
        Ok((f, self.family.declared_degree()))
    }
}

/// Coefficientwise convex combination. Weights must be nonnegative and sum
/// to one within 1e-12; boundedness of the inputs then carries over.
pub fn convex_mixture<F: Scalar>(
    parts: &[FourierExpansion<F>],
    weights: &[F],
) -> Result<FourierExpansion<F>> {
    if parts.is_empty() || parts.len() != weights.len() {
        return Err(Error::Domain(format!(
            "{} functions against {} weights",
            parts.len(),
            weights.len()
        )));
    }
    let n = parts[0].n();
    if parts.iter().any(|p| p.n() != n) {
        return Err(Error::Domain("mixture inputs must share an arity".into()));
    }
    if weights.iter().any(|&w| w < F::zero()) {
        return Err(Error::Domain("mixture weights must be nonnegative".into()));
    }
    let total: F = weights.iter().copied().sum();
    if (total - F::one()).abs() > fl(1e-12) {
        return Err(Error::Domain(format!("mixture weights sum to {total}, not 1")));
    }
    let mut terms = Vec::new();
    for (p, &w) in parts.iter().zip(weights) {
        terms.extend(p.terms().map(|(s, c)| (s, c * w)));
    }
    FourierExpansion::from_coeffs(n, terms)
}

fn indicator<F: Scalar>(n: usize, mut pred: impl FnMut(Point) -> bool) -> Result<FourierExpansion<F>> {
    let table = TruthTable::from_fn(n, |x| if pred(x) { F::one() } else { F::zero() })?;
    Ok(FourierExpansion::from_truth_table(&table))
}

/// AND/OR tree over coordinates [lo, lo + width); `is_and` flags this level.
fn and_or_eval(x: Point, lo: usize, width: usize, is_and: bool) -> bool {
    if width == 1 {
        return !x.is_negative(lo);
    }
    let half = width / 2;
    let a = and_or_eval(x, lo, half, !is_and);
    let b = and_or_eval(x, lo + half, half, !is_and);
    if is_and {
        a && b
    } else {
        a || b
    }
}

/// Recursive majority over the 3^levels coordinates starting at `offset`.
fn maj3_eval(x: Point, offset: usize, levels: usize) -> bool {
    if levels == 0 {
        return !x.is_negative(offset);
    }
    let stride = 3usize.pow(levels as u32 - 1);
    let votes = (0..3)
        .filter(|&j| maj3_eval(x, offset + j * stride, levels - 1))
        .count();
    votes >= 2
}

enum RandomTree {
    Leaf(bool),
    Node(usize, Box<RandomTree>, Box<RandomTree>),
}

impl RandomTree {
    /// Uniform random query among the still-available coordinates at each
    /// node, uniform leaf bits at the depth floor.
    fn sample<R: Rng>(rng: &mut R, avail: CoordSet, depth: usize) -> Self {
        if depth == 0 || avail.is_empty() {
            return RandomTree::Leaf(rng.gen_bool(0.5));
        }
        let rank = rng.gen_range(0..avail.len());
        let coord = avail.iter().nth(rank).expect("rank below len");
        let rest = avail.without(coord);
        RandomTree::Node(
            coord,
            Box::new(RandomTree::sample(rng, rest, depth - 1)),
            Box::new(RandomTree::sample(rng, rest, depth - 1)),
        )
    }

    fn eval(&self, x: Point) -> bool {
        match self {
            RandomTree::Leaf(b) => *b,
            RandomTree::Node(coord, on_plus, on_minus) => {
                if x.is_negative(*coord) {
                    on_minus.eval(x)
                } else {
                    on_plus.eval(x)
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Tribes { width, tribes } => write!(f, "tribes:w={width},t={tribes}"),
            Family::AndOrTree { depth } => write!(f, "and_or_tree:depth={depth}"),
            Family::RandomDtree { n, depth } => write!(f, "random_dtree:n={n},depth={depth}"),
            Family::SmoothedRandom { n, rho } => write!(f, "smoothed_random:n={n},rho={rho}"),
            Family::RecursiveMaj3 { levels } => write!(f, "recursive_maj3:levels={levels}"),
            Family::Dictator { n } => write!(f, "dictator:n={n}"),
            Family::ParityScaled { n } => write!(f, "parity_scaled:n={n}"),
            Family::ConvexMixture { n, count, depth } => {
                write!(f, "convex_mixture:n={n},count={count},depth={depth}")
            }
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses `name:key=value,...`, e.g. `tribes:w=2,t=2`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = std::collections::BTreeMap::new();
        if !rest.is_empty() {
            for pair in rest.split(',') {
                let (key, value) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected key=value, got {pair:?}")))?;
                params.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        let get_usize = |key: &str| -> Result<usize> {
            params
                .get(key)
                .ok_or_else(|| Error::Parse(format!("{name} needs parameter {key}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("parameter {key} must be an integer")))
        };
        let get_f64 = |key: &str| -> Result<f64> {
            params
                .get(key)
                .ok_or_else(|| Error::Parse(format!("{name} needs parameter {key}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("parameter {key} must be a real number")))
        };
        let family = match name.trim() {
            "tribes" => Family::Tribes {
                width: get_usize("w")?,
                tribes: get_usize("t")?,
            },
            "and_or_tree" => Family::AndOrTree {
                depth: get_usize("depth")?,
            },
            "random_dtree" => Family::RandomDtree {
                n: get_usize("n")?,
                depth: get_usize("depth")?,
            },
            "smoothed_random" => Family::SmoothedRandom {
                n: get_usize("n")?,
                rho: get_f64("rho")?,
            },
            "recursive_maj3" => Family::RecursiveMaj3 {
                levels: get_usize("levels")?,
            },
            "dictator" => Family::Dictator { n: get_usize("n")? },
            "parity_scaled" => Family::ParityScaled { n: get_usize("n")? },
            "convex_mixture" => Family::ConvexMixture {
                n: get_usize("n")?,
                count: get_usize("count")?,
                depth: get_usize("depth")?,
            },
            other => {
                return Err(Error::Parse(format!("unknown family {other:?}")));
            }
        };
        family.validate()?;
        Ok(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen64(family: Family, seed: u64) -> (FourierExpansion<f64>, usize) {
        FamilySpec::new(family, seed).generate().unwrap()
    }

    /// Boundedness, declared degree, and Parseval for one instance.
    fn well_formed(f: &FourierExpansion<f64>, declared: usize) {
        let t = f.to_truth_table().unwrap();
        for &v in t.values() {
            assert!((-1e-12..=1.0 + 1e-12).contains(&v), "value {v} out of [0,1]");
        }
        assert!(f.degree() <= declared, "degree {} > declared {declared}", f.degree());
        assert!((f.total_weight() - t.mean_square()).abs() < 1e-10);
        assert!(f.total_influence() <= declared as f64 * f.variance() + 1e-10);
    }

    #[test]
    fn dictator_shape() {
        let (f, d) = gen64(Family::Dictator { n: 3 }, 0);
        assert_eq!(d, 1);
        assert_eq!(f.degree(), 1);
        assert!((f.variance() - 0.25).abs() < 1e-15);
        assert!((f.mean() - 0.5).abs() < 1e-15);
        well_formed(&f, d);
    }

    #[test]
    fn tribes_2x2() {
        let (f, d) = gen64(
            Family::Tribes {
                width: 2,
                tribes: 2,
            },
            0,
        );
        assert_eq!(d, 4);
        assert_eq!(f.degree(), 4);
        // 7 of 16 points satisfy OR of two 2-ANDs.
        assert!((f.mean() - 7.0 / 16.0).abs() < 1e-12);
        well_formed(&f, d);
    }

    #[test]
    fn and_or_tree_depth2() {
        let (f, d) = gen64(Family::AndOrTree { depth: 2 }, 0);
        assert_eq!(d, 4);
        // (x0 or x1) and (x2 or x3): 9 of 16 points.
        assert!((f.mean() - 9.0 / 16.0).abs() < 1e-12);
        well_formed(&f, d);
    }

    #[test]
    fn random_dtree_degree_capped() {
        for seed in 0..5 {
            let (f, d) = gen64(Family::RandomDtree { n: 8, depth: 3 }, seed);
            assert_eq!(d, 3);
            assert!(f.degree() <= 3);
            let t = f.to_truth_table().unwrap();
            for &v in t.values() {
                assert!(v == 0.0 || v == 1.0, "tree must be Boolean, got {v}");
            }
            well_formed(&f, d);
        }
    }

    #[test]
    fn smoothed_random_stays_bounded() {
        for &rho in &[0.0, 0.4, 1.0] {
            let (f, d) = gen64(Family::SmoothedRandom { n: 6, rho }, 11);
            well_formed(&f, d);
        }
    }

    #[test]
    fn recursive_maj3_two_levels() {
        let (f, d) = gen64(Family::RecursiveMaj3 { levels: 2 }, 0);
        assert_eq!(f.n(), 9);
        assert_eq!(d, 9);
        assert!((f.mean() - 0.5).abs() < 1e-12);
        well_formed(&f, d);
    }

    #[test]
    fn parity_scaled_spectrum() {
        let (f, d) = gen64(Family::ParityScaled { n: 5 }, 0);
        assert_eq!(d, 5);
        assert!((f.coefficient(CoordSet::full(5)) - 0.5).abs() < 1e-12);
        assert!((f.variance() - 0.25).abs() < 1e-12);
        well_formed(&f, d);
    }

    #[test]
    fn mixture_is_convex() {
        let (f, d) = gen64(
            Family::ConvexMixture {
                n: 6,
                count: 3,
                depth: 2,
            },
            21,
        );
        assert_eq!(d, 2);
        well_formed(&f, d);
    }

    #[test]
    fn mixture_weight_validation() {
        let a = FourierExpansion::from_coeffs(1, [(CoordSet::EMPTY, 1.0f64)]).unwrap();
        let b = FourierExpansion::from_coeffs(1, [(CoordSet::single(0), 1.0)]).unwrap();
        assert!(convex_mixture(&[a.clone(), b.clone()], &[0.5, 0.6]).is_err());
        assert!(convex_mixture(&[a.clone(), b.clone()], &[-0.5, 1.5]).is_err());
        assert!(convex_mixture::<f64>(&[], &[]).is_err());
        let m = convex_mixture(&[a, b], &[0.25, 0.75]).unwrap();
        assert!((m.coefficient(CoordSet::EMPTY) - 0.25).abs() < 1e-15);
        assert!((m.coefficient(CoordSet::single(0)) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn mixing_with_constant_shrinks_variance_quadratically() {
        let (f, _) = gen64(Family::Dictator { n: 2 }, 0);
        let c = FourierExpansion::constant(2, 0.5);
        let m = convex_mixture(&[f.clone(), c], &[0.5, 0.5]).unwrap();
        assert!((m.variance() - 0.25 * f.variance()).abs() < 1e-14);
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let spec = FamilySpec::new(Family::RandomDtree { n: 8, depth: 3 }, 99);
        let (a, _) = spec.generate::<f64>().unwrap();
        let (b, _) = spec.generate::<f64>().unwrap();
        assert_eq!(a, b);
        let (c, _) = FamilySpec::new(Family::RandomDtree { n: 8, depth: 3 }, 100)
            .generate::<f64>()
            .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn parse_round_trips() {
        for s in [
            "tribes:w=2,t=2",
            "and_or_tree:depth=2",
            "random_dtree:n=8,depth=3",
            "smoothed_random:n=6,rho=0.4",
            "recursive_maj3:levels=1",
            "dictator:n=4",
            "parity_scaled:n=5",
            "convex_mixture:n=6,count=3,depth=2",
        ] {
            let family: Family = s.parse().unwrap();
            assert_eq!(family.to_string(), s);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("nope:n=3".parse::<Family>().is_err());
        assert!("tribes:w=2".parse::<Family>().is_err());
        assert!("tribes:w=2,t=zebra".parse::<Family>().is_err());
        assert!("dictator:n=0".parse::<Family>().is_err());
        // 5 * 5 = 25 > 24 blows the dense cap.
        assert!("tribes:w=5,t=5".parse::<Family>().is_err());
        assert!("random_dtree:n=4,depth=9".parse::<Family>().is_err());
    }
}
