//! One-dimensional probability distributions with exact densities, CDFs,
//! deterministic sampling, and privacy-loss evaluation.
//!
//! Continuous evaluation is in 64-bit floating point; density ratios are
//! taken in log space so that tail points do not underflow. Discrete
//! probabilities are carried as exact rationals and converted to floats
//! only on the generic paths.

use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use statrs::function::erf::erfc;

use crate::{Error, Rational, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_6;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A one-dimensional probability law.
///
/// Construct through [`Distribution::gaussian`], [`Distribution::laplace`],
/// [`Distribution::mixture`] or [`Distribution::discrete`] so the
/// parameter invariants are checked.
#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Gaussian {
        mean: f64,
        stddev: f64,
    },
    Laplace {
        location: f64,
        scale: f64,
    },
    /// Finite mixture of non-mixture components, all of the same kind.
    Mixture {
        weights: Vec<f64>,
        components: Vec<Distribution>,
    },
    /// Finite law over distinct real labels with exact rational masses.
    Discrete {
        outcomes: Vec<f64>,
        probs: Vec<Rational>,
    },
}

impl Distribution {
    pub fn gaussian(mean: f64, stddev: f64) -> Result<Self> {
        if !mean.is_finite() || !stddev.is_finite() || stddev <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gaussian(mean={mean}, stddev={stddev})"
            )));
        }
        Ok(Distribution::Gaussian { mean, stddev })
    }

    pub fn laplace(location: f64, scale: f64) -> Result<Self> {
        if !location.is_finite() || !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "laplace(location={location}, scale={scale})"
            )));
        }
        Ok(Distribution::Laplace { location, scale })
    }

    /// Mixture with nonnegative weights summing to 1 within 1e-12. The
    /// components must not themselves be mixtures and must all be
    /// continuous or all discrete.
    pub fn mixture(weights: Vec<f64>, components: Vec<Distribution>) -> Result<Self> {
        if weights.is_empty() || weights.len() != components.len() {
            return Err(Error::InvalidParameter(
                "mixture weights/components length mismatch".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidParameter(
                "mixture weights must be nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "mixture weights sum to {total}, expected 1"
            )));
        }
        if components
            .iter()
            .any(|c| matches!(c, Distribution::Mixture { .. }))
        {
            return Err(Error::InvalidParameter(
                "mixture components must not be mixtures".into(),
            ));
        }
        let continuous = components[0].is_continuous();
        if components.iter().any(|c| c.is_continuous() != continuous) {
            return Err(Error::InvalidParameter(
                "mixture components must all be continuous or all discrete".into(),
            ));
        }
        Ok(Distribution::Mixture {
            weights,
            components,
        })
    }

    /// Discrete law over distinct labels; masses must be nonnegative
    /// rationals summing to exactly 1.
    pub fn discrete(outcomes: Vec<f64>, probs: Vec<Rational>) -> Result<Self> {
        if outcomes.is_empty() || outcomes.len() != probs.len() {
            return Err(Error::InvalidParameter(
                "discrete outcomes/probs length mismatch".into(),
            ));
        }
        for (i, a) in outcomes.iter().enumerate() {
            if !a.is_finite() {
                return Err(Error::InvalidParameter("discrete label not finite".into()));
            }
            if outcomes[i + 1..].iter().any(|b| b == a) {
                return Err(Error::InvalidParameter(format!(
                    "discrete labels must be distinct, {a} repeats"
                )));
            }
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::InvalidParameter(
                "discrete probabilities must be nonnegative".into(),
            ));
        }
        let total: Rational = probs.iter().sum();
        if total != Rational::from_integer(1.into()) {
            return Err(Error::InvalidParameter(format!(
                "discrete probabilities sum to {total}, expected exactly 1"
            )));
        }
        Ok(Distribution::Discrete { outcomes, probs })
    }

    /// Convenience constructor from (numerator, denominator) mass pairs.
    pub fn discrete_from_pairs(outcomes: Vec<f64>, mass: &[(i64, i64)]) -> Result<Self> {
        let probs = mass
            .iter()
            .map(|&(n, d)| Rational::new(n.into(), d.into()))
            .collect();
        Self::discrete(outcomes, probs)
    }

    pub fn is_continuous(&self) -> bool {
        match self {
            Distribution::Gaussian { .. } | Distribution::Laplace { .. } => true,
            Distribution::Discrete { .. } => false,
            Distribution::Mixture { components, .. } => components[0].is_continuous(),
        }
    }

    /// Density at `x` for continuous laws; point mass for discrete laws
    /// (0 when `x` is not a label).
    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            Distribution::Gaussian { .. } | Distribution::Laplace { .. } => self.ln_pdf(x).exp(),
            Distribution::Mixture {
                weights,
                components,
            } => weights
                .iter()
                .zip(components)
                .map(|(w, c)| w * c.pdf(x))
                .sum(),
            Distribution::Discrete { outcomes, probs } => outcomes
                .iter()
                .position(|o| *o == x)
                .map_or(0.0, |i| rational_to_f64(&probs[i])),
        }
    }

    /// Natural log of the density (or point mass). `-inf` where the
    /// density is zero.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        match self {
            Distribution::Gaussian { mean, stddev } => {
                let z = (x - mean) / stddev;
                -0.5 * z * z - stddev.ln() - 0.5 * LN_2PI
            }
            Distribution::Laplace { location, scale } => {
                -(x - location).abs() / scale - (2.0 * scale).ln()
            }
            Distribution::Mixture {
                weights,
                components,
            } => {
                let terms: Vec<f64> = weights
                    .iter()
                    .zip(components)
                    .map(|(w, c)| w.ln() + c.ln_pdf(x))
                    .collect();
                log_sum_exp(&terms)
            }
            Distribution::Discrete { .. } => self.pdf(x).ln(),
        }
    }

    /// CDF of a continuous law. Discrete variants are rejected.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match self {
            Distribution::Gaussian { mean, stddev } => {
                Ok(0.5 * erfc((mean - x) / (stddev * std::f64::consts::SQRT_2)))
            }
            Distribution::Laplace { location, scale } => {
                let z = (x - location) / scale;
                Ok(if z < 0.0 {
                    0.5 * z.exp()
                } else {
                    1.0 - 0.5 * (-z).exp()
                })
            }
            Distribution::Mixture {
                weights,
                components,
            } => {
                if !self.is_continuous() {
                    return Err(Error::UnsupportedVariant("cdf of a discrete mixture"));
                }
                let mut acc = 0.0;
                for (w, c) in weights.iter().zip(components) {
                    acc += w * c.cdf(x)?;
                }
                Ok(acc)
            }
            Distribution::Discrete { .. } => Err(Error::UnsupportedVariant("cdf of a discrete law")),
        }
    }

    /// Survival function 1 - CDF, evaluated without cancellation in the
    /// upper tail.
    pub fn sf(&self, x: f64) -> Result<f64> {
        match self {
            Distribution::Gaussian { mean, stddev } => {
                Ok(0.5 * erfc((x - mean) / (stddev * std::f64::consts::SQRT_2)))
            }
            Distribution::Laplace { location, scale } => {
                let z = (x - location) / scale;
                Ok(if z < 0.0 {
                    1.0 - 0.5 * z.exp()
                } else {
                    0.5 * (-z).exp()
                })
            }
            Distribution::Mixture {
                weights,
                components,
            } => {
                if !self.is_continuous() {
                    return Err(Error::UnsupportedVariant("sf of a discrete mixture"));
                }
                let mut acc = 0.0;
                for (w, c) in weights.iter().zip(components) {
                    acc += w * c.sf(x)?;
                }
                Ok(acc)
            }
            Distribution::Discrete { .. } => Err(Error::UnsupportedVariant("sf of a discrete law")),
        }
    }

    /// ln(dP/dQ)(x) where `self` is P and `other` is Q. Returns `+inf`
    /// where Q has zero density under positive P density, `-inf` for the
    /// symmetric case, and 0 where both densities vanish.
    pub fn log_density_ratio(&self, other: &Distribution, x: f64) -> Result<f64> {
        if self.is_continuous() != other.is_continuous() {
            return Err(Error::MismatchedSupportKind);
        }
        if self.is_continuous() {
            let lp = self.ln_pdf(x);
            let lq = other.ln_pdf(x);
            if lp == f64::NEG_INFINITY && lq == f64::NEG_INFINITY {
                return Ok(0.0);
            }
            Ok(lp - lq)
        } else {
            let p = self.pdf(x);
            let q = other.pdf(x);
            Ok(match (p > 0.0, q > 0.0) {
                (true, true) => p.ln() - q.ln(),
                (true, false) => f64::INFINITY,
                (false, true) => f64::NEG_INFINITY,
                (false, false) => 0.0,
            })
        }
    }

    /// Draw one sample. Deterministic for a fixed generator state;
    /// mixtures pick a component by weight and then sample it.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Distribution::Gaussian { mean, stddev } => {
                let z: f64 = rng.sample(rand_distr::StandardNormal);
                mean + stddev * z
            }
            Distribution::Laplace { location, scale } => {
                let u: f64 = rng.gen_range(-0.5..0.5);
                let mag = (1.0 - 2.0 * u.abs()).max(f64::MIN_POSITIVE).ln();
                location - scale * u.signum() * mag
            }
            Distribution::Mixture {
                weights,
                components,
            } => {
                let idx = pick_index(weights, rng);
                components[idx].sample(rng)
            }
            Distribution::Discrete { outcomes, probs } => {
                let w: Vec<f64> = probs.iter().map(rational_to_f64).collect();
                outcomes[pick_index(&w, rng)]
            }
        }
    }

    /// Mirror the law through the origin (x -> -x).
    pub(crate) fn reflect(&self) -> Distribution {
        match self {
            Distribution::Gaussian { mean, stddev } => Distribution::Gaussian {
                mean: -mean,
                stddev: *stddev,
            },
            Distribution::Laplace { location, scale } => Distribution::Laplace {
                location: -location,
                scale: *scale,
            },
            Distribution::Mixture {
                weights,
                components,
            } => Distribution::Mixture {
                weights: weights.clone(),
                components: components.iter().map(|c| c.reflect()).collect(),
            },
            Distribution::Discrete { outcomes, probs } => Distribution::Discrete {
                outcomes: outcomes.iter().map(|o| -o).collect(),
                probs: probs.clone(),
            },
        }
    }

    /// Smallest and largest location parameter across components.
    pub(crate) fn location_range(&self) -> (f64, f64) {
        match self {
            Distribution::Gaussian { mean, .. } => (*mean, *mean),
            Distribution::Laplace { location, .. } => (*location, *location),
            Distribution::Mixture { components, .. } => components.iter().fold(
                (f64::INFINITY, f64::NEG_INFINITY),
                |(lo, hi), c| {
                    let (a, b) = c.location_range();
                    (lo.min(a), hi.max(b))
                },
            ),
            Distribution::Discrete { outcomes, .. } => outcomes
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| {
                    (lo.min(*o), hi.max(*o))
                }),
        }
    }

    /// Largest scale parameter across components (1.0 for discrete laws).
    pub(crate) fn max_scale(&self) -> f64 {
        match self {
            Distribution::Gaussian { stddev, .. } => *stddev,
            Distribution::Laplace { scale, .. } => *scale,
            Distribution::Mixture { components, .. } => components
                .iter()
                .map(|c| c.max_scale())
                .fold(0.0, f64::max),
            Distribution::Discrete { .. } => 1.0,
        }
    }

    /// Kink locations of the density (Laplace component locations).
    pub(crate) fn density_breakpoints(&self) -> Vec<f64> {
        match self {
            Distribution::Laplace { location, .. } => vec![*location],
            Distribution::Mixture { components, .. } => components
                .iter()
                .flat_map(|c| c.density_breakpoints())
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Exact masses converted to floating point.
    pub fn discrete_probs_f64(&self) -> Result<Vec<f64>> {
        match self {
            Distribution::Discrete { probs, .. } => {
                Ok(probs.iter().map(rational_to_f64).collect())
            }
            _ => Err(Error::UnsupportedVariant("probs_f64 of a continuous law")),
        }
    }
}

/// Product of independent factors, used by the exact composed oracles.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductDistribution {
    pub factors: Vec<Distribution>,
}

impl ProductDistribution {
    pub fn new(factors: Vec<Distribution>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParameter(
                "product distribution needs at least one factor".into(),
            ));
        }
        Ok(ProductDistribution { factors })
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else if r.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    })
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

fn pick_index<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    weights.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gaussian(mean: f64, stddev: f64) -> Distribution {
        Distribution::gaussian(mean, stddev).unwrap()
    }

    fn laplace(location: f64, scale: f64) -> Distribution {
        Distribution::laplace(location, scale).unwrap()
    }

    #[test]
    fn pdf_standard_normal_mode() {
        assert_abs_diff_eq!(
            gaussian(0.0, 1.0).pdf(0.0),
            1.0 / (2.0 * std::f64::consts::PI).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn pdf_laplace_at_location() {
        assert_abs_diff_eq!(laplace(0.0, 2.0).pdf(0.0), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn pdf_laplace_mixture_midpoint() {
        let mix = Distribution::mixture(
            vec![0.5, 0.5],
            vec![laplace(-1.0, 2.0), laplace(1.0, 2.0)],
        )
        .unwrap();
        // 0.5 e^{-1/2}/4 + 0.5 e^{-1/2}/4 evaluated by hand
        let expected = (-0.5f64).exp() / 4.0;
        assert_abs_diff_eq!(mix.pdf(0.0), expected, epsilon = 1e-15);
        assert_abs_diff_eq!(mix.pdf(0.0), 0.15163266492815836, epsilon = 1e-15);
    }

    #[test]
    fn cdf_symmetry_points() {
        assert_abs_diff_eq!(gaussian(0.0, 1.0).cdf(0.0).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(laplace(0.0, 1.0).cdf(0.0).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn cdf_laplace_closed_form() {
        let expected = 1.0 - (-1.0f64).exp() / 2.0;
        assert_abs_diff_eq!(laplace(0.0, 2.0).cdf(2.0).unwrap(), expected, epsilon = 1e-15);
    }

    #[test]
    fn cdf_discrete_rejected() {
        let d = Distribution::discrete_from_pairs(vec![0.0, 1.0], &[(1, 2), (1, 2)]).unwrap();
        assert!(matches!(d.cdf(0.5), Err(Error::UnsupportedVariant(_))));
    }

    #[test]
    fn log_ratio_gaussian_pair() {
        let p = gaussian(0.0, 1.0);
        let q = gaussian(1.0, 1.0);
        // (1 - 2x)/(2 sigma^2)
        assert_abs_diff_eq!(p.log_density_ratio(&q, 0.5).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.log_density_ratio(&q, 0.0).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn log_ratio_identical_pair_is_zero() {
        let p = Distribution::mixture(
            vec![0.25, 0.75],
            vec![gaussian(0.0, 1.0), gaussian(2.0, 0.5)],
        )
        .unwrap();
        for x in [-3.0, -0.1, 0.0, 1.7, 40.0] {
            assert_eq!(p.log_density_ratio(&p, x).unwrap(), 0.0);
        }
    }

    #[test]
    fn log_ratio_mixed_kinds_rejected() {
        let p = gaussian(0.0, 1.0);
        let d = Distribution::discrete_from_pairs(vec![0.0], &[(1, 1)]).unwrap();
        assert!(matches!(
            p.log_density_ratio(&d, 0.0),
            Err(Error::MismatchedSupportKind)
        ));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let mix = Distribution::mixture(
            vec![0.3, 0.7],
            vec![gaussian(0.0, 1.0), laplace(5.0, 2.0)],
        )
        .unwrap();
        let draw = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..32).map(|_| mix.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn sample_mean_matches_clt_bound() {
        let g = gaussian(0.0, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 1_000_000;
        let mean: f64 = (0..n).map(|_| g.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.01, "empirical mean {mean}");
    }

    #[test]
    fn mixture_component_frequencies() {
        let mix = Distribution::mixture(
            vec![0.9, 0.1],
            vec![gaussian(0.0, 0.1), gaussian(100.0, 0.1)],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 1_000_000;
        let hits = (0..n).filter(|_| mix.sample(&mut rng) > 50.0).count();
        let freq = hits as f64 / n as f64;
        assert!((freq - 0.1).abs() < 0.003, "second-component frequency {freq}");
    }

    #[test]
    fn discrete_probs_must_sum_to_one_exactly() {
        let bad = Distribution::discrete_from_pairs(vec![0.0, 1.0], &[(1, 2), (1, 3)]);
        assert!(bad.is_err());
    }

    fn simpson_integral(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        let h = (hi - lo) / n as f64;
        let mut acc = f(lo) + f(hi);
        for i in 1..n {
            let w = if i % 2 == 0 { 2.0 } else { 4.0 };
            acc += w * f(lo + i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn pdf_integrates_to_one() {
        let dists = [
            gaussian(0.3, 0.7),
            laplace(-2.0, 1.5),
            Distribution::mixture(
                vec![0.25, 0.75],
                vec![gaussian(-1.0, 2.0), gaussian(3.0, 0.5)],
            )
            .unwrap(),
            Distribution::mixture(vec![0.5, 0.5], vec![laplace(-1.0, 2.0), laplace(1.0, 2.0)])
                .unwrap(),
        ];
        for d in &dists {
            let (lo_loc, hi_loc) = d.location_range();
            let w = 22.0 * d.max_scale();
            let total = simpson_integral(&|x| d.pdf(x), lo_loc - w, hi_loc + w, 200_000);
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn cdf_matches_quadrature_of_pdf() {
        let d = Distribution::mixture(
            vec![0.4, 0.6],
            vec![gaussian(-1.0, 0.8), laplace(2.0, 1.2).reflect().reflect()],
        )
        .unwrap();
        let lo = -1.0 - 22.0 * 1.2;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut points: Vec<f64> = (0..100).map(|_| rng.gen_range(-6.0..6.0)).collect();
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut acc = 0.0;
        let mut prev = lo;
        for x in points {
            acc += simpson_integral(&|t| d.pdf(t), prev, x, 20_000);
            prev = x;
            assert_abs_diff_eq!(d.cdf(x).unwrap(), acc, epsilon = 1e-9);
        }
    }

    #[test]
    fn log_ratio_antisymmetry() {
        let p = Distribution::mixture(
            vec![0.8, 0.2],
            vec![gaussian(0.0, 1.0), gaussian(1.0, 1.0)],
        )
        .unwrap();
        let q = gaussian(0.0, 1.0);
        for i in 0..200 {
            let x = -10.0 + 0.1 * i as f64;
            let a = p.log_density_ratio(&q, x).unwrap();
            let b = q.log_density_ratio(&p, x).unwrap();
            if a.is_finite() && b.is_finite() {
                assert_eq!(a, -b);
            }
        }
    }
}
