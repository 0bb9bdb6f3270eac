//! Finitely supported distributions on the integer lattice.
//!
//! A distribution is stored as a dense probability window: an `offset` and a
//! vector `pmf` with `pmf[i] = P(X = offset + i)`. The window is tight (first
//! and last entries are strictly positive) and interior zeros are allowed, so
//! gapped supports such as dilated lattices are represented exactly.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

use crate::numeric::stable_sum;
use crate::rational::{clear_denominators, Rational, RationalError};

/// Hard ceiling on window length for support-expanding operations.
pub const DEFAULT_WINDOW_CAP: usize = 10_000_000;

/// Absolute tolerance for "sums to one" invariants on internal outputs.
pub(crate) const NORMALIZATION_TOL: f64 = 1e-12;

/// Explicit pmf inputs may be off by this much in total mass and still be
/// accepted (then renormalized exactly).
const EXPLICIT_MASS_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum DistError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("support is empty")]
    EmptySupport,
    #[error("pmf entry at support point {0} is negative or not finite")]
    InvalidProbability(i64),
    #[error("pmf mass {0} differs from 1 by more than 1e-9")]
    MassNotNormalizable(f64),
    #[error("support scale factor must be nonzero")]
    ZeroScale,
    #[error("output window of {needed} points exceeds the cap of {cap}")]
    WindowCapExceeded { needed: u64, cap: usize },
    #[error("integer overflow in support arithmetic")]
    Overflow,
    #[error("{0} components but {1} coefficients")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Coefficient(#[from] RationalError),
}

/// Named input families. `build` turns one into a concrete distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Bernoulli { p: f64 },
    Rademacher { p: f64 },
    Binomial { n: u32, p: f64 },
    UniformInterval { a: i64, b: i64 },
    UniformSet { support: Vec<i64> },
    TwoPoint { x1: i64, x2: i64, theta: f64 },
    Explicit { offset: i64, pmf: Vec<f64> },
}

impl Family {
    pub fn build(&self) -> Result<LatticeDistribution, DistError> {
        match self {
            Family::Bernoulli { p } => {
                require_open_unit(*p, "bernoulli p")?;
                Ok(LatticeDistribution::from_window(0, vec![1.0 - p, *p]))
            }
            Family::Rademacher { p } => {
                require_open_unit(*p, "rademacher p")?;
                Ok(LatticeDistribution::from_window(-1, vec![1.0 - p, 0.0, *p]))
            }
            Family::Binomial { n, p } => {
                require_open_unit(*p, "binomial p")?;
                if *n == 0 {
                    return Err(DistError::ParameterOutOfRange(
                        "binomial n must be at least 1".into(),
                    ));
                }
                let bern = LatticeDistribution::from_window(0, vec![1.0 - p, *p]);
                let mut acc = bern.clone();
                for _ in 1..*n {
                    acc = acc.convolve(&bern)?;
                }
                Ok(acc)
            }
            Family::UniformInterval { a, b } => {
                if a > b {
                    return Err(DistError::ParameterOutOfRange(format!(
                        "uniform interval needs a <= b, got [{a}, {b}]"
                    )));
                }
                let len = width_checked(*a, *b)?;
                Ok(LatticeDistribution::from_window(
                    *a,
                    vec![1.0 / len as f64; len],
                ))
            }
            Family::UniformSet { support } => {
                let mut points = support.clone();
                points.sort_unstable();
                points.dedup();
                if points.is_empty() {
                    return Err(DistError::EmptySupport);
                }
                let len = width_checked(points[0], *points.last().unwrap())?;
                let mut pmf = vec![0.0; len];
                let w = 1.0 / points.len() as f64;
                for x in &points {
                    pmf[(x - points[0]) as usize] = w;
                }
                Ok(LatticeDistribution::from_window(points[0], pmf))
            }
            Family::TwoPoint { x1, x2, theta } => {
                require_open_unit(*theta, "two-point theta")?;
                if x1 >= x2 {
                    return Err(DistError::ParameterOutOfRange(format!(
                        "two-point needs x1 < x2, got {x1} and {x2}"
                    )));
                }
                let len = width_checked(*x1, *x2)?;
                let mut pmf = vec![0.0; len];
                pmf[0] = 1.0 - theta;
                pmf[len - 1] = *theta;
                Ok(LatticeDistribution::from_window(*x1, pmf))
            }
            Family::Explicit { offset, pmf } => LatticeDistribution::new(*offset, pmf.clone()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Bernoulli { p } => write!(f, "bern({p})"),
            Family::Rademacher { p } => write!(f, "rad({p})"),
            Family::Binomial { n, p } => write!(f, "binom({n},{p})"),
            Family::UniformInterval { a, b } => write!(f, "unif[{a},{b}]"),
            Family::UniformSet { support } => {
                write!(f, "uset{{")?;
                for (i, x) in support.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "}}")
            }
            Family::TwoPoint { x1, x2, theta } => write!(f, "two({x1},{x2};{theta})"),
            Family::Explicit { offset, pmf } => write!(f, "expl(off={offset},len={})", pmf.len()),
        }
    }
}

fn require_open_unit(p: f64, what: &str) -> Result<(), DistError> {
    if p.is_finite() && p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(DistError::ParameterOutOfRange(format!(
            "{what} must lie strictly between 0 and 1, got {p}"
        )))
    }
}

fn width_checked(lo: i64, hi: i64) -> Result<usize, DistError> {
    let span = hi.checked_sub(lo).ok_or(DistError::Overflow)? as u64 + 1;
    if span > DEFAULT_WINDOW_CAP as u64 {
        return Err(DistError::WindowCapExceeded {
            needed: span,
            cap: DEFAULT_WINDOW_CAP,
        });
    }
    Ok(span as usize)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeDistribution {
    offset: i64,
    pmf: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

impl LatticeDistribution {
    /// Validates an explicit pmf: entries finite and nonnegative, total mass
    /// within 1e-9 of one (then renormalized), window trimmed tight.
    pub fn new(offset: i64, pmf: Vec<f64>) -> Result<Self, DistError> {
        for (i, &p) in pmf.iter().enumerate() {
            if !p.is_finite() || p < 0.0 {
                let x = offset.checked_add(i as i64).ok_or(DistError::Overflow)?;
                return Err(DistError::InvalidProbability(x));
            }
        }
        let lead = pmf.iter().take_while(|&&p| p == 0.0).count();
        if lead == pmf.len() {
            return Err(DistError::EmptySupport);
        }
        let trail = pmf.iter().rev().take_while(|&&p| p == 0.0).count();
        let offset = offset.checked_add(lead as i64).ok_or(DistError::Overflow)?;
        let mut window = pmf[lead..pmf.len() - trail].to_vec();
        let mass = stable_sum(window.iter().copied());
        if (mass - 1.0).abs() > EXPLICIT_MASS_TOL {
            return Err(DistError::MassNotNormalizable(mass));
        }
        if mass != 1.0 {
            for p in &mut window {
                *p /= mass;
            }
        }
        Ok(Self::from_window(offset, window))
    }

    /// Internal constructor for outputs of exact operations. Trims zero ends
    /// and asserts (in debug builds) that the mass invariant held already.
    pub(crate) fn from_window(offset: i64, pmf: Vec<f64>) -> Self {
        let lead = pmf.iter().take_while(|&&p| p == 0.0).count();
        assert!(lead < pmf.len(), "window carries no mass");
        let trail = pmf.iter().rev().take_while(|&&p| p == 0.0).count();
        let window = if lead == 0 && trail == 0 {
            pmf
        } else {
            pmf[lead..pmf.len() - trail].to_vec()
        };
        let out = Self {
            offset: offset + lead as i64,
            pmf: window,
        };
        debug_assert!(
            (stable_sum(out.pmf.iter().copied()) - 1.0).abs() <= NORMALIZATION_TOL,
            "window mass drifted from 1"
        );
        out
    }

    pub fn point_mass(x: i64) -> Self {
        Self {
            offset: x,
            pmf: vec![1.0],
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn support_min(&self) -> i64 {
        self.offset
    }

    pub fn support_max(&self) -> i64 {
        self.offset + self.pmf.len() as i64 - 1
    }

    /// Window length including interior zeros.
    pub fn window_len(&self) -> usize {
        self.pmf.len()
    }

    /// Number of points carrying positive mass.
    pub fn support_size(&self) -> usize {
        self.pmf.iter().filter(|&&p| p > 0.0).count()
    }

    pub fn prob_at(&self, x: i64) -> f64 {
        let i = x - self.offset;
        if i >= 0 && (i as usize) < self.pmf.len() {
            self.pmf[i as usize]
        } else {
            0.0
        }
    }

    /// Atoms `(x, p)` with `p > 0`, in increasing support order.
    pub fn atoms(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.pmf
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(move |(i, &p)| (self.offset + i as i64, p))
    }

    /// Largest point probability.
    pub fn max_prob(&self) -> f64 {
        self.pmf.iter().copied().fold(0.0, f64::max)
    }

    pub fn moments(&self) -> Moments {
        let mean = stable_sum(
            self.pmf
                .iter()
                .enumerate()
                .map(|(i, &p)| p * (self.offset + i as i64) as f64),
        );
        let variance = stable_sum(self.pmf.iter().enumerate().map(|(i, &p)| {
            let d = (self.offset + i as i64) as f64 - mean;
            p * d * d
        }))
        .max(0.0);
        Moments { mean, variance }
    }

    pub fn mean(&self) -> f64 {
        self.moments().mean
    }

    pub fn variance(&self) -> f64 {
        self.moments().variance
    }

    /// Discrete log-concavity: contiguous positive support (no interior
    /// zeros) and `pmf[j]^2 >= pmf[j-1] * pmf[j+1]` up to a relative epsilon.
    pub fn is_log_concave(&self) -> bool {
        if self.pmf.iter().any(|&p| p <= 0.0) {
            return false;
        }
        let peak = self.max_prob();
        let eps = 1e-12 * peak * peak;
        self.pmf
            .windows(3)
            .all(|w| w[1] * w[1] >= w[0] * w[2] - eps)
    }

    /// Center of symmetry if the window is a palindrome (entrywise within
    /// 1e-12); the center is integer or half-integer.
    pub fn symmetry_center(&self) -> Option<f64> {
        let n = self.pmf.len();
        let symmetric = (0..n / 2).all(|i| (self.pmf[i] - self.pmf[n - 1 - i]).abs() <= 1e-12);
        symmetric.then(|| self.offset as f64 + (n - 1) as f64 / 2.0)
    }

    pub fn scale_support(&self, k: i64) -> Result<Self, DistError> {
        self.scale_support_with_cap(k, DEFAULT_WINDOW_CAP)
    }

    /// Distribution of `k * X`. Mass moves to the dilated lattice; the gaps
    /// in between are explicit zeros.
    pub fn scale_support_with_cap(&self, k: i64, cap: usize) -> Result<Self, DistError> {
        if k == 0 {
            return Err(DistError::ZeroScale);
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let step = k.unsigned_abs();
        let needed = (self.pmf.len() as u64 - 1)
            .checked_mul(step)
            .and_then(|w| w.checked_add(1))
            .ok_or(DistError::Overflow)?;
        if needed > cap as u64 {
            return Err(DistError::WindowCapExceeded { needed, cap });
        }
        let lo = self.support_min().checked_mul(k).ok_or(DistError::Overflow)?;
        let hi = self.support_max().checked_mul(k).ok_or(DistError::Overflow)?;
        let offset = lo.min(hi);
        let mut pmf = vec![0.0; needed as usize];
        for (i, &p) in self.pmf.iter().enumerate() {
            let pos = if k > 0 {
                i as u64 * step
            } else {
                (self.pmf.len() as u64 - 1 - i as u64) * step
            };
            pmf[pos as usize] = p;
        }
        Ok(Self::from_window(offset, pmf))
    }

    pub fn convolve(&self, other: &Self) -> Result<Self, DistError> {
        self.convolve_with_cap(other, DEFAULT_WINDOW_CAP)
    }

    /// Distribution of `X + Y` for independent `X`, `Y`: exact direct
    /// convolution, no transform-domain shortcuts.
    pub fn convolve_with_cap(&self, other: &Self, cap: usize) -> Result<Self, DistError> {
        let needed = self.pmf.len() as u64 + other.pmf.len() as u64 - 1;
        if needed > cap as u64 {
            return Err(DistError::WindowCapExceeded { needed, cap });
        }
        let offset = self
            .offset
            .checked_add(other.offset)
            .ok_or(DistError::Overflow)?;
        let mut out = vec![0.0; needed as usize];
        // Iterate the shorter window on the outside so the inner loop streams.
        let (a, b) = if self.pmf.len() <= other.pmf.len() {
            (&self.pmf, &other.pmf)
        } else {
            (&other.pmf, &self.pmf)
        };
        for (i, &pa) in a.iter().enumerate() {
            if pa == 0.0 {
                continue;
            }
            for (j, &pb) in b.iter().enumerate() {
                out[i + j] += pa * pb;
            }
        }
        Ok(Self::from_window(offset, out))
    }

    /// Forgets the support geometry: the atoms in increasing support order are
    /// reindexed to 0..k-1. Probabilities are untouched, so every functional
    /// of the probability multiset (max atom, Rényi entropies) is preserved.
    pub fn squeeze(&self) -> Self {
        let pmf: Vec<f64> = self.pmf.iter().copied().filter(|&p| p > 0.0).collect();
        Self { offset: 0, pmf }
    }
}

/// A weighted sum `a_1 X_1 + ... + a_n X_n` with exact rational weights.
#[derive(Clone, Debug)]
pub struct WeightedSumSpec {
    coefficients: Vec<Rational>,
    components: Vec<LatticeDistribution>,
}

/// The lattice distribution of `scale * (a . X)` together with the exact
/// change of scale that moved it onto the integer lattice.
#[derive(Clone, Debug)]
pub struct WeightedSumResult {
    pub distribution: LatticeDistribution,
    pub scale: i64,
    pub integer_coefficients: Vec<i64>,
}

impl WeightedSumSpec {
    pub fn new(
        coefficients: Vec<Rational>,
        components: Vec<LatticeDistribution>,
    ) -> Result<Self, DistError> {
        if coefficients.len() != components.len() {
            return Err(DistError::LengthMismatch(
                components.len(),
                coefficients.len(),
            ));
        }
        if components.is_empty() {
            return Err(DistError::EmptySupport);
        }
        if let Some(i) = coefficients.iter().position(|c| c.numer() == &0) {
            return Err(RationalError::ZeroCoefficient(i).into());
        }
        Ok(Self {
            coefficients,
            components,
        })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn components(&self) -> &[LatticeDistribution] {
        &self.components
    }

    pub fn evaluate(&self) -> Result<WeightedSumResult, DistError> {
        self.evaluate_with_cap(DEFAULT_WINDOW_CAP)
    }

    pub fn evaluate_with_cap(&self, cap: usize) -> Result<WeightedSumResult, DistError> {
        let (integers, scale) = clear_denominators(&self.coefficients)?;
        let distribution = weighted_sum_integers(&self.components, &integers, cap)?;
        Ok(WeightedSumResult {
            distribution,
            scale,
            integer_coefficients: integers,
        })
    }
}

/// Distribution of `t_1 X_1 + ... + t_n X_n` for nonzero integer weights.
pub fn weighted_sum_integers(
    components: &[LatticeDistribution],
    integers: &[i64],
    cap: usize,
) -> Result<LatticeDistribution, DistError> {
    if components.len() != integers.len() {
        return Err(DistError::LengthMismatch(components.len(), integers.len()));
    }
    if components.is_empty() {
        return Err(DistError::EmptySupport);
    }
    let mut acc: Option<LatticeDistribution> = None;
    for (dist, &t) in components.iter().zip(integers) {
        let scaled = dist.scale_support_with_cap(t, cap)?;
        acc = Some(match acc {
            None => scaled,
            Some(prev) => prev.convolve_with_cap(&scaled, cap)?,
        });
    }
    Ok(acc.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bern(p: f64) -> LatticeDistribution {
        Family::Bernoulli { p }.build().unwrap()
    }

    #[test]
    fn bernoulli_window() {
        let d = bern(0.3);
        assert_eq!(d.offset(), 0);
        assert_eq!(d.pmf(), &[0.7, 0.3]);
    }

    #[test]
    fn binomial_matches_direct_formula() {
        // Oracle: binomial coefficients computed independently of convolution.
        let d = Family::Binomial { n: 6, p: 0.3 }.build().unwrap();
        let mut choose = vec![1.0f64];
        for _ in 0..6 {
            let mut next = vec![1.0];
            for w in choose.windows(2) {
                next.push(w[0] + w[1]);
            }
            next.push(1.0);
            choose = next;
        }
        for (k, &c) in choose.iter().enumerate() {
            let expect = c * 0.3f64.powi(k as i32) * 0.7f64.powi(6 - k as i32);
            assert!((d.prob_at(k as i64) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn binomial_two_half() {
        let d = Family::Binomial { n: 2, p: 0.5 }.build().unwrap();
        assert_eq!(d.offset(), 0);
        assert_eq!(d.pmf(), &[0.25, 0.5, 0.25]);
    }

    #[test]
    fn uniform_set_window_has_gaps() {
        let d = Family::UniformSet {
            support: vec![5, 0, 2],
        }
        .build()
        .unwrap();
        assert_eq!(d.offset(), 0);
        assert_eq!(d.window_len(), 6);
        assert_eq!(d.support_size(), 3);
        assert!((d.prob_at(2) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.prob_at(1), 0.0);
    }

    #[test]
    fn explicit_renormalizes_within_tolerance() {
        let d = LatticeDistribution::new(0, vec![0.5, 0.5 + 3e-10]).unwrap();
        assert!((stable_sum(d.pmf().iter().copied()) - 1.0).abs() < 1e-15);
        let err = LatticeDistribution::new(0, vec![0.5, 0.6]).unwrap_err();
        assert!(matches!(err, DistError::MassNotNormalizable(_)));
    }

    #[test]
    fn explicit_trims_zero_padding() {
        let d = LatticeDistribution::new(-3, vec![0.0, 0.0, 0.25, 0.5, 0.25, 0.0]).unwrap();
        assert_eq!(d.offset(), -1);
        assert_eq!(d.window_len(), 3);
    }

    #[test]
    fn moments_of_uniform_interval() {
        let d = Family::UniformInterval { a: 0, b: 4 }.build().unwrap();
        let m = d.moments();
        assert!((m.mean - 2.0).abs() < 1e-12);
        assert!((m.variance - 2.0).abs() < 1e-12);
    }

    #[test]
    fn moments_of_bernoulli() {
        let m = bern(0.25).moments();
        assert!((m.mean - 0.25).abs() < 1e-15);
        assert!((m.variance - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn variance_is_translation_invariant_under_scaling_mean_shift() {
        let d = Family::UniformSet {
            support: vec![-7, -6, -5],
        }
        .build()
        .unwrap();
        assert!((d.variance() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn log_concavity_verdicts() {
        assert!(bern(0.5).is_log_concave());
        assert!(Family::Binomial { n: 4, p: 0.3 }.build().unwrap().is_log_concave());
        assert!(Family::UniformInterval { a: -2, b: 2 }.build().unwrap().is_log_concave());
        // Interior zero: the +/-1 distribution is not log-concave.
        assert!(!Family::Rademacher { p: 0.5 }.build().unwrap().is_log_concave());
        // Convexity violation: 0.4, 0.1, 0.5 has p(1)^2 < p(0) p(2).
        let bad = LatticeDistribution::new(0, vec![0.4, 0.1, 0.5]).unwrap();
        assert!(!bad.is_log_concave());
        assert!(LatticeDistribution::point_mass(9).is_log_concave());
    }

    #[test]
    fn symmetry_center_detection() {
        assert_eq!(bern(0.5).symmetry_center(), Some(0.5));
        assert_eq!(bern(0.3).symmetry_center(), None);
        let d = Family::UniformInterval { a: -2, b: 2 }.build().unwrap();
        assert_eq!(d.symmetry_center(), Some(0.0));
        let r = Family::Rademacher { p: 0.5 }.build().unwrap();
        assert_eq!(r.symmetry_center(), Some(0.0));
        assert_eq!(
            Family::Binomial { n: 3, p: 0.5 }.build().unwrap().symmetry_center(),
            Some(1.5)
        );
    }

    #[test]
    fn scale_support_reflects_and_dilates() {
        let d = bern(0.3);
        let neg = d.scale_support(-1).unwrap();
        assert_eq!(neg.offset(), -1);
        assert_eq!(neg.pmf(), &[0.3, 0.7]);

        let tripled = Family::UniformInterval { a: 1, b: 2 }
            .build()
            .unwrap()
            .scale_support(3)
            .unwrap();
        assert_eq!(tripled.offset(), 3);
        assert_eq!(tripled.pmf(), &[0.5, 0.0, 0.0, 0.5]);

        let neg2 = Family::UniformInterval { a: 0, b: 2 }
            .build()
            .unwrap()
            .scale_support(-2)
            .unwrap();
        assert_eq!(neg2.offset(), -4);
        assert_eq!(neg2.pmf(), &[1.0 / 3.0, 0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0]);
    }

    #[test]
    fn scale_support_rejects_zero() {
        assert_eq!(bern(0.5).scale_support(0).unwrap_err(), DistError::ZeroScale);
    }

    #[test]
    fn convolution_is_exact_on_small_cases() {
        let d = bern(0.5).convolve(&bern(0.5)).unwrap();
        assert_eq!(d.pmf(), &[0.25, 0.5, 0.25]);
        let shifted = LatticeDistribution::point_mass(-4).convolve(&d).unwrap();
        assert_eq!(shifted.offset(), -4);
        assert_eq!(shifted.pmf(), d.pmf());
    }

    #[test]
    fn convolution_commutes() {
        let a = Family::UniformInterval { a: -1, b: 3 }.build().unwrap();
        let b = Family::Binomial { n: 3, p: 0.2 }.build().unwrap();
        let ab = a.convolve(&b).unwrap();
        let ba = b.convolve(&a).unwrap();
        assert_eq!(ab.offset(), ba.offset());
        for (x, y) in ab.pmf().iter().zip(ba.pmf()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn window_cap_is_enforced() {
        let d = Family::UniformInterval { a: 0, b: 1000 }.build().unwrap();
        let err = d.scale_support_with_cap(100, 1000).unwrap_err();
        assert!(matches!(err, DistError::WindowCapExceeded { .. }));
        let e2 = d.convolve_with_cap(&d, 1500).unwrap_err();
        assert!(matches!(e2, DistError::WindowCapExceeded { .. }));
    }

    #[test]
    fn squeeze_preserves_probability_multiset() {
        let gapped = bern(0.3).scale_support(5).unwrap();
        assert_eq!(gapped.window_len(), 6);
        let squeezed = gapped.squeeze();
        assert_eq!(squeezed.offset(), 0);
        assert_eq!(squeezed.pmf(), &[0.7, 0.3]);
    }

    #[test]
    fn weighted_sum_clears_denominators() {
        let spec = WeightedSumSpec::new(
            vec![Rational::new(3, 2), Rational::new(-2, 5)],
            vec![bern(0.5), bern(0.5)],
        )
        .unwrap();
        let out = spec.evaluate().unwrap();
        assert_eq!(out.scale, 10);
        assert_eq!(out.integer_coefficients, vec![15, -4]);
        // Support of 15 X1 - 4 X2: {-4, 0, 11, 15}, each with mass 1/4.
        let d = &out.distribution;
        assert_eq!(d.support_min(), -4);
        assert_eq!(d.support_max(), 15);
        for x in [-4i64, 0, 11, 15] {
            assert!((d.prob_at(x) - 0.25).abs() < 1e-15);
        }
        assert_eq!(d.support_size(), 4);
    }

    #[test]
    fn weighted_sum_of_three_bernoullis_is_binomial() {
        let comps = vec![bern(0.5), bern(0.5), bern(0.5)];
        let out = weighted_sum_integers(&comps, &[1, 1, 1], DEFAULT_WINDOW_CAP).unwrap();
        let direct = Family::Binomial { n: 3, p: 0.5 }.build().unwrap();
        assert_eq!(out.offset(), direct.offset());
        for (a, b) in out.pmf().iter().zip(direct.pmf()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn weighted_sum_rejects_zero_coefficient() {
        let err = WeightedSumSpec::new(
            vec![Rational::from_integer(0)],
            vec![bern(0.5)],
        )
        .unwrap_err();
        assert!(matches!(err, DistError::Coefficient(RationalError::ZeroCoefficient(0))));
    }

    #[test]
    fn weighted_sum_rejects_length_mismatch() {
        let err = WeightedSumSpec::new(vec![Rational::from_integer(1)], vec![bern(0.5), bern(0.5)])
            .unwrap_err();
        assert!(matches!(err, DistError::LengthMismatch(2, 1)));
    }

    #[test]
    fn family_json_round_trip() {
        let families = vec![
            Family::Bernoulli { p: 0.3 },
            Family::Rademacher { p: 0.5 },
            Family::Binomial { n: 3, p: 0.5 },
            Family::UniformInterval { a: -1, b: 4 },
            Family::UniformSet { support: vec![0, 2, 5] },
            Family::TwoPoint { x1: 0, x2: 3, theta: 0.25 },
            Family::Explicit { offset: -1, pmf: vec![0.25, 0.5, 0.25] },
        ];
        for f in families {
            let text = serde_json::to_string(&f).unwrap();
            let back: Family = serde_json::from_str(&text).unwrap();
            assert_eq!(back, f);
        }
        let tagged: Family = serde_json::from_str(r#"{"family":"bernoulli","p":0.5}"#).unwrap();
        assert_eq!(tagged, Family::Bernoulli { p: 0.5 });
    }
}
