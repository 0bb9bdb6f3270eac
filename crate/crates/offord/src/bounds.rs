//! Closed-form anti-concentration and entropy-power bounds, reported with the
//! constant, branch, and applicability flags that produced each value.

pub mod special;

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

use crate::dist::LatticeDistribution;
use crate::entropy::{entropy_power, RenyiOrder};
use crate::numeric::stable_sum;
use special::{erf_inv, integrate, SpecialFnError};

#[derive(Debug, Error, PartialEq)]
pub enum BoundsError {
    #[error("no components given")]
    NoComponents,
    #[error("component {0} is not log-concave")]
    NotLogConcave(usize),
    #[error("symmetric flag set but component {0} has no symmetry center")]
    NotSymmetric(usize),
    #[error("component {0} is not uniform on its support")]
    NotUniform(usize),
    #[error("progression length must be at least {min}, got {got}")]
    LengthTooShort { got: u32, min: u32 },
    #[error("this bound needs order α > 1, got {0}")]
    OrderNotAboveOne(f64),
    #[error("the uniform-sum bound needs order α ≤ 2, got {0}")]
    OrderAboveTwo(f64),
    #[error("variance {0} outside the Bernoulli range (0, 0.25]")]
    VarianceOutOfRange(f64),
    #[error("two-point support needs x1 < x2, got ({0}, {1})")]
    BadTwoPointSupport(i64, i64),
    #[error("two-point weight must lie strictly between 0 and 1, got {0}")]
    ThetaOutOfRange(f64),
    #[error(transparent)]
    Special(#[from] SpecialFnError),
}

/// Which inequality a report certifies. Serialized as a stable kebab-case id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Concentration,
    EntropyPower,
    ApConcentration,
    TwoPoint,
    BernoulliFourierAp,
    UniformSumEpi,
    RenyiPowerUpper,
    ShannonPowerUpper,
    SharpnessFloor,
    MaxAtomSandwich,
    SignDominance,
    PushforwardMajorization,
    ApOracleAgreement,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::Concentration => "concentration",
            TheoremId::EntropyPower => "entropy-power",
            TheoremId::ApConcentration => "ap-concentration",
            TheoremId::TwoPoint => "two-point",
            TheoremId::BernoulliFourierAp => "bernoulli-fourier-ap",
            TheoremId::UniformSumEpi => "uniform-sum-epi",
            TheoremId::RenyiPowerUpper => "renyi-power-upper",
            TheoremId::ShannonPowerUpper => "shannon-power-upper",
            TheoremId::SharpnessFloor => "sharpness-floor",
            TheoremId::MaxAtomSandwich => "max-atom-sandwich",
            TheoremId::SignDominance => "sign-dominance",
            TheoremId::PushforwardMajorization => "pushforward-majorization",
            TheoremId::ApOracleAgreement => "ap-oracle-agreement",
        };
        f.write_str(s)
    }
}

/// Which hypothesis branch supplied the constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    General,
    Symmetric,
    AlphaWindow,
    Fourier,
    Lower,
    Upper,
    UpperSymmetric,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::General => "general",
            Branch::Symmetric => "symmetric",
            Branch::AlphaWindow => "alpha-window",
            Branch::Fourier => "fourier",
            Branch::Lower => "lower",
            Branch::Upper => "upper",
            Branch::UpperSymmetric => "upper-symmetric",
        };
        f.write_str(s)
    }
}

/// Echo of the quantities the bound was computed from.
#[derive(Clone, Debug, Serialize)]
pub struct BoundInputs {
    pub n: usize,
    pub sum_variance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<RenyiOrder>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<u32>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
}

impl BoundInputs {
    fn new(n: usize, sum_variance: f64) -> Self {
        Self {
            n,
            sum_variance,
            alpha: None,
            length: None,
            extras: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    /// Clamped to [0, 1] for probability bounds; `raw_bound` keeps the
    /// unclamped theorem value.
    pub bound: f64,
    pub raw_bound: f64,
    pub c: f64,
    pub applicable: bool,
    /// False when the probability clamp was active.
    pub informative: bool,
    pub branch: Branch,
    pub inputs: BoundInputs,
}

fn require_components(dists: &[LatticeDistribution]) -> Result<(), BoundsError> {
    if dists.is_empty() {
        Err(BoundsError::NoComponents)
    } else {
        Ok(())
    }
}

fn require_log_concave(dists: &[LatticeDistribution]) -> Result<(), BoundsError> {
    match dists.iter().position(|d| !d.is_log_concave()) {
        Some(i) => Err(BoundsError::NotLogConcave(i)),
        None => Ok(()),
    }
}

fn require_symmetric(dists: &[LatticeDistribution]) -> Result<(), BoundsError> {
    match dists.iter().position(|d| d.symmetry_center().is_none()) {
        Some(i) => Err(BoundsError::NotSymmetric(i)),
        None => Ok(()),
    }
}

pub fn all_symmetric(dists: &[LatticeDistribution]) -> bool {
    dists.iter().all(|d| d.symmetry_center().is_some())
}

pub fn all_log_concave(dists: &[LatticeDistribution]) -> bool {
    dists.iter().all(LatticeDistribution::is_log_concave)
}

pub fn total_variance(dists: &[LatticeDistribution]) -> f64 {
    stable_sum(dists.iter().map(|d| d.variance()))
}

/// Shared core of the max-atom and progression bounds:
/// l / sqrt(1 + c·v + c·(l²−1)/12). l = 1 degenerates to 1/sqrt(1 + c·v)
/// bit-for-bit because the extra term is exactly zero.
fn ap_formula(c: f64, sum_variance: f64, l: u32) -> f64 {
    let lf = l as f64;
    lf / (1.0 + c * sum_variance + c * (lf * lf - 1.0) / 12.0).sqrt()
}

/// Largest-atom bound for a weighted sum of log-concave components:
/// M(a·X) ≤ 1/√(1 + c·ΣVar), c = 1 in general and 2 when every component is
/// symmetric.
pub fn bound_concentration(
    dists: &[LatticeDistribution],
    symmetric: bool,
) -> Result<BoundReport, BoundsError> {
    bound_ap(dists, 1, symmetric).map(|mut r| {
        r.theorem = TheoremId::Concentration;
        r.inputs.length = None;
        r
    })
}

/// Entropy-power lower bound N_α(a·X) ≥ 1 + c·ΣVar, with c = 4 on the window
/// 1 < α ≤ 2 (endpoint included), else 2 for symmetric components, else 1.
pub fn bound_entropy_power(
    dists: &[LatticeDistribution],
    order: RenyiOrder,
    symmetric: bool,
) -> Result<BoundReport, BoundsError> {
    require_components(dists)?;
    require_log_concave(dists)?;
    if symmetric {
        require_symmetric(dists)?;
    }
    let (c, branch) = if order.in_unit_two_window() {
        (4.0, Branch::AlphaWindow)
    } else if symmetric {
        (2.0, Branch::Symmetric)
    } else {
        (1.0, Branch::General)
    };
    let v = total_variance(dists);
    let raw = 1.0 + c * v;
    let mut inputs = BoundInputs::new(dists.len(), v);
    inputs.alpha = Some(order);
    Ok(BoundReport {
        theorem: TheoremId::EntropyPower,
        bound: raw,
        raw_bound: raw,
        c,
        applicable: true,
        informative: true,
        branch,
        inputs,
    })
}

/// Progression bound: sup_x P(a·X ∈ {x+m, …, x+ml}) ≤
/// l/√(1 + c·ΣVar + c·(l²−1)/12), clamped to 1 when the formula exceeds it.
pub fn bound_ap(
    dists: &[LatticeDistribution],
    l: u32,
    symmetric: bool,
) -> Result<BoundReport, BoundsError> {
    if l < 1 {
        return Err(BoundsError::LengthTooShort { got: l, min: 1 });
    }
    require_components(dists)?;
    require_log_concave(dists)?;
    if symmetric {
        require_symmetric(dists)?;
    }
    let (c, branch) = if symmetric {
        (2.0, Branch::Symmetric)
    } else {
        (1.0, Branch::General)
    };
    let v = total_variance(dists);
    let raw = ap_formula(c, v, l);
    let mut inputs = BoundInputs::new(dists.len(), v);
    inputs.length = Some(l);
    Ok(BoundReport {
        theorem: TheoremId::ApConcentration,
        bound: raw.min(1.0),
        raw_bound: raw,
        c,
        applicable: true,
        informative: raw <= 1.0,
        branch,
        inputs,
    })
}

/// Unified two-point bound: for components supported on two points x1 < x2
/// with weight θ on the upper one, M(a·X) ≤ 1/√(1 + 2·Σθ_i(1−θ_i)).
/// No log-concavity is required; the gap drops out of the normalized variance.
pub fn bound_two_point(specs: &[(i64, i64, f64)]) -> Result<BoundReport, BoundsError> {
    if specs.is_empty() {
        return Err(BoundsError::NoComponents);
    }
    for &(x1, x2, theta) in specs {
        if x1 >= x2 {
            return Err(BoundsError::BadTwoPointSupport(x1, x2));
        }
        if !(theta > 0.0 && theta < 1.0) {
            return Err(BoundsError::ThetaOutOfRange(theta));
        }
    }
    let normalized: f64 = stable_sum(specs.iter().map(|&(_, _, t)| t * (1.0 - t)));
    let actual: f64 = stable_sum(specs.iter().map(|&(x1, x2, t)| {
        let gap = (x2 - x1) as f64;
        t * (1.0 - t) * gap * gap
    }));
    let raw = 1.0 / (1.0 + 2.0 * normalized).sqrt();
    let mut inputs = BoundInputs::new(specs.len(), actual);
    inputs
        .extras
        .insert("sum_normalized_variance".into(), normalized);
    Ok(BoundReport {
        theorem: TheoremId::TwoPoint,
        bound: raw.min(1.0),
        raw_bound: raw,
        c: 2.0,
        applicable: true,
        informative: true,
        branch: Branch::General,
        inputs,
    })
}

/// Bernoulli variances in (0, 1/4] plus a progression length l ≥ 2.
#[derive(Clone, Debug, Serialize)]
pub struct FourierBoundInputs {
    variances: Vec<f64>,
    length: u32,
}

impl FourierBoundInputs {
    pub fn new(variances: Vec<f64>, length: u32) -> Result<Self, BoundsError> {
        if length < 2 {
            return Err(BoundsError::LengthTooShort { got: length, min: 2 });
        }
        if variances.is_empty() {
            return Err(BoundsError::NoComponents);
        }
        for &v in &variances {
            if !(v > 0.0 && v <= 0.25) {
                return Err(BoundsError::VarianceOutOfRange(v));
            }
        }
        Ok(Self { variances, length })
    }

    pub fn from_bernoulli(ps: &[f64], length: u32) -> Result<Self, BoundsError> {
        Self::new(ps.iter().map(|p| p * (1.0 - p)).collect(), length)
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }

    pub fn length(&self) -> u32 {
        self.length
    }
}

/// The implicit Gaussian-mass constant: A(l) is the half-width for which
/// ∫_{−A}^{A} e^{−π(l²−1)t²} dt = 1/l, in closed form
/// A = erf_inv(√(l²−1)/l) / √(π(l²−1)).
pub fn fourier_a(l: u32) -> Result<f64, BoundsError> {
    if l < 2 {
        return Err(BoundsError::LengthTooShort { got: l, min: 2 });
    }
    let lf = l as f64;
    let l2m1 = lf * lf - 1.0;
    let y = l2m1.sqrt() / lf;
    Ok(erf_inv(y)? / (std::f64::consts::PI * l2m1).sqrt())
}

/// Quadrature residual of the defining equation of A(l); the ground truth the
/// closed form is checked against.
pub fn fourier_a_residual(l: u32) -> Result<f64, BoundsError> {
    let a = fourier_a(l)?;
    let lf = l as f64;
    let k = std::f64::consts::PI * (lf * lf - 1.0);
    let mass = integrate(|t| (-k * t * t).exp(), -a, a, 1e-12);
    Ok((mass - 1.0 / lf).abs())
}

/// Fourier-side progression bound for Bernoulli sums:
/// (2A)^{1/p} · l / √(1 + 2Σσ² + ((l²−1)/12)·4πA²), with Hölder exponents
/// p = C/(π(l²−1)A²), q_k = C/(6σ_k²), C = π(l²−1)A² + 6Σσ². The bound is
/// only justified when p ≥ 2; smaller p is reported as inapplicable.
pub fn bound_bernoulli_ap(inputs: &FourierBoundInputs) -> Result<BoundReport, BoundsError> {
    let l = inputs.length;
    let lf = l as f64;
    let l2m1 = lf * lf - 1.0;
    let a = fourier_a(l)?;
    let base = std::f64::consts::PI * l2m1 * a * a;
    let sum_var = stable_sum(inputs.variances.iter().copied());
    let big_c = base + 6.0 * sum_var;
    let p = big_c / base;
    let applicable = p >= 2.0;
    let four_pi_a2 = 4.0 * std::f64::consts::PI * a * a;
    let denom = 1.0 + 2.0 * sum_var + (l2m1 / 12.0) * four_pi_a2;
    let raw = (2.0 * a).powf(1.0 / p) * lf / denom.sqrt();
    let comparison = ap_formula(2.0, sum_var, l);
    let mut bi = BoundInputs::new(inputs.variances.len(), sum_var);
    bi.length = Some(l);
    bi.extras.insert("fourier_a".into(), a);
    bi.extras.insert("holder_p".into(), p);
    bi.extras.insert("constant_c".into(), big_c);
    bi.extras.insert("ap_bound_c2".into(), comparison.min(1.0));
    Ok(BoundReport {
        theorem: TheoremId::BernoulliFourierAp,
        bound: raw.min(1.0),
        raw_bound: raw,
        c: 2.0,
        applicable,
        informative: raw <= 1.0,
        branch: Branch::Fourier,
        inputs: bi,
    })
}

/// Entropy-power superadditivity for independent uniforms, α ∈ [0, 2]:
/// N_α(ΣU_k) ≥ Σ N_α(U_k) − (n−1). Returns the right-hand side.
pub fn epi_uniform_rhs(
    dists: &[LatticeDistribution],
    order: RenyiOrder,
) -> Result<BoundReport, BoundsError> {
    require_components(dists)?;
    if !order.at_most_two() {
        return Err(BoundsError::OrderAboveTwo(order.value()));
    }
    for (i, d) in dists.iter().enumerate() {
        let lo = d.atoms().map(|(_, p)| p).fold(f64::INFINITY, f64::min);
        let hi = d.max_prob();
        if hi - lo > 1e-12 * hi {
            return Err(BoundsError::NotUniform(i));
        }
    }
    let n = dists.len();
    let rhs = stable_sum(dists.iter().map(|d| entropy_power(d, order))) - (n as f64 - 1.0);
    let mut inputs = BoundInputs::new(n, total_variance(dists));
    inputs.alpha = Some(order);
    Ok(BoundReport {
        theorem: TheoremId::UniformSumEpi,
        bound: rhs,
        raw_bound: rhs,
        c: 1.0,
        applicable: true,
        informative: true,
        branch: Branch::General,
        inputs,
    })
}

/// Variance-scaled upper bound on the Rényi entropy power of one log-concave
/// distribution: N_α ≤ 1 + (4(3α−1)/(α−1))·Var for α > 1, the constant
/// degenerating to 12 at α = ∞.
pub fn renyi_power_upper(d: &LatticeDistribution, order: RenyiOrder) -> Result<f64, BoundsError> {
    if !d.is_log_concave() {
        return Err(BoundsError::NotLogConcave(0));
    }
    let c = match order {
        RenyiOrder::Infinity => 12.0,
        RenyiOrder::Other(a) if a > 1.0 => 4.0 * (3.0 * a - 1.0) / (a - 1.0),
        _ => return Err(BoundsError::OrderNotAboveOne(order.value())),
    };
    Ok(1.0 + c * d.variance())
}

/// Shannon-power upper bound for one log-concave distribution:
/// N₁ ≤ 2πe·(1/12 + Var).
pub fn shannon_power_upper(d: &LatticeDistribution) -> Result<f64, BoundsError> {
    if !d.is_log_concave() {
        return Err(BoundsError::NotLogConcave(0));
    }
    let two_pi_e = 2.0 * std::f64::consts::PI * std::f64::consts::E;
    Ok(two_pi_e / 12.0 + two_pi_e * d.variance())
}

/// Both upper bounds at once; the Rényi half needs α > 1.
pub fn upper_bounds_logconcave(
    d: &LatticeDistribution,
    order: RenyiOrder,
) -> Result<(f64, f64), BoundsError> {
    Ok((renyi_power_upper(d, order)?, shannon_power_upper(d)?))
}

/// Universal concentration floor: M(a·X) ≥ 1/√(1 + 12·ΣVar) for arbitrary
/// independent components (no log-concavity needed), witnessed by sign
/// vectors a ∈ {±1}ⁿ.
pub fn sharpness_lower(dists: &[LatticeDistribution]) -> Result<f64, BoundsError> {
    require_components(dists)?;
    Ok(1.0 / (1.0 + 12.0 * total_variance(dists)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Family;
    use crate::entropy::m_functional;

    fn bern(p: f64) -> LatticeDistribution {
        Family::Bernoulli { p }.build().unwrap()
    }

    fn copies(d: LatticeDistribution, n: usize) -> Vec<LatticeDistribution> {
        vec![d; n]
    }

    #[test]
    fn concentration_values() {
        let four = copies(bern(0.5), 4);
        let sym = bound_concentration(&four, true).unwrap();
        assert!((sym.bound - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(sym.c, 2.0);
        assert_eq!(sym.branch, Branch::Symmetric);

        let single = bound_concentration(&[bern(0.3)], false).unwrap();
        assert!((single.bound - 1.0 / 1.21f64.sqrt()).abs() < 1e-15);
        assert_eq!(single.c, 1.0);

        for (n, p) in [(2usize, 0.2f64), (5, 0.5), (3, 0.8)] {
            let r = bound_concentration(&copies(bern(p), n), false).unwrap();
            let expect = 1.0 / (1.0 + n as f64 * p * (1.0 - p)).sqrt();
            assert!((r.bound - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn concentration_gates_preconditions() {
        let rad = Family::Rademacher { p: 0.5 }.build().unwrap();
        assert_eq!(
            bound_concentration(&[rad], false).unwrap_err(),
            BoundsError::NotLogConcave(0)
        );
        assert_eq!(
            bound_concentration(&[bern(0.3)], true).unwrap_err(),
            BoundsError::NotSymmetric(0)
        );
        assert_eq!(
            bound_concentration(&[], false).unwrap_err(),
            BoundsError::NoComponents
        );
    }

    #[test]
    fn entropy_power_branch_selection() {
        let two = copies(bern(0.5), 2);
        let window = bound_entropy_power(&two, RenyiOrder::Other(2.0), true).unwrap();
        assert_eq!(window.c, 4.0);
        assert_eq!(window.branch, Branch::AlphaWindow);
        assert!((window.bound - 3.0).abs() < 1e-15);

        let sym = bound_entropy_power(&two, RenyiOrder::Infinity, true).unwrap();
        assert_eq!(sym.c, 2.0);
        assert!((sym.bound - 2.0).abs() < 1e-15);

        let plain = bound_entropy_power(&copies(bern(0.2), 2), RenyiOrder::Zero, false).unwrap();
        assert_eq!(plain.c, 1.0);
        assert!((plain.bound - 1.32).abs() < 1e-12);

        // Just outside the window the constant drops.
        let above = bound_entropy_power(&two, RenyiOrder::Other(2.0 + 1e-9), true).unwrap();
        assert_eq!(above.c, 2.0);
        let at_one = bound_entropy_power(&two, RenyiOrder::Shannon, true).unwrap();
        assert_eq!(at_one.c, 2.0);
    }

    #[test]
    fn ap_length_one_is_concentration_bit_for_bit() {
        let dists = vec![bern(0.2), bern(0.5), Family::Binomial { n: 3, p: 0.5 }.build().unwrap()];
        let ap = bound_ap(&dists, 1, false).unwrap();
        let conc = bound_concentration(&dists, false).unwrap();
        assert_eq!(ap.bound.to_bits(), conc.bound.to_bits());
        assert_eq!(ap.c, conc.c);
        let sym_set = copies(bern(0.5), 3);
        let ap = bound_ap(&sym_set, 1, true).unwrap();
        let conc = bound_concentration(&sym_set, true).unwrap();
        assert_eq!(ap.bound.to_bits(), conc.bound.to_bits());
    }

    #[test]
    fn ap_values_and_clamp() {
        let sixteen = copies(bern(0.5), 16);
        let r = bound_ap(&sixteen, 2, true).unwrap();
        assert!((r.bound - 2.0 / 9.5f64.sqrt()).abs() < 1e-14);
        assert!((r.bound - 0.64889).abs() < 1e-5);
        assert!(r.informative);

        let two = copies(bern(0.5), 2);
        let clamped = bound_ap(&two, 2, true).unwrap();
        assert_eq!(clamped.bound, 1.0);
        assert!(!clamped.informative);
        assert!((clamped.raw_bound - 2.0 / 2.5f64.sqrt()).abs() < 1e-14);
        assert!(clamped.raw_bound > 1.0);

        assert!(matches!(
            bound_ap(&two, 0, true),
            Err(BoundsError::LengthTooShort { got: 0, min: 1 })
        ));
    }

    #[test]
    fn two_point_values() {
        let r = bound_two_point(&[(0, 3, 0.5)]).unwrap();
        assert!((r.bound - 1.0 / 1.5f64.sqrt()).abs() < 1e-15);
        assert!((r.inputs.sum_variance - 2.25).abs() < 1e-15);

        // n two-point components at the ±1 support with weight p.
        for (n, p) in [(3usize, 0.3f64), (4, 0.5)] {
            let specs: Vec<(i64, i64, f64)> = (0..n).map(|_| (-1, 1, p)).collect();
            let r = bound_two_point(&specs).unwrap();
            let expect = 1.0 / (1.0 + 2.0 * n as f64 * p * (1.0 - p)).sqrt();
            assert!((r.bound - expect).abs() < 1e-14);
        }

        assert!(matches!(
            bound_two_point(&[(3, 3, 0.5)]),
            Err(BoundsError::BadTwoPointSupport(3, 3))
        ));
        assert!(matches!(
            bound_two_point(&[(0, 1, 1.0)]),
            Err(BoundsError::ThetaOutOfRange(_))
        ));
    }

    #[test]
    fn fourier_a_values_and_residuals() {
        let a2 = fourier_a(2).unwrap();
        assert!((a2 - 0.3452).abs() < 2e-4);
        assert!(2.0 * a2 <= 1.0);
        assert!(4.0 * std::f64::consts::PI * a2 * a2 >= 1.0);
        let mut prev = f64::INFINITY;
        for l in 2..=10 {
            assert!(fourier_a_residual(l).unwrap() <= 1e-10);
            let a = fourier_a(l).unwrap();
            assert!(a < prev);
            prev = a;
        }
        assert!(matches!(
            fourier_a(1),
            Err(BoundsError::LengthTooShort { got: 1, min: 2 })
        ));
    }

    #[test]
    fn bernoulli_fourier_bound_applicable_case() {
        let inputs = FourierBoundInputs::new(vec![0.25; 16], 2).unwrap();
        let r = bound_bernoulli_ap(&inputs).unwrap();
        assert!(r.applicable);
        let p = r.inputs.extras["holder_p"];
        assert!((p - 22.4).abs() < 0.1);
        assert!((r.bound - 0.642).abs() < 1e-3);
        let ap_c2 = r.inputs.extras["ap_bound_c2"];
        assert!((ap_c2 - 0.64889).abs() < 1e-5);
        assert!(r.bound < ap_c2, "Fourier bound must beat the c=2 bound");
    }

    #[test]
    fn bernoulli_fourier_bound_inapplicable_case() {
        let inputs = FourierBoundInputs::new(vec![0.01], 3).unwrap();
        let r = bound_bernoulli_ap(&inputs).unwrap();
        assert!(!r.applicable);
        assert!(r.inputs.extras["holder_p"] < 2.0);
    }

    #[test]
    fn fourier_inputs_validate() {
        assert!(matches!(
            FourierBoundInputs::new(vec![0.3], 2),
            Err(BoundsError::VarianceOutOfRange(_))
        ));
        assert!(matches!(
            FourierBoundInputs::new(vec![0.25], 1),
            Err(BoundsError::LengthTooShort { .. })
        ));
        let from_p = FourierBoundInputs::from_bernoulli(&[0.5, 0.2], 2).unwrap();
        assert!((from_p.variances()[0] - 0.25).abs() < 1e-15);
        assert!((from_p.variances()[1] - 0.16).abs() < 1e-15);
    }

    #[test]
    fn epi_uniform_values() {
        let u2 = Family::UniformInterval { a: 0, b: 1 }.build().unwrap();
        let r = epi_uniform_rhs(&[u2.clone(), u2.clone()], RenyiOrder::Shannon).unwrap();
        assert!((r.bound - 7.0).abs() < 1e-9);

        let single = epi_uniform_rhs(std::slice::from_ref(&u2), RenyiOrder::Zero).unwrap();
        assert!((single.bound - 4.0).abs() < 1e-9);

        let u3 = Family::UniformSet { support: vec![2, 3, 4] }.build().unwrap();
        let r3 = epi_uniform_rhs(&[u3.clone(), u3.clone(), u3], RenyiOrder::Other(2.0)).unwrap();
        assert!((r3.bound - 25.0).abs() < 1e-9);

        assert!(matches!(
            epi_uniform_rhs(std::slice::from_ref(&u2), RenyiOrder::Other(2.5)),
            Err(BoundsError::OrderAboveTwo(_))
        ));
        assert!(matches!(
            epi_uniform_rhs(&[bern(0.3)], RenyiOrder::Shannon),
            Err(BoundsError::NotUniform(0))
        ));
    }

    #[test]
    fn upper_bounds_on_log_concave() {
        let b = bern(0.5);
        let n1 = entropy_power(&b, RenyiOrder::Shannon);
        assert!((n1 - 4.0).abs() < 1e-9);
        assert!(n1 <= shannon_power_upper(&b).unwrap());

        let n2 = entropy_power(&b, RenyiOrder::Other(2.0));
        assert!((n2 - 4.0).abs() < 1e-9);
        let upper2 = renyi_power_upper(&b, RenyiOrder::Other(2.0)).unwrap();
        assert!((upper2 - 6.0).abs() < 1e-12);
        assert!(n2 <= upper2);

        let pm = LatticeDistribution::point_mass(0);
        assert!((renyi_power_upper(&pm, RenyiOrder::Other(2.0)).unwrap() - 1.0).abs() < 1e-15);

        assert!(matches!(
            renyi_power_upper(&b, RenyiOrder::Shannon),
            Err(BoundsError::OrderNotAboveOne(_))
        ));
        let rad = Family::Rademacher { p: 0.5 }.build().unwrap();
        assert!(matches!(
            renyi_power_upper(&rad, RenyiOrder::Other(2.0)),
            Err(BoundsError::NotLogConcave(0))
        ));
        assert!((renyi_power_upper(&b, RenyiOrder::Infinity).unwrap()
            - (1.0 + 12.0 * 0.25))
            .abs()
            < 1e-12);
    }

    #[test]
    fn sharpness_floor_values() {
        let two = copies(bern(0.5), 2);
        let floor = sharpness_lower(&two).unwrap();
        assert!((floor - 1.0 / 7f64.sqrt()).abs() < 1e-14);
        // Achieved by the actual sum: M(X1 + X2) = 0.5.
        let sum = two[0].convolve(&two[1]).unwrap();
        assert!(floor <= m_functional(&sum));

        // The floor needs no log-concavity: the ±1 case is in range.
        let rad = Family::Rademacher { p: 0.5 }.build().unwrap();
        let four = copies(rad, 4);
        let f4 = sharpness_lower(&four).unwrap();
        assert!((f4 - 1.0 / 7.0).abs() < 1e-14);

        let u = Family::UniformInterval { a: 0, b: 4 }.build().unwrap();
        let fu = sharpness_lower(std::slice::from_ref(&u)).unwrap();
        assert!((fu - 0.2).abs() < 1e-12);
        assert!((fu - m_functional(&u)).abs() < 1e-12);
    }

    #[test]
    fn sandwich_on_log_concave_test_set() {
        let dists = vec![
            bern(0.5),
            bern(0.2),
            Family::Binomial { n: 3, p: 0.5 }.build().unwrap(),
            Family::Binomial { n: 5, p: 0.7 }.build().unwrap(),
            Family::UniformInterval { a: -2, b: 2 }.build().unwrap(),
            Family::TwoPoint { x1: 0, x2: 1, theta: 0.4 }.build().unwrap(),
        ];
        for d in &dists {
            let m = m_functional(d);
            let v = d.variance();
            assert!(m >= 1.0 / (1.0 + 12.0 * v).sqrt() - 1e-12);
            assert!(m <= 1.0 / (1.0 + v).sqrt() + 1e-12);
            if d.symmetry_center().is_some() {
                assert!(m <= 1.0 / (1.0 + 2.0 * v).sqrt() + 1e-12);
            }
        }
    }
}
