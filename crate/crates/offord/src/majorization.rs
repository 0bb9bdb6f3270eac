//! Majorization order on probability profiles, doubly stochastic certificates
//! for the two constructive cases (point mass, deterministic pushforward), and
//! the sign reduction that clears rational coefficients to ±1.

use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::dist::{DistError, LatticeDistribution};
use crate::numeric::stable_sum;
use crate::rational::{clear_denominators, Rational, RationalError};

/// Absolute tolerance for prefix-sum dominance and certificate checks.
pub const MAJORIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum MajorizationError {
    #[error("profile entry {value} at position {index} is negative or not finite")]
    BadProfileEntry { index: usize, value: f64 },
    #[error("profile is empty after dropping zero entries")]
    EmptyProfile,
    #[error("profile mass {0} differs from 1 by more than 1e-12")]
    ProfileMassOff(f64),
    #[error("total must be positive, got {0}")]
    NonPositiveTotal(f64),
    #[error("entries sum to {sum}, expected total {total}")]
    TotalMismatch { sum: f64, total: f64 },
    #[error("map is undefined on atom {0}")]
    MapUndefined(i64),
    #[error("certificate matrix is not square")]
    NotSquare,
    #[error("row {0} of the certificate is not a permutation slot")]
    BadPermutation(usize),
    #[error("matrix entry at ({row},{col}) is negative")]
    NegativeMatrixEntry { row: usize, col: usize },
    #[error("row {row} sums to {sum}, not 1")]
    RowSumOff { row: usize, sum: f64 },
    #[error("column {col} sums to {sum}, not 1")]
    ColumnSumOff { col: usize, sum: f64 },
    #[error("certified product mismatch at row {row}: got {got}, want {want}")]
    ProductMismatch { row: usize, got: f64, want: f64 },
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Coefficient(#[from] RationalError),
}

/// Positive probabilities sorted nonincreasing, total mass 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescendingProfile {
    probs: Vec<f64>,
}

impl DescendingProfile {
    /// Drops zero entries, sorts descending, and validates mass.
    pub fn new(values: Vec<f64>) -> Result<Self, MajorizationError> {
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(MajorizationError::BadProfileEntry { index, value });
            }
        }
        let mut probs: Vec<f64> = values.into_iter().filter(|&p| p > 0.0).collect();
        if probs.is_empty() {
            return Err(MajorizationError::EmptyProfile);
        }
        probs.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        let mass = stable_sum(probs.iter().copied());
        if (mass - 1.0).abs() > MAJORIZATION_TOL {
            return Err(MajorizationError::ProfileMassOff(mass));
        }
        Ok(Self { probs })
    }

    pub fn from_distribution(d: &LatticeDistribution) -> Self {
        let mut probs: Vec<f64> = d.atoms().map(|(_, p)| p).collect();
        probs.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Smallest prefix-sum gap `top_k − bottom_k` over all prefixes (shorter
/// profile padded with zeros). Nonnegative up to tolerance iff bottom ≺ top.
pub fn dominance_gap(top: &DescendingProfile, bottom: &DescendingProfile) -> f64 {
    let n = top.len().max(bottom.len());
    let mut top_sum = 0.0;
    let mut bottom_sum = 0.0;
    let mut gap = f64::INFINITY;
    for k in 0..n {
        top_sum += top.probs.get(k).copied().unwrap_or(0.0);
        bottom_sum += bottom.probs.get(k).copied().unwrap_or(0.0);
        gap = gap.min(top_sum - bottom_sum);
    }
    gap
}

/// Whether bottom ≺ top: every prefix sum of `top` dominates that of `bottom`
/// within tolerance.
pub fn majorizes(top: &DescendingProfile, bottom: &DescendingProfile) -> bool {
    dominance_gap(top, bottom) >= -MAJORIZATION_TOL
}

/// An explicit doubly stochastic matrix A with A·source = target, where
/// `target` lists the certified probabilities in the order given by
/// `row_permutation` (entry k is the index of the atom, in increasing support
/// order, that row k certifies).
#[derive(Clone, Debug, Serialize)]
pub struct StochasticMatrixCertificate {
    matrix: Vec<Vec<f64>>,
    row_permutation: Vec<usize>,
    source: Vec<f64>,
    target: Vec<f64>,
}

impl StochasticMatrixCertificate {
    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.matrix
    }

    pub fn row_permutation(&self) -> &[usize] {
        &self.row_permutation
    }

    pub fn source(&self) -> &[f64] {
        &self.source
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    /// Re-derives every invariant: square shape, valid permutation,
    /// nonnegative entries, unit row and column sums, and A·source = target.
    pub fn verify(&self) -> Result<(), MajorizationError> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|row| row.len() != n)
            || self.source.len() != n
            || self.target.len() != n
            || self.row_permutation.len() != n
        {
            return Err(MajorizationError::NotSquare);
        }
        let mut seen = vec![false; n];
        for (row, &idx) in self.row_permutation.iter().enumerate() {
            if idx >= n || seen[idx] {
                return Err(MajorizationError::BadPermutation(row));
            }
            seen[idx] = true;
        }
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v.is_nan() || v < 0.0 {
                    return Err(MajorizationError::NegativeMatrixEntry { row: i, col: j });
                }
            }
            let sum = stable_sum(row.iter().copied());
            if (sum - 1.0).abs() > MAJORIZATION_TOL {
                return Err(MajorizationError::RowSumOff { row: i, sum });
            }
        }
        for col in 0..n {
            let sum = stable_sum(self.matrix.iter().map(|row| row[col]));
            if (sum - 1.0).abs() > MAJORIZATION_TOL {
                return Err(MajorizationError::ColumnSumOff { col, sum });
            }
        }
        for i in 0..n {
            let got = stable_sum((0..n).map(|j| self.matrix[i][j] * self.source[j]));
            let want = self.target[i];
            if (got - want).abs() > MAJORIZATION_TOL {
                return Err(MajorizationError::ProductMismatch { row: i, got, want });
            }
        }
        Ok(())
    }
}

/// Cyclic-shift doubly stochastic block for one point mass: row i is the
/// vector λ rotated left by i, λ_i = p_i/total, so A·(total, 0, …, 0)ᵀ = p.
fn cyclic_block(p: &[f64], total: f64) -> Vec<Vec<f64>> {
    let n = p.len();
    let lambda: Vec<f64> = p.iter().map(|&v| v / total).collect();
    (0..n)
        .map(|i| (0..n).map(|j| lambda[(i + j) % n]).collect())
        .collect()
}

/// Certificate that the point mass of weight `total` majorizes the vector `p`
/// (entries in any order; descending is not required by the construction).
pub fn certificate_point_mass(
    p: &[f64],
    total: f64,
) -> Result<StochasticMatrixCertificate, MajorizationError> {
    if total.is_nan() || total <= 0.0 {
        return Err(MajorizationError::NonPositiveTotal(total));
    }
    for (index, &value) in p.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(MajorizationError::BadProfileEntry { index, value });
        }
    }
    if p.is_empty() {
        return Err(MajorizationError::EmptyProfile);
    }
    let sum = stable_sum(p.iter().copied());
    if (sum - total).abs() > MAJORIZATION_TOL {
        return Err(MajorizationError::TotalMismatch { sum, total });
    }
    let n = p.len();
    let mut source = vec![0.0; n];
    source[0] = total;
    Ok(StochasticMatrixCertificate {
        matrix: cyclic_block(p, total),
        row_permutation: (0..n).collect(),
        source,
        target: p.to_vec(),
    })
}

/// Law of f(Y) for a map defined on the whole support of Y.
pub fn pushforward_distribution(
    y: &LatticeDistribution,
    f: &BTreeMap<i64, i64>,
) -> Result<LatticeDistribution, MajorizationError> {
    let mut masses: BTreeMap<i64, f64> = BTreeMap::new();
    for (x, p) in y.atoms() {
        let label = *f.get(&x).ok_or(MajorizationError::MapUndefined(x))?;
        *masses.entry(label).or_insert(0.0) += p;
    }
    let lo = *masses.keys().next().unwrap();
    let hi = *masses.keys().next_back().unwrap();
    let span = hi
        .checked_sub(lo)
        .and_then(|s| s.checked_add(1))
        .ok_or(DistError::Overflow)? as u64;
    if span > crate::dist::DEFAULT_WINDOW_CAP as u64 {
        return Err(DistError::WindowCapExceeded {
            needed: span,
            cap: crate::dist::DEFAULT_WINDOW_CAP,
        }
        .into());
    }
    let mut pmf = vec![0.0; span as usize];
    for (&label, &mass) in &masses {
        pmf[(label - lo) as usize] = mass;
    }
    LatticeDistribution::new(lo, pmf).map_err(MajorizationError::Dist)
}

/// Block-diagonal certificate that law(Y) ≺ law(f(Y)): atoms of Y are grouped
/// into fibers of f (fibers ordered by increasing label, atoms within a fiber
/// by increasing support point) and each fiber gets one cyclic-shift block.
pub fn certificate_pushforward(
    y: &LatticeDistribution,
    f: &BTreeMap<i64, i64>,
) -> Result<StochasticMatrixCertificate, MajorizationError> {
    let atoms: Vec<(i64, f64)> = y.atoms().collect();
    let mut fibers: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (idx, &(x, _)) in atoms.iter().enumerate() {
        let label = *f.get(&x).ok_or(MajorizationError::MapUndefined(x))?;
        fibers.entry(label).or_default().push(idx);
    }
    let n = atoms.len();
    let mut matrix = vec![vec![0.0; n]; n];
    let mut row_permutation = Vec::with_capacity(n);
    let mut source = vec![0.0; n];
    let mut target = vec![0.0; n];
    let mut start = 0usize;
    for indices in fibers.values() {
        let probs: Vec<f64> = indices.iter().map(|&i| atoms[i].1).collect();
        let fiber_total = stable_sum(probs.iter().copied());
        let block = cyclic_block(&probs, fiber_total);
        let k = indices.len();
        for r in 0..k {
            for c in 0..k {
                matrix[start + r][start + c] = block[r][c];
            }
            target[start + r] = probs[r];
            row_permutation.push(indices[r]);
        }
        source[start] = fiber_total;
        start += k;
    }
    Ok(StochasticMatrixCertificate {
        matrix,
        row_permutation,
        source,
        target,
    })
}

/// Coefficient signs after clearing denominators.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignReduction {
    pub signs: Vec<i64>,
    pub integer_coefficients: Vec<i64>,
    pub scale: i64,
}

/// scale = lcm of denominators, integer_coefficients = scale·a (exact),
/// signs their entrywise sign. The sign vector v satisfies a·X ≺ v·X for
/// log-concave components; the caller exhibits that by profile dominance.
pub fn sign_reduction(coefficients: &[Rational]) -> Result<SignReduction, MajorizationError> {
    let (integer_coefficients, scale) = clear_denominators(coefficients)?;
    let signs = integer_coefficients.iter().map(|t| t.signum()).collect();
    Ok(SignReduction {
        signs,
        integer_coefficients,
        scale,
    })
}
