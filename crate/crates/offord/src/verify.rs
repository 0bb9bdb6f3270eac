//! Brute-force oracles and the certification sweep.
//!
//! Everything here recomputes quantities the bounds module predicts, using
//! only exact convolution and exhaustive enumeration. A failing case is
//! evidence of an implementation bug, never of a false theorem.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

use crate::bounds::{
    self, all_log_concave, all_symmetric, bound_ap, bound_bernoulli_ap, sharpness_lower,
    FourierBoundInputs, TheoremId,
};
use crate::dist::{weighted_sum_integers, DistError, Family, LatticeDistribution};
use crate::entropy::{entropy_power, RenyiOrder};
use crate::majorization::{
    certificate_pushforward, dominance_gap, pushforward_distribution, DescendingProfile,
    MajorizationError,
};
use crate::rational::{format_rational, gcd_all, parse_rational, Rational, RationalError};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("invalid sweep config: {0}")]
    BadConfig(String),
    #[error("progression length must be at least 1")]
    ZeroLength,
    #[error("progression step must be nonzero")]
    ZeroStep,
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Bounds(#[from] bounds::BoundsError),
    #[error(transparent)]
    Majorization(#[from] MajorizationError),
    #[error(transparent)]
    Coefficient(#[from] RationalError),
}

fn default_max_n() -> usize {
    4
}
fn default_box() -> i64 {
    3
}
fn default_alpha_grid() -> Vec<RenyiOrder> {
    [0.0, 0.5, 1.0, 1.5, 2.0, 3.0, f64::INFINITY]
        .iter()
        .map(|&a| RenyiOrder::new(a).unwrap())
        .collect()
}
fn default_ap_lengths() -> Vec<u32> {
    vec![1, 2, 3, 4]
}
fn default_ap_steps() -> Vec<String> {
    vec!["1".into(), "2".into(), "3/2".into()]
}
fn default_pushforward_samples() -> usize {
    2
}
fn default_tolerance() -> f64 {
    1e-9
}
fn default_agreement_tolerance() -> f64 {
    1e-12
}
fn default_retention() -> Option<usize> {
    Some(64)
}
fn default_window_cap() -> usize {
    crate::dist::DEFAULT_WINDOW_CAP
}

/// The component families every sweep defaults to: the asymmetric and
/// symmetric Bernoullis, a short binomial, and the uniform intervals of
/// length 1 through 5.
pub fn default_families() -> Vec<Family> {
    let mut fams = vec![
        Family::Bernoulli { p: 0.2 },
        Family::Bernoulli { p: 0.5 },
        Family::Bernoulli { p: 0.8 },
        Family::Binomial { n: 3, p: 0.5 },
    ];
    for len in 1..=5 {
        fams.push(Family::UniformInterval { a: 0, b: len - 1 });
    }
    fams
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SweepConfig {
    /// Component pool; multisets of size 1..=max_n are drawn from it.
    pub families: Vec<Family>,
    pub max_n: usize,
    /// Coefficients range over nonzero integers with |a_i| ≤ coefficient_box.
    pub coefficient_box: i64,
    pub alpha_grid: Vec<RenyiOrder>,
    pub ap_lengths: Vec<u32>,
    /// Rational steps as strings ("1", "2", "3/2").
    pub ap_steps: Vec<String>,
    /// Random label maps sampled per multiset for the pushforward property.
    pub pushforward_samples: usize,
    pub seed: u64,
    /// A theorem check fails when slack < -tolerance.
    pub tolerance: f64,
    /// The two progression oracles must agree to this tolerance.
    pub agreement_tolerance: f64,
    /// Per theorem: all failures are kept, but at most this many passing and
    /// this many gated records are retained (tightest slack first). None
    /// keeps everything.
    pub max_retained_per_theorem: Option<usize>,
    /// Worker threads; 0 picks the runtime default.
    pub jobs: usize,
    pub window_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            families: default_families(),
            max_n: default_max_n(),
            coefficient_box: default_box(),
            alpha_grid: default_alpha_grid(),
            ap_lengths: default_ap_lengths(),
            ap_steps: default_ap_steps(),
            pushforward_samples: default_pushforward_samples(),
            seed: 0,
            tolerance: default_tolerance(),
            agreement_tolerance: default_agreement_tolerance(),
            max_retained_per_theorem: default_retention(),
            jobs: 0,
            window_cap: default_window_cap(),
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<(Vec<LatticeDistribution>, Vec<Rational>), VerifyError> {
        if self.families.is_empty() {
            return Err(VerifyError::BadConfig("empty family pool".into()));
        }
        if self.max_n == 0 {
            return Err(VerifyError::BadConfig("max_n must be at least 1".into()));
        }
        if self.coefficient_box < 1 {
            return Err(VerifyError::BadConfig(
                "coefficient box must be at least 1".into(),
            ));
        }
        let positive = |t: f64| !t.is_nan() && t > 0.0;
        if !positive(self.tolerance) || !positive(self.agreement_tolerance) {
            return Err(VerifyError::BadConfig("tolerances must be positive".into()));
        }
        if self.ap_lengths.contains(&0) {
            return Err(VerifyError::ZeroLength);
        }
        let pool = self
            .families
            .iter()
            .map(Family::build)
            .collect::<Result<Vec<_>, _>>()?;
        let mut steps = Vec::with_capacity(self.ap_steps.len());
        for s in &self.ap_steps {
            let m = parse_rational(s)?;
            if m.numer() == &0 {
                return Err(VerifyError::ZeroStep);
            }
            steps.push(m);
        }
        Ok((pool, steps))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Pass,
    Fail,
    PreconditionFailed,
}

/// One certified inequality instance. `bound`, `achieved`, and `slack` is
/// meaningless (zeroed) when the status is `precondition_failed`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseRecord {
    pub id: String,
    pub theorem: TheoremId,
    pub status: CaseStatus,
    pub n: usize,
    pub families: Vec<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coefficients: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<RenyiOrder>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub length: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub step: Option<String>,
    pub bound: f64,
    pub achieved: f64,
    pub slack: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_anchor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_coefficients: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_map: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremTally {
    pub theorem: TheoremId,
    pub pass: u64,
    pub fail: u64,
    pub precondition_failed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_slack_id: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub config: SweepConfig,
    pub generated_cases: u64,
    pub retained_cases: u64,
    pub failures: u64,
    pub tallies: Vec<TheoremTally>,
    pub cases: Vec<CaseRecord>,
    pub wall_clock_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per retained case; the same stable ids as the JSON form.
    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "id",
            "theorem",
            "status",
            "n",
            "families",
            "coefficients",
            "alpha",
            "l",
            "m",
            "bound",
            "achieved",
            "slack",
            "witness_anchor",
            "witness_coefficients",
            "witness_map",
        ])
        .expect("csv header");
        for c in &self.cases {
            let families = c.families.iter().map(|f| f.to_string()).join("+");
            let coeffs = c
                .coefficients
                .as_ref()
                .map(|v| v.iter().join(","))
                .unwrap_or_default();
            let status = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "fail",
                CaseStatus::PreconditionFailed => "precondition_failed",
            };
            w.write_record([
                c.id.as_str(),
                &c.theorem.to_string(),
                status,
                &c.n.to_string(),
                &families,
                &coeffs,
                &c.alpha.map(|a| a.to_string()).unwrap_or_default(),
                &c.length.map(|l| l.to_string()).unwrap_or_default(),
                c.step.as_deref().unwrap_or(""),
                &c.bound.to_string(),
                &c.achieved.to_string(),
                &c.slack.to_string(),
                c.witness_anchor.as_deref().unwrap_or(""),
                &c.witness_coefficients
                    .as_ref()
                    .map(|v| v.iter().join(","))
                    .unwrap_or_default(),
                c.witness_map.as_deref().unwrap_or(""),
            ])
            .expect("csv row");
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
    }
}

/// Supremum over anchors x of P(d ∈ {x + m·j : j = 1..l}) with the achieving
/// anchor. Exhaustive: after refining the lattice by the denominator of m,
/// every anchor that hits at least one atom is an integer in a finite range.
pub fn ap_sup_probability(
    d: &LatticeDistribution,
    l: u32,
    m: Rational,
) -> Result<(f64, Rational), VerifyError> {
    if l == 0 {
        return Err(VerifyError::ZeroLength);
    }
    if m.numer() == &0 {
        return Err(VerifyError::ZeroStep);
    }
    let (p, q) = (*m.numer(), *m.denom());
    let refined;
    let dq = if q == 1 {
        d
    } else {
        refined = d.scale_support(q)?;
        &refined
    };
    let (value, anchor) = integer_ap_sup(dq, l, p);
    Ok((value, Rational::new(anchor, q)))
}

/// Integer-step inner loop: anchors x with x + p·j in the support window for
/// some 1 ≤ j ≤ l. First maximizer wins, so the witness is deterministic.
fn integer_ap_sup(d: &LatticeDistribution, l: u32, p: i64) -> (f64, i64) {
    let lo = d.support_min();
    let hi = d.support_max();
    let pl = p * l as i64;
    let (start, end) = if p > 0 {
        (lo - pl, hi - p)
    } else {
        (lo - p, hi - pl)
    };
    let mut best = (f64::NEG_INFINITY, start);
    for x in start..=end {
        let mut sum = 0.0;
        for j in 1..=l as i64 {
            sum += d.prob_at(x + p * j);
        }
        if sum > best.0 {
            best = (sum, x);
        }
    }
    best
}

/// P(d ∈ {x + m·j : j = 1..l}) at one anchor, in exact rational arithmetic on
/// the progression points. Used to replay witnesses.
pub fn ap_probability_at(d: &LatticeDistribution, l: u32, m: Rational, anchor: Rational) -> f64 {
    let mut sum = 0.0;
    for j in 1..=l as i64 {
        let point = anchor + m * Rational::from_integer(j);
        if point.is_integer() {
            sum += d.prob_at(point.to_integer());
        }
    }
    sum
}

/// The same supremum through the dual route: l·M(d' + law(−p·U_l)) on the
/// q-refined lattice, where U_l is uniform on {1..l}. Independent of the
/// enumeration path.
pub fn ap_sup_via_convolution(
    d: &LatticeDistribution,
    l: u32,
    m: Rational,
) -> Result<f64, VerifyError> {
    if l == 0 {
        return Err(VerifyError::ZeroLength);
    }
    if m.numer() == &0 {
        return Err(VerifyError::ZeroStep);
    }
    let (p, q) = (*m.numer(), *m.denom());
    let u = Family::UniformInterval { a: 1, b: l as i64 }
        .build()
        .expect("uniform block")
        .scale_support(-p)?;
    let refined;
    let dq = if q == 1 {
        d
    } else {
        refined = d.scale_support(q)?;
        &refined
    };
    Ok(l as f64 * dq.convolve(&u)?.max_prob())
}

/// Canonical nonzero integer coefficient vectors in the box, enumerated in a
/// fixed order. Global sign flips, global integer scalings, and permutations
/// within runs of identical components are all value-preserving, so exactly
/// the canonical representatives are produced: first coordinate positive,
/// gcd 1, and nondecreasing order-index within each run of equal components.
fn canonical_coefficients(groups: &[usize], bound: i64) -> Vec<Vec<i64>> {
    // Order index: 1, -1, 2, -2, ... so "nondecreasing within a group" pins
    // one representative per within-group multiset.
    let values: Vec<i64> = (1..=bound).flat_map(|k| [k, -k]).collect();
    let n: usize = groups.iter().sum();
    let mut group_of = Vec::with_capacity(n);
    for (g, &len) in groups.iter().enumerate() {
        group_of.extend(std::iter::repeat_n(g, len));
    }
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    let mut indexes = vec![0usize; n];
    fn rec(
        pos: usize,
        values: &[i64],
        group_of: &[usize],
        current: &mut Vec<i64>,
        indexes: &mut Vec<usize>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == current.len() {
            if gcd_all(current) == 1 {
                out.push(current.clone());
            }
            return;
        }
        let start = if pos > 0 && group_of[pos] == group_of[pos - 1] {
            indexes[pos - 1]
        } else {
            0
        };
        for idx in start..values.len() {
            if pos == 0 && values[idx] < 0 {
                continue;
            }
            indexes[pos] = idx;
            current[pos] = values[idx];
            rec(pos + 1, values, group_of, current, indexes, out);
        }
    }
    rec(0, &values, &group_of, &mut current, &mut indexes, &mut out);
    out
}

/// Runs of equal components (window equality), used to skip permutations that
/// provably do not change the law of a·X.
fn component_groups(dists: &[LatticeDistribution]) -> Vec<usize> {
    let mut groups = Vec::new();
    for (i, d) in dists.iter().enumerate() {
        if i > 0 && dists[i - 1] == *d {
            *groups.last_mut().unwrap() += 1;
        } else {
            groups.push(1);
        }
    }
    groups
}

/// Exhaustive maximization of M(a·X) over the canonical coefficient vectors.
/// Returns the worst value, its witness, and the number of vectors examined.
pub fn worst_case_search(
    dists: &[LatticeDistribution],
    coefficient_box: i64,
    window_cap: usize,
) -> Result<(f64, Vec<i64>, u64), VerifyError> {
    if dists.is_empty() {
        return Err(VerifyError::BadConfig("no components".into()));
    }
    if coefficient_box < 1 {
        return Err(VerifyError::BadConfig("box must be at least 1".into()));
    }
    let vectors = canonical_coefficients(&component_groups(dists), coefficient_box);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_witness = Vec::new();
    for a in &vectors {
        let y = weighted_sum_integers(dists, a, window_cap)?;
        let m = y.max_prob();
        if m > best_value {
            best_value = m;
            best_witness = a.clone();
        }
    }
    Ok((best_value, best_witness, vectors.len() as u64))
}

/// Per-theorem pass threshold: dominance chains and oracle agreement use the
/// strict 1e-12 tolerances; theorem bounds absorb -1e-9 of float noise.
fn pass_threshold(theorem: TheoremId, cfg: &SweepConfig) -> f64 {
    match theorem {
        TheoremId::SignDominance | TheoremId::PushforwardMajorization => 1e-12,
        TheoremId::ApOracleAgreement => 0.0,
        _ => cfg.tolerance,
    }
}

struct RecordSketch {
    theorem: TheoremId,
    status: CaseStatus,
    bound: f64,
    achieved: f64,
    slack: f64,
    id_suffix: String,
    coefficients: Option<Vec<i64>>,
    alpha: Option<RenyiOrder>,
    length: Option<u32>,
    step: Option<String>,
    witness_anchor: Option<String>,
    witness_coefficients: Option<Vec<i64>>,
    witness_map: Option<String>,
    /// Overrides the multiset families (component-level checks).
    families_override: Option<Vec<Family>>,
}

impl RecordSketch {
    fn new(theorem: TheoremId, bound: f64, achieved: f64, slack: f64, status: CaseStatus) -> Self {
        Self {
            theorem,
            status,
            bound,
            achieved,
            slack,
            id_suffix: String::new(),
            coefficients: None,
            alpha: None,
            length: None,
            step: None,
            witness_anchor: None,
            witness_coefficients: None,
            witness_map: None,
            families_override: None,
        }
    }

    fn gated(theorem: TheoremId) -> Self {
        Self::new(theorem, 0.0, 0.0, 0.0, CaseStatus::PreconditionFailed)
    }
}

#[derive(Default)]
struct UnitTallies {
    counts: BTreeMap<TheoremId, (u64, u64, u64)>,
    min_slack: BTreeMap<TheoremId, (f64, String)>,
}

struct MultisetOutput {
    tallies: UnitTallies,
    records: Vec<CaseRecord>,
    generated: u64,
}

struct SweepContext<'a> {
    cfg: &'a SweepConfig,
    /// Per (l, m): the reduced step (p, q) and law(−p·U_l) on the q-lattice.
    ap_blocks: Vec<(u32, Rational, i64, i64, LatticeDistribution)>,
}

/// Evaluates every check for one multiset of components and its whole
/// coefficient box; emits complete tallies but only exemplar records
/// (all failures, plus the tightest pass and one gated case per theorem).
fn process_multiset(
    families: &[Family],
    dists: &[LatticeDistribution],
    multiset_index: usize,
    ctx: &SweepContext<'_>,
) -> Result<MultisetOutput, VerifyError> {
    let cfg = ctx.cfg;
    let n = dists.len();
    let family_tag = families.iter().map(|f| f.to_string()).join("+");
    let all_lc = all_log_concave(dists);
    let all_sym = all_symmetric(dists);

    // Static per-multiset bounds.
    let conc_bound = if all_lc {
        Some(bound_ap(dists, 1, all_sym)?)
    } else {
        None
    };
    let ap_bounds: BTreeMap<u32, f64> = if all_lc {
        cfg.ap_lengths
            .iter()
            .map(|&l| Ok((l, bound_ap(dists, l, all_sym)?.bound)))
            .collect::<Result<_, VerifyError>>()?
    } else {
        BTreeMap::new()
    };
    let ep_bounds: Vec<(RenyiOrder, f64, f64)> = if all_lc {
        cfg.alpha_grid
            .iter()
            .map(|&o| {
                let r = bounds::bound_entropy_power(dists, o, all_sym)?;
                Ok((o, r.bound, r.c))
            })
            .collect::<Result<_, VerifyError>>()?
    } else {
        Vec::new()
    };
    let two_point_specs: Option<Vec<(i64, i64, f64)>> = dists
        .iter()
        .map(|d| {
            let atoms: Vec<(i64, f64)> = d.atoms().collect();
            (atoms.len() == 2).then(|| (atoms[0].0, atoms[1].0, atoms[1].1))
        })
        .collect();
    let two_point_bound = match &two_point_specs {
        Some(specs) => Some(bounds::bound_two_point(specs)?.bound),
        None => None,
    };
    let bernoulli_ps: Option<Vec<f64>> = families
        .iter()
        .map(|f| match f {
            Family::Bernoulli { p } => Some(*p),
            _ => None,
        })
        .collect();
    let fourier_by_len: BTreeMap<u32, crate::bounds::BoundReport> = match &bernoulli_ps {
        Some(ps) => cfg
            .ap_lengths
            .iter()
            .filter(|&&l| l >= 2)
            .map(|&l| {
                let inputs = FourierBoundInputs::from_bernoulli(ps, l)?;
                Ok((l, bound_bernoulli_ap(&inputs)?))
            })
            .collect::<Result<_, VerifyError>>()?,
        None => BTreeMap::new(),
    };
    let all_uniform = dists.iter().all(|d| {
        let lo = d.atoms().map(|(_, p)| p).fold(f64::INFINITY, f64::min);
        d.max_prob() - lo <= 1e-12 * d.max_prob()
    });
    let epi_bounds: Vec<(RenyiOrder, f64)> = if all_uniform {
        cfg.alpha_grid
            .iter()
            .filter(|o| o.at_most_two())
            .map(|&o| Ok((o, bounds::epi_uniform_rhs(dists, o)?.bound)))
            .collect::<Result<_, VerifyError>>()?
    } else {
        Vec::new()
    };
    let floor = sharpness_lower(dists)?;

    // Dilation cache: scaled[i] holds k·X_i for k = 1..=box and then
    // -1..=-box at offset box.
    let bx = cfg.coefficient_box;
    let mut scaled: Vec<Vec<LatticeDistribution>> = Vec::with_capacity(n);
    for d in dists {
        let mut per = Vec::with_capacity(2 * bx as usize);
        for k in 1..=bx {
            per.push(d.scale_support_with_cap(k, cfg.window_cap)?);
        }
        for k in 1..=bx {
            per.push(d.scale_support_with_cap(-k, cfg.window_cap)?);
        }
        scaled.push(per);
    }
    let dilation = |i: usize, k: i64| -> &LatticeDistribution {
        let idx = if k > 0 { k - 1 } else { bx - 1 - k };
        &scaled[i][idx as usize]
    };

    let mut sign_sums: BTreeMap<Vec<i64>, (LatticeDistribution, DescendingProfile)> =
        BTreeMap::new();

    let mut out = MultisetOutput {
        tallies: UnitTallies::default(),
        records: Vec::new(),
        generated: 0,
    };
    // Exemplar retention: all failures are materialized; for pass and gated
    // status only the tightest/first sketch per theorem survives.
    let mut best_pass: BTreeMap<TheoremId, (f64, RecordSketch)> = BTreeMap::new();
    let mut gated: BTreeMap<TheoremId, RecordSketch> = BTreeMap::new();
    let mut fails: Vec<RecordSketch> = Vec::new();

    let admit = |sketch: RecordSketch,
                     out: &mut MultisetOutput,
                     best_pass: &mut BTreeMap<TheoremId, (f64, RecordSketch)>,
                     gated: &mut BTreeMap<TheoremId, RecordSketch>,
                     fails: &mut Vec<RecordSketch>| {
        out.generated += 1;
        let entry = out.tallies.counts.entry(sketch.theorem).or_default();
        match sketch.status {
            CaseStatus::Pass => entry.0 += 1,
            CaseStatus::Fail => entry.1 += 1,
            CaseStatus::PreconditionFailed => entry.2 += 1,
        }
        match sketch.status {
            CaseStatus::PreconditionFailed => {
                gated.entry(sketch.theorem).or_insert(sketch);
            }
            CaseStatus::Fail => fails.push(sketch),
            CaseStatus::Pass => {
                let slack = sketch.slack;
                match best_pass.get(&sketch.theorem) {
                    Some((s, _)) if *s <= slack => {}
                    _ => {
                        best_pass.insert(sketch.theorem, (slack, sketch));
                    }
                }
            }
        }
    };

    let check = |theorem: TheoremId, bound: f64, achieved: f64, slack: f64| -> RecordSketch {
        let status = if slack >= -pass_threshold(theorem, cfg) {
            CaseStatus::Pass
        } else {
            CaseStatus::Fail
        };
        RecordSketch::new(theorem, bound, achieved, slack, status)
    };

    let vectors = canonical_coefficients(&component_groups(dists), bx);
    let mut worst = (f64::NEG_INFINITY, Vec::new());
    for a in &vectors {
        let mut y = dilation(0, a[0]).clone();
        for (i, &k) in a.iter().enumerate().skip(1) {
            y = y.convolve_with_cap(dilation(i, k), cfg.window_cap)?;
        }
        let m_atom = y.max_prob();
        let coeff_tag = a.iter().join(",");
        if m_atom > worst.0 {
            worst = (m_atom, a.clone());
        }

        // Largest-atom bound.
        let mut sk = match &conc_bound {
            Some(b) => {
                let slack = b.bound - m_atom;
                check(TheoremId::Concentration, b.bound, m_atom, slack)
            }
            None => RecordSketch::gated(TheoremId::Concentration),
        };
        sk.coefficients = Some(a.clone());
        sk.id_suffix = format!("a={coeff_tag}");
        admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);

        // Entropy-power lower bounds across the grid.
        if all_lc {
            for &(o, bound, _c) in &ep_bounds {
                let achieved = entropy_power(&y, o);
                let mut sk = check(TheoremId::EntropyPower, bound, achieved, achieved - bound);
                sk.coefficients = Some(a.clone());
                sk.alpha = Some(o);
                sk.id_suffix = format!("a={coeff_tag}|alpha={o}");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            }
        } else if !cfg.alpha_grid.is_empty() {
            let mut sk = RecordSketch::gated(TheoremId::EntropyPower);
            sk.coefficients = Some(a.clone());
            sk.id_suffix = format!("a={coeff_tag}");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
        }

        // Sign-vector profile dominance.
        {
            let profile_a = DescendingProfile::from_distribution(&y);
            if all_lc {
                let v: Vec<i64> = a.iter().map(|k| k.signum()).collect();
                if !sign_sums.contains_key(&v) {
                    let z = weighted_sum_integers(dists, &v, cfg.window_cap)?;
                    let p = DescendingProfile::from_distribution(&z);
                    sign_sums.insert(v.clone(), (z, p));
                }
                let (_, profile_v) = &sign_sums[&v];
                let gap = dominance_gap(profile_v, &profile_a);
                let mut sk = check(TheoremId::SignDominance, 0.0, gap, gap);
                sk.coefficients = Some(a.clone());
                sk.witness_coefficients = Some(v);
                sk.id_suffix = format!("a={coeff_tag}");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            } else {
                let mut sk = RecordSketch::gated(TheoremId::SignDominance);
                sk.coefficients = Some(a.clone());
                sk.id_suffix = format!("a={coeff_tag}");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            }
        }

        // Two-point unified bound (needs only two-atom components).
        if let Some(bound) = two_point_bound {
            let mut sk = check(TheoremId::TwoPoint, bound, m_atom, bound - m_atom);
            sk.coefficients = Some(a.clone());
            sk.id_suffix = format!("a={coeff_tag}");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
        }

        // Progression checks: dual oracles, the progression bound, and the
        // Fourier refinement for Bernoulli sums.
        for (l, m, p, q, u_neg) in &ctx.ap_blocks {
            let step_tag = format_rational(m);
            let refined;
            let yq = if *q == 1 {
                &y
            } else {
                refined = y.scale_support_with_cap(*q, cfg.window_cap)?;
                &refined
            };
            let (sup, anchor_scaled) = integer_ap_sup(yq, *l, *p);
            let anchor = Rational::new(anchor_scaled, *q);
            let via_conv = *l as f64 * yq.convolve_with_cap(u_neg, cfg.window_cap)?.max_prob();
            let diff = (sup - via_conv).abs();
            let mut sk = check(
                TheoremId::ApOracleAgreement,
                cfg.agreement_tolerance,
                diff,
                cfg.agreement_tolerance - diff,
            );
            sk.coefficients = Some(a.clone());
            sk.length = Some(*l);
            sk.step = Some(step_tag.clone());
            sk.id_suffix = format!("a={coeff_tag}|l={l}|m={step_tag}");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);

            match ap_bounds.get(l) {
                Some(&bound) => {
                    let mut sk = check(TheoremId::ApConcentration, bound, sup, bound - sup);
                    sk.coefficients = Some(a.clone());
                    sk.length = Some(*l);
                    sk.step = Some(step_tag.clone());
                    sk.witness_anchor = Some(format_rational(&anchor));
                    sk.id_suffix = format!("a={coeff_tag}|l={l}|m={step_tag}");
                    admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
                }
                None => {
                    let mut sk = RecordSketch::gated(TheoremId::ApConcentration);
                    sk.coefficients = Some(a.clone());
                    sk.length = Some(*l);
                    sk.step = Some(step_tag.clone());
                    sk.id_suffix = format!("a={coeff_tag}|l={l}|m={step_tag}");
                    admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
                }
            }

            if let Some(report) = fourier_by_len.get(l) {
                let mut sk = if report.applicable {
                    let mut sk = check(
                        TheoremId::BernoulliFourierAp,
                        report.bound,
                        sup,
                        report.bound - sup,
                    );
                    sk.witness_anchor = Some(format_rational(&anchor));
                    sk
                } else {
                    RecordSketch::gated(TheoremId::BernoulliFourierAp)
                };
                sk.coefficients = Some(a.clone());
                sk.length = Some(*l);
                sk.step = Some(step_tag.clone());
                sk.id_suffix = format!("a={coeff_tag}|l={l}|m={step_tag}");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            }
        }

        // Uniform-sum entropy power inequality on the plain sum.
        if a.iter().all(|&k| k == 1) {
            for &(o, rhs) in &epi_bounds {
                let achieved = entropy_power(&y, o);
                let mut sk = check(TheoremId::UniformSumEpi, rhs, achieved, achieved - rhs);
                sk.coefficients = Some(a.clone());
                sk.alpha = Some(o);
                sk.id_suffix = format!("a={coeff_tag}|alpha={o}");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            }
        }

        // Sandwich on the sum: the floor is universal, the ceilings need the
        // sum itself to be log-concave.
        {
            let vy = y.variance();
            let lower = 1.0 / (1.0 + 12.0 * vy).sqrt();
            let mut sk = check(TheoremId::MaxAtomSandwich, lower, m_atom, m_atom - lower);
            sk.coefficients = Some(a.clone());
            sk.id_suffix = format!("a={coeff_tag}|side=lower");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
            if y.is_log_concave() {
                let upper = 1.0 / (1.0 + vy).sqrt();
                let mut sk = check(TheoremId::MaxAtomSandwich, upper, m_atom, upper - m_atom);
                sk.coefficients = Some(a.clone());
                sk.id_suffix = format!("a={coeff_tag}|side=upper");
                admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
                if y.symmetry_center().is_some() {
                    let upper2 = 1.0 / (1.0 + 2.0 * vy).sqrt();
                    let mut sk =
                        check(TheoremId::MaxAtomSandwich, upper2, m_atom, upper2 - m_atom);
                    sk.coefficients = Some(a.clone());
                    sk.id_suffix = format!("a={coeff_tag}|side=upper-symmetric");
                    admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
                }
            }
        }
    }

    // Per-component sandwich, once per multiset.
    for (i, d) in dists.iter().enumerate() {
        let m_atom = d.max_prob();
        let v = d.variance();
        let lower = 1.0 / (1.0 + 12.0 * v).sqrt();
        let mut sk = check(TheoremId::MaxAtomSandwich, lower, m_atom, m_atom - lower);
        sk.coefficients = Some(vec![1]);
        sk.families_override = Some(vec![families[i].clone()]);
        sk.id_suffix = format!("comp={i}|side=lower");
        admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
        if d.is_log_concave() {
            let upper = 1.0 / (1.0 + v).sqrt();
            let mut sk = check(TheoremId::MaxAtomSandwich, upper, m_atom, upper - m_atom);
            sk.coefficients = Some(vec![1]);
            sk.families_override = Some(vec![families[i].clone()]);
            sk.id_suffix = format!("comp={i}|side=upper");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
        }
    }

    // Concentration floor against the worst coefficient vector found.
    {
        let mut sk = check(TheoremId::SharpnessFloor, floor, worst.0, worst.0 - floor);
        sk.witness_coefficients = Some(worst.1.clone());
        sk.id_suffix = "search".into();
        admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
    }

    // Pushforward majorization with seeded random label maps on the plain sum.
    if cfg.pushforward_samples > 0 {
        let ones = vec![1i64; n];
        let y1 = match sign_sums.get(&ones) {
            Some((z, _)) => z.clone(),
            None => weighted_sum_integers(dists, &ones, cfg.window_cap)?,
        };
        let base_profile = DescendingProfile::from_distribution(&y1);
        let mut rng = ChaCha8Rng::seed_from_u64(
            cfg.seed ^ (multiset_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        for sample in 0..cfg.pushforward_samples {
            let label_cap = (y1.support_size() as i64 / 2).max(1);
            let map: BTreeMap<i64, i64> = y1
                .atoms()
                .map(|(x, _)| (x, rng.gen_range(0..=label_cap)))
                .collect();
            let image = pushforward_distribution(&y1, &map)?;
            let gap = dominance_gap(&DescendingProfile::from_distribution(&image), &base_profile);
            let cert_ok = certificate_pushforward(&y1, &map)
                .and_then(|c| c.verify())
                .is_ok();
            let mut sk = check(TheoremId::PushforwardMajorization, 0.0, gap, gap);
            if !cert_ok {
                sk.status = CaseStatus::Fail;
            }
            sk.coefficients = Some(ones.clone());
            sk.witness_map = Some(map.iter().map(|(k, v)| format!("{k}:{v}")).join(";"));
            sk.id_suffix = format!("sample={sample}");
            admit(sk, &mut out, &mut best_pass, &mut gated, &mut fails);
        }
    }

    // Materialize the retained sketches as full records.
    let sketches = fails
        .into_iter()
        .chain(best_pass.into_values().map(|(_, sk)| sk))
        .chain(gated.into_values());
    for sk in sketches {
        let fams = sk.families_override.unwrap_or_else(|| families.to_vec());
        let id = format!("{}|{}|{}", sk.theorem, family_tag, sk.id_suffix);
        if let Some((slack_min, _)) = out.tallies.min_slack.get(&sk.theorem) {
            if sk.status != CaseStatus::PreconditionFailed && sk.slack < *slack_min {
                out.tallies.min_slack.insert(sk.theorem, (sk.slack, id.clone()));
            }
        } else if sk.status != CaseStatus::PreconditionFailed {
            out.tallies.min_slack.insert(sk.theorem, (sk.slack, id.clone()));
        }
        out.records.push(CaseRecord {
            id,
            theorem: sk.theorem,
            status: sk.status,
            n: fams.len(),
            families: fams,
            coefficients: sk.coefficients,
            alpha: sk.alpha,
            length: sk.length,
            step: sk.step,
            bound: sk.bound,
            achieved: sk.achieved,
            slack: sk.slack,
            witness_anchor: sk.witness_anchor,
            witness_coefficients: sk.witness_coefficients,
            witness_map: sk.witness_map,
        });
    }
    Ok(MultisetOutput {
        tallies: out.tallies,
        records: out.records,
        generated: out.generated,
    })
}

/// Runs the whole certification sweep described by the config.
pub fn run_suite(cfg: &SweepConfig) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();
    let (pool, steps) = cfg.validate()?;
    let ap_blocks: Vec<(u32, Rational, i64, i64, LatticeDistribution)> = cfg
        .ap_lengths
        .iter()
        .flat_map(|&l| steps.iter().map(move |&m| (l, m)))
        .map(|(l, m)| {
            let (p, q) = (*m.numer(), *m.denom());
            let u = Family::UniformInterval { a: 1, b: l as i64 }
                .build()
                .expect("uniform block")
                .scale_support_with_cap(-p, cfg.window_cap)?;
            Ok((l, m, p, q, u))
        })
        .collect::<Result<_, VerifyError>>()?;
    let ctx = SweepContext { cfg, ap_blocks };

    let multisets: Vec<Vec<usize>> = (1..=cfg.max_n)
        .flat_map(|n| (0..pool.len()).combinations_with_replacement(n))
        .collect();

    let pool_ref = &pool;
    let ctx_ref = &ctx;
    let run = || -> Result<Vec<MultisetOutput>, VerifyError> {
        multisets
            .par_iter()
            .enumerate()
            .map(|(idx, picks)| {
                let fams: Vec<Family> =
                    picks.iter().map(|&i| cfg.families[i].clone()).collect();
                let dists: Vec<LatticeDistribution> =
                    picks.iter().map(|&i| pool_ref[i].clone()).collect();
                process_multiset(&fams, &dists, idx, ctx_ref)
            })
            .collect()
    };
    let outputs = if cfg.jobs == 0 {
        run()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| VerifyError::BadConfig(format!("thread pool: {e}")))?;
        pool.install(run)?
    };

    // Order-independent merge: outputs arrive in multiset order regardless of
    // the parallelism width.
    let mut counts: BTreeMap<TheoremId, (u64, u64, u64)> = BTreeMap::new();
    let mut min_slack: BTreeMap<TheoremId, (f64, String)> = BTreeMap::new();
    let mut generated = 0u64;
    let mut by_theorem: BTreeMap<TheoremId, Vec<CaseRecord>> = BTreeMap::new();
    for output in outputs {
        generated += output.generated;
        for (t, (p, f, g)) in output.tallies.counts {
            let e = counts.entry(t).or_default();
            e.0 += p;
            e.1 += f;
            e.2 += g;
        }
        for (t, (slack, id)) in output.tallies.min_slack {
            match min_slack.get(&t) {
                Some((s, _)) if *s <= slack => {}
                _ => {
                    min_slack.insert(t, (slack, id));
                }
            }
        }
        for rec in output.records {
            by_theorem.entry(rec.theorem).or_default().push(rec);
        }
    }

    let mut cases = Vec::new();
    for (_, mut records) in by_theorem {
        if let Some(k) = cfg.max_retained_per_theorem {
            let mut passes: Vec<CaseRecord> = Vec::new();
            let mut gated_recs: Vec<CaseRecord> = Vec::new();
            for r in records {
                match r.status {
                    CaseStatus::Fail => cases.push(r),
                    CaseStatus::Pass => passes.push(r),
                    CaseStatus::PreconditionFailed => gated_recs.push(r),
                }
            }
            passes.sort_by(|a, b| {
                a.slack
                    .partial_cmp(&b.slack)
                    .unwrap()
                    .then_with(|| a.id.cmp(&b.id))
            });
            passes.truncate(k);
            gated_recs.truncate(k);
            cases.extend(passes);
            cases.extend(gated_recs);
        } else {
            cases.append(&mut records);
        }
    }
    cases.sort_by(|a, b| a.id.cmp(&b.id));

    let tallies: Vec<TheoremTally> = counts
        .into_iter()
        .map(|(theorem, (pass, fail, precondition_failed))| {
            let (min_slack, min_slack_id) = match min_slack.get(&theorem) {
                Some((s, id)) => (Some(*s), Some(id.clone())),
                None => (None, None),
            };
            TheoremTally {
                theorem,
                pass,
                fail,
                precondition_failed,
                min_slack,
                min_slack_id,
            }
        })
        .collect();
    let failures = tallies.iter().map(|t| t.fail).sum();

    Ok(VerificationReport {
        config: cfg.clone(),
        generated_cases: generated,
        retained_cases: cases.len() as u64,
        failures,
        tallies,
        cases,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Recomputes the achieved value of a retained record from its own inputs and
/// witness. Returns None only for gated records.
pub fn replay_case(record: &CaseRecord) -> Result<Option<f64>, VerifyError> {
    if record.status == CaseStatus::PreconditionFailed {
        return Ok(None);
    }
    let dists: Vec<LatticeDistribution> = record
        .families
        .iter()
        .map(Family::build)
        .collect::<Result<_, _>>()?;
    let cap = crate::dist::DEFAULT_WINDOW_CAP;
    let sum_of = |a: &[i64]| weighted_sum_integers(&dists, a, cap);
    let coeffs = record.coefficients.as_deref();
    let value = match record.theorem {
        TheoremId::Concentration | TheoremId::TwoPoint => {
            sum_of(coeffs.expect("coefficient witness"))?.max_prob()
        }
        TheoremId::EntropyPower | TheoremId::UniformSumEpi => {
            let y = sum_of(coeffs.expect("coefficient witness"))?;
            entropy_power(&y, record.alpha.expect("alpha"))
        }
        TheoremId::ApConcentration | TheoremId::BernoulliFourierAp => {
            let y = sum_of(coeffs.expect("coefficient witness"))?;
            let m = parse_rational(record.step.as_deref().expect("step"))?;
            let anchor = parse_rational(record.witness_anchor.as_deref().expect("anchor"))?;
            ap_probability_at(&y, record.length.expect("length"), m, anchor)
        }
        TheoremId::ApOracleAgreement => {
            let y = sum_of(coeffs.expect("coefficient witness"))?;
            let m = parse_rational(record.step.as_deref().expect("step"))?;
            let l = record.length.expect("length");
            let (sup, _) = ap_sup_probability(&y, l, m)?;
            (sup - ap_sup_via_convolution(&y, l, m)?).abs()
        }
        TheoremId::SignDominance => {
            let a = coeffs.expect("coefficient witness");
            let v: Vec<i64> = a.iter().map(|k| k.signum()).collect();
            dominance_gap(
                &DescendingProfile::from_distribution(&sum_of(&v)?),
                &DescendingProfile::from_distribution(&sum_of(a)?),
            )
        }
        TheoremId::MaxAtomSandwich => sum_of(coeffs.expect("coefficient witness"))?.max_prob(),
        TheoremId::SharpnessFloor => sum_of(record
            .witness_coefficients
            .as_deref()
            .expect("search witness"))?
        .max_prob(),
        TheoremId::PushforwardMajorization => {
            let y = sum_of(coeffs.expect("coefficient witness"))?;
            let map: BTreeMap<i64, i64> = record
                .witness_map
                .as_deref()
                .expect("map witness")
                .split(';')
                .map(|kv| {
                    let (k, v) = kv.split_once(':').expect("map entry");
                    (k.parse().expect("key"), v.parse().expect("label"))
                })
                .collect();
            let image = pushforward_distribution(&y, &map)?;
            dominance_gap(
                &DescendingProfile::from_distribution(&image),
                &DescendingProfile::from_distribution(&y),
            )
        }
        TheoremId::RenyiPowerUpper | TheoremId::ShannonPowerUpper => {
            return Ok(None);
        }
    };
    Ok(Some(value))
}
