//! Command-line surface over the library: distribution specs in, bound
//! computations and certification sweeps out.
//!
//! Exit codes: 0 on success, 1 when a verification sweep reports failures,
//! 2 on input or usage errors (diagnostics go to stderr).

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;

use offord::bounds::{
    self, all_symmetric, bound_ap, bound_bernoulli_ap, bound_concentration,
    bound_entropy_power, bound_two_point, epi_uniform_rhs, sharpness_lower, BoundReport,
    FourierBoundInputs,
};
use offord::dist::{Family, LatticeDistribution, DEFAULT_WINDOW_CAP};
use offord::entropy::{delta, entropy_power, renyi_entropy, RenyiOrder};
use offord::input::{BuiltProblem, ProblemSpec};
use offord::rational::{format_rational, parse_rational, Rational};
use offord::verify::{
    ap_sup_probability, ap_sup_via_convolution, run_suite, worst_case_search, SweepConfig,
    VerificationReport,
};

const CONFIG_ENV: &str = "OFFORD_CONFIG";

#[derive(Parser)]
#[command(
    name = "offord",
    version,
    about = "Concentration and entropy bounds for weighted sums of lattice random variables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a distribution: support, moments, shape flags, entropy table.
    Dist {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated entropy orders, e.g. "0,0.5,1,2,inf".
        #[arg(long, default_value = "0,0.5,1,1.5,2,3,inf")]
        alpha: String,
    },
    /// Compute every applicable bound for a problem spec.
    Bound {
        #[command(flatten)]
        io: IoArgs,
        #[arg(long, default_value = "0,0.5,1,1.5,2,3,inf")]
        alpha: String,
        /// Progression length for the progression bounds.
        #[arg(long, default_value_t = 2)]
        l: u32,
    },
    /// Run the certification sweep and write a report.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Override the config's entropy-order grid.
        #[arg(long)]
        alpha: Option<String>,
        /// Override the config's coefficient box.
        #[arg(long = "box")]
        coefficient_box: Option<i64>,
        /// Override the config's largest multiset size.
        #[arg(long)]
        max_n: Option<usize>,
        /// Restrict progression lengths to this single value.
        #[arg(long)]
        l: Option<u32>,
        /// Restrict progression steps to this single rational.
        #[arg(long)]
        m: Option<String>,
        /// Seed for the sampled label maps.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = runtime default).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Exhaustive worst-case coefficient search for a component set.
    Search {
        #[command(flatten)]
        io: IoArgs,
        /// Coefficient magnitude cap.
        #[arg(long = "box", default_value_t = 3)]
        coefficient_box: i64,
    },
    /// Arithmetic-progression hit probability and its bounds.
    Ap {
        #[command(flatten)]
        io: IoArgs,
        /// Progression length.
        #[arg(long, default_value_t = 2)]
        l: u32,
        /// Progression step as an exact rational, e.g. "3/2".
        #[arg(long, default_value = "1")]
        m: String,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Problem spec path, or "-" for stdin. Verify reads a sweep config here.
    #[arg(long)]
    input: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

fn main() {
    std::process::exit(match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    });
}

fn run() -> Result<i32, String> {
    match Cli::parse().command {
        Command::Dist { io, alpha } => {
            let spec = read_spec(&io)?;
            let grid = parse_alpha_grid(&alpha)?;
            let report = dist_report(&spec, &grid)?;
            emit(&io, &report, render_dist_human, render_dist_csv)?;
            Ok(0)
        }
        Command::Bound { io, alpha, l } => {
            let spec = read_spec(&io)?;
            let grid = parse_alpha_grid(&alpha)?;
            let report = bound_report(&spec, &grid, l)?;
            emit(&io, &report, render_bounds_human, render_bounds_csv)?;
            Ok(0)
        }
        Command::Verify {
            io,
            alpha,
            coefficient_box,
            max_n,
            l,
            m,
            seed,
            jobs,
        } => {
            let mut cfg = load_sweep_config(&io)?;
            if let Some(grid) = alpha {
                cfg.alpha_grid = parse_alpha_grid(&grid)?;
            }
            if let Some(b) = coefficient_box {
                cfg.coefficient_box = b;
            }
            if let Some(n) = max_n {
                cfg.max_n = n;
            }
            if let Some(l) = l {
                cfg.ap_lengths = vec![l];
            }
            if let Some(m) = m {
                parse_rational(&m).map_err(|e| format!("--m: {e}"))?;
                cfg.ap_steps = vec![m];
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(j) = jobs {
                cfg.jobs = j;
            }
            let report = run_suite(&cfg).map_err(|e| e.to_string())?;
            emit_verify(&io, &report)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Search {
            io,
            coefficient_box,
        } => {
            let spec = read_spec(&io)?;
            let report = search_report(&spec, coefficient_box)?;
            emit(&io, &report, render_search_human, render_search_csv)?;
            Ok(0)
        }
        Command::Ap { io, l, m } => {
            let spec = read_spec(&io)?;
            let step = parse_rational(&m).map_err(|e| format!("--m: {e}"))?;
            let report = ap_report(&spec, l, step)?;
            emit(&io, &report, render_ap_human, render_ap_csv)?;
            Ok(0)
        }
    }
}

fn read_text(input: &Option<String>) -> Result<String, String> {
    match input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("reading stdin: {e}"))?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}")),
    }
}

fn read_spec(io: &IoArgs) -> Result<ProblemSpec, String> {
    ProblemSpec::parse(&read_text(&io.input)?).map_err(|e| e.to_string())
}

/// Config precedence: --input flag, then the env var path, then defaults.
fn load_sweep_config(io: &IoArgs) -> Result<SweepConfig, String> {
    if io.input.is_some() {
        let text = read_text(&io.input)?;
        return serde_json::from_str(&text).map_err(|e| format!("sweep config: {e}"));
    }
    if let Ok(path) = std::env::var(CONFIG_ENV) {
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{CONFIG_ENV}={path}: {e}"))?;
        return serde_json::from_str(&text).map_err(|e| format!("sweep config {path}: {e}"));
    }
    Ok(SweepConfig::default())
}

fn parse_alpha_grid(text: &str) -> Result<Vec<RenyiOrder>, String> {
    let grid: Result<Vec<RenyiOrder>, _> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    grid.map_err(|e| format!("--alpha: {e}"))
}

fn write_out(io: &IoArgs, text: &str) -> Result<(), String> {
    match &io.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("writing output: {e}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit<T: Serialize>(
    io: &IoArgs,
    report: &T,
    human: fn(&T) -> String,
    csv: fn(&T) -> String,
) -> Result<(), String> {
    let text = match io.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
            s.push('\n');
            s
        }
        Format::Csv => csv(report),
        Format::Human => human(report),
    };
    write_out(io, &text)
}

fn emit_verify(io: &IoArgs, report: &VerificationReport) -> Result<(), String> {
    let text = match io.format {
        Format::Json => {
            let mut s = report.to_json_string();
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv_string(),
        Format::Human => render_verify_human(report),
    };
    write_out(io, &text)
}

/// The realized lattice law of a spec plus the exact scale that carried it
/// onto the integers: the reported law is that of scale·(a·X).
struct Realized {
    dist: LatticeDistribution,
    scale: i64,
    integer_coefficients: Option<Vec<i64>>,
    components: Vec<LatticeDistribution>,
}

fn realize(spec: &ProblemSpec) -> Result<Realized, String> {
    match spec.build().map_err(|e| e.to_string())? {
        BuiltProblem::Distribution(d) => Ok(Realized {
            dist: d.clone(),
            scale: 1,
            integer_coefficients: None,
            components: vec![d],
        }),
        BuiltProblem::WeightedSum(sum) => {
            let components = sum.components().to_vec();
            let result = sum.evaluate().map_err(|e| e.to_string())?;
            Ok(Realized {
                dist: result.distribution,
                scale: result.scale,
                integer_coefficients: Some(result.integer_coefficients),
                components,
            })
        }
    }
}

#[derive(Serialize)]
struct EntropyRow {
    alpha: RenyiOrder,
    entropy: f64,
    entropy_power: f64,
    delta: f64,
}

#[derive(Serialize)]
struct DistReport {
    spec: serde_json::Value,
    /// Lattice of scale·(a·X); divide atom positions by scale for values.
    scale: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    integer_coefficients: Option<Vec<i64>>,
    support_min: i64,
    support_max: i64,
    support_size: usize,
    /// Moments of the value-scale variable a·X, not of the integer lattice.
    mean: f64,
    variance: f64,
    max_prob: f64,
    log_concave: bool,
    symmetric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    symmetry_center: Option<f64>,
    entropies: Vec<EntropyRow>,
}

fn dist_report(spec: &ProblemSpec, grid: &[RenyiOrder]) -> Result<DistReport, String> {
    let realized = realize(spec)?;
    let d = &realized.dist;
    let moments = d.moments();
    let s = realized.scale as f64;
    let center = d.symmetry_center();
    let entropies = grid
        .iter()
        .map(|&alpha| EntropyRow {
            alpha,
            entropy: renyi_entropy(d, alpha),
            entropy_power: entropy_power(d, alpha),
            delta: delta(d, alpha),
        })
        .collect();
    Ok(DistReport {
        spec: spec.to_value(),
        scale: realized.scale,
        integer_coefficients: realized.integer_coefficients,
        support_min: d.support_min(),
        support_max: d.support_max(),
        support_size: d.support_size(),
        mean: moments.mean / s,
        variance: moments.variance / (s * s),
        max_prob: d.max_prob(),
        log_concave: d.is_log_concave(),
        symmetric: center.is_some(),
        symmetry_center: center.map(|c| c / s),
        entropies,
    })
}

fn render_dist_human(r: &DistReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "support [{}, {}] on lattice 1/{} ({} atoms)\n",
        r.support_min, r.support_max, r.scale, r.support_size
    ));
    if let Some(a) = &r.integer_coefficients {
        out.push_str(&format!("integer coefficients {a:?}\n"));
    }
    out.push_str(&format!(
        "mean {:.6}  variance {:.6}  max atom {:.6}\n",
        r.mean, r.variance, r.max_prob
    ));
    out.push_str(&format!(
        "log-concave: {}  symmetric: {}{}\n",
        if r.log_concave { "yes" } else { "no" },
        if r.symmetric { "yes" } else { "no" },
        r.symmetry_center
            .map(|c| format!(" (center {c})"))
            .unwrap_or_default()
    ));
    out.push_str("\nalpha      entropy      entropy_power  delta\n");
    for row in &r.entropies {
        out.push_str(&format!(
            "{:<10} {:<12.6} {:<14.6} {:.6}\n",
            row.alpha.to_string(),
            row.entropy,
            row.entropy_power,
            row.delta
        ));
    }
    out
}

fn render_dist_csv(r: &DistReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["alpha", "entropy", "entropy_power", "delta"])
        .unwrap();
    for row in &r.entropies {
        w.write_record([
            row.alpha.to_string(),
            row.entropy.to_string(),
            row.entropy_power.to_string(),
            row.delta.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[derive(Serialize)]
struct SkippedBound {
    theorem: String,
    reason: String,
}

#[derive(Serialize)]
struct SumSideBounds {
    max_prob: f64,
    variance: f64,
    sandwich_floor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich_ceiling: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sandwich_ceiling_symmetric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shannon_power_upper: Option<f64>,
    /// Rényi power ceilings per grid order with α > 1, as (order, ceiling).
    renyi_power_upper: Vec<(RenyiOrder, f64)>,
}

#[derive(Serialize)]
struct BoundsOutput {
    spec: serde_json::Value,
    reports: Vec<BoundReport>,
    sum: SumSideBounds,
    sharpness_floor: f64,
    skipped: Vec<SkippedBound>,
}

fn bound_report(spec: &ProblemSpec, grid: &[RenyiOrder], l: u32) -> Result<BoundsOutput, String> {
    let realized = realize(spec)?;
    let comps = &realized.components;
    let symmetric = all_symmetric(comps);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    fn admit(
        reports: &mut Vec<BoundReport>,
        skipped: &mut Vec<SkippedBound>,
        label: &str,
        result: Result<BoundReport, bounds::BoundsError>,
    ) {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => skipped.push(SkippedBound {
                theorem: label.to_owned(),
                reason: e.to_string(),
            }),
        }
    }

    admit(
        &mut reports,
        &mut skipped,
        "concentration",
        bound_concentration(comps, symmetric),
    );
    for &alpha in grid {
        admit(
            &mut reports,
            &mut skipped,
            "entropy-power",
            bound_entropy_power(comps, alpha, symmetric),
        );
    }
    admit(
        &mut reports,
        &mut skipped,
        "ap-concentration",
        bound_ap(comps, l, symmetric),
    );

    let two_point_specs: Option<Vec<(i64, i64, f64)>> = comps
        .iter()
        .map(|d| {
            let atoms: Vec<(i64, f64)> = d.atoms().collect();
            (atoms.len() == 2).then(|| (atoms[0].0, atoms[1].0, atoms[1].1))
        })
        .collect();
    match two_point_specs {
        Some(specs) => admit(&mut reports, &mut skipped, "two-point", bound_two_point(&specs)),
        None => skipped.push(SkippedBound {
            theorem: "two-point".into(),
            reason: "components are not all two-valued".into(),
        }),
    }

    let bernoulli_ps: Option<Vec<f64>> = spec
        .families()
        .iter()
        .map(|f| match f {
            Family::Bernoulli { p } => Some(*p),
            _ => None,
        })
        .collect();
    match bernoulli_ps {
        Some(ps) if l >= 2 => admit(
            &mut reports,
            &mut skipped,
            "bernoulli-fourier-ap",
            FourierBoundInputs::from_bernoulli(&ps, l).and_then(|i| bound_bernoulli_ap(&i)),
        ),
        Some(_) => skipped.push(SkippedBound {
            theorem: "bernoulli-fourier-ap".into(),
            reason: "needs progression length at least 2".into(),
        }),
        None => skipped.push(SkippedBound {
            theorem: "bernoulli-fourier-ap".into(),
            reason: "components are not all Bernoulli".into(),
        }),
    }

    for &alpha in grid.iter().filter(|o| o.at_most_two()) {
        admit(
            &mut reports,
            &mut skipped,
            "uniform-sum-epi",
            epi_uniform_rhs(comps, alpha),
        );
    }

    let y = &realized.dist;
    let vy = y.variance() / (realized.scale as f64 * realized.scale as f64);
    let lc = y.is_log_concave();
    let renyi_uppers = grid
        .iter()
        .filter(|o| o.value() > 1.0)
        .filter_map(|&o| {
            if lc {
                bounds::renyi_power_upper(y, o).ok().map(|u| (o, u))
            } else {
                None
            }
        })
        .collect();
    let sum = SumSideBounds {
        max_prob: y.max_prob(),
        variance: vy,
        sandwich_floor: 1.0 / (1.0 + 12.0 * y.variance()).sqrt(),
        sandwich_ceiling: lc.then(|| 1.0 / (1.0 + y.variance()).sqrt()),
        sandwich_ceiling_symmetric: (lc && y.symmetry_center().is_some())
            .then(|| 1.0 / (1.0 + 2.0 * y.variance()).sqrt()),
        shannon_power_upper: lc.then(|| bounds::shannon_power_upper(y)).transpose().map_err(|e| e.to_string())?,
        renyi_power_upper: renyi_uppers,
    };
    let sharpness_floor = sharpness_lower(comps).map_err(|e| e.to_string())?;
    Ok(BoundsOutput {
        spec: spec.to_value(),
        reports,
        sum,
        sharpness_floor,
        skipped,
    })
}

fn render_bounds_human(r: &BoundsOutput) -> String {
    let mut out = String::new();
    out.push_str("theorem                param      c      bound        branch\n");
    for rep in &r.reports {
        let tag = match (rep.inputs.alpha, rep.inputs.length) {
            (Some(a), _) => format!("alpha={a}"),
            (None, Some(l)) => format!("l={l}"),
            _ => String::new(),
        };
        out.push_str(&format!(
            "{:<22} {:<10} {:<6} {:<12.6} {:?}{}\n",
            rep.theorem.to_string(),
            tag,
            rep.c,
            rep.bound,
            rep.branch,
            if rep.applicable { "" } else { "  (not applicable)" }
        ));
    }
    out.push_str(&format!(
        "\nsum: max atom {:.6}, floor {:.6}",
        r.sum.max_prob, r.sum.sandwich_floor
    ));
    if let Some(c) = r.sum.sandwich_ceiling {
        out.push_str(&format!(", ceiling {c:.6}"));
    }
    out.push_str(&format!("\nsharpness floor {:.6}\n", r.sharpness_floor));
    for s in &r.skipped {
        out.push_str(&format!("skipped {}: {}\n", s.theorem, s.reason));
    }
    out
}

fn render_bounds_csv(r: &BoundsOutput) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theorem", "alpha", "l", "c", "branch", "bound", "applicable"])
        .unwrap();
    for rep in &r.reports {
        w.write_record([
            rep.theorem.to_string(),
            rep.inputs.alpha.map(|a| a.to_string()).unwrap_or_default(),
            rep.inputs.length.map(|l| l.to_string()).unwrap_or_default(),
            rep.c.to_string(),
            format!("{:?}", rep.branch),
            rep.bound.to_string(),
            rep.applicable.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[derive(Serialize)]
struct SearchOutput {
    spec: serde_json::Value,
    coefficient_box: i64,
    worst_value: f64,
    witness: Vec<i64>,
    cases_examined: u64,
    sharpness_floor: f64,
}

fn search_report(spec: &ProblemSpec, coefficient_box: i64) -> Result<SearchOutput, String> {
    let realized = realize(spec)?;
    let (worst_value, witness, cases_examined) =
        worst_case_search(&realized.components, coefficient_box, DEFAULT_WINDOW_CAP)
            .map_err(|e| e.to_string())?;
    let sharpness_floor = sharpness_lower(&realized.components).map_err(|e| e.to_string())?;
    Ok(SearchOutput {
        spec: spec.to_value(),
        coefficient_box,
        worst_value,
        witness,
        cases_examined,
        sharpness_floor,
    })
}

fn render_search_human(r: &SearchOutput) -> String {
    format!(
        "worst M = {:.12} at a = {:?} ({} canonical vectors, box ±{})\nfloor {:.12}\n",
        r.worst_value, r.witness, r.cases_examined, r.coefficient_box, r.sharpness_floor
    )
}

fn render_search_csv(r: &SearchOutput) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["worst_value", "witness", "cases_examined", "sharpness_floor"])
        .unwrap();
    w.write_record([
        r.worst_value.to_string(),
        r.witness.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","),
        r.cases_examined.to_string(),
        r.sharpness_floor.to_string(),
    ])
    .unwrap();
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[derive(Serialize)]
struct ApOutput {
    spec: serde_json::Value,
    l: u32,
    m: String,
    value: f64,
    /// Anchor on the value scale of a·X.
    witness_anchor: String,
    cross_check: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bernoulli_bound: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_skipped: Option<String>,
}

fn ap_report(spec: &ProblemSpec, l: u32, m: Rational) -> Result<ApOutput, String> {
    let realized = realize(spec)?;
    // The integer law is scale·(a·X), so the step scales along with it and
    // the witness anchor scales back down.
    let scaled_m = m * Rational::from_integer(realized.scale);
    let (value, witness) =
        ap_sup_probability(&realized.dist, l, scaled_m).map_err(|e| e.to_string())?;
    let cross_check =
        ap_sup_via_convolution(&realized.dist, l, scaled_m).map_err(|e| e.to_string())?;
    let anchor = witness / Rational::from_integer(realized.scale);
    let symmetric = all_symmetric(&realized.components);
    let (bound, bound_skipped) = match bound_ap(&realized.components, l, symmetric) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let bernoulli_ps: Option<Vec<f64>> = spec
        .families()
        .iter()
        .map(|f| match f {
            Family::Bernoulli { p } => Some(*p),
            _ => None,
        })
        .collect();
    let bernoulli_bound = match bernoulli_ps {
        Some(ps) if l >= 2 => FourierBoundInputs::from_bernoulli(&ps, l)
            .and_then(|i| bound_bernoulli_ap(&i))
            .ok(),
        _ => None,
    };
    Ok(ApOutput {
        spec: spec.to_value(),
        l,
        m: format_rational(&m),
        value,
        witness_anchor: format_rational(&anchor),
        cross_check,
        bound,
        bernoulli_bound,
        bound_skipped,
    })
}

fn render_ap_human(r: &ApOutput) -> String {
    let mut out = format!(
        "sup probability {:.12} at anchor x = {} (l={}, m={})\ncross-check {:.12}\n",
        r.value, r.witness_anchor, r.l, r.m, r.cross_check
    );
    if let Some(b) = &r.bound {
        out.push_str(&format!("bound {:.12} (c={})\n", b.bound, b.c));
    }
    if let Some(b) = &r.bernoulli_bound {
        out.push_str(&format!(
            "bernoulli refinement {:.12} (applicable: {})\n",
            b.bound, b.applicable
        ));
    }
    if let Some(reason) = &r.bound_skipped {
        out.push_str(&format!("bound skipped: {reason}\n"));
    }
    out
}

fn render_ap_csv(r: &ApOutput) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["l", "m", "value", "witness_anchor", "cross_check", "bound"])
        .unwrap();
    w.write_record([
        r.l.to_string(),
        r.m.clone(),
        r.value.to_string(),
        r.witness_anchor.clone(),
        r.cross_check.to_string(),
        r.bound
            .as_ref()
            .map(|b| b.bound.to_string())
            .unwrap_or_default(),
    ])
    .unwrap();
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn render_verify_human(r: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} cases generated, {} retained, {} failures in {:.2}s\n\n",
        r.generated_cases, r.retained_cases, r.failures, r.wall_clock_seconds
    ));
    out.push_str("theorem                      pass     fail  gated  min_slack\n");
    for t in &r.tallies {
        out.push_str(&format!(
            "{:<28} {:<8} {:<5} {:<6} {}\n",
            t.theorem.to_string(),
            t.pass,
            t.fail,
            t.precondition_failed,
            t.min_slack
                .map(|s| format!("{s:.3e}"))
                .unwrap_or_else(|| "-".into())
        ));
    }
    if r.failures > 0 {
        out.push_str("\nfailing cases:\n");
        for c in r.cases.iter().filter(|c| {
            matches!(c.status, offord::verify::CaseStatus::Fail)
        }) {
            out.push_str(&format!("  {} slack={:.3e}\n", c.id, c.slack));
        }
    }
    out
}
