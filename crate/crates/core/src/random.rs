//! Random standard sets and the statistical experiments run on them.
//!
//! Each `y ∈ G₁ ∪ G₂` gets an independent draw `ξ_y = [u_y < ρ]`, where the
//! uniforms `u_y` come from a ChaCha8 stream keyed by `(seed, trial)`. Two
//! models with the same seed share their uniforms, so a sample at a larger
//! `ρ` contains the sample at a smaller one.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorial::{delta_bar_with, has_three_term_zero_sum, SolverOptions};
use crate::error::{Error, Result};
use crate::fourier::{fourier_transform, Function};
use crate::group::{Group, StandardSet};
use crate::lp::lambda::{lambda_with, LpOptions, ModeChoice, Variant};

/// Largest group order for which `randdelta` computes `Δ̄` per trial.
pub const RANDOM_DELTA_LIMIT: usize = 512;

/// Duality tolerance on `λ⁺(R)·λ⁻(R')·q`.
pub const DUALITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct RandomModel {
    group: Arc<Group>,
    rho: f64,
    seed: u64,
    /// Elements with `2x = 0`, including 0.
    involutions: Vec<usize>,
    /// The canonical member of every remaining pair `{x, -x}`.
    half: Vec<usize>,
}

impl RandomModel {
    pub fn new(group: &Arc<Group>, rho: f64, seed: u64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::OutOfRange(format!("need 0 < ρ < 1, got ρ = {rho}")));
        }
        let q = group.order();
        let involutions: Vec<usize> = (0..q).filter(|&x| group.is_involution(x)).collect();
        let half: Vec<usize> = (0..q)
            .filter(|&x| !group.is_involution(x) && group.is_canonical_half(x))
            .collect();
        debug_assert_eq!(involutions.len() + 2 * half.len(), q);
        Ok(Self {
            group: Arc::clone(group),
            rho,
            seed,
            involutions,
            half,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn involutions(&self) -> &[usize] {
        &self.involutions
    }

    pub fn half(&self) -> &[usize] {
        &self.half
    }

    /// `q₁ = |G₁|`.
    pub fn q1(&self) -> usize {
        self.involutions.len()
    }

    /// `q₂ = |G₂|`.
    pub fn q2(&self) -> usize {
        self.half.len()
    }

    /// The same model with another probability; samples stay coupled.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(&self.group, rho, self.seed)
    }

    fn stream(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

/// Sample number `trial` of the model.
pub fn sample_standard_set(model: &RandomModel, trial: u64) -> StandardSet {
    let g = model.group();
    let mut rng = model.stream(trial);
    let mut members = vec![false; g.order()];
    let mut draws: Vec<usize> = model
        .involutions
        .iter()
        .chain(&model.half)
        .copied()
        .collect();
    draws.sort_unstable();
    for y in draws {
        let hit = rng.random::<f64>() < model.rho;
        // ξ₀ is drawn to keep the stream aligned, then ignored.
        if hit && y != 0 {
            members[y] = true;
            members[g.neg(y)] = true;
        }
    }
    members[0] = true;
    StandardSet::from_membership(g, members).expect("sample is standard")
}

/// Upper bound for `λ⁺(R)` from `f = 1_R + a·δ₀` with
/// `a = max(0, -min_{γ≠𝟙} 1̂_R(γ))`: it lies in the `λ⁺` class of `R` and
/// gives `(1 + a)/(|R| + a)`.
pub fn witness_lambda_plus_upper(r: &StandardSet) -> f64 {
    let g = r.group();
    let indicator: Vec<f64> = r
        .membership()
        .iter()
        .map(|&m| if m { 1.0 } else { 0.0 })
        .collect();
    let f0 = Function::new(g, indicator).expect("table length");
    let spectrum = fourier_transform(&f0);
    let a = if g.order() > 1 {
        (-spectrum.min_nonprincipal()).max(0.0)
    } else {
        0.0
    };
    (1.0 + a) / (r.size() as f64 + a)
}

/// One named pass/fail check of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &str, observed: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            limit,
            passed: observed <= limit,
        }
    }

    fn at_least(name: &str, observed: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            observed,
            limit,
            passed: observed >= limit,
        }
    }
}

/// Per-trial measurements; fields an experiment does not compute are `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_minus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_bound: Option<f64>,
    /// `λ⁺(R)·λ⁻(R')·q`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duality_product: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_term: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_bar: Option<usize>,
    /// `Δ̄` of the coupled sample at the larger probability.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub superset_delta_bar: Option<usize>,
    /// Whether all displayed bounds of the experiment hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conforming: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialStats {
    pub experiment: &'static str,
    pub group: String,
    pub rho: f64,
    pub seed: u64,
    pub trials: usize,
    /// Derived quantities, sorted by name.
    pub metrics: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub records: Vec<TrialRecord>,
}

impl TrialStats {
    fn new(name: &'static str, model: &RandomModel, records: Vec<TrialRecord>) -> Self {
        Self {
            experiment: name,
            group: model.group().label().to_string(),
            rho: model.rho(),
            seed: model.seed(),
            trials: records.len(),
            metrics: BTreeMap::new(),
            checks: Vec::new(),
            records,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn metric(&mut self, key: &str, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    fn frequency(&self, pred: impl Fn(&TrialRecord) -> bool) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        self.records.iter().filter(|r| pred(r)).count() as f64 / self.records.len() as f64
    }
}

/// Median of the present values.
pub fn median(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let mut v: Vec<f64> = values.into_iter().collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    })
}

/// Three-sigma slack of a frequency with success probability `p`.
pub fn three_sigma(p: f64, trials: usize) -> f64 {
    let p = p.clamp(0.0, 1.0);
    3.0 * (p * (1.0 - p) / trials.max(1) as f64).sqrt()
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::OutOfRange("need at least one trial".into()));
    }
    Ok(())
}

/// Random `λ` experiment. Logarithms are natural.
pub fn experiment_random_lambda(model: &RandomModel, trials: usize, c: f64) -> Result<TrialStats> {
    check_trials(trials)?;
    let q = model.group().order() as f64;
    let rho = model.rho();
    let log_q = q.ln();
    let c_max = q / (32.0 * log_q);
    let margin = 16.0 * c * log_q / q;
    let violated: Vec<String> = [
        (c > 1.0, format!("1 < c (c = {c})")),
        (
            c < c_max,
            format!("c < q/(32 log q) (c = {c}, q/(32 log q) = {c_max:.6})"),
        ),
        (
            margin < rho,
            format!("16c·log q/q < ρ (16c·log q/q = {margin:.6}, ρ = {rho})"),
        ),
        (
            rho < 1.0 - margin,
            format!(
                "ρ < 1 − 16c·log q/q (ρ = {rho}, 1 − 16c·log q/q = {:.6})",
                1.0 - margin
            ),
        ),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, msg)| msg)
    .collect();
    if !violated.is_empty() {
        return Err(Error::Precondition(violated.join("; ")));
    }
    let size_radius = 3.0 * (c * rho * (1.0 - rho) * q * log_q).sqrt();
    let scale = ((1.0 - rho) / (rho * q)).sqrt();
    let spread = 3.0 * (c * log_q).sqrt();
    let (lower, upper) = (scale / spread, scale * spread);
    let opts = LpOptions::default();
    let value = |a: &StandardSet, v: Variant| -> Result<f64> {
        Ok(lambda_with(a, v, ModeChoice::Float, &opts)?.value_f64())
    };
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<TrialRecord> {
            let r = sample_standard_set(model, t);
            let minus = value(&r, Variant::Minus)?;
            let lam = value(&r, Variant::Lambda)?;
            let plus = value(&r, Variant::Plus)?;
            let complement_minus = value(&r.standard_complement(), Variant::Minus)?;
            let size = r.size();
            let conforming = ((size as f64) - rho * q).abs() < size_radius
                && lower < minus
                && minus <= plus
                && plus < upper;
            Ok(TrialRecord {
                trial: t,
                size,
                lambda_minus: Some(minus),
                lambda: Some(lam),
                lambda_plus: Some(plus),
                witness_bound: Some(witness_lambda_plus_upper(&r)),
                duality_product: Some(plus * complement_minus * q),
                conforming: Some(conforming),
                ..TrialRecord::default()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut stats = TrialStats::new("randlambda", model, records);
    let conforming = stats.frequency(|r| r.conforming == Some(true));
    let guaranteed = 1.0 - 2.0 * q.powf(1.0 - c);
    stats.metric("c", c);
    stats.metric("size_radius", size_radius);
    stats.metric("lambda_lower", lower);
    stats.metric("lambda_upper", upper);
    stats.metric("conforming_fraction", conforming);
    stats.metric("guaranteed_rate", guaranteed);
    stats.metric("q_inverse_sqrt", q.powf(-0.5));
    let med = |f: fn(&TrialRecord) -> Option<f64>| median(stats.records.iter().filter_map(f));
    for (key, m) in [
        ("median_lambda_minus", med(|r| r.lambda_minus)),
        ("median_lambda", med(|r| r.lambda)),
        ("median_lambda_plus", med(|r| r.lambda_plus)),
        ("median_size", med(|r| Some(r.size as f64))),
    ] {
        if let Some(m) = m {
            stats.metric(key, m);
        }
    }
    let witness_gap = stats
        .records
        .iter()
        .map(|r| r.lambda_plus.unwrap() - r.witness_bound.unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    let duality_error = stats
        .records
        .iter()
        .map(|r| (r.duality_product.unwrap() - 1.0).abs())
        .fold(0.0, f64::max);
    stats.checks = vec![
        Check::at_least(
            "conforming fraction ≥ 1 − 2q^{1−c} − 3σ",
            conforming,
            guaranteed - three_sigma(guaranteed, trials),
        ),
        Check::at_most("λ⁺(R) − witness bound", witness_gap, 1e-9),
        Check::at_most("|λ⁺(R)·λ⁻(R')·q − 1|", duality_error, DUALITY_TOL),
    ];
    Ok(stats)
}

/// Options of the threshold experiment.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThresholdOptions {
    /// Also compute `Δ̄(R)` exactly and compare with the zero-sum test.
    pub cross_check: bool,
}

/// Threshold experiment for `Δ̄(R) ≥ 3`.
pub fn experiment_threshold_23(
    model: &RandomModel,
    trials: usize,
    opts: &ThresholdOptions,
) -> Result<TrialStats> {
    check_trials(trials)?;
    let g = model.group();
    let q = g.order() as f64;
    let rho = model.rho();
    if g.order().is_multiple_of(3) {
        return Err(Error::Precondition(format!(
            "3 ∤ q violated: q = {}; Δ̄ < 3 needs elements of order 3 all absent",
            g.order()
        )));
    }
    let low = 6.0 / (5.0 * q);
    if !(low < rho) {
        return Err(Error::Precondition(format!(
            "6/(5q) < ρ violated: 6/(5q) = {low}, ρ = {rho}"
        )));
    }
    let high = q.powf(-2.0 / 3.0);
    if !(rho < high) {
        return Err(Error::Precondition(format!(
            "ρ < q^(−2/3) violated: ρ = {rho}, q^(−2/3) = {high}"
        )));
    }
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<TrialRecord> {
            let r = sample_standard_set(model, t);
            let three_term = has_three_term_zero_sum(&r);
            let delta_bar = if opts.cross_check {
                Some(delta_bar_with(&r, &SolverOptions::default())?.0)
            } else {
                None
            };
            Ok(TrialRecord {
                trial: t,
                size: r.size(),
                three_term: Some(three_term),
                delta_bar,
                ..TrialRecord::default()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut stats = TrialStats::new("threshold23", model, records);
    let bound = q * q * rho.powi(3);
    let freq = stats.frequency(|r| r.three_term == Some(true));
    let exact_one = (1.0 - rho).powi((model.q1() + model.q2() - 1) as i32);
    let freq_one = stats.frequency(|r| r.size == 1);
    stats.metric("bound", bound);
    stats.metric("frequency_at_least_3", freq);
    stats.metric("frequency_equal_1", freq_one);
    stats.metric("probability_equal_1", exact_one);
    stats.checks = vec![
        Check::at_most(
            "Pr(Δ̄ ≥ 3) ≤ q²ρ³ + 3σ",
            freq,
            bound + three_sigma(bound, trials),
        ),
        Check::at_most(
            "|Pr(Δ̄ = 1) − (1−ρ)^{q₁+q₂−1}| ≤ 3σ",
            (freq_one - exact_one).abs(),
            three_sigma(exact_one, trials).max(1e-12),
        ),
    ];
    if opts.cross_check {
        let disagreements = stats
            .records
            .iter()
            .filter(|r| r.three_term != r.delta_bar.map(|d| d >= 3))
            .count();
        stats.metric("disagreements", disagreements as f64);
        stats.checks.push(Check::at_most(
            "zero-sum test ≠ [Δ̄ ≥ 3]",
            disagreements as f64,
            0.0,
        ));
    }
    Ok(stats)
}

/// Options of the random `Δ̄` experiment.
#[derive(Debug, Clone, Copy, Default)]
pub struct RandomDeltaOptions {
    /// Larger probability of a coupled superset sample whose `Δ̄` must not be
    /// smaller.
    pub superset_rho: Option<f64>,
    pub force: bool,
}

/// Distribution of `Δ̄(R)` and the frequency of `Δ̄(R) ≥ m`.
pub fn experiment_random_delta(
    model: &RandomModel,
    trials: usize,
    m: usize,
    opts: &RandomDeltaOptions,
) -> Result<TrialStats> {
    check_trials(trials)?;
    let g = model.group();
    if g.order() > RANDOM_DELTA_LIMIT && !opts.force {
        return Err(Error::SizeGuard(format!(
            "per-trial Δ̄ limited to q ≤ {RANDOM_DELTA_LIMIT}, got q = {}",
            g.order()
        )));
    }
    let superset = match opts.superset_rho {
        Some(r) if r < model.rho() => {
            return Err(Error::OutOfRange(format!(
                "superset probability {r} is below ρ = {}",
                model.rho()
            )))
        }
        Some(r) => Some(model.with_rho(r)?),
        None => None,
    };
    let solver = SolverOptions {
        force: opts.force,
        upper_bound: None,
    };
    let records = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<TrialRecord> {
            let r = sample_standard_set(model, t);
            let delta_bar = delta_bar_with(&r, &solver)?.0;
            let superset_delta_bar = match &superset {
                Some(sm) => Some(delta_bar_with(&sample_standard_set(sm, t), &solver)?.0),
                None => None,
            };
            Ok(TrialRecord {
                trial: t,
                size: r.size(),
                delta_bar: Some(delta_bar),
                superset_delta_bar,
                ..TrialRecord::default()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut stats = TrialStats::new("randdelta", model, records);
    let q = g.order() as f64;
    let rho = model.rho();
    let max = stats
        .records
        .iter()
        .filter_map(|r| r.delta_bar)
        .max()
        .unwrap_or(1);
    // Tail frequencies Pr(Δ̄ ≥ j), j = 1..=max + 1.
    let tail: Vec<f64> = (1..=max + 1)
        .map(|j| stats.frequency(|r| r.delta_bar.is_some_and(|d| d >= j)))
        .collect();
    for (j, f) in tail.iter().enumerate() {
        stats.metric(&format!("tail_{:03}", j + 1), *f);
    }
    stats.metric("m", m as f64);
    stats.metric(
        "frequency_at_least_m",
        stats.frequency(|r| r.delta_bar.is_some_and(|d| d >= m)),
    );
    if let Some(med) = median(
        stats
            .records
            .iter()
            .filter_map(|r| r.delta_bar.map(|d| d as f64)),
    ) {
        stats.metric("median_delta_bar", med);
    }
    stats.metric("log_q_squared", q.ln().powi(2));
    let at_least_two = 1.0 - (1.0 - rho).powi((model.q1() + model.q2() - 1) as i32);
    let freq_two = stats.frequency(|r| r.delta_bar.is_some_and(|d| d >= 2));
    stats.metric("probability_at_least_2", at_least_two);
    let increases = tail.windows(2).filter(|w| w[1] > w[0]).count();
    let not_below = stats.frequency(|r| {
        r.delta_bar.is_some_and(|d| d >= 2) == (r.size >= 2)
            && r.superset_delta_bar.is_none_or(|s| Some(s) >= r.delta_bar)
    });
    stats.checks = vec![
        Check::at_least("Pr(Δ̄ ≥ 1)", tail[0], 1.0),
        Check::at_most("increases of Pr(Δ̄ ≥ j) in j", increases as f64, 0.0),
        Check::at_most(
            "|Pr(Δ̄ ≥ 2) − (1 − (1−ρ)^{q₁+q₂−1})| ≤ 3σ",
            (freq_two - at_least_two).abs(),
            three_sigma(at_least_two, trials).max(1e-12),
        ),
        Check::at_least(
            "trials with [Δ̄ ≥ 2] = [|R| ≥ 2] and superset Δ̄ not smaller",
            not_below,
            1.0,
        ),
    ];
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorial::{difference_count, effective_cardinality};
    use crate::group::difference_set;
    use crate::lp::lambda::lambda;

    #[test]
    fn model_partition() {
        for g in [
            Group::cyclic(12).unwrap(),
            Group::power(2, 4).unwrap(),
            Group::cyclic(7).unwrap(),
        ] {
            let m = RandomModel::new(&g, 0.3, 1).unwrap();
            assert_eq!(m.q1() + 2 * m.q2(), g.order());
            for &y in m.half() {
                assert!(!m.half().contains(&g.neg(y)));
            }
        }
        assert!(RandomModel::new(&Group::cyclic(5).unwrap(), 1.0, 0).is_err());
        assert!(RandomModel::new(&Group::cyclic(5).unwrap(), 0.0, 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_coupled() {
        let g = Group::cyclic(30).unwrap();
        let m = RandomModel::new(&g, 0.4, 99).unwrap();
        let hi = m.with_rho(0.7).unwrap();
        for t in 0..50 {
            let a = sample_standard_set(&m, t);
            assert_eq!(a, sample_standard_set(&m, t));
            assert!(a.is_subset_of(&sample_standard_set(&hi, t)));
        }
        assert_ne!(sample_standard_set(&m, 0), sample_standard_set(&m, 1));
    }

    #[test]
    fn mean_size_matches() {
        let g = Group::cyclic(40).unwrap();
        for rho in [0.2, 0.5] {
            let m = RandomModel::new(&g, rho, 5).unwrap();
            let n = 2000;
            let sizes: Vec<f64> = (0..n)
                .map(|t| sample_standard_set(&m, t).size() as f64)
                .collect();
            let mean = sizes.iter().sum::<f64>() / n as f64;
            // |R| - 1 = Σ_{G₁∖0} ξ + 2 Σ_{G₂} ξ
            let var = rho * (1.0 - rho) * ((m.q1() - 1) + 4 * m.q2()) as f64;
            let expected = 1.0 + rho * 39.0;
            assert!((mean - expected).abs() <= 3.0 * (var / n as f64).sqrt());
            // complements follow the model with 1 - ρ
            let comp: f64 = (0..n)
                .map(|t| sample_standard_set(&m, t).standard_complement().size() as f64)
                .sum::<f64>()
                / n as f64;
            assert!((comp - (1.0 + (1.0 - rho) * 39.0)).abs() <= 3.0 * (var / n as f64).sqrt());
        }
    }

    #[test]
    fn containment_probability() {
        let g = Group::cyclic(20).unwrap();
        let b = [0, 1, 3];
        let diff = difference_set(&g, &b).unwrap();
        let eff = effective_cardinality(&diff);
        assert_eq!(difference_count(&g, &b), 7);
        assert_eq!(eff, 3);
        let m = RandomModel::new(&g, 0.5, 11).unwrap();
        let n = 4000;
        let hits = (0..n)
            .filter(|&t| diff.is_subset_of(&sample_standard_set(&m, t)))
            .count();
        let p = 0.5f64.powi(eff as i32);
        assert!((hits as f64 / n as f64 - p).abs() <= three_sigma(p, n as usize));
    }

    #[test]
    fn witness_extremes() {
        let g = Group::power(2, 3).unwrap();
        assert!((witness_lambda_plus_upper(&StandardSet::full(&g)) - 0.125).abs() < 1e-12);
        assert!((witness_lambda_plus_upper(&StandardSet::zero(&g)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn witness_bounds_lp_value() {
        let g = Group::power(2, 6).unwrap();
        let m = RandomModel::new(&g, 0.5, 3).unwrap();
        for t in 0..10 {
            let r = sample_standard_set(&m, t);
            let lp = lambda(&r, Variant::Plus, ModeChoice::Float)
                .unwrap()
                .value_f64();
            assert!(lp <= witness_lambda_plus_upper(&r) + 1e-9);
        }
    }

    #[test]
    fn randlambda_preconditions() {
        let g = Group::cyclic(64).unwrap();
        let m = RandomModel::new(&g, 0.01, 0).unwrap();
        let err = experiment_random_lambda(&m, 5, 1.5).unwrap_err();
        assert!(err.to_string().contains("16c·log q/q < ρ"), "{err}");
        let m = RandomModel::new(&Group::cyclic(512).unwrap(), 0.5, 0).unwrap();
        assert!(experiment_random_lambda(&m, 5, 1.0)
            .unwrap_err()
            .to_string()
            .contains("1 < c"));
    }

    #[test]
    fn threshold_preconditions_and_limit() {
        let m = RandomModel::new(&Group::cyclic(99).unwrap(), 0.02, 0).unwrap();
        assert!(matches!(
            experiment_threshold_23(&m, 10, &ThresholdOptions::default()),
            Err(Error::Precondition(_))
        ));
        let g = Group::cyclic(49).unwrap();
        let m = RandomModel::new(&g, 0.05, 4).unwrap();
        let s = experiment_threshold_23(&m, 100, &ThresholdOptions { cross_check: true }).unwrap();
        assert_eq!(s.records.len(), 100);
        assert_eq!(s.metrics["disagreements"], 0.0);
        let tiny = RandomModel::new(&g, 1e-12, 4).unwrap();
        assert!((0..50).all(|t| sample_standard_set(&tiny, t).is_zero()));
    }

    #[test]
    fn randdelta_small() {
        let g = Group::cyclic(31).unwrap();
        let m = RandomModel::new(&g, 0.3, 8).unwrap();
        let s = experiment_random_delta(
            &m,
            200,
            1,
            &RandomDeltaOptions {
                superset_rho: Some(0.6),
                force: false,
            },
        )
        .unwrap();
        assert_eq!(s.metrics["frequency_at_least_m"], 1.0);
        assert!(s.passed(), "{:?}", s.checks);
    }

    #[test]
    fn medians() {
        assert_eq!(median([3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median([4.0, 1.0]), Some(2.5));
        assert_eq!(median(Vec::<f64>::new()), None);
    }
}
