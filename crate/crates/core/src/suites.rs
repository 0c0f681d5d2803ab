//! Theorem-verification suites. Each suite builds a list of cases, computes
//! the quantities it needs in parallel, and records every failed relation
//! together with a spec that reproduces it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorial::{
    delta_bar_with, difference_count, has_three_term_zero_sum, semisidon_bound, semisidon_select,
    SolverOptions,
};
use crate::dyadic::{
    ball_delta_bar, ball_set, construct_nonmonotone_example, kleitman_value,
    lambda_pm_ball_witness, reduced_lambda, DyadicBallSpec, KrawchoukTable,
};
use crate::error::{Error, Result};
use crate::group::{
    all_standard_sets, Automorphism, Element, Group, GroupSpec, Homomorphism, StandardSet, Subgroup,
};
use crate::lp::lambda::{lambda_with, LpOptions, ModeChoice, Variant, FLOAT_TOL};
use crate::parse::set_spec;
use crate::random::{sample_standard_set, witness_lambda_plus_upper, RandomModel};
use crate::report::{all_quantities, QuantityReport, ReportOptions};
use crate::scalar::{Mode, Rational, Scalar};

/// Slack for inequalities between float values.
pub const INEQUALITY_SLACK: f64 = 1e-7;
/// Tolerance for identities that hold exactly in theory (products, equalities).
pub const IDENTITY_TOL: f64 = 1e-6;
/// Tolerance for values that must agree across ambient groups.
pub const AMBIENT_TOL: f64 = 1e-9;

/// Largest number of sets a pair suite enumerates exhaustively.
const PAIR_ENUMERATION_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Basic,
    Duality,
    Union,
    Factor,
    Product,
    Ambient,
    Dyadic,
    Random,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Basic,
        Suite::Duality,
        Suite::Union,
        Suite::Factor,
        Suite::Product,
        Suite::Ambient,
        Suite::Dyadic,
        Suite::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Basic => "basic",
            Suite::Duality => "duality",
            Suite::Union => "union",
            Suite::Factor => "factor",
            Suite::Product => "product",
            Suite::Ambient => "ambient",
            Suite::Dyadic => "dyadic",
            Suite::Random => "random",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Parse(format!(
                    "unknown suite `{s}`, expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Scale and seed of a suite run. Unset fields fall back to per-suite
/// defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub group: Option<Arc<Group>>,
    /// Enumerate every standard set (or pair) instead of sampling.
    pub exhaustive: bool,
    pub mode: ModeChoice,
    /// Dimension for the dyadic suite.
    pub n: Option<u32>,
    pub seed: u64,
    /// Number of sampled sets, pairs or trials.
    pub samples: Option<usize>,
    pub force: bool,
}

impl SuiteOptions {
    fn report_options(&self) -> ReportOptions {
        ReportOptions {
            mode: self.mode,
            force: self.force,
        }
    }

    fn group_or(&self, default: &str) -> Arc<Group> {
        self.group
            .clone()
            .unwrap_or_else(|| crate::parse::parse_group(default).expect("default group"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseFailure {
    /// Reproduction spec of the case.
    pub case: String,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupMode {
    pub group: String,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationSuiteResult {
    pub suite: Suite,
    pub seed: u64,
    /// Arithmetic used for each group that was solved.
    pub modes: Vec<GroupMode>,
    pub tolerance: f64,
    pub cases: usize,
    pub checks: usize,
    /// Sorted by case key.
    pub failures: Vec<CaseFailure>,
    /// Measured facts that are reported but not asserted.
    pub observations: BTreeMap<String, String>,
}

impl VerificationSuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<VerificationSuiteResult> {
    let mut run = Run::default();
    match suite {
        Suite::Basic => basic(&mut run, opts)?,
        Suite::Duality => duality(&mut run, opts)?,
        Suite::Union => union(&mut run, opts)?,
        Suite::Factor => factor(&mut run, opts)?,
        Suite::Product => product(&mut run, opts)?,
        Suite::Ambient => ambient(&mut run, opts)?,
        Suite::Dyadic => dyadic(&mut run, opts)?,
        Suite::Random => random(&mut run, opts)?,
    }
    Ok(run.finish(suite, opts.seed))
}

// ---------------------------------------------------------------------------
// Bookkeeping

#[derive(Default)]
struct Run {
    cases: Vec<Case>,
    modes: BTreeMap<String, Mode>,
    observations: BTreeMap<String, String>,
}

impl Run {
    fn push(&mut self, case: Case) {
        self.cases.push(case);
    }

    fn note_modes(&mut self, ev: &Evaluator) {
        for (label, mode) in ev.modes() {
            self.modes.insert(label, mode);
        }
    }

    fn observe(&mut self, key: impl Into<String>, value: impl ToString) {
        self.observations.insert(key.into(), value.to_string());
    }

    fn finish(mut self, suite: Suite, seed: u64) -> VerificationSuiteResult {
        self.cases.sort_by(|a, b| a.key.cmp(&b.key));
        let checks = self.cases.iter().map(|c| c.checks).sum();
        let cases = self.cases.len();
        let failures = self.cases.into_iter().flat_map(|c| c.failures).collect();
        VerificationSuiteResult {
            suite,
            seed,
            modes: self
                .modes
                .into_iter()
                .map(|(group, mode)| GroupMode { group, mode })
                .collect(),
            tolerance: INEQUALITY_SLACK,
            cases,
            checks,
            failures,
            observations: self.observations,
        }
    }
}

/// A value that is exact when the arithmetic allows it.
#[derive(Debug, Clone)]
struct Term {
    exact: Option<Rational>,
    approx: f64,
}

impl Term {
    fn int(n: usize) -> Self {
        Self {
            exact: Some(Rational::from_i64(n as i64)),
            approx: n as f64,
        }
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self {
            exact: Some(Rational::from_ratio(num, den)),
            approx: num as f64 / den as f64,
        }
    }

    fn float(x: f64) -> Self {
        Self {
            exact: None,
            approx: x,
        }
    }

    fn rational(r: Rational) -> Self {
        Self {
            approx: r.to_f64(),
            exact: Some(r),
        }
    }

    fn render(&self) -> String {
        match &self.exact {
            Some(r) => r.render(),
            None => format!("{:.12e}", self.approx),
        }
    }
}

impl std::ops::Mul for Term {
    type Output = Term;

    fn mul(self, rhs: Term) -> Term {
        Term {
            exact: match (self.exact, rhs.exact) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
            approx: self.approx * rhs.approx,
        }
    }
}

/// The six quantities in chain order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Q {
    Delta,
    Minus,
    Lambda,
    Pm,
    Plus,
    DeltaBar,
}

impl Q {
    const ALL: [Q; 6] = [Q::Delta, Q::Minus, Q::Lambda, Q::Pm, Q::Plus, Q::DeltaBar];
    /// The functionals that are monotone decreasing under inclusion.
    const MONOTONE: [Q; 5] = [Q::Delta, Q::DeltaBar, Q::Lambda, Q::Minus, Q::Plus];

    fn symbol(self) -> &'static str {
        match self {
            Q::Delta => "δ",
            Q::Minus => "λ⁻",
            Q::Lambda => "λ",
            Q::Pm => "λ±",
            Q::Plus => "λ⁺",
            Q::DeltaBar => "δ̄",
        }
    }

    fn variant(self) -> Option<Variant> {
        match self {
            Q::Minus => Some(Variant::Minus),
            Q::Lambda => Some(Variant::Lambda),
            Q::Pm => Some(Variant::PlusMinus),
            Q::Plus => Some(Variant::Plus),
            _ => None,
        }
    }
}

fn term(r: &QuantityReport, q: Q) -> Term {
    match q {
        Q::Delta => Term::rational(r.delta()),
        Q::DeltaBar => Term::rational(r.delta_bar()),
        _ => {
            let l = r.lambda(q.variant().expect("lambda quantity"));
            match l.exact_value() {
                Some(v) => Term::rational(v.clone()),
                None => Term::float(l.value_f64()),
            }
        }
    }
}

/// Checks belonging to one case.
struct Case {
    key: String,
    checks: usize,
    failures: Vec<CaseFailure>,
}

impl Case {
    fn new(key: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn holds(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(CaseFailure {
                case: self.key.clone(),
                check: check.into(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, check: &str, detail: String) {
        self.holds(check, false, || detail);
    }

    /// `lhs ≤ rhs`, exactly when both sides are exact.
    fn le(&mut self, check: &str, lhs: Term, rhs: Term) {
        let ok = match (&lhs.exact, &rhs.exact) {
            (Some(a), Some(b)) => a <= b,
            _ => lhs.approx <= rhs.approx + INEQUALITY_SLACK * rhs.approx.abs().max(1.0),
        };
        self.holds(check, ok, || format!("{} > {}", lhs.render(), rhs.render()));
    }

    fn ge(&mut self, check: &str, lhs: Term, rhs: Term) {
        let ok = match (&lhs.exact, &rhs.exact) {
            (Some(a), Some(b)) => a >= b,
            _ => lhs.approx + INEQUALITY_SLACK * lhs.approx.abs().max(1.0) >= rhs.approx,
        };
        self.holds(check, ok, || format!("{} < {}", lhs.render(), rhs.render()));
    }

    fn eq(&mut self, check: &str, lhs: Term, rhs: Term, tol: f64) {
        let ok = match (&lhs.exact, &rhs.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (lhs.approx - rhs.approx).abs() <= tol * rhs.approx.abs().max(1.0),
        };
        self.holds(check, ok, || format!("{} ≠ {}", lhs.render(), rhs.render()));
    }

    fn finish_into(self, run: &mut Run) {
        run.push(self);
    }
}

/// Deduplicates sets across groups and computes all six quantities for each
/// of them in parallel.
#[derive(Default)]
struct Evaluator {
    groups: Vec<Arc<Group>>,
    sets: Vec<StandardSet>,
    index: HashMap<(usize, Vec<bool>), usize>,
    reports: Vec<std::result::Result<QuantityReport, String>>,
}

impl Evaluator {
    fn canonical_group(&mut self, g: &Arc<Group>) -> (usize, Arc<Group>) {
        if let Some(i) = self
            .groups
            .iter()
            .position(|h| Arc::ptr_eq(h, g) || **h == **g)
        {
            return (i, Arc::clone(&self.groups[i]));
        }
        self.groups.push(Arc::clone(g));
        (self.groups.len() - 1, Arc::clone(g))
    }

    fn add(&mut self, a: &StandardSet) -> usize {
        let (gi, g) = self.canonical_group(a.group());
        let key = (gi, a.membership().to_vec());
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let set = if Arc::ptr_eq(&g, a.group()) {
            a.clone()
        } else {
            StandardSet::from_membership(&g, a.membership().to_vec()).expect("same group")
        };
        self.sets.push(set);
        self.index.insert(key, self.sets.len() - 1);
        self.sets.len() - 1
    }

    /// Computes every pending report. Chain violations become per-case
    /// failures; guard and mode errors abort the suite.
    fn run(&mut self, opts: &ReportOptions) -> Result<()> {
        let start = self.reports.len();
        let fresh: Vec<Result<QuantityReport>> = self.sets[start..]
            .par_iter()
            .map(|a| all_quantities(a, opts))
            .collect();
        for r in fresh {
            self.reports.push(match r {
                Ok(rep) => Ok(rep),
                Err(e @ (Error::Consistency(_) | Error::Solver(_))) => Err(e.to_string()),
                Err(e) => return Err(e),
            });
        }
        Ok(())
    }

    fn report(&self, id: usize) -> std::result::Result<&QuantityReport, &str> {
        self.reports[id].as_ref().map_err(|s| s.as_str())
    }

    fn t(&self, id: usize, q: Q) -> Term {
        term(self.report(id).expect("checked by caller"), q)
    }

    fn modes(&self) -> Vec<(String, Mode)> {
        self.reports
            .iter()
            .flatten()
            .map(|r| (r.set.group().label().to_string(), r.mode))
            .collect()
    }

    /// Records a failure for each id whose report failed; true if all are fine.
    fn all_ok(&self, case: &mut Case, ids: &[usize]) -> bool {
        let mut ok = true;
        for &id in ids {
            if let Err(msg) = self.report(id) {
                case.fail("quantities", format!("{}: {msg}", set_spec(&self.sets[id])));
                ok = false;
            }
        }
        ok
    }
}

fn suite_rng(seed: u64, part: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(part);
    rng
}

fn orbit_representatives(g: &Group) -> Vec<usize> {
    (1..g.order()).filter(|&x| x <= g.neg(x)).collect()
}

fn random_standard_set(g: &Arc<Group>, rng: &mut ChaCha8Rng) -> StandardSet {
    let mut members = vec![false; g.order()];
    members[0] = true;
    for x in orbit_representatives(g) {
        if rng.random_bool(0.5) {
            members[x] = true;
            members[g.neg(x)] = true;
        }
    }
    StandardSet::from_membership(g, members).expect("orbit union is standard")
}

/// Every standard set when `exhaustive` (or when there are at most `limit`),
/// otherwise `samples` seeded random ones plus `{0}` and `G`.
fn standard_sets(
    g: &Arc<Group>,
    exhaustive: bool,
    limit: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<StandardSet>> {
    let orbits = orbit_representatives(g).len();
    let total = if orbits < 63 {
        1usize << orbits
    } else {
        usize::MAX
    };
    if exhaustive || total <= limit {
        if orbits >= 20 {
            return Err(Error::SizeGuard(format!(
                "{} has 2^{orbits} standard sets, too many to enumerate",
                g.label()
            )));
        }
        return Ok(all_standard_sets(g));
    }
    let mut out = vec![StandardSet::zero(g), StandardSet::full(g)];
    out.extend((0..samples).map(|_| random_standard_set(g, rng)));
    Ok(out)
}

fn case_key(g: &Group, parts: &[(&str, &StandardSet)]) -> String {
    let mut key = format!("group={}", g.label());
    for (name, a) in parts {
        key.push_str(&format!(" {name}={}", set_spec(a)));
    }
    key
}

// ---------------------------------------------------------------------------
// Suites

/// Chain, extremal values, witnesses, complement involution, automorphism
/// invariance and monotonicity on one group.
fn basic(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z6");
    let q = g.order();
    let mut rng = suite_rng(opts.seed, 0);
    let sets = standard_sets(&g, opts.exhaustive, 0, opts.samples.unwrap_or(32), &mut rng)?;
    let unit = (2..g.exponent().max(2)).find(|u| num_integer::Integer::gcd(u, &g.exponent()) == 1);
    let mut ev = Evaluator::default();
    let ids: Vec<usize> = sets.iter().map(|a| ev.add(a)).collect();
    let images: Vec<Option<(StandardSet, usize)>> = sets
        .iter()
        .map(|a| {
            let u = unit?;
            let b = a.apply_automorphism(&Automorphism::Multiply(u)).ok()?;
            let id = ev.add(&b);
            Some((b, id))
        })
        .collect();
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);

    let (mut lambda_below, mut pm_below) = (0usize, 0usize);
    for (i, a) in sets.iter().enumerate() {
        let id = ids[i];
        let mut case = Case::new(case_key(&g, &[("A", a)]));
        case.holds(
            "standard complement is an involution",
            a.standard_complement().standard_complement() == *a,
            || "A'' ≠ A".into(),
        );
        if !ev.all_ok(&mut case, &[id]) {
            case.finish_into(run);
            continue;
        }
        let r = ev.report(id).expect("ok");
        let expected = if a.is_full() {
            Some(Term::ratio(1, q as i64))
        } else if a.is_zero() {
            Some(Term::int(1))
        } else {
            None
        };
        if let Some(e) = expected {
            for x in Q::ALL {
                case.eq(
                    &format!("extremal {}", x.symbol()),
                    ev.t(id, x),
                    e.clone(),
                    1e-9,
                );
            }
        }
        case.le("1/q ≤ δ", Term::ratio(1, q as i64), ev.t(id, Q::Delta));
        case.le("δ ≤ λ⁻", ev.t(id, Q::Delta), ev.t(id, Q::Minus));
        case.le("λ⁻ ≤ λ", ev.t(id, Q::Minus), ev.t(id, Q::Lambda));
        case.le("λ⁻ ≤ λ±", ev.t(id, Q::Minus), ev.t(id, Q::Pm));
        case.le("λ ≤ λ⁺", ev.t(id, Q::Lambda), ev.t(id, Q::Plus));
        case.le("λ± ≤ λ⁺", ev.t(id, Q::Pm), ev.t(id, Q::Plus));
        case.le("λ⁺ ≤ δ̄", ev.t(id, Q::Plus), ev.t(id, Q::DeltaBar));
        case.le("δ̄ ≤ 1", ev.t(id, Q::DeltaBar), Term::int(1));
        case.holds(
            "Δ witness",
            r.delta_witness.verify(a) && r.delta_witness.size() == r.delta_count,
            || {
                format!(
                    "witness {:?} fails for Δ = {}",
                    r.delta_witness.elements, r.delta_count
                )
            },
        );
        case.holds(
            "Δ̄ witness",
            r.delta_bar_witness.verify(a) && r.delta_bar_witness.size() == r.delta_bar_count,
            || {
                format!(
                    "witness {:?} fails for Δ̄ = {}",
                    r.delta_bar_witness.elements, r.delta_bar_count
                )
            },
        );
        for v in Variant::ALL {
            let l = r.lambda(v);
            let f = l.primal_f64();
            let tol = 1e-7;
            case.holds(
                &format!("{} primal witness", v.symbol()),
                v.contains(a, &f, tol) && (f.value(0) - l.value_f64()).abs() <= tol,
                || format!("f(0) = {}, value {}", f.value(0), l.value_f64()),
            );
        }
        let (l, pm) = (ev.t(id, Q::Lambda).approx, ev.t(id, Q::Pm).approx);
        if l < pm - 1e-9 {
            lambda_below += 1;
        }
        if pm < l - 1e-9 {
            pm_below += 1;
        }
        if let Some((b, bid)) = &images[i] {
            if ev.all_ok(&mut case, &[*bid]) {
                case.holds("automorphism preserves |A|", b.size() == a.size(), || {
                    format!("|π(A)| = {}", b.size())
                });
                for x in Q::ALL {
                    case.eq(
                        &format!("{}(π(A)) = {}(A)", x.symbol(), x.symbol()),
                        ev.t(*bid, x),
                        ev.t(id, x),
                        FLOAT_TOL,
                    );
                }
            }
        }
        case.finish_into(run);
    }

    // Monotonicity along single-orbit extensions inside the enumerated family.
    let mut pm_violations = 0usize;
    let by_members: HashMap<&[bool], usize> = sets
        .iter()
        .enumerate()
        .map(|(i, a)| (a.membership(), i))
        .collect();
    for (i, small) in sets.iter().enumerate() {
        for x in orbit_representatives(&g) {
            if small.contains(x) {
                continue;
            }
            let mut m = small.membership().to_vec();
            m[x] = true;
            m[g.neg(x)] = true;
            let Some(&j) = by_members.get(m.as_slice()) else {
                continue;
            };
            let (s, b) = (ids[i], ids[j]);
            if ev.report(s).is_err() || ev.report(b).is_err() {
                continue;
            }
            let mut case = Case::new(case_key(&g, &[("A1", small), ("A2", &sets[j])]));
            for y in Q::MONOTONE {
                case.le(&format!("{} monotone", y.symbol()), ev.t(b, y), ev.t(s, y));
            }
            if ev.t(b, Q::Pm).approx > ev.t(s, Q::Pm).approx + 1e-9 {
                pm_violations += 1;
            }
            case.finish_into(run);
        }
    }
    run.observe("sets", sets.len());
    run.observe("lambda_below_lambda_pm", lambda_below);
    run.observe("lambda_pm_below_lambda", pm_below);
    run.observe("lambda_pm_monotonicity_violations", pm_violations);
    Ok(())
}

/// `δ(A)δ̄(A′) = λ(A)λ(A′) = λ⁻(A)λ⁺(A′) = λ±(A)λ±(A′) = 1/q`, `Δ̄(A′) = Δ(A)`,
/// and the dual witnesses.
fn duality(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z2^3");
    let q = g.order();
    let mut rng = suite_rng(opts.seed, 1);
    let sets = standard_sets(&g, opts.exhaustive, 0, opts.samples.unwrap_or(50), &mut rng)?;
    let mut ev = Evaluator::default();
    let pairs: Vec<(usize, usize)> = sets
        .iter()
        .map(|a| (ev.add(a), ev.add(&a.standard_complement())))
        .collect();
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);
    let target = Term::ratio(1, q as i64);
    for (a, &(i, j)) in sets.iter().zip(&pairs) {
        let mut case = Case::new(case_key(&g, &[("A", a)]));
        if ev.all_ok(&mut case, &[i, j]) {
            let (r, rc) = (ev.report(i).unwrap(), ev.report(j).unwrap());
            case.holds(
                "Δ̄(A′) = Δ(A)",
                rc.delta_bar_count == r.delta_count,
                || format!("Δ̄(A′) = {}, Δ(A) = {}", rc.delta_bar_count, r.delta_count),
            );
            case.eq(
                "δ(A)·δ̄(A′)",
                ev.t(i, Q::Delta) * ev.t(j, Q::DeltaBar),
                target.clone(),
                0.0,
            );
            for (x, y) in [
                (Q::Lambda, Q::Lambda),
                (Q::Minus, Q::Plus),
                (Q::Plus, Q::Minus),
                (Q::Pm, Q::Pm),
            ] {
                let name = format!("{}(A)·{}(A′)", x.symbol(), y.symbol());
                case.eq(
                    &name,
                    ev.t(i, x) * ev.t(j, y) * Term::int(q),
                    Term::int(1),
                    IDENTITY_TOL,
                );
            }
            let ac = a.standard_complement();
            for v in Variant::ALL {
                let l = r.lambda(v);
                let g_dual = l.dual_f64();
                case.holds(
                    &format!("{} dual witness", v.symbol()),
                    v.dual().contains(&ac, &g_dual, 1e-7),
                    || "dual witness is not in the dual class of A′".into(),
                );
            }
        }
        case.finish_into(run);
    }
    run.observe("sets", sets.len());
    Ok(())
}

/// Intersection and union bounds with their monotone complements.
fn union(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z6");
    let q = g.order();
    let mut rng = suite_rng(opts.seed, 2);
    let samples = opts.samples.unwrap_or(100);
    let pairs: Vec<(StandardSet, StandardSet)> = {
        let orbits = orbit_representatives(&g).len();
        if opts.exhaustive || (orbits < 20 && (1usize << orbits) <= 16) {
            let all = standard_sets(&g, true, 0, 0, &mut rng)?;
            if all.len() > PAIR_ENUMERATION_LIMIT {
                return Err(Error::SizeGuard(format!(
                    "{} standard sets give too many pairs to enumerate",
                    all.len()
                )));
            }
            all.iter()
                .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
                .collect()
        } else {
            (0..samples)
                .map(|_| {
                    (
                        random_standard_set(&g, &mut rng),
                        random_standard_set(&g, &mut rng),
                    )
                })
                .collect()
        }
    };
    let mut ev = Evaluator::default();
    let ids: Vec<[usize; 4]> = pairs
        .iter()
        .map(|(a, b)| {
            let i = a.intersection(b).expect("same group");
            let u = a.union(b).expect("same group");
            [ev.add(a), ev.add(b), ev.add(&i), ev.add(&u)]
        })
        .collect();
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);
    let qt = || Term::int(q);
    for ((a, b), &[x, y, i, u]) in pairs.iter().zip(&ids) {
        let mut case = Case::new(case_key(&g, &[("A1", a), ("A2", b)]));
        if ev.all_ok(&mut case, &[x, y, i, u]) {
            let t = |id, w| ev.t(id, w);
            case.le(
                "δ̄(A1∩A2) ≤ q·δ̄(A1)δ̄(A2)",
                t(i, Q::DeltaBar),
                qt() * t(x, Q::DeltaBar) * t(y, Q::DeltaBar),
            );
            case.ge(
                "δ(A1∪A2) ≥ δ(A1)δ(A2)",
                t(u, Q::Delta),
                t(x, Q::Delta) * t(y, Q::Delta),
            );
            case.le(
                "λ(A1∩A2) ≤ q·λ(A1)λ(A2)",
                t(i, Q::Lambda),
                qt() * t(x, Q::Lambda) * t(y, Q::Lambda),
            );
            case.le(
                "λ⁺(A1∩A2) ≤ q·λ⁺(A1)λ⁺(A2)",
                t(i, Q::Plus),
                qt() * t(x, Q::Plus) * t(y, Q::Plus),
            );
            case.le(
                "λ⁻(A1∩A2) ≤ q·λ⁻(A1)λ⁺(A2)",
                t(i, Q::Minus),
                qt() * t(x, Q::Minus) * t(y, Q::Plus),
            );
            case.le(
                "λ±(A1∩A2) ≤ q·λ±(A1)λ⁺(A2)",
                t(i, Q::Pm),
                qt() * t(x, Q::Pm) * t(y, Q::Plus),
            );
            case.ge(
                "λ(A1∪A2) ≥ λ(A1)λ(A2)",
                t(u, Q::Lambda),
                t(x, Q::Lambda) * t(y, Q::Lambda),
            );
            case.ge(
                "λ⁺(A1∪A2) ≥ λ⁺(A1)λ⁻(A2)",
                t(u, Q::Plus),
                t(x, Q::Plus) * t(y, Q::Minus),
            );
            case.ge(
                "λ⁻(A1∪A2) ≥ λ⁻(A1)λ⁻(A2)",
                t(u, Q::Minus),
                t(x, Q::Minus) * t(y, Q::Minus),
            );
            case.ge(
                "λ±(A1∪A2) ≥ λ±(A1)λ⁻(A2)",
                t(u, Q::Pm),
                t(x, Q::Pm) * t(y, Q::Minus),
            );
            for w in Q::MONOTONE {
                let s = w.symbol();
                case.ge(&format!("{s}(A1∩A2) ≥ {s}(A1)"), t(i, w), t(x, w));
                case.ge(&format!("{s}(A1∩A2) ≥ {s}(A2)"), t(i, w), t(y, w));
                case.le(&format!("{s}(A1∪A2) ≤ {s}(A1)"), t(u, w), t(x, w));
                case.le(&format!("{s}(A1∪A2) ≤ {s}(A2)"), t(u, w), t(y, w));
            }
        }
        case.finish_into(run);
    }
    run.observe("pairs", pairs.len());
    Ok(())
}

fn subgroup_spec(h: &Subgroup) -> String {
    let g = h.parent();
    let parts: Vec<String> = h
        .elements()
        .iter()
        .map(|&x| g.element(x).to_string())
        .collect();
    format!("list:{}", parts.join(","))
}

/// Bounds for `A` against `A ∩ H` and `A/H`. The stronger `λ±` product bound
/// is measured only.
fn factor(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z12");
    let proper: Vec<Subgroup> = Subgroup::all(&g)
        .into_iter()
        .filter(|h| h.order() > 1 && h.order() < g.order())
        .collect();
    let order_two: Vec<Subgroup> = proper.iter().filter(|h| h.order() == 2).cloned().collect();
    let subgroups = if opts.exhaustive || order_two.is_empty() {
        proper
    } else {
        order_two
    };
    if subgroups.is_empty() {
        return Err(Error::Precondition(format!(
            "{} has no proper nontrivial subgroup",
            g.label()
        )));
    }
    let mut rng = suite_rng(opts.seed, 3);
    let sets = standard_sets(
        &g,
        opts.exhaustive,
        128,
        opts.samples.unwrap_or(50),
        &mut rng,
    )?;
    let mut ev = Evaluator::default();
    let mut rows = Vec::new();
    for h in &subgroups {
        for a in &sets {
            let ah = a.restrict_to_subgroup(h)?;
            let a1 = a.quotient_image(h)?;
            rows.push((h, a, [ev.add(a), ev.add(&ah), ev.add(&a1)]));
        }
    }
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);
    let mut stronger_fails = Vec::new();
    for (h, a, [x, xh, x1]) in rows {
        let mut case = Case::new(format!(
            "{} H={}",
            case_key(&g, &[("A", a)]),
            subgroup_spec(h)
        ));
        if ev.all_ok(&mut case, &[x, xh, x1]) {
            let t = |id, w| ev.t(id, w);
            case.ge(
                "δ(A) ≥ δ(A_H)δ(A/H)",
                t(x, Q::Delta),
                t(xh, Q::Delta) * t(x1, Q::Delta),
            );
            case.ge(
                "δ̄(A) ≥ δ̄(A_H)δ̄(A/H)",
                t(x, Q::DeltaBar),
                t(xh, Q::DeltaBar) * t(x1, Q::DeltaBar),
            );
            case.ge(
                "λ(A) ≥ λ(A_H)λ(A/H)",
                t(x, Q::Lambda),
                t(xh, Q::Lambda) * t(x1, Q::Lambda),
            );
            case.ge(
                "λ⁺(A) ≥ λ⁺(A_H)λ⁺(A/H)",
                t(x, Q::Plus),
                t(xh, Q::Plus) * t(x1, Q::Plus),
            );
            case.ge(
                "λ⁻(A) ≥ λ⁻(A_H)λ⁻(A/H)",
                t(x, Q::Minus),
                t(xh, Q::Minus) * t(x1, Q::Minus),
            );
            case.ge(
                "λ±(A) ≥ λ±(A_H)λ⁻(A/H)",
                t(x, Q::Pm),
                t(xh, Q::Pm) * t(x1, Q::Minus),
            );
            let stronger = t(xh, Q::Pm) * t(x1, Q::Pm);
            if t(x, Q::Pm).approx < stronger.approx - 1e-9 {
                stronger_fails.push(case.key.clone());
            }
        }
        case.finish_into(run);
    }
    stronger_fails.sort();
    run.observe("subgroups", subgroups.len());
    run.observe("sets", sets.len());
    run.observe("stronger_pm_counterexamples", stronger_fails.len());
    if let Some(first) = stronger_fails.first() {
        run.observe("stronger_pm_first_counterexample", first);
    }
    Ok(())
}

/// Splits a group spec into its first cyclic factor and the rest.
fn split_first_factor(g: &Group) -> Result<(Arc<Group>, Arc<Group>)> {
    let moduli = g.spec().moduli();
    if !g.is_ambient() || moduli.len() < 2 {
        return Err(Error::Precondition(format!(
            "the product suite needs a product of at least two cyclic factors, got {}",
            g.label()
        )));
    }
    Ok((
        Group::ambient(GroupSpec::new(moduli[..1].to_vec())?),
        Group::ambient(GroupSpec::new(moduli[1..].to_vec())?),
    ))
}

/// Direct products `A1 × A2`, and the diagonal example `A1 × A1′` in `G1²`.
fn product(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z4xZ3");
    let (g1, g2) = split_first_factor(&g)?;
    let mut rng = suite_rng(opts.seed, 4);
    let samples = opts.samples.unwrap_or(8);
    let s1 = standard_sets(&g1, opts.exhaustive, 16, samples, &mut rng)?;
    let s2 = standard_sets(&g2, opts.exhaustive, 16, samples, &mut rng)?;
    let diagonal_base = Group::cyclic(5)?;
    let diag_sets = all_standard_sets(&diagonal_base);

    let mut ev = Evaluator::default();
    let mut rows = Vec::new();
    for a1 in &s1 {
        for a2 in &s2 {
            let a = a1.product_set(a2)?;
            rows.push((a1, a2, [ev.add(&a), ev.add(a1), ev.add(a2)]));
        }
    }
    let diag: Vec<_> = diag_sets
        .iter()
        .map(|a1| {
            let a2 = a1.standard_complement();
            let a = a1.product_set(&a2).expect("product");
            (a1, [ev.add(&a), ev.add(a1), ev.add(&a2)])
        })
        .collect();
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);

    for (a1, a2, [x, x1, x2]) in rows {
        let mut case = Case::new(format!(
            "group={} A1={} A2={} (in {} and {})",
            g.label(),
            set_spec(a1),
            set_spec(a2),
            g1.label(),
            g2.label()
        ));
        if ev.all_ok(&mut case, &[x, x1, x2]) {
            let t = |id, w| ev.t(id, w);
            case.eq(
                "λ(A) = λ(A1)λ(A2)",
                t(x, Q::Lambda),
                t(x1, Q::Lambda) * t(x2, Q::Lambda),
                IDENTITY_TOL,
            );
            case.eq(
                "λ⁺(A) = λ⁺(A1)λ⁺(A2)",
                t(x, Q::Plus),
                t(x1, Q::Plus) * t(x2, Q::Plus),
                IDENTITY_TOL,
            );
            case.ge(
                "λ⁻(A) ≥ λ⁻(A1)λ⁻(A2)",
                t(x, Q::Minus),
                t(x1, Q::Minus) * t(x2, Q::Minus),
            );
            case.le(
                "λ⁻(A) ≤ λ⁻(A1)λ⁺(A2)",
                t(x, Q::Minus),
                t(x1, Q::Minus) * t(x2, Q::Plus),
            );
            case.ge(
                "λ±(A) ≥ λ±(A1)λ⁻(A2)",
                t(x, Q::Pm),
                t(x1, Q::Pm) * t(x2, Q::Minus),
            );
            case.le(
                "λ±(A) ≤ λ±(A1)λ⁺(A2)",
                t(x, Q::Pm),
                t(x1, Q::Pm) * t(x2, Q::Plus),
            );
            case.eq(
                "δ̄(A) = δ̄(A1)δ̄(A2)",
                t(x, Q::DeltaBar),
                t(x1, Q::DeltaBar) * t(x2, Q::DeltaBar),
                0.0,
            );
            case.ge(
                "δ(A) ≥ δ(A1)δ(A2)",
                t(x, Q::Delta),
                t(x1, Q::Delta) * t(x2, Q::Delta),
            );
            case.le(
                "δ(A) ≤ δ(A1)δ̄(A2)",
                t(x, Q::Delta),
                t(x1, Q::Delta) * t(x2, Q::DeltaBar),
            );
        }
        case.finish_into(run);
    }
    let q1 = diagonal_base.order() as i64;
    for (a1, [x, x1, x2]) in diag {
        let mut case = Case::new(format!(
            "diagonal group={} A1={}",
            diagonal_base.label(),
            set_spec(a1)
        ));
        if ev.all_ok(&mut case, &[x, x1, x2]) {
            let t = |id, w| ev.t(id, w);
            let inv = Term::ratio(1, q1);
            case.eq("δ(A1×A1′) = 1/q1", t(x, Q::Delta), inv.clone(), 0.0);
            case.eq(
                "λ(A1×A1′) = 1/q1",
                t(x, Q::Lambda),
                inv.clone(),
                IDENTITY_TOL,
            );
            case.eq(
                "δ(A1)δ̄(A1′) = 1/q1",
                t(x1, Q::Delta) * t(x2, Q::DeltaBar),
                inv,
                0.0,
            );
        }
        case.finish_into(run);
    }
    run.observe("products", s1.len() * s2.len());
    run.observe("diagonal_sets", diag_sets.len());
    Ok(())
}

fn basis_images(source: &GroupSpec, target: &GroupSpec, scale: &[u64]) -> Vec<Element> {
    (0..source.rank())
        .map(|i| {
            let mut r = vec![0; target.rank()];
            r[i] = scale[i];
            Element(r)
        })
        .collect()
}

/// All six quantities agree for `A` and its image under an embedding.
fn ambient(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let embeddings: Vec<Homomorphism> = match &opts.group {
        Some(g) => {
            let source = g.spec().clone();
            let target = source.product(&GroupSpec::cyclic(2)?)?;
            let images = basis_images(&source, &target, &vec![1; source.rank()]);
            vec![Homomorphism::new(source, target, images)]
        }
        None => {
            let z4 = GroupSpec::cyclic(4)?;
            let z8 = GroupSpec::cyclic(8)?;
            let z22 = GroupSpec::power(2, 2)?;
            let z24 = GroupSpec::power(2, 4)?;
            vec![
                Homomorphism::new(z4.clone(), z8.clone(), basis_images(&z4, &z8, &[2])),
                Homomorphism::new(z22.clone(), z24.clone(), basis_images(&z22, &z24, &[1, 1])),
            ]
        }
    };
    let mut rng = suite_rng(opts.seed, 5);
    let mut ev = Evaluator::default();
    let mut rows = Vec::new();
    for phi in &embeddings {
        let source = Group::ambient(phi.source.clone());
        let sets = standard_sets(
            &source,
            opts.exhaustive,
            256,
            opts.samples.unwrap_or(32),
            &mut rng,
        )?;
        for a in sets {
            let b = a.embed(phi)?;
            let ids = [ev.add(&a), ev.add(&b)];
            rows.push((phi, a, b, ids));
        }
    }
    ev.run(&opts.report_options())?;
    run.note_modes(&ev);
    for (phi, a, b, [x, y]) in &rows {
        let mut case = Case::new(format!(
            "{} into {}",
            case_key(a.group(), &[("A", a)]),
            phi.target.label()
        ));
        case.holds("embedding preserves |A|", a.size() == b.size(), || {
            format!("|φ(A)| = {}", b.size())
        });
        if ev.all_ok(&mut case, &[*x, *y]) {
            for w in Q::ALL {
                case.eq(
                    &format!("{} ambient invariance", w.symbol()),
                    ev.t(*y, w),
                    ev.t(*x, w),
                    AMBIENT_TOL,
                );
            }
        }
        case.finish_into(run);
    }
    run.observe("embeddings", embeddings.len());
    run.observe("sets", rows.len());
    Ok(())
}

/// Largest dimension for the Kleitman check by clique search.
const KLEITMAN_LIMIT: u32 = 8;
/// Largest dimension for the reduced-versus-full comparison.
const FULL_COMPARISON_LIMIT: u32 = 6;

/// Balls and antiballs in `Z₂ⁿ`: Kleitman, reduced versus full programs, `λ±`
/// bounds, duality and chain of the reduced values, Krawchouk identities.
fn dyadic(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let n = opts.n.unwrap_or(6);
    if n == 0 || n > 20 {
        return Err(Error::OutOfRange(format!("need 1 ≤ n ≤ 20, got {n}")));
    }
    if n > 12 && !opts.force {
        return Err(Error::SizeGuard(format!(
            "dyadic suite at n = {n} needs --force (n ≤ 12)"
        )));
    }
    let q = Term::rational(Rational::from_bigint(
        &(num_bigint::BigInt::from(1) << n as usize),
    ));

    let mut case = Case::new(format!("n={n} krawchouk"));
    case.holds(
        "Krawchouk identities",
        KrawchoukTable::new(n).check_identities(),
        || "table identities fail".into(),
    );
    case.finish_into(run);

    let kleitman: Vec<(u32, Result<usize>)> = if n <= KLEITMAN_LIMIT || opts.force {
        (0..n)
            .step_by(2)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|k| (k, ball_delta_bar(n, k)))
            .collect()
    } else {
        Vec::new()
    };
    for (k, got) in kleitman {
        let mut case = Case::new(format!("n={n} k={k} kleitman"));
        let expected = kleitman_value(n, k)?;
        match got {
            Ok(v) => case.holds(
                "Δ̄(B_k) = Σ_{i≤k/2} C(n,i)",
                num_bigint::BigInt::from(v) == expected,
                || format!("Δ̄(B_{k}) = {v}, expected {expected}"),
            ),
            Err(e) => case.fail("Δ̄(B_k)", e.to_string()),
        }
        case.finish_into(run);
    }

    for k in 0..=n {
        let ball = DyadicBallSpec::ball(n, k)?;
        let anti = DyadicBallSpec::antiball(n, k)?;
        let mut case = Case::new(format!("n={n} k={k} reduced"));
        let mut vals = HashMap::new();
        for spec in [ball, anti] {
            for v in Variant::ALL {
                match reduced_lambda(&spec, v) {
                    Ok(r) => {
                        vals.insert((spec.kind, v), r.value);
                    }
                    Err(e) => case.fail(&format!("reduced {}", v.symbol()), e.to_string()),
                }
            }
        }
        if vals.len() == 8 {
            let val = |kind, v| Term::rational(vals[&(kind, v)].clone());
            for (x, y) in [
                (Variant::Lambda, Variant::Lambda),
                (Variant::Minus, Variant::Plus),
                (Variant::Plus, Variant::Minus),
                (Variant::PlusMinus, Variant::PlusMinus),
            ] {
                case.eq(
                    &format!("{}(B_k)·{}(A_k)·q = 1", x.symbol(), y.symbol()),
                    val(ball.kind, x) * val(anti.kind, y) * q.clone(),
                    Term::int(1),
                    0.0,
                );
            }
            for kind in [ball.kind, anti.kind] {
                let name = format!("{kind:?}").to_lowercase();
                case.le(
                    &format!("{name}: 1/q ≤ λ⁻"),
                    Term::int(1),
                    val(kind, Variant::Minus) * q.clone(),
                );
                case.le(
                    &format!("{name}: λ⁻ ≤ λ"),
                    val(kind, Variant::Minus),
                    val(kind, Variant::Lambda),
                );
                case.le(
                    &format!("{name}: λ⁻ ≤ λ±"),
                    val(kind, Variant::Minus),
                    val(kind, Variant::PlusMinus),
                );
                case.le(
                    &format!("{name}: λ ≤ λ⁺"),
                    val(kind, Variant::Lambda),
                    val(kind, Variant::Plus),
                );
                case.le(
                    &format!("{name}: λ± ≤ λ⁺"),
                    val(kind, Variant::PlusMinus),
                    val(kind, Variant::Plus),
                );
                case.le(
                    &format!("{name}: λ⁺ ≤ 1"),
                    val(kind, Variant::Plus),
                    Term::int(1),
                );
            }
            if n <= FULL_COMPARISON_LIMIT {
                for spec in [ball, anti] {
                    let set = ball_set(&spec)?;
                    for v in Variant::ALL {
                        let full =
                            lambda_with(&set, v, opts.mode, &LpOptions { force: opts.force })?;
                        let full_term = match full.exact_value() {
                            Some(r) => Term::rational(r.clone()),
                            None => Term::float(full.value_f64()),
                        };
                        case.eq(
                            &format!("{:?} {} reduced = full", spec.kind, v.symbol()),
                            Term::rational(vals[&(spec.kind, v)].clone()),
                            full_term,
                            FLOAT_TOL,
                        );
                    }
                }
            }
            let gap = vals[&(anti.kind, Variant::PlusMinus)].clone()
                - vals[&(anti.kind, Variant::Minus)].clone();
            if gap.to_f64() > crate::dyadic::STRICT_MARGIN {
                match construct_nonmonotone_example(&anti) {
                    Ok(ex) => case.holds(
                        "λ±(A⁺) ≤ λ⁻(A_k) < λ±(A_k)",
                        ex.subset.is_subset_of(&ball_set(&anti)?)
                            && ex.subset_lambda_pm <= ex.lambda_minus
                            && ex.lambda_minus < ex.lambda_pm,
                        || "non-monotone example failed".into(),
                    ),
                    Err(e) => case.fail("non-monotone example", e.to_string()),
                }
            }
        }
        if 2 * k + 2 > n {
            match lambda_pm_ball_witness(n, k) {
                Ok(w) => {
                    case.le(
                        "λ±(B_k) ≤ (2k+2)/(q(2k+2−n))",
                        Term::rational(w.ball_value),
                        Term::rational(w.ball_bound),
                    );
                    case.ge(
                        "λ±(A_k) ≥ 1 − n/(2k+2)",
                        Term::rational(w.antiball_value),
                        Term::rational(w.antiball_bound),
                    );
                }
                Err(e) => case.fail("λ± ball witness", e.to_string()),
            }
        }
        case.finish_into(run);
    }
    run.modes.insert(format!("Z2^{n}"), Mode::Exact);
    run.observe("n", n);
    Ok(())
}

/// Sampler invariants, the `λ⁺` witness and duality on random sets, the
/// semisidon selection, and the three-term test against `Δ̄ ≥ 3`.
fn random(run: &mut Run, opts: &SuiteOptions) -> Result<()> {
    let g = opts.group_or("Z2^4");
    let rho = 0.5;
    let model = RandomModel::new(&g, rho, opts.seed)?;
    let trials = opts.samples.unwrap_or(2000);

    // Determinism and the mean size.
    let mut case = Case::new(format!(
        "group={} rho={rho} seed={} sampler",
        g.label(),
        opts.seed
    ));
    let sizes: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|t| sample_standard_set(&model, t).size())
        .collect();
    let again: Vec<usize> = (0..trials.min(50) as u64)
        .map(|t| sample_standard_set(&model, t).size())
        .collect();
    case.holds(
        "samples are reproducible",
        again[..] == sizes[..again.len()],
        || "resampling changed the sizes".into(),
    );
    let mean = sizes.iter().sum::<usize>() as f64 / trials.max(1) as f64;
    let expected = 1.0 + rho * (g.order() as f64 - 1.0);
    let var = rho * (1.0 - rho) * ((model.q1() as f64 - 1.0) + 4.0 * model.q2() as f64);
    let sigma = (var / trials.max(1) as f64).sqrt();
    case.holds(
        "E|R| = 1 + ρ(q−1) within 3σ",
        (mean - expected).abs() <= 3.0 * sigma,
        || format!("mean {mean}, expected {expected}, σ {sigma}"),
    );
    case.finish_into(run);

    // λ⁺ witness and duality on a few trials.
    let lp_trials = trials.min(20) as u64;
    let rows: Vec<Result<(u64, StandardSet, f64, f64, f64)>> = (0..lp_trials)
        .into_par_iter()
        .map(|t| {
            let r = sample_standard_set(&model, t);
            let lp = LpOptions { force: opts.force };
            let plus = lambda_with(&r, Variant::Plus, opts.mode, &lp)?.value_f64();
            let minus_c =
                lambda_with(&r.standard_complement(), Variant::Minus, opts.mode, &lp)?.value_f64();
            Ok((t, r.clone(), plus, minus_c, witness_lambda_plus_upper(&r)))
        })
        .collect();
    for row in rows {
        let (t, r, plus, minus_c, witness) = row?;
        let mut case = Case::new(format!(
            "group={} random:rho={rho},seed={} trial={t:04} {}",
            g.label(),
            opts.seed,
            set_spec(&r)
        ));
        case.holds("witness bound ≥ λ⁺", witness >= plus - 1e-9, || {
            format!("witness {witness} < λ⁺ {plus}")
        });
        let product = plus * minus_c * g.order() as f64;
        case.holds(
            "λ⁺(R)λ⁻(R′)q = 1",
            (product - 1.0).abs() <= IDENTITY_TOL,
            || format!("product {product}"),
        );
        case.finish_into(run);
    }

    // Semisidon selection.
    let z101 = Group::cyclic(101)?;
    let (m, k) = (64usize, 8usize);
    let bound = semisidon_bound(k, m).ceil() as usize;
    for t in 0..20u64 {
        let mut rng = suite_rng(opts.seed, 100 + t);
        let a: Vec<usize> = sample(&mut rng, 101, m).into_vec();
        let mut sorted = a.clone();
        sorted.sort_unstable();
        let mut case = Case::new(format!("semisidon Z101 trial={t:02} m={m} k={k}"));
        match semisidon_select(&z101, &a, k) {
            Ok(b) => {
                let count = difference_count(&z101, &b);
                let distinct = {
                    let mut s = b.clone();
                    s.sort_unstable();
                    s.dedup();
                    s.len() == k
                };
                case.holds(
                    "B ⊆ A, |B| = k",
                    distinct && b.iter().all(|x| sorted.binary_search(x).is_ok()),
                    || format!("B = {b:?}"),
                );
                case.holds(
                    "|B−B| ≥ ⌈1 + C(k,2)(1 − C(k,2)/m)⌉",
                    count >= bound,
                    || format!("|B−B| = {count} < {bound} for A = {sorted:?}"),
                );
            }
            Err(e) => case.fail("semisidon", e.to_string()),
        }
        case.finish_into(run);
    }

    // Three-term zero sums against Δ̄ ≥ 3 where 3 ∤ q.
    let z49 = Group::cyclic(49)?;
    let small = RandomModel::new(&z49, 0.05, opts.seed)?;
    let checks: Vec<(u64, StandardSet, Result<usize>)> = (0..50u64)
        .into_par_iter()
        .map(|t| {
            let r = sample_standard_set(&small, t);
            let d = delta_bar_with(&r, &SolverOptions::default()).map(|(v, _)| v);
            (t, r, d)
        })
        .collect();
    let mut disagreements = 0usize;
    for (t, r, d) in checks {
        let mut case = Case::new(format!(
            "threeterm Z49 random:rho=0.05,seed={} trial={t:02}",
            opts.seed
        ));
        let d = d?;
        let three = has_three_term_zero_sum(&r);
        if three != (d >= 3) {
            disagreements += 1;
        }
        case.holds(
            "three-term zero sum ⇔ Δ̄ ≥ 3",
            three == (d >= 3),
            || format!("{}: three-term {three}, Δ̄ = {d}", set_spec(&r)),
        );
        case.finish_into(run);
    }
    run.modes.insert(
        g.label().to_string(),
        if g.exact_available() {
            Mode::Exact
        } else {
            Mode::Float
        },
    );
    run.observe("trials", trials);
    run.observe("mean_size", mean);
    run.observe("three_sigma_mean", 3.0 * sigma);
    run.observe("three_term_disagreements", disagreements);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_group;

    fn opts(group: &str) -> SuiteOptions {
        SuiteOptions {
            group: Some(parse_group(group).unwrap()),
            exhaustive: true,
            ..Default::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::Parse(_))));
    }

    #[test]
    fn basic_on_z6_has_eight_sets() {
        let r = run_suite(Suite::Basic, &opts("Z6")).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.observations["sets"], "8");
    }

    #[test]
    fn duality_on_z2_cubed() {
        let r = run_suite(Suite::Duality, &opts("Z2^3")).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.cases, 128);
        assert!(r.modes.iter().all(|m| m.mode == Mode::Exact));
    }

    #[test]
    fn union_factor_product_ambient_defaults() {
        for s in [Suite::Union, Suite::Factor, Suite::Product, Suite::Ambient] {
            let r = run_suite(s, &SuiteOptions::default()).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn dyadic_small() {
        let r = run_suite(
            Suite::Dyadic,
            &SuiteOptions {
                n: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn failures_carry_reproduction_specs() {
        let mut case = Case::new("group=Z6 A=list:0,1,5");
        case.le("x ≤ y", Term::int(2), Term::int(1));
        case.le("x ≤ y", Term::float(1.0 + 1e-9), Term::float(1.0));
        assert_eq!(case.failures.len(), 1);
        assert_eq!(case.failures[0].case, "group=Z6 A=list:0,1,5");
        assert_eq!(case.checks, 2);
    }
}
