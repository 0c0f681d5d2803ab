//! Hamming balls and antiballs in `Z₂ⁿ`: Krawchouk polynomials, the
//! norm-level reduction of the `λ` programs, Kleitman's diameter formula and
//! the explicit `λ±` ball witness.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorial::{delta_bar_with, SolverOptions};
use crate::error::{Error, Result};
use crate::fourier::{symmetric_transform, Function};
use crate::group::{Group, StandardSet};
use crate::lp::lambda::Variant;
use crate::lp::simplex::{solve_lp, LinearProgram, LpStatus, RowSense};
use crate::scalar::{Rational, Scalar};

/// Largest dimension for which sets and functions are materialized.
pub const MATERIALIZE_LIMIT: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    /// `B_k = {x : ‖x‖ ≤ k}`.
    Ball,
    /// `A_k = {x : ‖x‖ > k} ∪ {0}`.
    Antiball,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DyadicBallSpec {
    pub n: u32,
    pub k: u32,
    pub kind: BallKind,
}

impl DyadicBallSpec {
    pub fn new(n: u32, k: u32, kind: BallKind) -> Result<Self> {
        if n == 0 || k > n {
            return Err(Error::OutOfRange(format!(
                "need 0 ≤ k ≤ n and n ≥ 1, got n={n}, k={k}"
            )));
        }
        Ok(Self { n, k, kind })
    }

    pub fn ball(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, BallKind::Ball)
    }

    pub fn antiball(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, BallKind::Antiball)
    }

    /// Which norms `0..=n` belong to the set.
    pub fn levels(&self) -> Vec<bool> {
        (0..=self.n)
            .map(|i| match self.kind {
                BallKind::Ball => i <= self.k,
                BallKind::Antiball => i == 0 || i > self.k,
            })
            .collect()
    }

    pub fn complement(&self) -> Self {
        let kind = match self.kind {
            BallKind::Ball => BallKind::Antiball,
            BallKind::Antiball => BallKind::Ball,
        };
        Self { kind, ..*self }
    }
}

/// Hamming weight of each element of `Z₂ⁿ`, by local index.
pub fn norms(group: &Group) -> Vec<u32> {
    (0..group.order())
        .map(|x| group.element(x).0.iter().filter(|&&r| r == 1).count() as u32)
        .collect()
}

fn dyadic_group(n: u32) -> Result<Arc<Group>> {
    if n > MATERIALIZE_LIMIT {
        return Err(Error::OutOfRange(format!(
            "Z2^{n} is too large to materialize (n ≤ {MATERIALIZE_LIMIT})"
        )));
    }
    Group::power(2, n as usize)
}

/// The standard set of `Z₂ⁿ` made of the norm levels flagged in `levels`.
pub fn level_set(group: &Arc<Group>, levels: &[bool]) -> Result<StandardSet> {
    let members = norms(group)
        .into_iter()
        .map(|w| levels[w as usize])
        .collect();
    StandardSet::from_membership(group, members)
}

/// `B_k` or `A_k` as a standard set over `Z₂ⁿ`.
pub fn ball_set(spec: &DyadicBallSpec) -> Result<StandardSet> {
    let g = dyadic_group(spec.n)?;
    level_set(&g, &spec.levels())
}

/// Exact values `K_i(m)`, `0 ≤ i, m ≤ n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawchoukTable {
    n: u32,
    values: Vec<Vec<BigInt>>,
}

impl KrawchoukTable {
    pub fn new(n: u32) -> Self {
        let b = |a: u32, c: i64| -> BigInt {
            if c < 0 || c > a as i64 {
                BigInt::zero()
            } else {
                binomial(BigInt::from(a), BigInt::from(c))
            }
        };
        let values = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|m| {
                        (0..=i.min(m)).fold(BigInt::zero(), |acc, j| {
                            let term = b(m, j as i64) * b(n - m, i as i64 - j as i64);
                            if j % 2 == 0 {
                                acc + term
                            } else {
                                acc - term
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Self { n, values }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn get(&self, i: u32, m: u32) -> &BigInt {
        &self.values[i as usize][m as usize]
    }

    /// `K_i(0) = C(n,i)`, `K_0(m) = 1`, `K_1(m) = n - 2m`, and orthogonality
    /// `Σ_m C(n,m) K_i(m) K_j(m) = δ_ij 2ⁿ C(n,i)`.
    pub fn check_identities(&self) -> bool {
        let n = self.n;
        let c = |a: u32| binomial(BigInt::from(n), BigInt::from(a));
        let basic = (0..=n).all(|i| *self.get(i, 0) == c(i))
            && (0..=n).all(|m| self.get(0, m).is_one())
            && (n == 0
                || (0..=n).all(|m| *self.get(1, m) == BigInt::from(n as i64 - 2 * m as i64)));
        let two_n = BigInt::one() << n as usize;
        let orth = (0..=n).all(|i| {
            (0..=n).all(|j| {
                let s = (0..=n).fold(BigInt::zero(), |acc, m| {
                    acc + c(m) * self.get(i, m) * self.get(j, m)
                });
                s == if i == j {
                    &two_n * c(i)
                } else {
                    BigInt::zero()
                }
            })
        });
        basic && orth
    }
}

/// Optimal value of a `λ` program for a union of norm levels, solved over
/// functions that depend only on the norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedLambda {
    pub n: u32,
    pub variant: Variant,
    pub value: Rational,
    /// `a_i`, the value on norm level `i`.
    pub levels: Vec<Rational>,
    /// Dual values: `F(0) = 1` row first, then `F(m) ≥ 0` for `m = 1..n`.
    pub duals: Vec<Rational>,
}

impl ReducedLambda {
    /// Spread the level values over `Z₂ⁿ`.
    pub fn function(&self) -> Result<Function<Rational>> {
        let g = dyadic_group(self.n)?;
        let values = norms(&g)
            .into_iter()
            .map(|w| self.levels[w as usize].clone())
            .collect();
        Function::new(&g, values)
    }

    /// `F(m) = Σ_i a_i K_i(m)`, the spectrum value on characters of norm `m`.
    pub fn spectrum(&self, table: &KrawchoukTable) -> Vec<Rational> {
        (0..=self.n)
            .map(|m| {
                self.levels
                    .iter()
                    .enumerate()
                    .fold(Rational::from_i64(0), |acc, (i, a)| {
                        acc + a.clone() * Rational::from_bigint(table.get(i as u32, m))
                    })
            })
            .collect()
    }
}

/// Reduced program for the set of norm levels `in_set` (`in_set[0]` must
/// hold). Always exact: all coefficients are integers.
pub fn reduced_lambda_levels(n: u32, in_set: &[bool], variant: Variant) -> Result<ReducedLambda> {
    if in_set.len() != n as usize + 1 || !in_set[0] {
        return Err(Error::NotStandard("level set must contain norm 0".into()));
    }
    let table = KrawchoukTable::new(n);
    let mut vars = Vec::new();
    let mut signs = Vec::new();
    for (i, &inside) in in_set.iter().enumerate() {
        if let Some(s) = variant.sign_for(inside) {
            vars.push(i as u32);
            signs.push(s);
        }
    }
    let mut objective = vec![Rational::from_i64(0); vars.len()];
    objective[0] = Rational::from_i64(1);
    let mut lp = LinearProgram::new(objective, signs);
    for m in 0..=n {
        let coeffs = vars
            .iter()
            .map(|&i| Rational::from_bigint(table.get(i, m)))
            .collect();
        if m == 0 {
            lp.add_row(coeffs, RowSense::Eq, Rational::from_i64(1));
        } else {
            lp.add_row(coeffs, RowSense::Ge, Rational::from_i64(0));
        }
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!("reduced program {:?}", sol.status)));
    }
    let mut levels = vec![Rational::from_i64(0); n as usize + 1];
    for (&i, v) in vars.iter().zip(sol.primal) {
        levels[i as usize] = v;
    }
    Ok(ReducedLambda {
        n,
        variant,
        value: sol.objective,
        levels,
        duals: sol.dual,
    })
}

/// `λ`-family constant of `B_k` or `A_k` through the norm-level program.
pub fn reduced_lambda(spec: &DyadicBallSpec, variant: Variant) -> Result<ReducedLambda> {
    reduced_lambda_levels(spec.n, &spec.levels(), variant)
}

/// `|B_{k/2}| = Σ_{i ≤ k/2} C(n,i)`, the value of `Δ̄(B_k) = Δ(A_k)` for even
/// `k < n`.
pub fn kleitman_value(n: u32, k: u32) -> Result<BigInt> {
    if k % 2 == 1 || k >= n {
        return Err(Error::Precondition(format!(
            "the diameter formula needs even k < n, got n={n}, k={k}"
        )));
    }
    Ok((0..=k / 2).fold(BigInt::zero(), |acc, i| {
        acc + binomial(BigInt::from(n), BigInt::from(i))
    }))
}

/// `Δ̄(B_k)` by exact clique search, bounded above by `⌊1/λ⁺(B_k)⌋` from the
/// reduced program.
pub fn ball_delta_bar(n: u32, k: u32) -> Result<usize> {
    let spec = DyadicBallSpec::ball(n, k)?;
    let lp = reduced_lambda(&spec, Variant::Plus)?;
    let bound = (Rational::from_i64(1) / lp.value)
        .floor()
        .to_integer()
        .to_usize();
    let set = ball_set(&spec)?;
    let (value, _) = delta_bar_with(
        &set,
        &SolverOptions {
            force: false,
            upper_bound: bound,
        },
    )?;
    Ok(value)
}

/// Constant-free expressions from the Samorodnitsky-type estimates. They hold
/// only up to unspecified absolute constants and are reported, not asserted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub k: u32,
    /// `k / (2n)`.
    pub alpha: f64,
    /// Binary entropy of `alpha`.
    pub beta: f64,
    /// `n^{-1/4} C(2n,k)^{-1/2} 2ⁿ`.
    pub polynomial_sum: f64,
    /// `α^{1/4} q^{-β}`, the shape of the lower estimate for `λ(B_k)`.
    pub ball_lower: f64,
    /// `α^{-1/4} q^{β-1}`, the shape of the upper estimate for `λ(A_k)`.
    pub antiball_upper: f64,
    pub normative: bool,
}

pub fn samorodnitsky_bound(n: u32, k: u32) -> Result<BoundReport> {
    if k == 0 || k > n {
        return Err(Error::OutOfRange(format!(
            "need 1 ≤ k ≤ n, got n={n}, k={k}"
        )));
    }
    let alpha = k as f64 / (2.0 * n as f64);
    let beta = -(alpha * alpha.log2() + (1.0 - alpha) * (1.0 - alpha).log2());
    let c2nk = binomial(BigInt::from(2 * n), BigInt::from(k))
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let q = 2f64.powi(n as i32);
    Ok(BoundReport {
        n,
        k,
        alpha,
        beta,
        polynomial_sum: (n as f64).powf(-0.25) * c2nk.powf(-0.5) * q,
        ball_lower: alpha.powf(0.25) * q.powf(-beta),
        antiball_upper: alpha.powf(-0.25) * q.powf(beta - 1.0),
        normative: false,
    })
}

/// The explicit function `f(x) = 2(k+1-‖x‖)` in `S±(B_k)` and what it proves.
#[derive(Debug, Clone, PartialEq)]
pub struct PmBallWitness {
    pub n: u32,
    pub k: u32,
    /// Present when `n` is small enough to materialize.
    pub function: Option<Function<Rational>>,
    /// `(2k+2) / (q(2k+2-n))`, an upper bound for `λ±(B_k)`.
    pub ball_bound: Rational,
    /// `1 - n/(2k+2)`, a lower bound for `λ±(A_k)`.
    pub antiball_bound: Rational,
    pub ball_value: Rational,
    pub antiball_value: Rational,
}

/// Builds and checks the `λ±` witness for `B_k`, then confirms both bounds
/// against the reduced programs. Needs `n/2 - 1 < k ≤ n`.
pub fn lambda_pm_ball_witness(n: u32, k: u32) -> Result<PmBallWitness> {
    if 2 * k + 2 <= n || k > n {
        return Err(Error::Precondition(format!(
            "the λ± ball witness needs n/2 - 1 < k ≤ n, got n={n}, k={k}"
        )));
    }
    let q = Rational::from_bigint(&(BigInt::one() << n as usize));
    let kk = Rational::from_i64(2 * k as i64 + 2);
    let ball_bound = kk.clone() / (q.clone() * (kk.clone() - Rational::from_i64(n as i64)));
    let antiball_bound = Rational::from_i64(1) - Rational::from_i64(n as i64) / kk.clone();

    let function = if n <= 12 {
        let g = dyadic_group(n)?;
        let ball = ball_set(&DyadicBallSpec::ball(n, k)?)?;
        let f = Function::new(
            &g,
            norms(&g)
                .into_iter()
                .map(|w| Rational::from_i64(2 * (k as i64 + 1 - w as i64)))
                .collect(),
        )?;
        // Radial, so the spectrum is a Krawchouk sum over the norm levels.
        let table = KrawchoukTable::new(n);
        let spectrum: Vec<Rational> = (0..=n)
            .map(|m| {
                (0..=n).fold(Rational::from_i64(0), |acc, i| {
                    acc + Rational::from_i64(2 * (k as i64 + 1 - i as i64))
                        * Rational::from_bigint(table.get(i, m))
                })
            })
            .collect();
        let ok = Variant::PlusMinus.contains(&ball, &f, 0.0)
            && *f.value(0) == kk
            && spectrum[0] == q.clone() * (kk.clone() - Rational::from_i64(n as i64))
            && spectrum.iter().all(|v| !v.is_negative());
        if !ok {
            return Err(Error::Consistency(format!(
                "ball witness failed its checks at n={n}, k={k}"
            )));
        }
        Some(f)
    } else {
        None
    };
    let ball_value = reduced_lambda(&DyadicBallSpec::ball(n, k)?, Variant::PlusMinus)?.value;
    let antiball_value =
        reduced_lambda(&DyadicBallSpec::antiball(n, k)?, Variant::PlusMinus)?.value;
    if ball_value > ball_bound || antiball_value < antiball_bound {
        return Err(Error::Consistency(format!(
            "λ± ball bounds fail at n={n}, k={k}: λ±(B) = {}, λ±(A) = {}",
            ball_value.render(),
            antiball_value.render()
        )));
    }
    Ok(PmBallWitness {
        n,
        k,
        function,
        ball_bound,
        antiball_bound,
        ball_value,
        antiball_value,
    })
}

/// A witnessed failure of monotonicity for `λ±`: `A⁺ ⊆ A` with
/// `λ±(A⁺) ≤ λ⁻(A) < λ±(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonMonotoneExample {
    pub spec: DyadicBallSpec,
    pub subset: StandardSet,
    /// Norm levels making up `A⁺`.
    pub subset_levels: Vec<bool>,
    /// The extremal `λ⁻` function of `A`; it lies in `S±(A⁺)`.
    pub certificate: Function<Rational>,
    pub lambda_minus: Rational,
    pub lambda_pm: Rational,
    /// `λ±(A⁺)` from the reduced program.
    pub subset_lambda_pm: Rational,
}

/// Smallest gap `λ±(A) - λ⁻(A)` accepted as strict.
pub const STRICT_MARGIN: f64 = 1e-6;

/// Takes the extremal `λ⁻` function `f` of the antiball (or ball) `spec` and
/// forms `A⁺ = {x : f(x) > 0}`; `f` then certifies `λ±(A⁺) ≤ λ⁻(A)`.
pub fn construct_nonmonotone_example(spec: &DyadicBallSpec) -> Result<NonMonotoneExample> {
    let minus = reduced_lambda(spec, Variant::Minus)?;
    let pm = reduced_lambda(spec, Variant::PlusMinus)?;
    let gap = Scalar::to_f64(&(pm.value.clone() - minus.value.clone()));
    if gap <= STRICT_MARGIN {
        return Err(Error::Precondition(format!(
            "need λ⁻(A) < λ±(A), got λ⁻ = {} and λ± = {}",
            minus.value.render(),
            pm.value.render()
        )));
    }
    let subset_levels: Vec<bool> = minus.levels.iter().map(|a| a.is_positive()).collect();
    let certificate = minus.function()?;
    let g = certificate.group().clone();
    let set = ball_set(spec)?;
    let subset = level_set(&g, &subset_levels)?;

    // Independent re-check on the whole group.
    let spectrum = symmetric_transform(&certificate)?;
    let ratio = certificate.value(0).clone() / spectrum[0].clone();
    let ok = subset.is_subset_of(&set)
        && Variant::PlusMinus.contains(&subset, &certificate, 0.0)
        && spectrum.iter().all(|v| !v.is_negative())
        && ratio == minus.value;
    if !ok {
        return Err(Error::Consistency(
            "λ⁻ witness does not certify the subset".into(),
        ));
    }
    let subset_lambda_pm = reduced_lambda_levels(spec.n, &subset_levels, Variant::PlusMinus)?.value;
    if subset_lambda_pm > minus.value {
        return Err(Error::Consistency(format!(
            "λ±(A⁺) = {} exceeds its certificate {}",
            subset_lambda_pm.render(),
            minus.value.render()
        )));
    }
    Ok(NonMonotoneExample {
        spec: *spec,
        subset,
        subset_levels,
        certificate,
        lambda_minus: minus.value,
        lambda_pm: pm.value,
        subset_lambda_pm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::lambda::lambda_constant;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn ball_examples() {
        assert!(ball_set(&DyadicBallSpec::ball(2, 0).unwrap())
            .unwrap()
            .is_zero());
        assert!(ball_set(&DyadicBallSpec::ball(3, 3).unwrap())
            .unwrap()
            .is_full());
        assert_eq!(
            ball_set(&DyadicBallSpec::ball(4, 1).unwrap())
                .unwrap()
                .size(),
            5
        );
        let b = ball_set(&DyadicBallSpec::ball(5, 2).unwrap()).unwrap();
        let a = ball_set(&DyadicBallSpec::antiball(5, 2).unwrap()).unwrap();
        assert_eq!(b.standard_complement(), a);
        assert!(DyadicBallSpec::ball(3, 4).is_err());
    }

    #[test]
    fn krawchouk_identities() {
        for n in 1..=10 {
            assert!(KrawchoukTable::new(n).check_identities(), "n={n}");
        }
        let t = KrawchoukTable::new(4);
        assert_eq!(*t.get(2, 1), BigInt::zero());
    }

    #[test]
    fn krawchouk_matches_character_sums() {
        for n in 1..=6u32 {
            let g = Group::power(2, n as usize).unwrap();
            let w = norms(&g);
            let t = KrawchoukTable::new(n);
            for y in 0..g.order() {
                for i in 0..=n {
                    let s: i64 = (0..g.order())
                        .filter(|&x| w[x] == i)
                        .map(|x| if g.phase(x, y).0 == 0 { 1 } else { -1 })
                        .sum();
                    assert_eq!(BigInt::from(s), *t.get(i, w[g.character(y)]));
                }
            }
        }
    }

    #[test]
    fn reduced_extremes() {
        for n in 1..=9 {
            for v in Variant::ALL {
                let full = reduced_lambda(&DyadicBallSpec::ball(n, n).unwrap(), v).unwrap();
                assert_eq!(full.value, r(1, 1 << n));
                let zero = reduced_lambda(&DyadicBallSpec::ball(n, 0).unwrap(), v).unwrap();
                assert_eq!(zero.value, r(1, 1));
            }
        }
    }

    #[test]
    fn reduced_matches_full_program() {
        for n in 1..=4 {
            for k in 0..=n {
                for spec in [
                    DyadicBallSpec::ball(n, k).unwrap(),
                    DyadicBallSpec::antiball(n, k).unwrap(),
                ] {
                    let set = ball_set(&spec).unwrap();
                    for v in Variant::ALL {
                        let reduced = reduced_lambda(&spec, v).unwrap().value;
                        let full = lambda_constant::<Rational>(&set, v).unwrap().value;
                        assert_eq!(reduced, full, "{spec:?} {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn kleitman_examples() {
        assert_eq!(kleitman_value(4, 2).unwrap(), BigInt::from(5));
        assert_eq!(kleitman_value(6, 2).unwrap(), BigInt::from(7));
        assert_eq!(kleitman_value(6, 4).unwrap(), BigInt::from(22));
        assert!(kleitman_value(6, 3).is_err());
        assert!(kleitman_value(6, 6).is_err());
        assert_eq!(ball_delta_bar(6, 4).unwrap(), 22);
    }

    #[test]
    fn samorodnitsky_report() {
        let b = samorodnitsky_bound(8, 8).unwrap();
        assert!((b.alpha - 0.5).abs() < 1e-15 && (b.beta - 1.0).abs() < 1e-15);
        let b = samorodnitsky_bound(8, 4).unwrap();
        assert!((b.alpha - 0.25).abs() < 1e-15);
        assert!((b.beta - 0.811278124459).abs() < 1e-9);
        assert!(!b.normative);
    }

    #[test]
    fn pm_witness_examples() {
        let w = lambda_pm_ball_witness(4, 4).unwrap();
        assert_eq!(w.ball_bound, r(5, 48));
        assert_eq!(w.antiball_bound, r(3, 5));
        let w = lambda_pm_ball_witness(8, 5).unwrap();
        assert_eq!(w.antiball_bound, r(1, 3));
        let w = lambda_pm_ball_witness(6, 4).unwrap();
        assert!(Scalar::to_f64(&w.antiball_value) >= 0.4);
        assert!(lambda_pm_ball_witness(6, 1).is_err());
    }

    #[test]
    fn nonmonotone_example() {
        // At (6, 4) the two values coincide, so no strict example exists.
        match construct_nonmonotone_example(&DyadicBallSpec::antiball(6, 4).unwrap()) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("5/12"), "{msg}"),
            other => panic!("expected a precondition error, got {other:?}"),
        }
        let ex = construct_nonmonotone_example(&DyadicBallSpec::antiball(8, 5).unwrap()).unwrap();
        assert_eq!(ex.lambda_minus, r(9, 32));
        assert_eq!(ex.lambda_pm, r(1, 3));
        assert!(ex.subset_lambda_pm <= ex.lambda_minus);
        assert!(ex.subset.is_subset_of(&ball_set(&ex.spec).unwrap()));
        assert!(construct_nonmonotone_example(&DyadicBallSpec::antiball(6, 6).unwrap()).is_err());
    }
}
