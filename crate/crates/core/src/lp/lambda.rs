//! The constants `λ`, `λ⁻`, `λ⁺`, `λ±` as linear programs over symmetric
//! functions, with primal witnesses and dual witnesses recovered from the
//! optimal dual solution.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fourier::{character_cos, character_value, check_mode, symmetric_transform, Function};
use crate::group::{Group, StandardSet};
use crate::lp::simplex::{solve_lp, Certificate, LinearProgram, LpStatus, RowSense, VarSign};
use crate::scalar::{Mode, Rational, Scalar};

/// Largest group order accepted by the full LP without `force`.
pub const FULL_LP_LIMIT: usize = 1024;

/// Tolerance used for float-mode witness checks.
pub const FLOAT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Lambda,
    Minus,
    Plus,
    PlusMinus,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Lambda,
        Variant::Minus,
        Variant::Plus,
        Variant::PlusMinus,
    ];

    /// The variant whose value on `A′` is paired with this one on `A`.
    pub fn dual(self) -> Variant {
        match self {
            Variant::Lambda => Variant::Lambda,
            Variant::Minus => Variant::Plus,
            Variant::Plus => Variant::Minus,
            Variant::PlusMinus => Variant::PlusMinus,
        }
    }

    /// Key used in reports: `lambda`, `lambda_minus`, `lambda_plus`, `lambda_pm`.
    pub fn key(self) -> &'static str {
        match self {
            Variant::Lambda => "lambda",
            Variant::Minus => "lambda_minus",
            Variant::Plus => "lambda_plus",
            Variant::PlusMinus => "lambda_pm",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Variant::Lambda => "λ",
            Variant::Minus => "λ⁻",
            Variant::Plus => "λ⁺",
            Variant::PlusMinus => "λ±",
        }
    }

    fn nonneg_on_set(self) -> bool {
        matches!(self, Variant::Plus | Variant::PlusMinus)
    }

    fn nonpos_off_set(self) -> bool {
        matches!(self, Variant::Minus | Variant::PlusMinus)
    }

    /// Sign of the LP variable for an element, or `None` when the class
    /// forces the value to 0.
    pub fn sign_for(self, in_set: bool) -> Option<VarSign> {
        match (in_set, self.nonneg_on_set(), self.nonpos_off_set()) {
            (true, true, _) => Some(VarSign::NonNeg),
            (true, false, _) => Some(VarSign::Free),
            (false, _, true) => Some(VarSign::NonPos),
            (false, _, false) => None,
        }
    }

    /// Whether `f` lies in this variant's function class for `a`, up to `tol`.
    pub fn contains<T: Scalar>(self, a: &StandardSet, f: &Function<T>, tol: f64) -> bool {
        let mut nonzero = false;
        for (x, v) in f.values().iter().enumerate() {
            let v = v.to_f64();
            nonzero |= v.abs() > tol;
            let ok = match self.sign_for(a.contains(x)) {
                Some(VarSign::Free) => true,
                Some(VarSign::NonNeg) => v >= -tol,
                Some(VarSign::NonPos) => v <= tol,
                None => v.abs() <= tol,
            };
            if !ok {
                return false;
            }
        }
        nonzero
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Classes `{x, -x}` of elements, or `{γ, γ̄}` of characters, with the class
/// of 0 (or of the principal character) first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitBasis {
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl OrbitBasis {
    fn from_involution(n: usize, partner: impl Fn(usize) -> usize) -> Self {
        let mut orbits = Vec::new();
        let mut orbit_of = vec![usize::MAX; n];
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let y = partner(x);
            orbit_of[x] = orbits.len();
            orbit_of[y] = orbits.len();
            orbits.push(if x == y { vec![x] } else { vec![x, y] });
        }
        Self { orbits, orbit_of }
    }

    pub fn elements(group: &Group) -> Self {
        Self::from_involution(group.order(), |x| group.neg(x))
    }

    pub fn characters(group: &Group) -> Self {
        Self::from_involution(group.char_count(), |c| group.char_conj(c))
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn representative(&self, o: usize) -> usize {
        self.orbits[o][0]
    }

    pub fn size(&self, o: usize) -> usize {
        self.orbits[o].len()
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }
}

/// Optimal value of a `λ`-family program with witnesses.
///
/// `primal` attains the value: it lies in the variant's class, has
/// nonnegative spectrum, `f̂(𝟙) = 1` and `f(0) = value`. `dual` has
/// nonnegative spectrum, `ĝ(𝟙) = value` and lies in the dual variant's class
/// for the standard complement, so it certifies
/// `variant.dual()(A′) ≤ 1/(q·value)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaResult<T> {
    pub variant: Variant,
    pub value: T,
    pub primal: Function<T>,
    pub dual: Function<T>,
    /// Optimal dual values: normalization row first, then one per
    /// non-principal character class.
    pub dual_values: Vec<T>,
    pub iterations: usize,
    pub certificate: Option<Certificate>,
}

impl<T: Scalar> LambdaResult<T> {
    pub fn mode(&self) -> Mode {
        T::MODE
    }
}

/// Options for [`lambda_constant_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LpOptions {
    /// Skip the [`FULL_LP_LIMIT`] size guard.
    pub force: bool,
}

fn tolerance<T: Scalar>(scale: f64) -> f64 {
    match T::MODE {
        Mode::Exact => 0.0,
        Mode::Float => FLOAT_TOL * scale.max(1.0),
    }
}

/// `λ`-family constant of `a` in the scalar field `T`.
pub fn lambda_constant<T: Scalar>(a: &StandardSet, variant: Variant) -> Result<LambdaResult<T>> {
    lambda_constant_with(a, variant, &LpOptions::default())
}

pub fn lambda_constant_with<T: Scalar>(
    a: &StandardSet,
    variant: Variant,
    opts: &LpOptions,
) -> Result<LambdaResult<T>> {
    let group = a.group();
    check_mode::<T>(group)?;
    let q = group.order();
    if q > FULL_LP_LIMIT && !opts.force {
        return Err(Error::SizeGuard(format!(
            "full LP on {} elements exceeds {FULL_LP_LIMIT}; use force to override",
            q
        )));
    }
    let elems = OrbitBasis::elements(group);
    let chars = OrbitBasis::characters(group);

    // One variable per element class that the variant does not force to 0.
    let mut vars = Vec::new();
    let mut signs = Vec::new();
    for o in 0..elems.len() {
        let x = elems.representative(o);
        if let Some(sign) = variant.sign_for(a.contains(x)) {
            vars.push(o);
            signs.push(sign);
        }
    }
    debug_assert_eq!(vars[0], 0);
    let mut objective = vec![T::zero(); vars.len()];
    objective[0] = T::one();
    let mut lp = LinearProgram::new(objective, signs);
    for c in 0..chars.len() {
        let gamma = chars.representative(c);
        let coeffs = vars
            .iter()
            .map(|&o| {
                let w = T::from_i64(elems.size(o) as i64);
                Ok(w * character_cos::<T>(group, elems.representative(o), gamma)?)
            })
            .collect::<Result<Vec<T>>>()?;
        if c == 0 {
            lp.add_row(coeffs, RowSense::Eq, T::one());
        } else {
            lp.add_row(coeffs, RowSense::Ge, T::zero());
        }
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!(
            "{} program reported {:?}; the point mass at 0 is always feasible",
            variant.symbol(),
            sol.status
        )));
    }

    let mut values = vec![T::zero(); q];
    for (&o, v) in vars.iter().zip(&sol.primal) {
        for &x in &elems.orbits()[o] {
            values[x] = v.clone();
        }
    }
    let primal = Function::new(group, values)?;
    let dual = witness_from_duals(group, &chars, &sol.dual)?;
    let result = LambdaResult {
        variant,
        value: sol.objective,
        primal,
        dual,
        dual_values: sol.dual,
        iterations: sol.iterations,
        certificate: sol.certificate,
    };
    verify_result(&result, a)?;
    Ok(result)
}

/// `q·g(x) = y₀ + Σ_c y_c cos(x, γ_c)`.
fn witness_from_duals<T: Scalar>(
    group: &Arc<Group>,
    chars: &OrbitBasis,
    duals: &[T],
) -> Result<Function<T>> {
    let q = group.order();
    let qt = T::from_i64(q as i64);
    let active: Vec<usize> = (1..chars.len())
        .filter(|&c| !duals[c].is_exactly_zero())
        .collect();
    let values = (0..q)
        .map(|x| {
            let mut acc = duals[0].clone();
            for &c in &active {
                acc =
                    acc + duals[c].clone() * character_cos::<T>(group, x, chars.representative(c))?;
            }
            Ok(acc / qt.clone())
        })
        .collect::<Result<Vec<T>>>()?;
    Function::new(group, values)
}

/// Rebuilds the dual witness `g` of `result` and checks that it has
/// nonnegative spectrum, `ĝ(𝟙) = value`, and lies in the dual class of `A′`.
pub fn dual_witness<T: Scalar>(result: &LambdaResult<T>, a: &StandardSet) -> Result<Function<T>> {
    let group = a.group();
    let chars = OrbitBasis::characters(group);
    if result.dual_values.len() != chars.len() {
        return Err(Error::Solver("dual values unavailable".into()));
    }
    let g = witness_from_duals(group, &chars, &result.dual_values)?;
    check_dual(&g, result, a)?;
    Ok(g)
}

fn check_dual<T: Scalar>(g: &Function<T>, result: &LambdaResult<T>, a: &StandardSet) -> Result<()> {
    let spectrum = symmetric_transform(g)?;
    let scale = result
        .dual_values
        .iter()
        .map(|v| v.to_f64().abs())
        .sum::<f64>();
    let tol = tolerance::<T>(scale);
    let principal = (spectrum[0].clone() - result.value.clone()).to_f64().abs();
    if principal > tol {
        return Err(Error::Consistency(format!(
            "dual witness has ĝ(𝟙) off by {principal:e}"
        )));
    }
    if let Some(v) = spectrum.iter().find(|v| v.to_f64() < -tol) {
        return Err(Error::Consistency(format!(
            "dual witness has negative Fourier coefficient {}",
            v.render()
        )));
    }
    let complement = a.standard_complement();
    if !result.variant.dual().contains(&complement, g, tol) {
        return Err(Error::Consistency(format!(
            "dual witness is not in the {} class of the complement",
            result.variant.dual().symbol()
        )));
    }
    Ok(())
}

fn verify_result<T: Scalar>(r: &LambdaResult<T>, a: &StandardSet) -> Result<()> {
    let q = a.group().order();
    let scale = r
        .primal
        .values()
        .iter()
        .map(|v| v.to_f64().abs())
        .sum::<f64>()
        * q as f64;
    let tol = tolerance::<T>(scale);
    if !r.variant.contains(a, &r.primal, tol) {
        return Err(Error::Consistency(format!(
            "primal witness is not in the {} class",
            r.variant.symbol()
        )));
    }
    let spectrum = symmetric_transform(&r.primal)?;
    let off = (spectrum[0].clone() - T::one()).to_f64().abs()
        + (r.primal.value(0).clone() - r.value.clone()).to_f64().abs();
    if off > tol || spectrum.iter().any(|v| v.to_f64() < -tol) {
        return Err(Error::Consistency(format!(
            "primal witness for {} fails normalization or positivity",
            r.variant.symbol()
        )));
    }
    let v = r.value.to_f64();
    if v < 1.0 / q as f64 - tol.max(1e-12) || v > 1.0 + tol.max(1e-12) {
        return Err(Error::Consistency(format!(
            "{} value {v} outside [1/q, 1]",
            r.variant.symbol()
        )));
    }
    check_dual(&r.dual, r, a)
}

/// Float value of the program over all real functions, without reducing to
/// symmetric ones: `f̂(γ)` is required to be real and nonnegative for every
/// character. Used to confirm that symmetrization loses nothing.
pub fn lambda_unsymmetrized(a: &StandardSet, variant: Variant) -> Result<f64> {
    let group = a.group();
    let q = group.order();
    let mut vars = Vec::new();
    let mut signs = Vec::new();
    for x in 0..q {
        if let Some(sign) = variant.sign_for(a.contains(x)) {
            vars.push(x);
            signs.push(sign);
        }
    }
    let mut objective = vec![0.0; vars.len()];
    objective[0] = 1.0;
    let mut lp = LinearProgram::new(objective, signs);
    for c in 0..group.char_count() {
        let vals: Vec<_> = vars.iter().map(|&x| character_value(group, x, c)).collect();
        let re: Vec<f64> = vals.iter().map(|z| z.re).collect();
        let im: Vec<f64> = vals.iter().map(|z| z.im).collect();
        if c == 0 {
            lp.add_row(re, RowSense::Eq, 1.0);
        } else {
            lp.add_row(re, RowSense::Ge, 0.0);
        }
        if im.iter().any(|v| *v != 0.0) {
            lp.add_row(im, RowSense::Eq, 0.0);
        }
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(format!(
            "unsymmetrized program {:?}",
            sol.status
        )));
    }
    Ok(sol.objective)
}

/// Requested arithmetic for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    /// Exact when the group exponent allows it, float otherwise.
    #[default]
    Auto,
    Exact,
    Float,
}

impl ModeChoice {
    pub fn resolve(self, group: &Group) -> Result<Mode> {
        match self {
            ModeChoice::Auto if group.exact_available() => Ok(Mode::Exact),
            ModeChoice::Auto | ModeChoice::Float => Ok(Mode::Float),
            ModeChoice::Exact if group.exact_available() => Ok(Mode::Exact),
            ModeChoice::Exact => Err(Error::ModeUnavailable(format!(
                "exact mode needs exponent in {{1,2,3,4,6}}; {} has exponent {}",
                group.label(),
                group.exponent()
            ))),
        }
    }
}

impl std::str::FromStr for ModeChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ModeChoice::Auto),
            "exact" => Ok(ModeChoice::Exact),
            "float" => Ok(ModeChoice::Float),
            _ => Err(Error::Parse(format!(
                "unknown mode '{s}' (auto|exact|float)"
            ))),
        }
    }
}

/// A [`LambdaResult`] in whichever arithmetic was used.
#[derive(Debug, Clone, PartialEq)]
pub enum Lambda {
    Exact(LambdaResult<Rational>),
    Float(LambdaResult<f64>),
}

impl Lambda {
    pub fn mode(&self) -> Mode {
        match self {
            Lambda::Exact(_) => Mode::Exact,
            Lambda::Float(_) => Mode::Float,
        }
    }

    pub fn variant(&self) -> Variant {
        match self {
            Lambda::Exact(r) => r.variant,
            Lambda::Float(r) => r.variant,
        }
    }

    pub fn value_f64(&self) -> f64 {
        match self {
            Lambda::Exact(r) => r.value.to_f64(),
            Lambda::Float(r) => r.value,
        }
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        match self {
            Lambda::Exact(r) => Some(&r.value),
            Lambda::Float(_) => None,
        }
    }

    pub fn render_value(&self) -> String {
        match self {
            Lambda::Exact(r) => r.value.render(),
            Lambda::Float(r) => r.value.render(),
        }
    }

    pub fn primal_f64(&self) -> Function<f64> {
        match self {
            Lambda::Exact(r) => r.primal.to_f64(),
            Lambda::Float(r) => r.primal.clone(),
        }
    }

    pub fn dual_f64(&self) -> Function<f64> {
        match self {
            Lambda::Exact(r) => r.dual.to_f64(),
            Lambda::Float(r) => r.dual.clone(),
        }
    }
}

/// Computes a `λ`-family constant, picking the arithmetic from `choice`.
pub fn lambda(a: &StandardSet, variant: Variant, choice: ModeChoice) -> Result<Lambda> {
    lambda_with(a, variant, choice, &LpOptions::default())
}

pub fn lambda_with(
    a: &StandardSet,
    variant: Variant,
    choice: ModeChoice,
    opts: &LpOptions,
) -> Result<Lambda> {
    match choice.resolve(a.group())? {
        Mode::Exact => lambda_constant_with::<Rational>(a, variant, opts).map(Lambda::Exact),
        Mode::Float => lambda_constant_with::<f64>(a, variant, opts).map(Lambda::Float),
    }
}
