//! All six quantities of a standard set, with the chain
//! `1/q ≤ δ ≤ λ⁻ ≤ min(λ, λ±) ≤ max(λ, λ±) ≤ λ⁺ ≤ δ̄ ≤ 1` checked.

use serde::Serialize;

use crate::combinatorial::{
    delta_bar_density, delta_bar_with, delta_cap_with, delta_density, ExtremalWitness,
    SolverOptions,
};
use crate::error::{Error, Result};
use crate::group::StandardSet;
use crate::lp::lambda::{lambda_with, Lambda, LpOptions, ModeChoice, Variant, FLOAT_TOL};
use crate::scalar::{Mode, Rational, Scalar};

/// Options shared by the LP and clique stages.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub mode: ModeChoice,
    /// Skip the size guards of both solvers.
    pub force: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantityReport {
    pub set: StandardSet,
    pub mode: Mode,
    /// Slack used for the chain check: 0 in exact mode.
    pub tolerance: f64,
    /// `Δ(A)` and a witness.
    pub delta_count: usize,
    pub delta_witness: ExtremalWitness,
    /// `Δ̄(A)` and a witness.
    pub delta_bar_count: usize,
    pub delta_bar_witness: ExtremalWitness,
    /// Indexed like [`Variant::ALL`].
    pub lambdas: Vec<Lambda>,
}

/// Chain entry as it is rendered in reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainEntry {
    pub key: &'static str,
    pub value: f64,
    pub rendered: String,
}

impl QuantityReport {
    pub fn q(&self) -> usize {
        self.set.group().order()
    }

    pub fn delta(&self) -> Rational {
        delta_density(self.delta_count, self.q())
    }

    pub fn delta_bar(&self) -> Rational {
        delta_bar_density(self.delta_bar_count)
    }

    pub fn lambda(&self, v: Variant) -> &Lambda {
        &self.lambdas[Variant::ALL.iter().position(|&w| w == v).expect("variant")]
    }

    /// The six quantities in chain order `δ, λ⁻, λ, λ±, λ⁺, δ̄`.
    pub fn chain(&self) -> Vec<ChainEntry> {
        let exact = |key, r: Rational| ChainEntry {
            key,
            value: r.to_f64(),
            rendered: r.render(),
        };
        let lam = |v: Variant| {
            let l = self.lambda(v);
            ChainEntry {
                key: v.key(),
                value: l.value_f64(),
                rendered: l.render_value(),
            }
        };
        vec![
            exact("delta", self.delta()),
            lam(Variant::Minus),
            lam(Variant::Lambda),
            lam(Variant::PlusMinus),
            lam(Variant::Plus),
            exact("delta_bar", self.delta_bar()),
        ]
    }

    /// Checks the chain, exactly in exact mode.
    pub fn check_chain(&self) -> Result<()> {
        let q = self.q() as i64;
        let ordered: Vec<(String, Rational)> = match self.mode {
            Mode::Exact => {
                let ex = |v: Variant| self.lambda(v).exact_value().cloned().expect("exact");
                let (l, lpm) = (ex(Variant::Lambda), ex(Variant::PlusMinus));
                let (lo, hi) = if l <= lpm { (l, lpm) } else { (lpm, l) };
                vec![
                    ("1/q".into(), Rational::from_ratio(1, q)),
                    ("δ".into(), self.delta()),
                    ("λ⁻".into(), ex(Variant::Minus)),
                    ("min(λ,λ±)".into(), lo),
                    ("max(λ,λ±)".into(), hi),
                    ("λ⁺".into(), ex(Variant::Plus)),
                    ("δ̄".into(), self.delta_bar()),
                    ("1".into(), Rational::from_i64(1)),
                ]
            }
            Mode::Float => Vec::new(),
        };
        if !ordered.is_empty() {
            for w in ordered.windows(2) {
                if w[0].1 > w[1].1 {
                    return Err(self.chain_error(
                        &w[0].0,
                        w[0].1.to_f64(),
                        &w[1].0,
                        w[1].1.to_f64(),
                    ));
                }
            }
            return Ok(());
        }
        let f = |v: Variant| self.lambda(v).value_f64();
        let (l, lpm) = (f(Variant::Lambda), f(Variant::PlusMinus));
        let seq = [
            ("1/q", 1.0 / q as f64),
            ("δ", self.delta().to_f64()),
            ("λ⁻", f(Variant::Minus)),
            ("min(λ,λ±)", l.min(lpm)),
            ("max(λ,λ±)", l.max(lpm)),
            ("λ⁺", f(Variant::Plus)),
            ("δ̄", self.delta_bar().to_f64()),
            ("1", 1.0),
        ];
        for w in seq.windows(2) {
            if w[0].1 > w[1].1 + self.tolerance {
                return Err(self.chain_error(w[0].0, w[0].1, w[1].0, w[1].1));
            }
        }
        Ok(())
    }

    fn chain_error(&self, a: &str, x: f64, b: &str, y: f64) -> Error {
        Error::Consistency(format!(
            "chain violated for {} in {}: {a} = {x} > {b} = {y}",
            self.set,
            self.set.group().label()
        ))
    }
}

/// Computes `δ`, `λ⁻`, `λ`, `λ±`, `λ⁺`, `δ̄` for `a` and checks the chain.
///
/// The LP values bound the clique searches (`Δ ≤ q·λ⁻`, `Δ̄ ≤ 1/λ⁺`), which
/// lets the searches stop as soon as the bound is met.
pub fn all_quantities(a: &StandardSet, opts: &ReportOptions) -> Result<QuantityReport> {
    let lp_opts = LpOptions { force: opts.force };
    let lambdas = Variant::ALL
        .iter()
        .map(|&v| lambda_with(a, v, opts.mode, &lp_opts))
        .collect::<Result<Vec<_>>>()?;
    let mode = lambdas[0].mode();
    let q = a.group().order() as f64;
    let lam = |v: Variant| lambdas[Variant::ALL.iter().position(|&w| w == v).unwrap()].value_f64();
    let delta_bound = (q * lam(Variant::Minus) + 1e-6).floor() as usize;
    let delta_bar_bound = (1.0 / lam(Variant::Plus) + 1e-6).floor() as usize;
    let (delta_count, delta_witness) = delta_cap_with(
        a,
        &SolverOptions {
            force: opts.force,
            upper_bound: Some(delta_bound),
        },
    )?;
    let (delta_bar_count, delta_bar_witness) = delta_bar_with(
        a,
        &SolverOptions {
            force: opts.force,
            upper_bound: Some(delta_bar_bound),
        },
    )?;
    let report = QuantityReport {
        set: a.clone(),
        mode,
        tolerance: match mode {
            Mode::Exact => 0.0,
            Mode::Float => FLOAT_TOL,
        },
        delta_count,
        delta_witness,
        delta_bar_count,
        delta_bar_witness,
        lambdas,
    };
    report.check_chain()?;
    Ok(report)
}
