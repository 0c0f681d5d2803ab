//! Two-phase tableau simplex, generic over the scalar field. Dantzig
//! pivoting falls back to Bland's rule on stalls. Exact over rationals; over
//! `f64` the final basis is re-solved from the original data and the result
//! is certified by residual checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

/// Sign restriction of a decision variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VarSign {
    Free,
    NonNeg,
    NonPos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowSense {
    Eq,
    Ge,
    Le,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row<T> {
    pub coeffs: Vec<T>,
    pub sense: RowSense,
    pub rhs: T,
}

/// `minimize c·x` subject to rows and variable signs.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub signs: Vec<VarSign>,
    pub rows: Vec<Row<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Residuals of an optimal primal/dual pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub complementarity: f64,
    pub gap: f64,
}

/// Solver output. Dual values follow the convention `y ≥ 0` on `Ge` rows,
/// `y ≤ 0` on `Le` rows, free on `Eq` rows, with `c - Aᵀy` sign-compatible
/// with each variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub primal: Vec<T>,
    pub dual: Vec<T>,
    pub objective: T,
    pub iterations: usize,
    pub certificate: Option<Certificate>,
}

/// Tolerance for float certification.
pub const FLOAT_CERT_TOL: f64 = 1e-8;

impl<T: Scalar> LinearProgram<T> {
    pub fn new(objective: Vec<T>, signs: Vec<VarSign>) -> Self {
        assert_eq!(objective.len(), signs.len());
        Self {
            objective,
            signs,
            rows: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<T>, sense: RowSense, rhs: T) {
        assert_eq!(coeffs.len(), self.num_vars(), "row width mismatch");
        self.rows.push(Row { coeffs, sense, rhs });
    }

    fn dot(a: &[T], x: &[T]) -> T {
        a.iter()
            .zip(x)
            .filter(|(c, v)| !c.is_exactly_zero() && !v.is_exactly_zero())
            .fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
    }

    /// Residuals of a primal/dual pair, measured against this program.
    pub fn certify(&self, x: &[T], y: &[T]) -> Certificate {
        let mut primal: f64 = 0.0;
        let mut dual: f64 = 0.0;
        let mut comp: f64 = 0.0;
        for (row, yi) in self.rows.iter().zip(y) {
            let slack = (Self::dot(&row.coeffs, x) - row.rhs.clone()).to_f64();
            let yv = yi.to_f64();
            match row.sense {
                RowSense::Eq => primal = primal.max(slack.abs()),
                RowSense::Ge => {
                    primal = primal.max((-slack).max(0.0));
                    dual = dual.max((-yv).max(0.0));
                    comp = comp.max((slack * yv).abs());
                }
                RowSense::Le => {
                    primal = primal.max(slack.max(0.0));
                    dual = dual.max(yv.max(0.0));
                    comp = comp.max((slack * yv).abs());
                }
            }
        }
        for j in 0..self.num_vars() {
            let mut d = self.objective[j].clone();
            for (row, yi) in self.rows.iter().zip(y) {
                if !row.coeffs[j].is_exactly_zero() {
                    d = d - row.coeffs[j].clone() * yi.clone();
                }
            }
            let d = d.to_f64();
            let xv = x[j].to_f64();
            match self.signs[j] {
                VarSign::Free => dual = dual.max(d.abs()),
                VarSign::NonNeg => {
                    primal = primal.max((-xv).max(0.0));
                    dual = dual.max((-d).max(0.0));
                }
                VarSign::NonPos => {
                    primal = primal.max(xv.max(0.0));
                    dual = dual.max(d.max(0.0));
                }
            }
            comp = comp.max((d * xv).abs());
        }
        let pobj = Self::dot(&self.objective, x).to_f64();
        let dobj: f64 = self
            .rows
            .iter()
            .zip(y)
            .map(|(r, yi)| r.rhs.to_f64() * yi.to_f64())
            .sum();
        Certificate {
            primal_residual: primal,
            dual_residual: dual,
            complementarity: comp,
            gap: (pobj - dobj).abs(),
        }
    }
}

impl Certificate {
    pub fn within(&self, tol: f64, objective: f64) -> bool {
        self.primal_residual <= tol
            && self.dual_residual <= tol
            && self.gap <= tol * objective.abs().max(1.0)
    }
}

/// Column of the standard-form matrix that came from an original variable.
#[derive(Debug, Clone, Copy)]
struct Split {
    plus: Option<usize>,
    minus: Option<usize>,
}

/// Degenerate pivots in a row before switching to Bland's rule.
const STALL_LIMIT: usize = 50;
/// Smallest pivot accepted by the float ratio test.
const PIVOT_TOL: f64 = 1e-9;
/// Primal slack allowed by the first pass of the float ratio test.
const HARRIS_TOL: f64 = 1e-10;

struct Tableau<T> {
    m: usize,
    width: usize,
    /// `m` constraint rows followed by the objective row; last column is rhs.
    t: Vec<T>,
    basis: Vec<usize>,
    barred: Vec<bool>,
    iterations: usize,
    /// Pivot budget in float mode; exceeding it sets `exhausted`.
    limit: usize,
    exhausted: bool,
}

impl<T: Scalar> Tableau<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.t[i * self.width + j]
    }

    fn rhs(&self, i: usize) -> &T {
        self.at(i, self.width - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.width;
        let p = self.at(r, c).clone();
        let mut prow: Vec<(usize, T)> = Vec::new();
        for j in 0..w {
            let v = &self.t[r * w + j];
            if !v.is_exactly_zero() {
                let nv = (v.clone() / p.clone()).snap();
                self.t[r * w + j] = nv.clone();
                if !nv.is_exactly_zero() {
                    prow.push((j, nv));
                }
            }
        }
        self.t[r * w + c] = T::one();
        for i in 0..=self.m {
            if i == r {
                continue;
            }
            let f = self.t[i * w + c].clone();
            if f.is_exactly_zero() {
                continue;
            }
            for (j, v) in &prow {
                let idx = i * w + j;
                self.t[idx] = (self.t[idx].clone() - f.clone() * v.clone()).snap();
            }
            self.t[i * w + c] = T::zero();
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Runs the simplex method on the current objective row.
    ///
    /// Entering columns follow Dantzig's rule until [`STALL_LIMIT`]
    /// consecutive degenerate pivots occur; from then on Bland's rule is used
    /// for both choices, which cannot cycle. In float mode the leaving row is
    /// picked by a two-pass (Harris) ratio test that favours large pivots.
    fn optimize(&mut self) -> LpStatus {
        let ncols = self.width - 1;
        let mut stall = 0;
        loop {
            let bland = stall >= STALL_LIMIT;
            let candidates = (0..ncols).filter(|&j| !self.barred[j] && self.at(self.m, j).is_neg());
            let entering = if bland {
                candidates.min()
            } else {
                candidates.min_by(|&a, &b| {
                    let (da, db) = (self.at(self.m, a), self.at(self.m, b));
                    da.partial_cmp(db).unwrap_or(std::cmp::Ordering::Equal)
                })
            };
            let Some(c) = entering else {
                return LpStatus::Optimal;
            };
            let leave = if T::MODE == Mode::Float && !bland {
                self.harris_row(c)
            } else {
                self.bland_row(c)
            };
            let Some(r) = leave else {
                return LpStatus::Unbounded;
            };
            if T::MODE == Mode::Float && self.iterations >= self.limit {
                self.exhausted = true;
                return LpStatus::Optimal;
            }
            if self.rhs(r).is_zero_tol() {
                stall += 1;
            } else {
                stall = 0;
            }
            self.pivot(r, c);
        }
    }

    /// Minimum-ratio row, ties to the smallest basic index.
    fn bland_row(&self, c: usize) -> Option<usize> {
        let mut leave: Option<(usize, T)> = None;
        for i in 0..self.m {
            let a = self.at(i, c);
            if !a.is_pos() {
                continue;
            }
            let ratio = self.rhs(i).clone() / a.clone();
            let better = match &leave {
                None => true,
                Some((bi, br)) => {
                    let diff = ratio.clone() - br.clone();
                    diff.is_neg() || (diff.is_zero_tol() && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        leave.map(|(r, _)| r)
    }

    /// Among rows whose ratio is within a small tolerance of the minimum,
    /// the one with the largest pivot.
    fn harris_row(&self, c: usize) -> Option<usize> {
        let rows: Vec<(usize, f64, f64)> = (0..self.m)
            .filter_map(|i| {
                let a = self.at(i, c).to_f64();
                (a > PIVOT_TOL).then(|| (i, self.rhs(i).to_f64().max(0.0), a))
            })
            .collect();
        let bound = rows
            .iter()
            .map(|&(_, b, a)| (b + HARRIS_TOL) / a)
            .fold(f64::INFINITY, f64::min);
        rows.into_iter()
            .filter(|&(_, b, a)| b / a <= bound)
            .max_by(|x, y| x.2.partial_cmp(&y.2).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _, _)| i)
    }

    /// Float dual simplex: pivots out rows with negative right-hand side
    /// while keeping reduced costs nonnegative. Returns `false` when a row
    /// admits no entering column.
    fn dual_optimize(&mut self) -> bool {
        let ncols = self.width - 1;
        loop {
            let row = (0..self.m)
                .map(|i| (i, self.rhs(i).to_f64()))
                .filter(|&(_, b)| b < -HARRIS_TOL)
                .min_by(|x, y| x.1.total_cmp(&y.1));
            let Some((r, _)) = row else {
                return true;
            };
            let cols: Vec<(usize, f64, f64)> = (0..ncols)
                .filter(|&j| !self.barred[j])
                .filter_map(|j| {
                    let a = self.at(r, j).to_f64();
                    (a < -PIVOT_TOL).then(|| (j, self.at(self.m, j).to_f64().max(0.0), -a))
                })
                .collect();
            let bound = cols
                .iter()
                .map(|&(_, d, a)| (d + HARRIS_TOL) / a)
                .fold(f64::INFINITY, f64::min);
            let pick = cols
                .into_iter()
                .filter(|&(_, d, a)| d / a <= bound)
                .max_by(|x, y| x.2.total_cmp(&y.2));
            let Some((c, _, _)) = pick else {
                return false;
            };
            if self.iterations >= self.limit {
                self.exhausted = true;
                return true;
            }
            self.pivot(r, c);
        }
    }

    /// Replaces the right-hand side column by `B⁻¹ b` for the original `b`.
    fn reset_rhs(&mut self, a_std: &[Vec<T>], b_std: &[T], costs: &[T]) -> Result<()> {
        let m = self.m;
        let bmat: Vec<Vec<T>> = (0..m)
            .map(|i| self.basis.iter().map(|&j| a_std[i][j].clone()).collect())
            .collect();
        let xb = solve_dense(bmat, b_std.to_vec())?;
        let w = self.width;
        let mut z = T::zero();
        for (i, v) in xb.into_iter().enumerate() {
            z = z + costs[self.basis[i]].clone() * v.clone();
            self.t[i * w + w - 1] = v.snap();
        }
        self.t[m * w + w - 1] = (-z).snap();
        Ok(())
    }

    fn set_objective(&mut self, costs: &[T]) {
        let w = self.width;
        let m = self.m;
        for j in 0..w {
            let mut d = if j < costs.len() {
                costs[j].clone()
            } else {
                T::zero()
            };
            for i in 0..m {
                let cb = &costs[self.basis[i]];
                if !cb.is_exactly_zero() {
                    let a = &self.t[i * w + j];
                    if !a.is_exactly_zero() {
                        d = d - cb.clone() * a.clone();
                    }
                }
            }
            self.t[m * w + j] = d.snap();
        }
    }
}

/// Gaussian elimination with partial pivoting on a dense square system.
fn solve_dense<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_exactly_zero())
            .max_by(|&r, &s| {
                a[r][col]
                    .magnitude()
                    .partial_cmp(&a[s][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or_else(|| Error::Solver("singular basis".into()))?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_exactly_zero() {
                continue;
            }
            let f = a[r][col].clone() / p.clone();
            for k in col..n {
                if !a[col][k].is_exactly_zero() {
                    a[r][k] = a[r][k].clone() - f.clone() * a[col][k].clone();
                }
            }
            b[r] = b[r].clone() - f * b[col].clone();
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let mut s = b[r].clone();
        for k in r + 1..n {
            if !a[r][k].is_exactly_zero() {
                s = s - a[r][k].clone() * x[k].clone();
            }
        }
        x[r] = s / a[r][r].clone();
    }
    Ok(x)
}

/// Solves `p` with the two-phase simplex method.
///
/// Infeasible and unbounded programs are reported through
/// [`LpSolution::status`]. In float mode an optimal answer is returned only
/// when primal and dual residuals and the duality gap are within
/// [`FLOAT_CERT_TOL`]; otherwise the call fails with [`Error::Solver`].
pub fn solve_lp<T: Scalar>(p: &LinearProgram<T>) -> Result<LpSolution<T>> {
    let n = p.num_vars();
    let m = p.rows.len();

    // Standard form: split variables, add slacks, make rhs nonnegative.
    let mut splits = Vec::with_capacity(n);
    let mut ncols = 0;
    for s in &p.signs {
        let sp = match s {
            VarSign::NonNeg => Split {
                plus: Some(ncols),
                minus: None,
            },
            VarSign::NonPos => Split {
                plus: None,
                minus: Some(ncols),
            },
            VarSign::Free => Split {
                plus: Some(ncols),
                minus: Some(ncols + 1),
            },
        };
        ncols += if *s == VarSign::Free { 2 } else { 1 };
        splits.push(sp);
    }
    let mut slack_col = vec![None; m];
    for (i, r) in p.rows.iter().enumerate() {
        if r.sense != RowSense::Eq {
            slack_col[i] = Some(ncols);
            ncols += 1;
        }
    }
    let mut flip = vec![false; m];
    for (i, r) in p.rows.iter().enumerate() {
        // Homogeneous `≥` rows are flipped too, so their slack starts basic.
        flip[i] = r.rhs.is_neg() || (r.sense == RowSense::Ge && r.rhs.is_exactly_zero());
    }
    // Identity column per row: a slack with coefficient +1, else an artificial.
    let mut ident = vec![0usize; m];
    let mut art_rows = Vec::new();
    for (i, r) in p.rows.iter().enumerate() {
        let slack_sign_pos = match r.sense {
            RowSense::Le => !flip[i],
            RowSense::Ge => flip[i],
            RowSense::Eq => false,
        };
        if slack_sign_pos {
            ident[i] = slack_col[i].expect("inequality row has a slack");
        } else {
            ident[i] = ncols + art_rows.len();
            art_rows.push(i);
        }
    }
    let total = ncols + art_rows.len();
    let width = total + 1;

    // Dense standard-form matrix (columns `0..total`) and rhs.
    let mut a_std: Vec<Vec<T>> = vec![vec![T::zero(); total]; m];
    let mut b_std: Vec<T> = Vec::with_capacity(m);
    for (i, r) in p.rows.iter().enumerate() {
        let sgn = if flip[i] { -T::one() } else { T::one() };
        for (j, c) in r.coeffs.iter().enumerate() {
            if c.is_exactly_zero() {
                continue;
            }
            let v = c.clone() * sgn.clone();
            if let Some(pc) = splits[j].plus {
                a_std[i][pc] = v.clone();
            }
            if let Some(mc) = splits[j].minus {
                a_std[i][mc] = -v;
            }
        }
        if let Some(sc) = slack_col[i] {
            let s = if r.sense == RowSense::Ge {
                -T::one()
            } else {
                T::one()
            };
            a_std[i][sc] = s * sgn.clone();
        }
        if ident[i] >= ncols {
            a_std[i][ident[i]] = T::one();
        }
        b_std.push(r.rhs.clone() * sgn);
    }
    let mut c_std = vec![T::zero(); total];
    for (j, c) in p.objective.iter().enumerate() {
        if let Some(pc) = splits[j].plus {
            c_std[pc] = c.clone();
        }
        if let Some(mc) = splits[j].minus {
            c_std[mc] = -c.clone();
        }
    }

    let mut t = vec![T::zero(); (m + 1) * width];
    for i in 0..m {
        for j in 0..total {
            t[i * width + j] = a_std[i][j].clone();
        }
        t[i * width + total] = b_std[i].clone();
    }
    let mut tab = Tableau {
        m,
        width,
        t,
        basis: ident.clone(),
        barred: vec![false; total],
        iterations: 0,
        limit: 40 * (m + total) + 10_000,
        exhausted: false,
    };
    // In float mode the homogeneous rows make almost every pivot degenerate;
    // relaxing each slack row by a tiny distinct amount avoids the stalls.
    // The true right-hand side is restored after phase II.
    let perturbed = T::MODE == Mode::Float;
    if perturbed {
        for i in 0..m {
            if ident[i] < ncols {
                let jitter = (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 54;
                let idx = i * width + total;
                tab.t[idx] = tab.t[idx].clone() + T::from_ratio(100 + jitter as i64, 1_000_000_000);
            }
        }
    }

    // Phase I.
    if !art_rows.is_empty() {
        let mut costs = vec![T::zero(); total];
        for c in costs.iter_mut().skip(ncols) {
            *c = T::one();
        }
        tab.set_objective(&costs);
        tab.optimize();
        let infeas = -tab.at(m, total).clone();
        let scale = b_std.iter().map(|v| v.magnitude()).fold(1.0, f64::max);
        let infeasible = match T::MODE {
            Mode::Exact => infeas.is_pos(),
            Mode::Float => infeas.to_f64() > 1e-9 * scale,
        };
        if infeasible {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                primal: Vec::new(),
                dual: Vec::new(),
                objective: T::zero(),
                iterations: tab.iterations,
                certificate: None,
            });
        }
        // Drive artificials out of the basis where a structural pivot exists.
        for i in 0..m {
            if tab.basis[i] < ncols {
                continue;
            }
            let best = (0..ncols)
                .filter(|&j| !tab.at(i, j).is_zero_tol())
                .max_by(|&a, &b| {
                    tab.at(i, a)
                        .magnitude()
                        .partial_cmp(&tab.at(i, b).magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            if let Some(j) = best {
                tab.pivot(i, j);
            }
        }
        for j in ncols..total {
            tab.barred[j] = true;
        }
    }

    // Phase II.
    tab.set_objective(&c_std);
    if tab.optimize() == LpStatus::Unbounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            dual: Vec::new(),
            objective: T::zero(),
            iterations: tab.iterations,
            certificate: None,
        });
    }

    if perturbed {
        tab.reset_rhs(&a_std, &b_std, &c_std)?;
        for _ in 0..4 {
            if !tab.dual_optimize() {
                return Ok(LpSolution {
                    status: LpStatus::Infeasible,
                    primal: Vec::new(),
                    dual: Vec::new(),
                    objective: T::zero(),
                    iterations: tab.iterations,
                    certificate: None,
                });
            }
            if tab.optimize() == LpStatus::Unbounded {
                return Ok(LpSolution {
                    status: LpStatus::Unbounded,
                    primal: Vec::new(),
                    dual: Vec::new(),
                    objective: T::zero(),
                    iterations: tab.iterations,
                    certificate: None,
                });
            }
            let clean = (0..m).all(|i| tab.rhs(i).to_f64() >= -HARRIS_TOL);
            if clean || tab.exhausted {
                break;
            }
        }
    }
    if tab.exhausted {
        return Err(Error::Solver(format!(
            "float simplex stopped after {} pivots",
            tab.iterations
        )));
    }

    // Re-solve the final basis from the original data.
    let basis = tab.basis.clone();
    let bmat: Vec<Vec<T>> = (0..m)
        .map(|i| basis.iter().map(|&j| a_std[i][j].clone()).collect())
        .collect();
    let xb = solve_dense(bmat.clone(), b_std.clone())?;
    let bt: Vec<Vec<T>> = (0..m)
        .map(|k| (0..m).map(|i| bmat[i][k].clone()).collect())
        .collect();
    let cb: Vec<T> = basis.iter().map(|&j| c_std[j].clone()).collect();
    let ystd = solve_dense(bt, cb)?;

    let mut xs = vec![T::zero(); total];
    for (i, &j) in basis.iter().enumerate() {
        xs[j] = xb[i].clone();
    }
    let primal: Vec<T> = splits
        .iter()
        .map(|s| {
            let plus = s.plus.map(|c| xs[c].clone()).unwrap_or_else(T::zero);
            let minus = s.minus.map(|c| xs[c].clone()).unwrap_or_else(T::zero);
            plus - minus
        })
        .collect();
    let dual: Vec<T> = ystd
        .into_iter()
        .zip(&flip)
        .map(|(y, &f)| if f { -y } else { y })
        .collect();
    let objective = LinearProgram::dot(&p.objective, &primal);
    let cert = p.certify(&primal, &dual);
    if T::MODE == Mode::Float && !cert.within(FLOAT_CERT_TOL, objective.to_f64()) {
        return Err(Error::Solver(format!(
            "float certification failed: primal {:.2e}, dual {:.2e}, gap {:.2e}",
            cert.primal_residual, cert.dual_residual, cert.gap
        )));
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        objective,
        iterations: tab.iterations,
        certificate: Some(cert),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn single_lower_bound() {
        let mut p = LinearProgram::new(vec![1.0], vec![VarSign::Free]);
        p.add_row(vec![1.0], RowSense::Ge, 3.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 3.0).abs() < 1e-12);
        assert!((s.dual[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_reported() {
        let mut p = LinearProgram::new(vec![r(1, 1)], vec![VarSign::NonNeg]);
        p.add_row(vec![r(1, 1)], RowSense::Le, r(-1, 1));
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);
        let mut q = LinearProgram::new(vec![1.0, 1.0], vec![VarSign::Free, VarSign::Free]);
        q.add_row(vec![1.0, 1.0], RowSense::Ge, 2.0);
        q.add_row(vec![1.0, 1.0], RowSense::Le, 1.0);
        assert_eq!(solve_lp(&q).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn unbounded_reported() {
        let mut p = LinearProgram::new(vec![r(-1, 1)], vec![VarSign::NonNeg]);
        p.add_row(vec![r(1, 1)], RowSense::Ge, r(1, 1));
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn two_variable_vertex() {
        // max 3x + 2y s.t. x + y ≤ 4, x + 3y ≤ 6, x ≤ 3  →  (3, 1), value 11
        let mut p = LinearProgram::new(vec![r(-3, 1), r(-2, 1)], vec![VarSign::NonNeg; 2]);
        p.add_row(vec![r(1, 1), r(1, 1)], RowSense::Le, r(4, 1));
        p.add_row(vec![r(1, 1), r(3, 1)], RowSense::Le, r(6, 1));
        p.add_row(vec![r(1, 1), r(0, 1)], RowSense::Le, r(3, 1));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.primal, vec![r(3, 1), r(1, 1)]);
        assert_eq!(s.objective, r(-11, 1));
        let c = s.certificate.unwrap();
        assert_eq!((c.primal_residual, c.dual_residual, c.gap), (0.0, 0.0, 0.0));
    }

    #[test]
    fn fractional_vertex_and_duals() {
        // min x + y s.t. 2x + y ≥ 3, x + 3y ≥ 4 → x = 1, y = 1; duals (2/5, 1/5)
        let mut p = LinearProgram::new(vec![r(1, 1), r(1, 1)], vec![VarSign::NonNeg; 2]);
        p.add_row(vec![r(2, 1), r(1, 1)], RowSense::Ge, r(3, 1));
        p.add_row(vec![r(1, 1), r(3, 1)], RowSense::Ge, r(4, 1));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.primal, vec![r(1, 1), r(1, 1)]);
        assert_eq!(s.dual, vec![r(2, 5), r(1, 5)]);
    }

    #[test]
    fn nonpositive_and_equality() {
        // min -x s.t. x + y = -1, y ≥ -3, x ≤ 0 free y  → x = 0? objective -x minimal means x max = 0
        let mut p = LinearProgram::new(
            vec![r(-1, 1), r(0, 1)],
            vec![VarSign::NonPos, VarSign::Free],
        );
        p.add_row(vec![r(1, 1), r(1, 1)], RowSense::Eq, r(-1, 1));
        p.add_row(vec![r(0, 1), r(1, 1)], RowSense::Ge, r(-3, 1));
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.primal, vec![r(0, 1), r(-1, 1)]);
        let c = s.certificate.unwrap();
        assert_eq!(c.dual_residual, 0.0);
    }

    #[test]
    fn degenerate_program_terminates() {
        // Beale's cycling example; Bland's rule must terminate.
        let mut p = LinearProgram::new(
            vec![r(-3, 4), r(150, 1), r(-1, 50), r(6, 1)],
            vec![VarSign::NonNeg; 4],
        );
        p.add_row(
            vec![r(1, 4), r(-60, 1), r(-1, 25), r(9, 1)],
            RowSense::Le,
            r(0, 1),
        );
        p.add_row(
            vec![r(1, 2), r(-90, 1), r(-1, 50), r(3, 1)],
            RowSense::Le,
            r(0, 1),
        );
        p.add_row(
            vec![r(0, 1), r(0, 1), r(1, 1), r(0, 1)],
            RowSense::Le,
            r(1, 1),
        );
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.objective, r(-1, 20));
    }

    #[test]
    fn redundant_equalities() {
        let mut p = LinearProgram::new(vec![1.0, 2.0], vec![VarSign::NonNeg; 2]);
        p.add_row(vec![1.0, 1.0], RowSense::Eq, 2.0);
        p.add_row(vec![2.0, 2.0], RowSense::Eq, 4.0);
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 2.0).abs() < 1e-12);
    }
}
