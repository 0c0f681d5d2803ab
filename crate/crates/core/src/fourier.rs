//! Characters and the Fourier transform `f̂(γ) = Σ_x γ(x) f(x)` (no conjugation).
//!
//! Transforms are computed by direct summation. The float path works for any
//! real function; the scalar-generic path requires a symmetric function, whose
//! spectrum is real, and is exact when the group exponent allows it.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::scalar::{Mode, Scalar};

/// A real function on a group, indexed by local element order.
#[derive(Debug, Clone, PartialEq)]
pub struct Function<T> {
    group: Arc<Group>,
    values: Vec<T>,
}

/// Fourier coefficients indexed by local character order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    group: Arc<Group>,
    values: Vec<Complex64>,
}

impl<T: Clone> Function<T> {
    pub fn new(group: &Arc<Group>, values: Vec<T>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidGroup(format!(
                "function table has {} entries, group order is {}",
                values.len(),
                group.order()
            )));
        }
        Ok(Self {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &T {
        &self.values[x]
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Function<U> {
        Function {
            group: Arc::clone(&self.group),
            values: self.values.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> Function<T> {
    pub fn zero(group: &Arc<Group>) -> Self {
        Self {
            group: Arc::clone(group),
            values: vec![T::zero(); group.order()],
        }
    }

    /// `δ_0`.
    pub fn delta(group: &Arc<Group>) -> Self {
        let mut f = Self::zero(group);
        f.values[0] = T::one();
        f
    }

    pub fn constant(group: &Arc<Group>, c: T) -> Self {
        Self {
            group: Arc::clone(group),
            values: vec![c; group.order()],
        }
    }

    /// Indicator function of a set of local indices.
    pub fn indicator(group: &Arc<Group>, members: &[bool]) -> Self {
        Self {
            group: Arc::clone(group),
            values: members
                .iter()
                .map(|&m| if m { T::one() } else { T::zero() })
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.values.len()).all(|x| {
            (self.values[x].clone() - self.values[self.group.neg(x)].clone()).is_zero_tol()
        })
    }

    pub fn sum(&self) -> T {
        self.values.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    pub fn to_f64(&self) -> Function<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn scaled(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    /// Pointwise product.
    pub fn pointwise(&self, other: &Function<T>) -> Result<Self> {
        if *self.group != *other.group {
            return Err(Error::GroupMismatch(format!(
                "{} vs {}",
                self.group.label(),
                other.group.label()
            )));
        }
        Ok(Self {
            group: Arc::clone(&self.group),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() * b.clone())
                .collect(),
        })
    }
}

impl Spectrum {
    pub fn new(group: &Arc<Group>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.char_count() {
            return Err(Error::InvalidGroup("spectrum length mismatch".into()));
        }
        Ok(Self {
            group: Arc::clone(group),
            values,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, c: usize) -> Complex64 {
        self.values[c]
    }

    /// Real parts.
    pub fn real(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// Smallest real part among non-principal characters.
    pub fn min_nonprincipal(&self) -> f64 {
        self.values[1..]
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min)
    }
}

/// `γ_c(x)` as a complex number.
pub fn character_value(group: &Group, x: usize, c: usize) -> Complex64 {
    let (t, l) = group.phase(x, c);
    let theta = std::f64::consts::TAU * t as f64 / l as f64;
    let re = f64::cos_turn(t, l).expect("float cosine");
    let im = if (2 * t) % l == 0 { 0.0 } else { theta.sin() };
    Complex64::new(re, im)
}

/// `Re γ_c(x) = cos(2π·phase)` in the scalar field `T`.
pub fn character_cos<T: Scalar>(group: &Group, x: usize, c: usize) -> Result<T> {
    let (t, l) = group.phase(x, c);
    T::cos_turn(t, l).ok_or_else(|| {
        Error::ModeUnavailable(format!(
            "character values of {} (exponent {}) are irrational",
            group.label(),
            group.exponent()
        ))
    })
}

/// Checks that scalar kind `T` can represent every character of `group`.
pub fn check_mode<T: Scalar>(group: &Group) -> Result<()> {
    if T::MODE == Mode::Exact && !group.exact_available() {
        return Err(Error::ModeUnavailable(format!(
            "exact mode needs exponent in {{1,2,3,4,6}}; {} has exponent {}",
            group.label(),
            group.exponent()
        )));
    }
    Ok(())
}

/// Float Fourier transform of a real function.
///
/// For symmetric input the imaginary residue below `1e-12·‖f‖₁` is cut to 0.
pub fn fourier_transform(f: &Function<f64>) -> Spectrum {
    let g = f.group();
    let q = g.order();
    let mut values = vec![Complex64::new(0.0, 0.0); g.char_count()];
    for (c, out) in values.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in 0..q {
            let v = f.values[x];
            if v != 0.0 {
                acc += character_value(g, x, c) * v;
            }
        }
        *out = acc;
    }
    if f.is_symmetric() {
        let l1: f64 = f.values.iter().map(|v| v.abs()).sum();
        for z in &mut values {
            if z.im.abs() <= 1e-12 * l1.max(1.0) {
                z.im = 0.0;
            }
        }
    }
    Spectrum {
        group: Arc::clone(g),
        values,
    }
}

/// `f(x) = (1/q) Σ_γ F(γ) γ(-x)`, real parts.
pub fn inverse_transform(spec: &Spectrum) -> Function<f64> {
    let g = spec.group();
    let q = g.order();
    let values = (0..q)
        .map(|x| {
            let nx = g.neg(x);
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, &fc) in spec.values.iter().enumerate() {
                acc += fc * character_value(g, nx, c);
            }
            acc.re / q as f64
        })
        .collect();
    Function {
        group: Arc::clone(g),
        values,
    }
}

/// Real spectrum of a symmetric function: `f̂(γ) = Σ_x cos(...) f(x)`.
pub fn symmetric_transform<T: Scalar>(f: &Function<T>) -> Result<Vec<T>> {
    let g = f.group();
    check_mode::<T>(g)?;
    if !f.is_symmetric() {
        return Err(Error::Precondition(
            "exact spectrum requires a symmetric function".into(),
        ));
    }
    let q = g.order();
    let nonzero: Vec<usize> = (0..q).filter(|&x| !f.values[x].is_zero_tol()).collect();
    (0..g.char_count())
        .map(|c| {
            let mut acc = T::zero();
            for &x in &nonzero {
                acc = acc + character_cos::<T>(g, x, c)? * f.values[x].clone();
            }
            Ok(acc)
        })
        .collect()
}

/// Inverse of [`symmetric_transform`] for a real spectrum symmetric under
/// conjugation.
pub fn inverse_symmetric<T: Scalar>(group: &Arc<Group>, spectrum: &[T]) -> Result<Function<T>> {
    check_mode::<T>(group)?;
    let q = group.order();
    if spectrum.len() != q {
        return Err(Error::InvalidGroup("spectrum length mismatch".into()));
    }
    let qt = T::from_i64(q as i64);
    let values = (0..q)
        .map(|x| {
            let mut acc = T::zero();
            for (c, v) in spectrum.iter().enumerate() {
                if !v.is_zero_tol() {
                    acc = acc + character_cos::<T>(group, x, c)? * v.clone();
                }
            }
            Ok(acc / qt.clone())
        })
        .collect::<Result<Vec<T>>>()?;
    Function::new(group, values)
}

/// `(f(x) + f(-x)) / 2`.
pub fn symmetrize<T: Scalar>(f: &Function<T>) -> Function<T> {
    let g = f.group();
    let two = T::from_i64(2);
    Function {
        group: Arc::clone(g),
        values: (0..g.order())
            .map(|x| (f.values[x].clone() + f.values[g.neg(x)].clone()) / two.clone())
            .collect(),
    }
}

fn check_subgroup(g: &Arc<Group>, h: &Subgroup) -> Result<()> {
    if **h.parent() == **g {
        Ok(())
    } else {
        Err(Error::NotSubgroup(format!(
            "subgroup of {} used with a function on {}",
            h.parent().label(),
            g.label()
        )))
    }
}

/// `f_{/H}(x + H) = Σ_{t∈H} f(x + t)` on `G/H`.
pub fn factor_function<T: Scalar>(f: &Function<T>, h: &Subgroup) -> Result<Function<T>> {
    let g = f.group();
    check_subgroup(g, h)?;
    let quo = g.quotient(h)?;
    let mut values = vec![T::zero(); quo.order()];
    for x in 0..g.order() {
        let c = quo
            .local_of_parent(g.representative(x))
            .expect("every element lies in a coset");
        values[c] = values[c].clone() + f.values[x].clone();
    }
    Function::new(&quo, values)
}

/// `g^{×H}(x) = g(x + H)` on `G`.
pub fn lift_function<T: Scalar>(gq: &Function<T>, h: &Subgroup) -> Result<Function<T>> {
    let g = h.parent();
    let quo = g.quotient(h)?;
    if *quo != **gq.group() {
        return Err(Error::GroupMismatch(format!(
            "function lives on {}, expected {}",
            gq.group().label(),
            quo.label()
        )));
    }
    let values = (0..g.order())
        .map(|x| {
            let c = quo.local_of_parent(g.representative(x)).expect("coset");
            gq.values[c].clone()
        })
        .collect();
    Function::new(g, values)
}

/// `f_H`: restriction to the subgroup `H`, as a function on `H`.
pub fn restrict<T: Scalar>(f: &Function<T>, h: &Subgroup) -> Result<Function<T>> {
    let g = f.group();
    check_subgroup(g, h)?;
    let sub = g.restrict_to(h)?;
    let values = (0..sub.order())
        .map(|j| {
            let x = g
                .local_of_parent(sub.representative(j))
                .expect("H lies in G");
            f.values[x].clone()
        })
        .collect();
    Function::new(&sub, values)
}

/// `g^G`: extension by zero from the subgroup `H` to `G`.
pub fn extend<T: Scalar>(gh: &Function<T>, h: &Subgroup) -> Result<Function<T>> {
    let g = h.parent();
    let sub = g.restrict_to(h)?;
    if *sub != **gh.group() {
        return Err(Error::NotSubgroup(format!(
            "function lives on {}, not on {}",
            gh.group().label(),
            sub.label()
        )));
    }
    let mut values = vec![T::zero(); g.order()];
    for j in 0..sub.order() {
        let x = g
            .local_of_parent(sub.representative(j))
            .expect("H lies in G");
        values[x] = gh.values[j].clone();
    }
    Function::new(g, values)
}

/// Local index of the product character `γ_a·γ_b`.
pub fn char_mul(group: &Group, a: usize, b: usize) -> usize {
    let y = group.spec().add(group.character(a), group.character(b));
    group.char_of_parent(y).expect("product of characters")
}

/// `(F₁ ∗ F₂)(γ) = Σ_ψ F₁(ψ) F₂(γψ⁻¹)`.
pub fn convolve_spectra(a: &Spectrum, b: &Spectrum) -> Result<Spectrum> {
    let g = a.group();
    if **g != **b.group() {
        return Err(Error::GroupMismatch("spectra on different groups".into()));
    }
    let n = g.char_count();
    let values = (0..n)
        .map(|c| {
            (0..n)
                .map(|p| a.values[p] * b.values[char_mul(g, c, g.char_conj(p))])
                .sum()
        })
        .collect();
    Spectrum::new(g, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10
    }

    #[test]
    fn delta_transform_is_one() {
        let g = Group::cyclic(6).unwrap();
        let s = fourier_transform(&Function::<f64>::delta(&g));
        assert!(s.values().iter().all(|z| close(z.re, 1.0) && z.im == 0.0));
    }

    #[test]
    fn constant_transform() {
        let g = Group::cyclic(4).unwrap();
        let s = fourier_transform(&Function::constant(&g, 1.0));
        assert!(close(s.value(0).re, 4.0));
        assert!(s.values()[1..].iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn walsh_on_z2() {
        let g = Group::cyclic(2).unwrap();
        let s = fourier_transform(&Function::new(&g, vec![3.0, 5.0]).unwrap());
        assert!(close(s.value(0).re, 8.0));
        assert!(close(s.value(1).re, -2.0));
    }

    #[test]
    fn inverse_examples() {
        let g = Group::cyclic(5).unwrap();
        let ones = Spectrum::new(&g, vec![Complex64::new(1.0, 0.0); 5]).unwrap();
        let d = inverse_transform(&ones);
        assert!(close(d.values()[0], 1.0));
        assert!(d.values()[1..].iter().all(|v| v.abs() < 1e-12));
        let mut peak = vec![Complex64::new(0.0, 0.0); 5];
        peak[0] = Complex64::new(5.0, 0.0);
        let f = inverse_transform(&Spectrum::new(&g, peak).unwrap());
        assert!(f.values().iter().all(|&v| close(v, 1.0)));
    }

    #[test]
    fn round_trip_z6() {
        let g = Group::cyclic(6).unwrap();
        let f = Function::new(&g, vec![0.3, -1.0, 2.5, 0.0, 4.0, -0.7]).unwrap();
        let back = inverse_transform(&fourier_transform(&f));
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn exact_round_trip() {
        let g = Group::ambient(crate::group::GroupSpec::new(vec![4, 2]).unwrap());
        let vals: Vec<Rational> = (0..8)
            .map(|x| Rational::from_ratio(((x * 7) % 5) as i64, 3))
            .collect();
        let f = symmetrize(&Function::new(&g, vals).unwrap());
        let spec = symmetric_transform(&f).unwrap();
        assert_eq!(inverse_symmetric(&g, &spec).unwrap(), f);
    }

    #[test]
    fn exact_rejected_for_irrational_exponent() {
        let g = Group::cyclic(5).unwrap();
        let f = Function::<Rational>::delta(&g);
        assert!(matches!(
            symmetric_transform(&f),
            Err(Error::ModeUnavailable(_))
        ));
    }

    #[test]
    fn symmetrize_examples() {
        let g = Group::cyclic(3).unwrap();
        let f = Function::new(&g, vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(symmetrize(&f).values(), &[0.0, 0.5, 0.5]);
        let g5 = Group::cyclic(5).unwrap();
        let f = Function::new(&g5, vec![2.0, 1.0, 0.0, 0.0, 3.0]).unwrap();
        assert_eq!(symmetrize(&f).values(), &[2.0, 2.0, 0.0, 0.0, 2.0]);
        let sym = Function::new(&g5, vec![1.0, 2.0, 3.0, 3.0, 2.0]).unwrap();
        assert_eq!(symmetrize(&sym), sym);
    }

    #[test]
    fn symmetrize_takes_real_part_of_spectrum() {
        let g = Group::cyclic(7).unwrap();
        let f = Function::new(&g, vec![1.0, 0.5, -2.0, 0.0, 3.0, 1.0, 0.25]).unwrap();
        let s = fourier_transform(&f);
        let t = fourier_transform(&symmetrize(&f));
        for (a, b) in s.values().iter().zip(t.values()) {
            assert!(close(a.re, b.re) && b.im.abs() < 1e-12);
        }
    }

    #[test]
    fn factor_and_lift() {
        let g = Group::cyclic(4).unwrap();
        let h = Subgroup::new(&g, vec![0, 2]).unwrap();
        let f = Function::new(&g, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(factor_function(&f, &h).unwrap().values(), &[4.0, 6.0]);
        let quo = g.quotient(&h).unwrap();
        let gq = Function::new(&quo, vec![1.0, 0.0]).unwrap();
        assert_eq!(
            lift_function(&gq, &h).unwrap().values(),
            &[1.0, 0.0, 1.0, 0.0]
        );
        let triv = factor_function(&f, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(triv.values(), f.values());
        let all = factor_function(&f, &Subgroup::whole(&g)).unwrap();
        assert_eq!(all.values(), &[10.0]);
        let c = lift_function(&Function::constant(&quo, 2.5), &h).unwrap();
        assert!(c.values().iter().all(|&v| v == 2.5));
        let back = factor_function(&lift_function(&gq, &h).unwrap(), &h).unwrap();
        assert_eq!(back.values(), &[2.0, 0.0]);
    }

    #[test]
    fn restrict_and_extend() {
        let g = Group::cyclic(8).unwrap();
        let h = Subgroup::generated(&g, &[2]).unwrap();
        let sub = g.restrict_to(&h).unwrap();
        let e = extend(&Function::<f64>::delta(&sub), &h).unwrap();
        assert_eq!(e, Function::delta(&g));
        let r = restrict(&Function::constant(&g, 1.0), &h).unwrap();
        assert_eq!(r.values(), &[1.0; 4]);
    }

    #[test]
    fn factor_spectrum_matches_lifted_characters() {
        let g = Group::cyclic(12).unwrap();
        let h = Subgroup::new(&g, vec![0, 6]).unwrap();
        let f = Function::new(&g, (0..12).map(|x| ((x * x) % 7) as f64 - 2.0).collect()).unwrap();
        let fh = factor_function(&f, &h).unwrap();
        let sf = fourier_transform(&f);
        let sq = fourier_transform(&fh);
        let quo = fh.group();
        for c in 0..quo.char_count() {
            // lifted character γ^{×H} is the character of G with the same parent index
            let lifted = g.char_of_parent(quo.character(c)).unwrap();
            assert!((sq.value(c) - sf.value(lifted)).norm() < 1e-9);
        }
    }

    #[test]
    fn pointwise_product_convolution_rule() {
        let g = Group::ambient(crate::group::GroupSpec::new(vec![3, 2]).unwrap());
        let f1 = Function::new(&g, vec![1.0, 2.0, -1.0, 0.5, 0.0, 3.0]).unwrap();
        let f2 = Function::new(&g, vec![0.2, -1.0, 1.0, 2.0, 4.0, 1.5]).unwrap();
        let h = f1.pointwise(&f2).unwrap();
        let conv = convolve_spectra(&fourier_transform(&f1), &fourier_transform(&f2)).unwrap();
        let sh = fourier_transform(&h);
        for c in 0..6 {
            assert!((sh.value(c) - conv.value(c) / 6.0).norm() < 1e-9);
        }
    }
}
